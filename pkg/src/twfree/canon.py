"""Canonical forms for small graphs (individualisation-refinement).

Adequate for the test-suite sizes (n <= 25).  Disconnected graphs and graphs
with disconnected complements are split first, which keeps the search tree
small for the very symmetric inputs (empty graphs, cliques, complete
multipartite graphs) that would otherwise blow it up.
"""

from __future__ import annotations

from .graph import Edge, Graph, component_masks, iter_bits

Certificate = tuple[int, tuple[Edge, ...]]

LEAF_LIMIT = 200_000


class CanonicalFormTooExpensive(RuntimeError):
    pass


def _refine(g: Graph, colors: list[int]) -> list[int]:
    n = g.n
    while True:
        sigs = []
        for v in range(n):
            nbr = sorted(colors[w] for w in iter_bits(g.adj[v]))
            sigs.append((colors[v], tuple(nbr)))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def _leaf_certificate(g: Graph, colors: list[int]) -> tuple[Edge, ...]:
    return tuple(sorted((min(colors[u], colors[v]), max(colors[u], colors[v])) for u, v in g.edges))


def _search(g: Graph, colors: list[int], best: list, budget: list[int]) -> None:
    colors = _refine(g, colors)
    if len(set(colors)) == g.n:
        budget[0] -= 1
        if budget[0] < 0:
            raise CanonicalFormTooExpensive(f"more than {LEAF_LIMIT} leaves")
        cert = _leaf_certificate(g, colors)
        if best[0] is None or cert < best[0]:
            best[0] = cert
        return
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    target = min((c for c, vs in cells.items() if len(vs) > 1), key=lambda c: (len(cells[c]), c))
    for v in cells[target]:
        # split v off just below the rest of its cell; doubling keeps ranks distinct
        trial = [2 * c + 1 for c in colors]
        trial[v] = 2 * colors[v]
        _search(g, trial, best, budget)


def _connected_certificate(g: Graph) -> tuple[Edge, ...]:
    if g.n <= 1:
        return ()
    comp = g.complement()
    if len(component_masks(comp)) > 1:
        n, edges = canonical_form(comp)
        present = set(edges)
        return tuple((i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in present)
    best: list = [None]
    _search(g, [0] * g.n, best, [LEAF_LIMIT])
    return best[0]


def canonical_form(g: Graph) -> Certificate:
    """A certificate equal for two graphs exactly when they are isomorphic."""
    parts = []
    for mask in component_masks(g):
        sub, _ = g.induced_mask(mask)
        parts.append((sub.n, _connected_certificate(sub)))
    parts.sort()
    edges: list[Edge] = []
    offset = 0
    for n, cert in parts:
        edges.extend((u + offset, v + offset) for u, v in cert)
        offset += n
    return g.n, tuple(edges)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(g.degree(v) for v in range(g.n)) != sorted(h.degree(v) for v in range(h.n)):
        return False
    return canonical_form(g) == canonical_form(h)


def canonical_graph(g: Graph) -> Graph:
    n, edges = canonical_form(g)
    return Graph(n, edges)
