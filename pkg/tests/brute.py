"""Slow, definition-level reference checks used to cross-validate the library.

Everything here works on networkx graphs or plain vertex sets and avoids the
package's own search code, so agreement is meaningful.
"""

from __future__ import annotations

import itertools

import networkx as nx

from twfree.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes))}
    return Graph(len(index), [(index[u], index[v]) for u, v in h.edges])


def induces_path(h: nx.Graph, path: list[int]) -> bool:
    sub = h.subgraph(path)
    return sub.number_of_edges() == len(path) - 1 and all(h.has_edge(path[i], path[i + 1]) for i in range(len(path) - 1))


def induced_paths(h: nx.Graph, a: int, b: int, min_length: int = 1) -> list[list[int]]:
    return [p for p in nx.all_simple_paths(h, a, b) if len(p) - 1 >= min_length and induces_path(h, p)]


def has_theta_naive(g: Graph) -> bool:
    """Try every pair a, b and every triple of chordless a-b paths."""
    h = to_nx(g)
    for a, b in itertools.combinations(range(g.n), 2):
        if h.has_edge(a, b):
            continue
        paths = induced_paths(h, a, b, min_length=2)
        for p1, p2, p3 in itertools.combinations(paths, 3):
            inner = [set(p[1:-1]) for p in (p1, p2, p3)]
            if any(x & y for x, y in itertools.combinations(inner, 2)):
                continue
            if any(h.has_edge(u, v) for x, y in itertools.combinations(inner, 2) for u in x for v in y):
                continue
            return True
    return False


def holes_naive(g: Graph) -> set[frozenset[int]]:
    """Vertex sets of all chordless cycles of length at least 4."""
    h = to_nx(g)
    out = set()
    for size in range(4, g.n + 1):
        for vs in itertools.combinations(range(g.n), size):
            sub = h.subgraph(vs)
            if all(d == 2 for _, d in sub.degree) and nx.is_connected(sub):
                out.add(frozenset(vs))
    return out


def has_wheel_naive(g: Graph) -> bool:
    h = to_nx(g)
    for hole in holes_naive(g):
        for c in set(range(g.n)) - hole:
            if sum(1 for v in hole if h.has_edge(c, v)) >= 3:
                return True
    return False


def is_chordless_naive(g: Graph) -> bool:
    """Every cycle, listed explicitly, has no chord."""
    h = to_nx(g)
    for cycle in nx.simple_cycles(h):
        if len(cycle) < 4:
            continue
        on = set(cycle)
        ring = {frozenset((cycle[i], cycle[(i + 1) % len(cycle)])) for i in range(len(cycle))}
        if any(frozenset(e) not in ring for e in h.subgraph(on).edges):
            return False
    return True


def clique_cutsets_naive(g: Graph) -> list[frozenset[int]]:
    h = to_nx(g)
    found = []
    for size in range(0, g.n - 1):
        for s in itertools.combinations(range(g.n), size):
            if any(not h.has_edge(u, v) for u, v in itertools.combinations(s, 2)):
                continue
            rest = h.subgraph(set(range(g.n)) - set(s))
            if rest.number_of_nodes() >= 2 and not nx.is_connected(rest):
                found.append(frozenset(s))
    return found


def star_cutset_exists_naive(g: Graph) -> bool:
    h = to_nx(g)
    for c in range(g.n):
        nbrs = sorted(h[c])
        for size in range(len(nbrs) + 1):
            for extra in itertools.combinations(nbrs, size):
                s = {c, *extra}
                rest = h.subgraph(set(range(g.n)) - s)
                if rest.number_of_nodes() >= 2 and not nx.is_connected(rest):
                    return True
    return False


def _is_path_graph(h: nx.Graph) -> bool:
    return nx.is_connected(h) and h.number_of_edges() == h.number_of_nodes() - 1 and max(d for _, d in h.degree) <= 2


def two_join_naive(g: Graph, min_side: int = 3) -> list[tuple]:
    """All 2-join splits found by trying every bipartition (``n`` <= 10)."""
    h = to_nx(g)
    everything = set(range(g.n))
    out = []
    for size in range(min_side, g.n - min_side + 1):
        for x1 in itertools.combinations(range(1, g.n), size - 1):
            x1 = {0, *x1}
            x2 = everything - x1
            across = {v: frozenset(set(h[v]) & x2) for v in x1}
            kinds = {s for s in across.values() if s}
            if len(kinds) != 2:
                continue
            p, q = kinds
            if p & q:
                continue
            a1 = {v for v in x1 if across[v] == p}
            b1 = {v for v in x1 if across[v] == q}
            a2, b2 = set(p), set(q)
            # vertices of X2 must see exactly A1 or B1 or nothing
            if any(set(h[v]) & x1 not in (set(), a1, b1) for v in x2):
                continue
            ok = True
            for x, a, b in ((x1, a1, b1), (x2, a2, b2)):
                side = h.subgraph(x)
                if not any(nx.has_path(side, u, v) for u in a for v in b):
                    ok = False
                elif len(a) == 1 and len(b) == 1 and _is_path_graph(side):
                    ok = False
            if ok:
                out.append((frozenset(x1), frozenset(x2), frozenset(a1), frozenset(b1), frozenset(a2), frozenset(b2)))
    return out


def pair_on_cycle_or_leaf_path(r: Graph, e1: tuple[int, int], e2: tuple[int, int]) -> bool:
    """Some cycle contains both edges, or some path with degree-1 ends does."""
    h = to_nx(r)
    for cycle in nx.simple_cycles(h):
        ring = {frozenset((cycle[i], cycle[(i + 1) % len(cycle)])) for i in range(len(cycle))}
        if len(cycle) >= 3 and frozenset(e1) in ring and frozenset(e2) in ring:
            return True
    leaves = [v for v in h if h.degree(v) == 1]
    for s, t in itertools.combinations(leaves, 2):
        for p in nx.all_simple_paths(h, s, t):
            steps = {frozenset((p[i], p[i + 1])) for i in range(len(p) - 1)}
            if frozenset(e1) in steps and frozenset(e2) in steps:
                return True
    return False
