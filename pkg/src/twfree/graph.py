"""Simple undirected graphs over dense integer vertex ids.

Adjacency is stored as one Python int bitmask per vertex, which keeps the
exhaustive searches in :mod:`twfree.oracle` and :mod:`twfree.cutsets` cheap.
Graphs are immutable; every derived graph (induced subgraphs, line graphs,
decomposition blocks) carries an explicit map back to its source.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from typing import Union

Edge = tuple[int, int]
VertexSet = frozenset


class GraphError(ValueError):
    """Raised when a graph violates the simple-graph contract or a precondition."""


class GraphParseError(GraphError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bits_to_set(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


def set_to_bits(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class Graph:
    """An immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "adj", "_edges", "_hash")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        adj = [0] * n
        seen: set[Edge] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj: tuple[int, ...] = tuple(adj)
        self._edges: tuple[Edge, ...] = tuple(sorted(seen))
        self._hash: int | None = None

    @classmethod
    def from_masks(cls, adj: Iterable[int]) -> Graph:
        """Build from a symmetric list of neighbour bitmasks (not re-validated)."""
        g = cls.__new__(cls)
        g.adj = tuple(adj)
        g.n = len(g.adj)
        g._edges = tuple(
            (u, v) for u in range(g.n) for v in iter_bits(g.adj[u] >> (u + 1) << (u + 1))
        )
        g._hash = None
        return g

    # -- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def all_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree_in(self, v: int, mask: int) -> int:
        return (self.adj[v] & mask).bit_count()

    def edge_count_in(self, mask: int) -> int:
        return sum((self.adj[v] & mask).bit_count() for v in iter_bits(mask)) // 2

    def is_clique(self, vertices: Iterable[int]) -> bool:
        mask = set_to_bits(vertices)
        return all((self.adj[v] | 1 << v) & mask == mask for v in iter_bits(mask))

    def is_clique_mask(self, mask: int) -> bool:
        return all((self.adj[v] | 1 << v) & mask == mask for v in iter_bits(mask))

    # -- derived graphs ------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        """Induced subgraph plus ``origin`` with ``origin[i]`` = source vertex of ``i``."""
        origin = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(origin)}
        adj = []
        for v in origin:
            mask = 0
            for w in iter_bits(self.adj[v]):
                j = index.get(w)
                if j is not None:
                    mask |= 1 << j
            adj.append(mask)
        return Graph.from_masks(adj), origin

    def induced_mask(self, mask: int) -> tuple[Graph, tuple[int, ...]]:
        return self.induced(iter_bits(mask))

    def relabel(self, mapping: Iterable[int], n: int | None = None) -> Graph:
        """Graph with vertex ``i`` renamed ``mapping[i]`` (an injection into ``range(n)``)."""
        mapping = list(mapping)
        size = self.n if n is None else n
        return Graph(size, ((mapping[u], mapping[v]) for u, v in self._edges))

    def complement(self) -> Graph:
        full = self.all_mask
        return Graph.from_masks((~self.adj[v] & full) & ~(1 << v) for v in range(self.n))

    def without_edge(self, u: int, v: int) -> Graph:
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph.from_masks(adj)

    # -- dunder --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self._edges)})"

    def to_text(self) -> str:
        return format_graph(self)


# -- serialization ------------------------------------------------------


def _lines(text: Union[str, bytes]) -> Iterator[tuple[int, str]]:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _parse_int_pair(lineno: int, line: str, what: str) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise GraphParseError(lineno, f"expected two integers for {what}, got {line!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphParseError(lineno, f"non-integer {what}: {line!r}") from None


def parse_graph_lines(lines: Iterator[tuple[int, str]]) -> Graph:
    """Parse a graph block from pre-tokenised ``(lineno, line)`` pairs.

    Consumes exactly the header and ``m`` edge lines, so callers (the skeleton
    reader) can continue reading the same iterator afterwards.
    """
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise GraphParseError(1, "missing header 'n m'") from None
    n, m = _parse_int_pair(lineno, header, "header 'n m'")
    if n < 0 or m < 0:
        raise GraphParseError(lineno, "negative count in header")
    edges: list[Edge] = []
    seen: set[Edge] = set()
    last = lineno
    for _ in range(m):
        try:
            lineno, line = next(lines)
        except StopIteration:
            raise GraphParseError(last + 1, f"expected {m} edges, found {len(edges)}") from None
        last = lineno
        u, v = _parse_int_pair(lineno, line, "edge")
        if u == v:
            raise GraphParseError(lineno, f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(lineno, f"vertex id out of range 0..{n - 1}: {line!r}")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise GraphParseError(lineno, f"duplicate edge {e[0]} {e[1]}")
        seen.add(e)
        edges.append(e)
    return Graph(n, edges)


def parse_graph(text: Union[str, bytes]) -> Graph:
    """Parse the ``n m`` / ``u v`` edge-list format; trailing content is an error."""
    lines = _lines(text)
    g = parse_graph_lines(lines)
    for lineno, line in lines:
        raise GraphParseError(lineno, f"unexpected trailing content {line!r}")
    return g


def format_graph(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


# -- connectivity ---------------------------------------------------------


def component_masks(g: Graph, mask: int | None = None) -> list[int]:
    """Connected components of ``g[mask]`` as bitmasks, ordered by least vertex."""
    remaining = g.all_mask if mask is None else mask
    adj = g.adj
    comps = []
    while remaining:
        frontier = remaining & -remaining
        comp = frontier
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        remaining &= ~comp
    return comps


def is_connected_mask(g: Graph, mask: int) -> bool:
    if not mask:
        return True
    return len(component_masks(g, mask)) == 1


def connected_components(g: Graph) -> list[frozenset[int]]:
    return [bits_to_set(c) for c in component_masks(g)]


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(component_masks(g)) == 1


def reachable(g: Graph, sources: int, mask: int) -> int:
    """Vertices of ``mask`` reachable from ``sources & mask`` inside ``g[mask]``."""
    seen = sources & mask
    frontier = seen
    adj = g.adj
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def _biconnected(g: Graph, mask: int) -> tuple[int, list[int]]:
    """Cut vertices and blocks (as vertex masks) of ``g[mask]``; iterative Tarjan."""
    adj = g.adj
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    cut = 0
    blocks: list[int] = []
    counter = 0
    for root in iter_bits(mask):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        if not adj[root] & mask:
            blocks.append(1 << root)
            continue
        root_children = 0
        edge_stack: list[Edge] = []
        stack = [(root, -1, iter_bits(adj[root] & mask))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter_bits(adj[w] & mask)))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    low[v] = min(low[v], disc[w])
                    edge_stack.append((v, w))
            if advanced:
                continue
            stack.pop()
            if parent < 0:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent == root:
                    root_children += 1
                else:
                    cut |= 1 << parent
                block = 0
                while True:
                    a, b = edge_stack.pop()
                    block |= 1 << a | 1 << b
                    if (a, b) == (parent, v):
                        break
                blocks.append(block)
        if root_children >= 2:
            cut |= 1 << root
    return cut, blocks


def cut_vertices_and_blocks(g: Graph) -> tuple[frozenset[int], list[frozenset[int]]]:
    """Cut vertices and blocks of a connected graph.

    Every block is either 2-connected or a single edge (or, for the one-vertex
    graph, a single vertex).
    """
    if not is_connected(g):
        raise GraphError("cut_vertices_and_blocks requires a connected graph")
    cut, blocks = _biconnected(g, g.all_mask)
    blocks.sort(key=lambda b: sorted(iter_bits(b)))
    return bits_to_set(cut), [bits_to_set(b) for b in blocks]


def cut_vertex_mask(g: Graph, mask: int | None = None) -> int:
    return _biconnected(g, g.all_mask if mask is None else mask)[0]


def block_masks(g: Graph, mask: int | None = None) -> list[int]:
    return _biconnected(g, g.all_mask if mask is None else mask)[1]


def bridges(g: Graph) -> set[Edge]:
    """Edges lying on no cycle (blocks consisting of a single edge)."""
    out = set()
    for b in block_masks(g):
        if b.bit_count() == 2:
            u, v = iter_bits(b)
            out.add((u, v))
    return out


# -- graph predicates -------------------------------------------------------


def is_triangle_free(g: Graph) -> bool:
    adj = g.adj
    return not any(adj[u] & adj[v] for u, v in g.edges)


def is_chordless_graph(g: Graph) -> bool:
    """True iff no cycle of ``g`` has a chord.

    An edge ``uv`` is a chord of some cycle exactly when ``g - uv`` still has
    two internally disjoint ``u``-``v`` paths, i.e. ``u`` and ``v`` share a
    block of ``g - uv``.
    """
    for u, v in g.edges:
        # cheap filter: a chord needs both ends of degree >= 3
        if g.degree(u) < 3 or g.degree(v) < 3:
            continue
        h = g.without_edge(u, v)
        comp = reachable(h, 1 << u, h.all_mask)
        if not comp >> v & 1:
            continue
        pair = 1 << u | 1 << v
        if any(b & pair == pair for b in block_masks(h, comp)):
            return False
    return True


def is_sparse_graph(g: Graph) -> bool:
    return all(g.degree(u) <= 2 or g.degree(v) <= 2 for u, v in g.edges)


def pendant_edges(g: Graph) -> list[Edge]:
    return [(u, v) for u, v in g.edges if g.degree(u) == 1 or g.degree(v) == 1]


def disjoint_union(*graphs: Graph) -> tuple[Graph, list[tuple[int, ...]]]:
    """Disjoint union; the second result maps each input's vertices to new ids."""
    offset = 0
    edges: list[Edge] = []
    maps = []
    for h in graphs:
        maps.append(tuple(range(offset, offset + h.n)))
        edges.extend((u + offset, v + offset) for u, v in h.edges)
        offset += h.n
    return Graph(offset, edges), maps


def maximal_cliques(g: Graph, within: int | None = None) -> list[int]:
    """Maximal cliques of ``g[within]`` as bitmasks (Bron-Kerbosch with pivoting), sorted."""
    out: list[int] = []
    adj = g.adj

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        pivot_pool = p | x
        pivot = max(iter_bits(pivot_pool), key=lambda u: (adj[u] & p).bit_count())
        for v in iter_bits(p & ~adj[pivot]):
            expand(r | 1 << v, p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    expand(0, g.all_mask if within is None else within, 0)
    return sorted(out, key=lambda c: sorted(iter_bits(c)))
