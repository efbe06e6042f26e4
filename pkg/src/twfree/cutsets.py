"""Clique cutsets, star cutsets and 2-joins, plus 2-join blocks and the two
composition operations (gluing along a clique, 2-join composition)."""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np

from .graph import (
    Graph,
    GraphError,
    bits_to_set,
    component_masks,
    is_connected_mask,
    iter_bits,
    maximal_cliques,
    reachable,
    set_to_bits,
)

EXHAUSTIVE_LIMIT = 20
_CHUNK = 1 << 14


class SplitError(GraphError):
    """A proposed 2-join split fails one of its defining clauses."""


# -- 2-join splits --------------------------------------------------------------


@dataclass(frozen=True)
class TwoJoinSplit:
    x1: frozenset[int]
    x2: frozenset[int]
    a1: frozenset[int]
    b1: frozenset[int]
    a2: frozenset[int]
    b2: frozenset[int]

    def key(self) -> tuple:
        return tuple(tuple(sorted(s)) for s in (self.x1, self.a1, self.b1, self.x2, self.a2, self.b2))

    def swapped(self) -> TwoJoinSplit:
        return TwoJoinSplit(self.x2, self.x1, self.a2, self.b2, self.a1, self.b1)

    def to_json(self) -> dict:
        return {name: sorted(getattr(self, name)) for name in ("x1", "x2", "a1", "b1", "a2", "b2")}

    @classmethod
    def from_json(cls, data: Mapping) -> TwoJoinSplit:
        return cls(*(frozenset(data[name]) for name in ("x1", "x2", "a1", "b1", "a2", "b2")))


def _is_chordless_path(g: Graph, mask: int) -> bool:
    count = mask.bit_count()
    if count == 1:
        return True
    if g.edge_count_in(mask) != count - 1 or not is_connected_mask(g, mask):
        return False
    return all(g.degree_in(v, mask) <= 2 for v in iter_bits(mask))


def almost_two_join_problems(g: Graph, x1: int, x2: int, a1: int, b1: int, a2: int, b2: int) -> list[str]:
    """Clauses of the almost 2-join definition that fail, as messages (empty if none)."""
    problems = []
    if x1 & x2 or x1 | x2 != g.all_mask:
        problems.append("X1, X2 do not partition V")
    for name, s, x in (("A1", a1, x1), ("B1", b1, x1), ("A2", a2, x2), ("B2", b2, x2)):
        if not s:
            problems.append(f"{name} is empty")
        elif s & ~x:
            problems.append(f"{name} is not inside its side")
    if a1 & b1 or a2 & b2:
        problems.append("A_i and B_i are not disjoint")
    if x1.bit_count() < 3 or x2.bit_count() < 3:
        problems.append("a side has fewer than 3 vertices")
    if problems:
        return problems
    for v in iter_bits(x1):
        want = (a2 if a1 >> v & 1 else 0) | (b2 if b1 >> v & 1 else 0)
        if g.adj[v] & x2 != want:
            problems.append(f"vertex {v} has the wrong neighbours across the split")
            break
    return problems


def split_problems(g: Graph, s: TwoJoinSplit, min_side: int = 3) -> list[str]:
    """Every failing clause of the 2-join definition for ``s`` on ``g``."""
    masks = [set_to_bits(x) for x in (s.x1, s.x2, s.a1, s.b1, s.a2, s.b2)]
    x1, x2, a1, b1, a2, b2 = masks
    problems = almost_two_join_problems(g, x1, x2, a1, b1, a2, b2)
    if problems:
        return problems
    for i, (x, a, b) in enumerate(((x1, a1, b1), (x2, a2, b2)), start=1):
        if x.bit_count() < min_side:
            problems.append(f"|X{i}| < {min_side}")
        if not reachable(g, a, x) & b:
            problems.append(f"no path from A{i} to B{i} inside X{i}")
        if a.bit_count() == 1 and b.bit_count() == 1 and _is_chordless_path(g, x):
            problems.append(f"|A{i}| = |B{i}| = 1 and G[X{i}] is a chordless path")
    return problems


def validate_split(g: Graph, s: TwoJoinSplit, min_side: int = 3) -> None:
    problems = split_problems(g, s, min_side)
    if problems:
        raise SplitError("; ".join(problems))


def is_valid_split(g: Graph, s: TwoJoinSplit, min_side: int = 3) -> bool:
    return not split_problems(g, s, min_side)


def _cliques_apart(g: Graph, mask: int) -> bool:
    return all(g.is_clique_mask(c) for c in component_masks(g, mask))


def consistency_problems(g: Graph, s: TwoJoinSplit) -> list[str]:
    """Extra conditions a 2-join must meet before it is used to decompose.

    Every vertex of ``A_i`` has a non-neighbour in ``B_i`` and vice versa.
    ``A_i`` is a clique, or a disjoint union of cliques when the matching set
    ``A_j`` on the other side is a single vertex; likewise for ``B_i``.
    """
    sides = [tuple(set_to_bits(v) for v in t) for t in ((s.x1, s.a1, s.b1), (s.x2, s.a2, s.b2))]
    problems = []
    for i, (_, a, b) in enumerate(sides, start=1):
        _, a_other, b_other = sides[2 - i]
        if any(g.adj[u] & b == b for u in iter_bits(a)) or any(g.adj[u] & a == a for u in iter_bits(b)):
            problems.append(f"a vertex of A{i} or B{i} is complete to the other set")
        for name, mask, partner in ((f"A{i}", a, a_other), (f"B{i}", b, b_other)):
            if g.is_clique_mask(mask):
                continue
            if partner.bit_count() != 1 or not _cliques_apart(g, mask):
                problems.append(f"{name} is not a clique")
    return problems


def is_consistent_split(g: Graph, s: TwoJoinSplit) -> bool:
    return not consistency_problems(g, s)


def _split_from_side(g: Graph, x1: int) -> TwoJoinSplit | None:
    """Read off the special sets from ``X1``; ``None`` if the crossing edges are not two bicliques."""
    x2 = g.all_mask & ~x1
    classes: dict[int, int] = {}
    for v in iter_bits(x1):
        out = g.adj[v] & x2
        if out:
            classes[out] = classes.get(out, 0) | 1 << v
    if len(classes) != 2:
        return None
    (p, ap), (q, bq) = sorted(classes.items(), key=lambda kv: (kv[1] & -kv[1]))
    if p & q:
        return None
    return TwoJoinSplit(bits_to_set(x1), bits_to_set(x2), bits_to_set(ap), bits_to_set(bq), bits_to_set(p), bits_to_set(q))


def _exhaustive_candidates(g: Graph, min_side: int) -> Iterable[int]:
    """X1 masks (containing vertex 0) whose crossing edges form two disjoint bicliques."""
    n = g.n
    adj = np.array(g.adj, dtype=np.int64)
    bits = np.int64(1) << np.arange(n, dtype=np.int64)
    full = (1 << n) - 1
    free = n - 1
    for start in range(0, 1 << free, _CHUNK):
        rest = np.arange(start, min(start + _CHUNK, 1 << free), dtype=np.int64)
        x1 = (rest << 1) | 1
        sizes = np.zeros_like(x1)
        for i in range(n):
            sizes += (x1 >> i) & 1
        keep = (sizes >= min_side) & (n - sizes >= min_side)
        x1 = x1[keep]
        if x1.size == 0:
            continue
        x2 = full & ~x1
        inside = (x1[:, None] & bits[None, :]) != 0
        out = np.where(inside, adj[None, :] & x2[:, None], 0)
        hi = out.max(axis=1)
        sentinel = np.int64(np.iinfo(np.int64).max)
        lo = np.where(out == 0, sentinel, out).min(axis=1)
        ok = (hi != 0) & (lo != sentinel) & (hi != lo) & ((hi & lo) == 0)
        ok &= ((out == 0) | (out == hi[:, None]) | (out == lo[:, None])).all(axis=1)
        yield from (int(v) for v in x1[ok])


def _grow(g: Graph, x1: int, a1: int, b1: int, a2: int, b2: int) -> int | None:
    """Least ``X1`` containing ``x1`` compatible with ``a1a2`` and ``b1b2`` crossing the split."""
    adj = g.adj
    keep_out = 1 << a2 | 1 << b2
    while True:
        if x1 & keep_out:
            return None
        outside = g.all_mask & ~x1
        side_a = adj[a1] & outside
        side_b = adj[b1] & outside
        add = side_a & side_b
        for u in iter_bits(x1):
            out = adj[u] & outside
            if not out:
                continue
            if out >> a2 & 1 and out >> b2 & 1:
                return None
            if out >> a2 & 1:
                add |= out ^ side_a
            elif out >> b2 & 1:
                add |= out ^ side_b
            else:
                add |= out
        add &= outside
        if not add:
            return x1
        x1 |= add


def _grown_candidates(g: Graph, min_side: int) -> Iterable[int]:
    edges = list(g.edges)
    oriented = edges + [(v, u) for u, v in edges]
    seen: set[int] = set()
    for (a1, a2), (b1, b2) in itertools.permutations(oriented, 2):
        if len({a1, a2, b1, b2}) < 4 or a1 > b1:
            continue
        base = _grow(g, 1 << a1 | 1 << b1, a1, b1, a2, b2)
        if base is None:
            continue
        trials = [base] + [
            grown
            for v in iter_bits(g.all_mask & ~base & ~(1 << a2 | 1 << b2))
            if (grown := _grow(g, base | 1 << v, a1, b1, a2, b2)) is not None
        ]
        for x1 in trials:
            if x1 not in seen:
                seen.add(x1)
                yield x1


def find_two_join(
    g: Graph,
    min_side: int = 3,
    exhaustive_limit: int = EXHAUSTIVE_LIMIT,
    consistent: bool = False,
) -> TwoJoinSplit | None:
    """A valid 2-join split of ``g`` with both sides of size ``>= min_side``, or ``None``.

    With ``consistent=True`` only splits passing :func:`consistency_problems`
    count.  Up to ``exhaustive_limit`` vertices every bipartition is screened
    (so ``None`` is exact); beyond it, splits are grown from pairs of crossing
    edges, which may miss some 2-joins.  Among the splits found the one with
    the least key (vertex 0 always in ``X1``) is returned.
    """
    if g.n < 2 * min_side:
        return None
    if g.n <= exhaustive_limit:
        candidates: Iterable[int] = _exhaustive_candidates(g, min_side)
    else:
        candidates = _grown_candidates(g, min_side)
    best = None
    for x1 in candidates:
        if not x1 & 1:
            x1 = g.all_mask & ~x1
        s = _split_from_side(g, x1)
        if s is None or not is_valid_split(g, s, min_side):
            continue
        if consistent and not is_consistent_split(g, s):
            continue
        if best is None or s.key() < best.key():
            best = s
    return best


# -- clique and star cutsets ------------------------------------------------------


def find_clique_cutset(g: Graph) -> frozenset[int] | None:
    """A clique whose removal disconnects ``g`` (the empty set if ``g`` is disconnected).

    Every minimal clique separator is the neighbourhood of a component of
    ``G - Q`` for a maximal clique ``Q`` containing it, so scanning those is
    exhaustive.  Returns the lexicographically least one found.
    """
    if g.n == 0:
        return None
    if len(component_masks(g)) > 1:
        return frozenset()
    best = None
    for q in maximal_cliques(g):
        for comp in component_masks(g, g.all_mask & ~q):
            nbhd = 0
            for v in iter_bits(comp):
                nbhd |= g.adj[v]
            nbhd &= q
            if comp | nbhd == g.all_mask:
                continue
            key = tuple(iter_bits(nbhd))
            if best is None or key < best:
                best = key
    return None if best is None else frozenset(best)


def is_cutset(g: Graph, s: Iterable[int]) -> bool:
    mask = set_to_bits(s)
    return len(component_masks(g, g.all_mask & ~mask)) >= 2


def find_star_cutset(g: Graph) -> frozenset[int] | None:
    """A star cutset (a cutset inside some closed neighbourhood ``N[c]`` containing ``c``), or ``None``.

    Each cutset found is shrunk greedily while it keeps separating the same
    pair; the smallest (then lexicographically least) is returned.
    """
    best = None
    for c in range(g.n):
        closed = g.adj[c] | 1 << c
        for x, y in itertools.combinations(range(g.n), 2):
            if c in (x, y):
                continue
            s = closed & ~(1 << x | 1 << y)
            if reachable(g, 1 << x, g.all_mask & ~s) >> y & 1:
                continue
            for v in iter_bits(s & ~(1 << c)):
                smaller = s & ~(1 << v)
                if not reachable(g, 1 << x, g.all_mask & ~smaller) >> y & 1:
                    s = smaller
            key = (s.bit_count(), tuple(iter_bits(s)))
            if best is None or key < best:
                best = key
    return None if best is None else frozenset(best[1])


@dataclass(frozen=True)
class CutsetResult:
    kind: str  # "clique-cutset" | "star-cutset" | "two-join" | "none"
    cutset: frozenset[int] | None = None
    split: TwoJoinSplit | None = None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.cutset is not None:
            out["cutset"] = sorted(self.cutset)
        if self.split is not None:
            out["split"] = self.split.to_json()
        return out


# -- blocks and compositions --------------------------------------------------------


MARKER = -1


@dataclass(frozen=True)
class Block:
    """A 2-join block: one side plus the marker path ``markers = (a, c, b)``.

    ``origin[i]`` is the vertex of the decomposed graph that block vertex ``i``
    came from, or ``MARKER`` for the three marker vertices.
    """

    graph: Graph
    origin: tuple[int, ...]
    markers: tuple[int, int, int]


def _block(g: Graph, x: frozenset[int], a: frozenset[int], b: frozenset[int]) -> Block:
    sub, origin = g.induced(x)
    index = {v: i for i, v in enumerate(origin)}
    p = sub.n
    ma, mc, mb = p, p + 1, p + 2
    edges = list(sub.edges) + [(ma, mc), (mc, mb)]
    edges += [(index[v], ma) for v in sorted(a)]
    edges += [(index[v], mb) for v in sorted(b)]
    return Block(Graph(p + 3, edges), origin + (MARKER,) * 3, (ma, mc, mb))


def two_join_blocks(g: Graph, s: TwoJoinSplit) -> tuple[Block, Block]:
    """Blocks of decomposition for the split; each side gets a marker path ``a - c - b``.

    In the block of ``X1``, marker ``a`` is complete to ``A1`` and ``b`` to ``B1``.
    Only the partition and adjacency clauses are checked, so a side that is
    already a path ``a - c - b`` is accepted and its partner block is ``g`` again.
    """
    problems = almost_two_join_problems(g, *(set_to_bits(x) for x in (s.x1, s.x2, s.a1, s.b1, s.a2, s.b2)))
    if problems:
        raise SplitError("; ".join(problems))
    return _block(g, s.x1, s.a1, s.b1), _block(g, s.x2, s.a2, s.b2)


def glue_clique(
    g1: Graph,
    g2: Graph,
    k1: Iterable[int],
    k2: Iterable[int],
    correspondence: Mapping[int, int] | None = None,
) -> Graph:
    """Identify clique ``k1`` of ``g1`` with clique ``k2`` of ``g2``.

    ``correspondence`` maps ``k1`` onto ``k2`` (default: sorted order).  The
    result keeps ``g1``'s ids; the other vertices of ``g2`` follow in
    increasing order.
    """
    k1 = sorted(set(k1))
    k2 = sorted(set(k2))
    if len(k1) != len(k2):
        raise GraphError("glued cliques differ in size")
    if not g1.is_clique(k1) or not g2.is_clique(k2):
        raise GraphError("glue_clique needs cliques on both sides")
    if correspondence is None:
        correspondence = dict(zip(k1, k2))
    if sorted(correspondence) != k1 or sorted(correspondence.values()) != k2:
        raise GraphError("correspondence must be a bijection between the cliques")
    back = {w: v for v, w in correspondence.items()}
    mapping = {}
    nxt = g1.n
    for w in range(g2.n):
        if w in back:
            mapping[w] = back[w]
        else:
            mapping[w] = nxt
            nxt += 1
    edges = set(g1.edges)
    for u, v in g2.edges:
        a, b = mapping[u], mapping[v]
        edges.add((min(a, b), max(a, b)))
    return Graph(nxt, edges)


def marker_problems(g: Graph, markers: tuple[int, int, int]) -> list[str]:
    """Reasons why ``a - c - b`` cannot serve as a marker path of ``g``."""
    a, c, b = markers
    if len({a, c, b}) != 3 or not all(0 <= v < g.n for v in markers):
        return ["marker vertices must be three distinct vertices"]
    problems = []
    if not (g.has_edge(a, c) and g.has_edge(c, b)):
        problems.append("a - c - b is not a path")
    if g.has_edge(a, b):
        problems.append("a and b are adjacent")
    if g.degree(c) != 2:
        problems.append(f"c has degree {g.degree(c)}, not 2")
    if problems:
        return problems
    trio = 1 << a | 1 << b | 1 << c
    rest = g.all_mask & ~trio
    na = g.adj[a] & rest
    nb = g.adj[b] & rest
    return almost_two_join_problems(g, rest, trio, na, nb, 1 << a, 1 << b)


@dataclass(frozen=True)
class Composition:
    """Result of a 2-join composition with the split it creates.

    Vertices of ``g1`` other than its markers come first (in order), then
    those of ``g2``.
    """

    graph: Graph
    split: TwoJoinSplit


def compose_two_join(
    g1: Graph, markers1: tuple[int, int, int], g2: Graph, markers2: tuple[int, int, int]
) -> Composition:
    """Replace the marker paths of ``g1`` and ``g2`` by the two bicliques joining them."""
    for name, g, mk in (("first", g1, markers1), ("second", g2, markers2)):
        problems = marker_problems(g, mk)
        if problems:
            raise GraphError(f"{name} marker path rejected: " + "; ".join(problems))
    keep1 = [v for v in range(g1.n) if v not in markers1]
    keep2 = [v for v in range(g2.n) if v not in markers2]
    id1 = {v: i for i, v in enumerate(keep1)}
    id2 = {v: len(keep1) + i for i, v in enumerate(keep2)}
    edges = [(id1[u], id1[v]) for u, v in g1.edges if u in id1 and v in id1]
    edges += [(id2[u], id2[v]) for u, v in g2.edges if u in id2 and v in id2]
    a1 = [id1[v] for v in iter_bits(g1.adj[markers1[0]]) if v in id1]
    b1 = [id1[v] for v in iter_bits(g1.adj[markers1[2]]) if v in id1]
    a2 = [id2[v] for v in iter_bits(g2.adj[markers2[0]]) if v in id2]
    b2 = [id2[v] for v in iter_bits(g2.adj[markers2[2]]) if v in id2]
    edges += [(u, v) for u in a1 for v in a2]
    edges += [(u, v) for u in b1 for v in b2]
    g = Graph(len(keep1) + len(keep2), edges)
    split = TwoJoinSplit(
        frozenset(id1.values()), frozenset(id2.values()), frozenset(a1), frozenset(b1), frozenset(a2), frozenset(b2)
    )
    return Composition(g, split)
