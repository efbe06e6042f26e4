"""Brute-force, witness-producing detection of holes and Truemper configurations.

This module is the referee for everything else in the package, so every
search here is exhaustive and every witness it returns is re-checked from the
definition by :func:`verify_witness` before it leaves the module.

Holes are listed by canonical extension (anchored at the least vertex, closed
only back to the anchor).  Wheels and thetas are found from the hole list:
a wheel is a hole plus an outside vertex with at least three neighbours on
it, and a theta is a hole ``H`` plus a chordless path between two
non-adjacent vertices ``a, b`` of ``H`` whose interior sees nothing of ``H``
apart from ``a`` and ``b``.  Pyramids, prisms (and thetas, as a second
route) come from enumerating connected vertex sets by size, pruned on the
edge-excess and degree invariants of the target configuration.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

from .graph import Graph, GraphError, iter_bits, set_to_bits

DEFAULT_BOUND = 20

KINDS = ("hole", "theta", "wheel", "pyramid", "prism", "diamond", "claw")


class OracleBoundExceeded(GraphError):
    """The input is larger than the oracle is allowed to handle; no verdict."""

    def __init__(self, n: int, bound: int):
        super().__init__(f"graph has {n} vertices, oracle bound is {bound}")
        self.n = n
        self.bound = bound


@dataclass(frozen=True)
class ConfigWitness:
    kind: str
    vertices: tuple[int, ...]
    structure: Mapping[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind, "vertices": list(self.vertices)}
        for key, value in self.structure.items():
            out[key] = _jsonable(value)
        return out

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> ConfigWitness:
        structure = {k: v for k, v in data.items() if k not in ("kind", "vertices")}
        return cls(data["kind"], tuple(data["vertices"]), structure)

    def relabel(self, origin: Sequence[int]) -> ConfigWitness:
        """Translate vertex ids through ``origin`` (e.g. an induced-subgraph map)."""
        return ConfigWitness(
            self.kind,
            tuple(sorted(origin[v] for v in self.vertices)),
            {k: _map_ids(v, origin) for k, v in self.structure.items()},
        )


def _jsonable(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _map_ids(value: Any, origin: Sequence[int]) -> Any:
    if isinstance(value, (list, tuple)):
        return [_map_ids(v, origin) for v in value]
    return origin[value]


def _witness(kind: str, vertices, **structure) -> ConfigWitness:
    return ConfigWitness(kind, tuple(sorted(vertices)), structure)


# -- holes ------------------------------------------------------------------


def iter_holes(g: Graph, mask: int | None = None) -> Iterator[list[int]]:
    """Yield every hole of ``g[mask]`` once, in canonical cyclic order.

    The order starts at the least vertex and continues to its smaller
    neighbour on the hole.
    """
    adj = g.adj
    if mask is None:
        mask = g.all_mask
    for v0 in iter_bits(mask):
        higher = mask & ~((2 << v0) - 1)
        close = adj[v0] & higher
        for v1 in iter_bits(close):
            # stack entries: (path, forbidden-for-extension mask)
            stack = [([v0, v1], 1 << v0 | 1 << v1)]
            while stack:
                path, forbidden = stack.pop()
                last = path[-1]
                cands = adj[last] & higher & ~forbidden
                for w in iter_bits(cands):
                    if close >> w & 1:
                        if len(path) >= 3 and w > v1:
                            yield path + [w]
                        continue
                    stack.append((path + [w], forbidden | adj[last] | 1 << w))


@dataclass(frozen=True)
class HoleEnumeration:
    holes: list[ConfigWitness]
    truncated: bool


def enumerate_holes(g: Graph, cap: int = 10_000) -> HoleEnumeration:
    if cap <= 0:
        raise ValueError("cap must be positive")
    holes = []
    for cycle in iter_holes(g):
        if len(holes) == cap:
            return HoleEnumeration(holes, True)
        holes.append(_witness("hole", cycle, cycle=cycle))
    return HoleEnumeration(holes, False)


# -- theta and wheel, hole-based route -------------------------------------------


def _shortest_path(g: Graph, sources: int, targets: int, allowed: int) -> list[int] | None:
    """Shortest path inside ``allowed`` from a vertex of ``sources`` to one of ``targets``."""
    adj = g.adj
    sources &= allowed
    targets &= allowed
    if not sources or not targets:
        return None
    parent: dict[int, int] = {}
    seen = sources
    frontier = sources
    hit = sources & targets
    while not hit:
        nxt_all = 0
        for v in iter_bits(frontier):
            nxt = adj[v] & allowed & ~seen & ~nxt_all
            for w in iter_bits(nxt):
                parent[w] = v
            nxt_all |= nxt
        if not nxt_all:
            return None
        seen |= nxt_all
        frontier = nxt_all
        hit = frontier & targets
    end = (hit & -hit).bit_length() - 1
    path = [end]
    while path[-1] in parent:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def _theta_on_hole(g: Graph, hole: list[int]) -> ConfigWitness | None:
    adj = g.adj
    hm = set_to_bits(hole)
    outside = g.all_mask & ~hm
    by_trace: dict[int, int] = {}
    for z in iter_bits(outside):
        trace = adj[z] & hm
        if trace.bit_count() <= 2:
            by_trace[trace] = by_trace.get(trace, 0) | 1 << z
    free = by_trace.get(0, 0)
    size = len(hole)
    for i in range(size):
        a = hole[i]
        for j in range(i + 2, size):
            if i == 0 and j == size - 1:
                continue
            b = hole[j]
            ab = 1 << a | 1 << b
            allowed = free | by_trace.get(1 << a, 0) | by_trace.get(1 << b, 0) | by_trace.get(ab, 0)
            path = _shortest_path(g, adj[a], adj[b], allowed)
            if path is None:
                continue
            p1 = hole[i : j + 1]
            p2 = hole[j:] + hole[: i + 1]
            p2.reverse()
            p3 = [a] + path + [b]
            return _witness("theta", hole + path, ends=[a, b], paths=[p1, p2, p3])
    return None


def _wheel_on_hole(g: Graph, hole: list[int]) -> ConfigWitness | None:
    hm = set_to_bits(hole)
    for c in iter_bits(g.all_mask & ~hm):
        if (g.adj[c] & hm).bit_count() >= 3:
            return _witness("wheel", hole + [c], rim=hole, center=c)
    return None


def find_wheel(g: Graph) -> ConfigWitness | None:
    for hole in iter_holes(g):
        w = _wheel_on_hole(g, hole)
        if w is not None:
            return _checked(g, w)
    return None


def find_theta(g: Graph, method: str = "holes") -> ConfigWitness | None:
    """Find an induced theta; ``method`` is ``"holes"`` or ``"subsets"``."""
    if method == "subsets":
        return _find_by_subsets(g, 1, _theta_from_set)
    if method != "holes":
        raise ValueError(f"unknown method {method!r}")
    for hole in iter_holes(g):
        w = _theta_on_hole(g, hole)
        if w is not None:
            return _checked(g, w)
    return None


# -- subset enumeration route -------------------------------------------------


def _connected_sets(g: Graph, max_excess: int, max_degree: int = 3) -> Iterator[tuple[int, int]]:
    """Connected vertex sets by increasing size as ``(mask, edge_count)``.

    Only sets with ``|E| - |V| <= max_excess`` and induced max degree
    ``<= max_degree`` are produced; both quantities never decrease as a
    connected set grows, so pruning on them loses nothing.
    """
    adj = g.adj
    level = {1 << v: 0 for v in range(g.n)}
    while level:
        for mask in sorted(level, key=lambda s: tuple(iter_bits(s))):
            yield mask, level[mask]
        size = next(iter(level)).bit_count() + 1
        nxt: dict[int, int] = {}
        for mask, edges in level.items():
            border = 0
            for v in iter_bits(mask):
                border |= adj[v]
            border &= ~mask
            for v in iter_bits(border):
                grown = mask | 1 << v
                if grown in nxt:
                    continue
                inner = adj[v] & mask
                d = inner.bit_count()
                e = edges + d
                if d > max_degree or e - size > max_excess:
                    continue
                if any((adj[w] & mask).bit_count() >= max_degree for w in iter_bits(inner)):
                    continue
                nxt[grown] = e
        level = nxt


def _find_by_subsets(g: Graph, excess: int, extract) -> ConfigWitness | None:
    for mask, edges in _connected_sets(g, excess):
        if edges - mask.bit_count() != excess:
            continue
        w = extract(g, mask)
        if w is not None and verify_witness(g, w):
            return w
    return None


def _walk(g: Graph, mask: int, start: int, first: int, stops: int, removed: set) -> list[int] | None:
    """Follow the degree-2 path ``start, first, ...`` inside ``mask`` until a stop vertex."""
    path = [start, first]
    prev, cur = start, first
    while not stops >> cur & 1:
        nxt = [w for w in iter_bits(g.adj[cur] & mask) if w != prev and (cur, w) not in removed]
        if len(nxt) != 1:
            return None
        prev, cur = cur, nxt[0]
        if cur in path:
            return None
        path.append(cur)
    return path


def _degrees(g: Graph, mask: int) -> dict[int, int]:
    return {v: (g.adj[v] & mask).bit_count() for v in iter_bits(mask)}


def _theta_from_set(g: Graph, mask: int) -> ConfigWitness | None:
    deg = _degrees(g, mask)
    ends = [v for v, d in deg.items() if d == 3]
    if len(ends) != 2 or any(d not in (2, 3) for d in deg.values()):
        return None
    a, b = ends
    if g.has_edge(a, b):
        return None
    paths = []
    for first in iter_bits(g.adj[a] & mask):
        p = _walk(g, mask, a, first, 1 << b | 1 << a, set())
        if p is None or p[-1] != b:
            return None
        paths.append(p)
    return _witness("theta", iter_bits(mask), ends=[a, b], paths=paths)


def _pyramid_from_set(g: Graph, mask: int) -> ConfigWitness | None:
    deg = _degrees(g, mask)
    big = [v for v, d in deg.items() if d == 3]
    if len(big) != 4 or any(d not in (2, 3) for d in deg.values()):
        return None
    for tri in itertools.combinations(big, 3):
        if not g.is_clique(tri):
            continue
        (apex,) = set(big) - set(tri)
        removed = {(x, y) for x in tri for y in tri if x != y}
        stops = set_to_bits(tri)
        paths = []
        for first in iter_bits(g.adj[apex] & mask):
            p = _walk(g, mask, apex, first, stops, removed)
            if p is None:
                break
            paths.append(p)
        if len(paths) != 3 or len({p[-1] for p in paths}) != 3:
            continue
        paths.sort(key=lambda p: tri.index(p[-1]))
        w = _witness("pyramid", iter_bits(mask), apex=apex, triangle=list(tri), paths=paths)
        if verify_witness(g, w):
            return w
    return None


def _prism_from_set(g: Graph, mask: int) -> ConfigWitness | None:
    deg = _degrees(g, mask)
    big = [v for v, d in deg.items() if d == 3]
    if len(big) != 6 or any(d not in (2, 3) for d in deg.values()):
        return None
    for t1 in itertools.combinations(big, 3):
        t2 = tuple(v for v in big if v not in t1)
        if t1[0] != big[0] or not g.is_clique(t1) or not g.is_clique(t2):
            continue
        removed = {(x, y) for t in (t1, t2) for x in t for y in t if x != y}
        stops = set_to_bits(t2)
        paths = []
        for s in t1:
            firsts = [w for w in iter_bits(g.adj[s] & mask) if w not in t1]
            if len(firsts) != 1:
                break
            p = _walk(g, mask, s, firsts[0], stops, removed)
            if p is None:
                break
            paths.append(p)
        if len(paths) != 3 or len({p[-1] for p in paths}) != 3:
            continue
        w = _witness(
            "prism", iter_bits(mask), triangles=[list(t1), [p[-1] for p in paths]], paths=paths
        )
        if verify_witness(g, w):
            return w
    return None


def find_pyramid(g: Graph) -> ConfigWitness | None:
    return _find_by_subsets(g, 2, _pyramid_from_set)


def find_prism(g: Graph) -> ConfigWitness | None:
    return _find_by_subsets(g, 3, _prism_from_set)


# -- small patterns -----------------------------------------------------------


def find_diamond(g: Graph) -> ConfigWitness | None:
    adj = g.adj
    for u, v in g.edges:
        common = sorted(iter_bits(adj[u] & adj[v]))
        for x, y in itertools.combinations(common, 2):
            if not adj[x] >> y & 1:
                return _checked(g, _witness("diamond", (u, v, x, y), spine=[u, v], tips=[x, y]))
    return None


def _claw_leaves(g: Graph, u: int) -> tuple[int, int, int] | None:
    adj = g.adj
    nbrs = adj[u]
    for x in iter_bits(nbrs):
        rest = nbrs & ~adj[x] & ~((2 << x) - 1)
        for y in iter_bits(rest):
            third = rest & ~adj[y] & ~((2 << y) - 1)
            if third:
                return x, y, (third & -third).bit_length() - 1
    return None


def find_claw_centers(g: Graph) -> frozenset[int]:
    return frozenset(u for u in range(g.n) if _claw_leaves(g, u) is not None)


def find_claw(g: Graph) -> ConfigWitness | None:
    for u in range(g.n):
        leaves = _claw_leaves(g, u)
        if leaves is not None:
            return _checked(g, _witness("claw", (u, *leaves), center=u, leaves=list(leaves)))
    return None


def find_hole(g: Graph) -> ConfigWitness | None:
    for cycle in iter_holes(g):
        return _witness("hole", cycle, cycle=cycle)
    return None


FINDERS = {
    "hole": find_hole,
    "theta": find_theta,
    "wheel": find_wheel,
    "pyramid": find_pyramid,
    "prism": find_prism,
    "diamond": find_diamond,
    "claw": find_claw,
}


# -- verdict ------------------------------------------------------------------


@dataclass(frozen=True)
class OracleVerdict:
    in_class: bool
    witness: ConfigWitness | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "in_class": self.in_class,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def is_theta_wheel_free_oracle(g: Graph, bound: int = DEFAULT_BOUND) -> OracleVerdict:
    """Exhaustive (theta, wheel)-freeness test with a witness on failure.

    Raises :class:`OracleBoundExceeded` instead of answering when ``g`` has
    more than ``bound`` vertices.
    """
    if g.n > bound:
        raise OracleBoundExceeded(g.n, bound)
    for hole in iter_holes(g):
        w = _wheel_on_hole(g, hole) or _theta_on_hole(g, hole)
        if w is not None:
            return OracleVerdict(False, _checked(g, w))
    return OracleVerdict(True)


class WitnessError(AssertionError):
    pass


def _checked(g: Graph, w: ConfigWitness) -> ConfigWitness:
    if not verify_witness(g, w):
        raise WitnessError(f"internal error: produced an invalid witness {w}")
    return w


# -- verification -------------------------------------------------------------


def _is_path(g: Graph, p: Sequence[int], min_length: int) -> bool:
    if len(p) - 1 < min_length or len(set(p)) != len(p):
        return False
    return all(0 <= v < g.n for v in p) and all(g.has_edge(p[i], p[i + 1]) for i in range(len(p) - 1))


def _induced_edges(g: Graph, vertices) -> set[tuple[int, int]]:
    vs = sorted(set(vertices))
    return {(u, v) for u, v in itertools.combinations(vs, 2) if g.has_edge(u, v)}


def _path_edges(p: Sequence[int]) -> set[tuple[int, int]]:
    return {(min(p[i], p[i + 1]), max(p[i], p[i + 1])) for i in range(len(p) - 1)}


def _cycle_edges(c: Sequence[int]) -> set[tuple[int, int]]:
    return _path_edges(list(c) + [c[0]])


def _valid_hole(g: Graph, cycle: Sequence[int]) -> bool:
    cycle = list(cycle)
    if len(cycle) < 4 or len(set(cycle)) != len(cycle):
        return False
    if not all(0 <= v < g.n for v in cycle):
        return False
    return _induced_edges(g, cycle) == _cycle_edges(cycle)


def verify_witness(g: Graph, w: ConfigWitness) -> bool:
    """Re-check ``w`` against the definition of its kind, from scratch."""
    try:
        return _verify(g, w)
    except (KeyError, TypeError, ValueError, IndexError):
        return False


def _verify(g: Graph, w: ConfigWitness) -> bool:
    s = w.structure
    vs = set(w.vertices)
    if len(vs) != len(w.vertices) or not all(0 <= v < g.n for v in vs):
        return False
    if w.kind == "hole":
        return _valid_hole(g, s["cycle"]) and set(s["cycle"]) == vs
    if w.kind == "wheel":
        rim, c = list(s["rim"]), s["center"]
        if not _valid_hole(g, rim) or c in rim or vs != set(rim) | {c}:
            return False
        return sum(g.has_edge(c, x) for x in rim) >= 3
    if w.kind == "theta":
        a, b = s["ends"]
        paths = [list(p) for p in s["paths"]]
        if a == b or len(paths) != 3:
            return False
        if not all(p[0] == a and p[-1] == b and _is_path(g, p, 2) for p in paths):
            return False
        interiors = [set(p[1:-1]) for p in paths]
        if sum(map(len, interiors)) != len(set().union(*interiors)):
            return False
        if vs != {a, b}.union(*interiors):
            return False
        expected = set().union(*(_path_edges(p) for p in paths))
        return _induced_edges(g, vs) == expected
    if w.kind == "pyramid":
        apex = s["apex"]
        tri = list(s["triangle"])
        paths = [list(p) for p in s["paths"]]
        if len(tri) != 3 or len(set(tri)) != 3 or len(paths) != 3 or apex in tri:
            return False
        if sorted(p[-1] for p in paths) != sorted(tri):
            return False
        if not all(p[0] == apex and _is_path(g, p, 1) for p in paths):
            return False
        if sorted(len(p) - 1 for p in paths)[1] < 2:
            return False
        rest = [set(p[1:]) for p in paths]
        if sum(map(len, rest)) != len(set().union(*rest)) or vs != {apex}.union(*rest):
            return False
        expected = set().union(*(_path_edges(p) for p in paths)) | _cycle_edges(tri)
        return _induced_edges(g, vs) == expected
    if w.kind == "prism":
        t1, t2 = (list(t) for t in s["triangles"])
        paths = [list(p) for p in s["paths"]]
        if len(t1) != 3 or len(t2) != 3 or len(paths) != 3:
            return False
        if [p[0] for p in paths] != t1 or [p[-1] for p in paths] != t2:
            return False
        if not all(_is_path(g, p, 1) for p in paths):
            return False
        members = [set(p) for p in paths]
        if sum(map(len, members)) != len(set().union(*members)) or vs != set().union(*members):
            return False
        expected = set().union(*(_path_edges(p) for p in paths)) | _cycle_edges(t1) | _cycle_edges(t2)
        return _induced_edges(g, vs) == expected
    if w.kind == "diamond":
        u, v = s["spine"]
        x, y = s["tips"]
        if vs != {u, v, x, y} or len(vs) != 4:
            return False
        return len(_induced_edges(g, vs)) == 5 and not g.has_edge(x, y)
    if w.kind == "claw":
        c = s["center"]
        leaves = list(s["leaves"])
        if vs != {c, *leaves} or len(vs) != 4:
            return False
        return _induced_edges(g, vs) == {(min(c, x), max(c, x)) for x in leaves}
    return False
