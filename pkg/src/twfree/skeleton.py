"""k-skeletons: validation of the eleven skeleton conditions and P-graph construction.

Condition ids are the roman numerals ``"i"`` .. ``"xi"``.  The validator
reports every violated condition with a witness rather than stopping at the
first, so it doubles as a debugging aid for the generator.
"""

from __future__ import annotations

import itertools
from collections import Counter
from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from typing import Union

from .graph import (
    Edge,
    Graph,
    GraphError,
    GraphParseError,
    _lines,
    block_masks,
    bits_to_set,
    component_masks,
    cut_vertex_mask,
    format_graph,
    is_chordless_graph,
    is_triangle_free,
    iter_bits,
    parse_graph_lines,
    set_to_bits,
)
from .linegraph import line_graph

CONDITIONS = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi")

UNION_CAP = 1 << 12


class SkeletonError(GraphError):
    pass


class PetalUnionLimitExceeded(SkeletonError):
    """Condition (x) would need more petal unions than the configured cap."""


def _norm(e: Edge) -> Edge:
    u, v = e
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Skeleton:
    """A graph ``R`` with labels in ``1..k`` on its pendant edges.

    Labels on non-pendant edges (or on non-edges) are rejected here; missing
    or out-of-range labels are left for the validator to report under (vi).
    """

    graph: Graph
    k: int
    labels: Mapping[Edge, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        r = self.graph
        normalized = {}
        for e, lab in self.labels.items():
            u, v = _norm(e)
            if not (0 <= u < r.n and 0 <= v < r.n and r.has_edge(u, v)):
                raise SkeletonError(f"label on non-edge {u} {v}")
            if r.degree(u) != 1 and r.degree(v) != 1:
                raise SkeletonError(f"label on non-pendant edge {u} {v}")
            normalized[(u, v)] = int(lab)
        object.__setattr__(self, "labels", dict(sorted(normalized.items())))

    def label(self, e: Edge) -> int | None:
        return self.labels.get(_norm(e))

    def pendant_edges(self) -> list[Edge]:
        r = self.graph
        return [(u, v) for u, v in r.edges if r.degree(u) == 1 or r.degree(v) == 1]

    def label_counts(self) -> Counter:
        return Counter(self.labels.values())

    def to_text(self) -> str:
        out = [format_graph(self.graph).rstrip("\n"), f"k {self.k}"]
        out.extend(f"label {u} {v} {lab}" for (u, v), lab in self.labels.items())
        return "\n".join(out) + "\n"


def parse_skeleton(text: Union[str, bytes]) -> Skeleton:
    """Read a graph block, a ``k <int>`` line and ``label u v i`` lines."""
    lines = _lines(text)
    r = parse_graph_lines(lines)
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise GraphParseError(0, "missing 'k <int>' line") from None
    parts = line.split()
    if len(parts) != 2 or parts[0] != "k":
        raise GraphParseError(lineno, f"expected 'k <int>', got {line!r}")
    try:
        k = int(parts[1])
    except ValueError:
        raise GraphParseError(lineno, f"non-integer k: {line!r}") from None
    labels: dict[Edge, int] = {}
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != 4 or parts[0] != "label":
            raise GraphParseError(lineno, f"expected 'label u v i', got {line!r}")
        try:
            u, v, lab = (int(p) for p in parts[1:])
        except ValueError:
            raise GraphParseError(lineno, f"non-integer label line: {line!r}") from None
        e = _norm((u, v))
        if not (0 <= e[0] and e[1] < r.n and r.has_edge(*e)):
            raise GraphParseError(lineno, f"label on non-edge {u} {v}")
        if r.degree(u) != 1 and r.degree(v) != 1:
            raise GraphParseError(lineno, f"label on non-pendant edge {u} {v}")
        if e in labels:
            raise GraphParseError(lineno, f"edge {u} {v} labelled twice")
        labels[e] = lab
    return Skeleton(r, k, labels)


# -- branches, limbs, petals ------------------------------------------------------


@dataclass(frozen=True)
class BranchesAndLimbs:
    branches: list[list[int]]
    limbs: list[list[int]]
    leftover: list[Edge]


def branches_and_limbs(r: Graph) -> BranchesAndLimbs:
    """Branches run between branch vertices (degree >= 3); limbs end at a degree-1 vertex.

    Both are traced through degree-2 interiors.  Limbs are oriented from the
    branch vertex to the leaf; edges covered by neither are listed as leftover.
    """
    deg = [r.degree(v) for v in range(r.n)]
    branches: list[list[int]] = []
    limbs: list[list[int]] = []
    covered: set[Edge] = set()
    for x in range(r.n):
        if deg[x] < 3:
            continue
        for y in r.neighbors(x):
            path = [x, y]
            while deg[path[-1]] == 2:
                a, b = r.neighbors(path[-1])
                nxt = b if a == path[-2] else a
                if nxt == x:
                    break
                path.append(nxt)
            end = path[-1]
            if deg[end] == 2:
                continue  # closed back onto x: a cycle, not a path
            if deg[end] == 1:
                limbs.append(path)
            elif x < end:
                branches.append(path)
            else:
                continue
            covered.update(_norm((path[i], path[i + 1])) for i in range(len(path) - 1))
    leftover = [e for e in r.edges if e not in covered]
    return BranchesAndLimbs(branches, limbs, leftover)


def attaching_vertices(r: Graph) -> list[int]:
    cut = cut_vertex_mask(r)
    return [v for v in iter_bits(cut) if r.degree(v) >= 3]


def _is_limb_component(r: Graph, x: int, comp: int) -> bool:
    if (r.adj[x] & comp).bit_count() != 1:
        return False
    degs = [r.degree(v) for v in iter_bits(comp)]
    if any(d > 2 for d in degs) or degs.count(1) != 1:
        return False
    return r.edge_count_in(comp) == comp.bit_count() - 1


def _petal_masks(r: Graph, x: int) -> list[int]:
    rest = r.all_mask & ~(1 << x)
    petals = []
    limbs = 0
    nlimbs = 0
    for comp in component_masks(r, rest):
        if _is_limb_component(r, x, comp):
            limbs |= comp
            nlimbs += 1
        else:
            petals.append(comp | 1 << x)
    if nlimbs >= 2:
        petals.append(limbs | 1 << x)
    return petals


def petals(r: Graph, x: int) -> list[frozenset[int]]:
    """The ``x``-petals of ``r`` as vertex sets (each containing ``x``).

    Non-limb components of ``r - x`` come first, ordered by least vertex; the
    union of the limbs at ``x`` comes last when there are at least two.
    """
    if x not in attaching_vertices(r):
        raise SkeletonError(f"vertex {x} is not an attaching vertex")
    return [bits_to_set(p) for p in _petal_masks(r, x)]


# -- validation -----------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    condition: str
    message: str
    witness: tuple = ()

    def to_json(self) -> dict:
        return {"condition": self.condition, "message": self.message, "witness": _listify(self.witness)}


def _listify(value):
    if isinstance(value, (list, tuple, frozenset, set)):
        items = sorted(value) if isinstance(value, (frozenset, set)) else value
        return [_listify(v) for v in items]
    return value


@dataclass(frozen=True)
class SkeletonReport:
    violations: list[Violation]

    @property
    def valid(self) -> bool:
        return not self.violations

    def violated(self) -> set[str]:
        return {v.condition for v in self.violations}

    def to_json(self) -> dict:
        return {"valid": self.valid, "violations": [v.to_json() for v in self.violations]}


def _pendant_in(s: Skeleton, mask: int) -> list[Edge]:
    return [e for e in s.pendant_edges() if (mask >> e[0] & 1) and (mask >> e[1] & 1)]


def _labels_in(s: Skeleton, mask: int) -> set[int]:
    return {s.labels[e] for e in _pendant_in(s, mask) if e in s.labels}


def _check_i(s: Skeleton) -> Iterator[Violation]:
    r = s.graph
    comps = component_masks(r)
    if len(comps) != 1:
        yield Violation("i", "R is not connected", tuple(tuple(iter_bits(c)) for c in comps))
    for u, v in r.edges:
        common = r.adj[u] & r.adj[v]
        if common:
            w = (common & -common).bit_length() - 1
            yield Violation("i", "R has a triangle", (u, v, w))
            break
    if not is_chordless_graph(r):
        yield Violation("i", "R has a cycle with a chord")
    pend = s.pendant_edges()
    if len(pend) < 3:
        yield Violation("i", f"R has {len(pend)} pendant edges, needs at least 3", tuple(pend))


def _check_ii(s: Skeleton, bl: BranchesAndLimbs) -> Iterator[Violation]:
    by_ends: dict[tuple[int, int], list[list[int]]] = {}
    for b in bl.branches:
        by_ends.setdefault(_norm((b[0], b[-1])), []).append(b)
    for ends, group in sorted(by_ends.items()):
        if len(group) > 1:
            yield Violation("ii", f"parallel branches between {ends[0]} and {ends[1]}", tuple(map(tuple, group)))


def _check_iii(s: Skeleton) -> Iterator[Violation]:
    r = s.graph
    leaves = set_to_bits(v for v in range(r.n) if r.degree(v) == 1)
    for u in iter_bits(cut_vertex_mask(r)):
        for comp in component_masks(r, r.all_mask & ~(1 << u)):
            if not comp & leaves:
                yield Violation(
                    "iii", f"component of R - {u} has no degree-1 vertex", (u, tuple(iter_bits(comp)))
                )


def _is_ab_path(r: Graph, mask: int, a: int, b: int) -> bool:
    if r.edge_count_in(mask) != mask.bit_count() - 1:
        return False
    for v in iter_bits(mask):
        d = (r.adj[v] & mask).bit_count()
        if d != (1 if v in (a, b) else 2):
            return False
    return len(component_masks(r, mask)) == 1


def _check_iv(s: Skeleton) -> Iterator[Violation]:
    r = s.graph
    leaves = set_to_bits(v for v in range(r.n) if r.degree(v) == 1)
    for a, b in itertools.combinations(range(r.n), 2):
        pair = 1 << a | 1 << b
        comps = component_masks(r, r.all_mask & ~pair)
        if len(comps) < 2:
            continue
        for comp in comps:
            if comp & leaves or _is_ab_path(r, comp | pair, a, b):
                continue
            yield Violation(
                "iv",
                f"component of R - {{{a}, {b}}} is neither an {a}-{b} chordless path nor has a degree-1 vertex",
                ((a, b), tuple(iter_bits(comp))),
            )


def _check_v(s: Skeleton) -> Iterator[Violation]:
    r = s.graph
    for block in block_masks(r):
        if block.bit_count() < 3:
            continue
        for u in iter_bits(block):
            for v in iter_bits(r.adj[u] & block):
                if u < v and r.degree(u) >= 3 and r.degree(v) >= 3:
                    yield Violation("v", f"cycle edge {u} {v} has both ends of degree >= 3", ((u, v),))


def _check_vi(s: Skeleton) -> Iterator[Violation]:
    if s.k < 1:
        yield Violation("vi", f"k must be at least 1, got {s.k}")
    for e in s.pendant_edges():
        lab = s.labels.get(e)
        if lab is None:
            yield Violation("vi", f"pendant edge {e[0]} {e[1]} has no label", (e,))
        elif not 1 <= lab <= s.k:
            yield Violation("vi", f"label {lab} on {e[0]} {e[1]} outside 1..{s.k}", (e,))


def _check_vii(s: Skeleton) -> Iterator[Violation]:
    counts = s.label_counts()
    for i in range(1, s.k + 1):
        if counts[i] == 0:
            yield Violation("vii", f"label {i} is never used", (i,))
    if not any(c >= 2 for c in counts.values()):
        yield Violation("vii", "no label is used at least twice")


def _check_viii(s: Skeleton) -> Iterator[Violation]:
    r = s.graph
    counts = s.label_counts()
    for (u, v), lab in s.labels.items():
        if max(r.degree(u), r.degree(v)) >= 3 and counts[lab] > 1:
            yield Violation(
                "viii",
                f"pendant edge {u} {v} at a branch vertex shares label {lab}",
                ((u, v), lab),
            )


def _check_ix(s: Skeleton, bl: BranchesAndLimbs) -> Iterator[Violation]:
    if not bl.branches:
        if s.k != 1:
            yield Violation("ix", f"R has no branches but k = {s.k}")
        return
    counts = s.label_counts()
    by_base: dict[int, list[list[int]]] = {}
    for limb in bl.limbs:
        by_base.setdefault(limb[0], []).append(limb)
    for base, group in sorted(by_base.items()):
        for l1, l2 in itertools.combinations(group, 2):
            lab1 = s.label((l1[-2], l1[-1]))
            lab2 = s.label((l2[-2], l2[-1]))
            if lab1 is None or lab2 is None:
                continue
            if lab1 == lab2:
                yield Violation("ix", f"parallel limbs at {base} share label {lab1}", (tuple(l1), tuple(l2)))
            elif counts[lab1] < 2 and counts[lab2] < 2:
                yield Violation(
                    "ix",
                    f"parallel limbs at {base} carry labels {lab1}, {lab2}, neither used twice",
                    (tuple(l1), tuple(l2)),
                )


def _check_x(s: Skeleton, union_cap: int) -> Iterator[Violation]:
    if s.k <= 1:
        return
    r = s.graph
    for x in attaching_vertices(r):
        plist = _petal_masks(r, x)
        for p in plist:
            used = _labels_in(s, p)
            if len(used) < 2:
                yield Violation("x", f"{x}-petal uses {len(used)} distinct label(s)", (x, tuple(iter_bits(p))))
        count = len(plist)
        if count < 2:
            continue
        if (1 << count) - 2 > union_cap:
            raise PetalUnionLimitExceeded(
                f"attaching vertex {x} has {count} petals; {2**count - 2} unions exceed cap {union_cap}"
            )
        for size in range(1, count):
            for chosen in itertools.combinations(plist, size):
                union = 0
                for p in chosen:
                    union |= p
                rest = r.all_mask & ~union | 1 << x
                if not _labels_in(s, union) & _labels_in(s, rest):
                    yield Violation(
                        "x",
                        f"petal union at {x} shares no label with the rest of R",
                        (x, tuple(iter_bits(union))),
                    )


def _check_xi(s: Skeleton) -> Iterator[Violation]:
    if s.k != 2:
        return
    counts = s.label_counts()
    for i in (1, 2):
        if counts[i] < 2:
            yield Violation("xi", f"k = 2 but label {i} is used {counts[i]} time(s)", (i,))


def validate_skeleton(s: Skeleton, union_cap: int = UNION_CAP) -> SkeletonReport:
    """Check all eleven skeleton conditions and report every violation found.

    Condition (ix) applies its parallel-limb clause only when ``R`` has a
    branch; a branchless ``R`` must have ``k = 1`` instead.  Raises
    :class:`PetalUnionLimitExceeded` rather than answering when (x) would need
    more than ``union_cap`` petal unions at one vertex.
    """
    bl = branches_and_limbs(s.graph)
    violations: list[Violation] = []
    violations += _check_i(s)
    violations += _check_ii(s, bl)
    violations += _check_iii(s)
    violations += _check_iv(s)
    violations += _check_v(s)
    violations += _check_vi(s)
    violations += _check_vii(s)
    violations += _check_viii(s)
    violations += _check_ix(s, bl)
    violations += _check_x(s, union_cap)
    violations += _check_xi(s)
    return SkeletonReport(violations)


def is_skeleton(s: Skeleton) -> bool:
    return validate_skeleton(s).valid


# -- P-graphs -------------------------------------------------------------------


class InvalidSkeletonError(SkeletonError):
    def __init__(self, report: SkeletonReport):
        conds = ", ".join(sorted(report.violated(), key=CONDITIONS.index))
        super().__init__(f"not a k-skeleton; violates ({conds})")
        self.report = report


@dataclass(frozen=True)
class Segment:
    """A path left after deleting the edges of ``K`` and of the big cliques.

    ``vertices`` are P-graph vertices in path order.  Internal segments run
    between two big cliques, named by their root vertices in ``ends``.  Leaf
    segments end at a special-clique vertex, which is ``ends[1]``.
    """

    kind: str
    vertices: tuple[int, ...]
    ends: tuple[int, int]


@dataclass(frozen=True)
class PGraph:
    """A P-graph ``B`` with its skeleton and construction bookkeeping.

    Vertices ``0..m-1`` of ``graph`` are the line-graph vertices (``edge_map``
    gives their root edges); ``m..m+k-1`` are the special clique, with
    ``m + i - 1`` playing the role of label ``i``.  ``vertex_map`` is set by
    recognition and sends every vertex of ``graph`` to the input vertex it
    was identified with.
    """

    graph: Graph
    skeleton: Skeleton
    special_clique: tuple[int, ...]
    edge_map: tuple[Edge, ...]
    pendant_vertex_labels: Mapping[int, int]
    big_cliques: Mapping[int, frozenset[int]]
    segments: tuple[Segment, ...]
    vertex_map: tuple[int, ...] | None = None

    @property
    def k(self) -> int:
        return self.skeleton.k

    def as_input(self) -> Graph:
        """The P-graph renamed into the ids of the recognised input."""
        if self.vertex_map is None:
            return self.graph
        return self.graph.relabel(self.vertex_map)

    def to_json(self) -> dict:
        vmap = self.vertex_map or tuple(range(self.graph.n))
        return {
            "k": self.k,
            "special_clique": sorted(vmap[v] for v in self.special_clique),
            "skeleton": self.skeleton.to_text(),
            "edge_map": {str(vmap[i]): list(e) for i, e in enumerate(self.edge_map)},
        }


def _segments(s: Skeleton, bl: BranchesAndLimbs, index: Mapping[Edge, int], m: int) -> tuple[Segment, ...]:
    def edge_path(path: list[int]) -> list[int]:
        return [index[_norm((path[i], path[i + 1]))] for i in range(len(path) - 1)]

    segs: list[Segment] = []
    for b in bl.branches:
        segs.append(Segment("internal", tuple(edge_path(b)), (b[0], b[-1])))
    leaf: list[tuple[list[int], int, int]] = []
    for limb in bl.limbs:
        verts = edge_path(limb)
        lab = s.label((limb[-2], limb[-1]))
        if lab is None or not 1 <= lab <= s.k:
            continue
        leaf.append((verts, limb[0], m + lab - 1))
    at_k = Counter(u for _, _, u in leaf)
    for verts, base, u in leaf:
        kind = "claw" if at_k[u] > 1 else "clique"
        segs.append(Segment(kind, tuple(verts) + (u,), (base, u)))
    return tuple(segs)


def pgraph_from_skeleton(s: Skeleton, force: bool = False) -> PGraph:
    """Build ``B = L(R) + K`` with ``v_i`` joined to the pendant vertices labelled ``i``.

    ``force=True`` skips validation (used to exercise invalid skeletons); it
    still needs every pendant edge to carry a label in ``1..k``.
    """
    if not force:
        report = validate_skeleton(s)
        if not report.valid:
            raise InvalidSkeletonError(report)
    r = s.graph
    lg, edge_map = line_graph(r)
    m = lg.n
    k = s.k
    index = {e: i for i, e in enumerate(edge_map)}
    edges = list(lg.edges)
    edges += [(m + i, m + j) for i in range(k) for j in range(i + 1, k)]
    pendant_labels: dict[int, int] = {}
    for e in s.pendant_edges():
        lab = s.labels.get(e)
        if lab is None or not 1 <= lab <= k:
            raise SkeletonError(f"pendant edge {e} needs a label in 1..{k}")
        pendant_labels[index[e]] = lab
        edges.append((index[e], m + lab - 1))
    b = Graph(m + k, edges)
    big = {
        v: frozenset(index[_norm((v, w))] for w in r.neighbors(v)) for v in range(r.n) if r.degree(v) >= 3
    }
    bl = branches_and_limbs(r)
    return PGraph(
        graph=b,
        skeleton=s,
        special_clique=tuple(range(m, m + k)),
        edge_map=edge_map,
        pendant_vertex_labels=pendant_labels,
        big_cliques=big,
        segments=_segments(s, bl, index, m),
    )
