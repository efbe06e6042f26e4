"""Recognition of the two basic classes: line graphs of triangle-free chordless
graphs, and P-graphs."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (
    Edge,
    Graph,
    component_masks,
    disjoint_union,
    is_chordless_graph,
    iter_bits,
    maximal_cliques,
    set_to_bits,
)
from .linegraph import RootGraph, line_graph, root_graph_triangle_free
from .oracle import find_claw_centers
from .skeleton import PGraph, Skeleton, SkeletonError, pgraph_from_skeleton, validate_skeleton

LINE_GRAPH = "line-graph"
P_GRAPH = "p-graph"
NOT_BASIC = "not-basic"


def recognize_lg_tf_chordless(g: Graph) -> RootGraph | None:
    """A triangle-free chordless ``R`` with ``L(R) = g`` (edge map included), or ``None``.

    Components are handled separately and their roots placed side by side.
    """
    roots: list[RootGraph] = []
    origins: list[tuple[int, ...]] = []
    for mask in component_masks(g):
        sub, origin = g.induced_mask(mask)
        root = root_graph_triangle_free(sub)
        if root is None or not is_chordless_graph(root.graph):
            return None
        roots.append(root)
        origins.append(origin)
    if len(roots) == 1 and origins[0] == tuple(range(g.n)):
        return roots[0]
    union, maps = disjoint_union(*(r.graph for r in roots))
    edge_map: list[Edge] = [(0, 0)] * g.n
    for root, origin, vmap in zip(roots, origins, maps):
        for i, (a, b) in enumerate(root.edge_map):
            edge_map[origin[i]] = (vmap[a], vmap[b])
    return RootGraph(union, tuple(edge_map))


def _candidate_cliques(g: Graph, s_mask: int) -> list[int]:
    common = g.all_mask
    for v in iter_bits(s_mask):
        common &= g.adj[v]
    if not common:
        return [s_mask]
    cliques = [s_mask | c for c in maximal_cliques(g, common)]
    if s_mask.bit_count() >= 2:
        return cliques
    in_triangle = any(g.adj[v] & common for v in iter_bits(common))
    if not in_triangle:
        return [s_mask]
    return [c for c in cliques if c.bit_count() >= 3]


def _try_special_clique(g: Graph, k_mask: int) -> tuple[PGraph | None, str]:
    rest = g.all_mask & ~k_mask
    if not rest:
        return None, "nothing left after removing the special clique"
    sub, origin = g.induced_mask(rest)
    if len(component_masks(sub)) != 1:
        return None, "graph minus the special clique is disconnected"
    root = root_graph_triangle_free(sub)
    if root is None:
        return None, "graph minus the special clique is not a line graph of a triangle-free graph"
    r = root.graph
    if not is_chordless_graph(r):
        return None, "root of graph minus the special clique has a chorded cycle"
    kverts = sorted(iter_bits(k_mask))
    label_of = {v: i + 1 for i, v in enumerate(kverts)}
    labels: dict[Edge, int] = {}
    for x in range(sub.n):
        a, b = root.edge_map[x]
        in_k = g.adj[origin[x]] & k_mask
        pendant = r.degree(a) == 1 or r.degree(b) == 1
        if not pendant:
            if in_k:
                return None, f"non-pendant vertex {origin[x]} has a neighbour in the special clique"
            continue
        if in_k.bit_count() != 1:
            return None, f"pendant vertex {origin[x]} has {in_k.bit_count()} neighbours in the special clique"
        labels[(a, b)] = label_of[in_k.bit_length() - 1]
    try:
        skel = Skeleton(r, len(kverts), labels)
    except SkeletonError as exc:
        return None, str(exc)
    report = validate_skeleton(skel)
    if not report.valid:
        conds = ", ".join(sorted({v.condition for v in report.violations}))
        return None, f"recovered labelled root is not a skeleton: ({conds})"
    pg = pgraph_from_skeleton(skel)
    m = len(pg.edge_map)
    position = {e: i for i, e in enumerate(pg.edge_map)}
    vertex_map = [0] * pg.graph.n
    to_b = [0] * g.n
    for x in range(sub.n):
        b = position[root.edge_map[x]]
        vertex_map[b] = origin[x]
        to_b[origin[x]] = b
    for i, v in enumerate(kverts):
        vertex_map[m + i] = v
        to_b[v] = m + i
    if g.relabel(to_b) != pg.graph:
        return None, "P-graph rebuilt from the recovered skeleton differs from the input"
    return PGraph(
        graph=pg.graph,
        skeleton=pg.skeleton,
        special_clique=pg.special_clique,
        edge_map=pg.edge_map,
        pendant_vertex_labels=pg.pendant_vertex_labels,
        big_cliques=pg.big_cliques,
        segments=pg.segments,
        vertex_map=tuple(vertex_map),
    ), "ok"


def recognize_pgraph_explained(g: Graph) -> tuple[PGraph | None, str]:
    """Like :func:`recognize_pgraph` but also returns the reason for a rejection."""
    if g.n == 0 or len(component_masks(g)) != 1:
        return None, "P-graphs are connected"
    centers = set_to_bits(find_claw_centers(g))
    if not centers:
        return None, "no claw centre"
    if not g.is_clique_mask(centers):
        return None, "claw centres do not form a clique"
    reasons = []
    for k_mask in _candidate_cliques(g, centers):
        pg, reason = _try_special_clique(g, k_mask)
        if pg is not None:
            return pg, reason
        reasons.append(f"K={sorted(iter_bits(k_mask))}: {reason}")
    if not reasons:
        return None, "no candidate special clique"
    return None, "; ".join(reasons)


def recognize_pgraph(g: Graph) -> PGraph | None:
    """The P-graph structure of ``g`` (with a skeleton and vertex map), or ``None``.

    Every candidate special clique is tried; a candidate is accepted only when
    the P-graph rebuilt from the recovered skeleton equals ``g`` exactly.
    """
    return recognize_pgraph_explained(g)[0]


@dataclass(frozen=True)
class BasicVerdict:
    kind: str
    root: RootGraph | None = None
    pgraph: PGraph | None = None
    reason: str = ""

    @property
    def is_basic(self) -> bool:
        return self.kind != NOT_BASIC

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.root is not None:
            out["root"] = self.root.graph.to_text()
            out["edge_map"] = [list(e) for e in self.root.edge_map]
        if self.pgraph is not None:
            out["pgraph"] = self.pgraph.to_json()
        if self.reason:
            out["reason"] = self.reason
        return out


def is_basic(g: Graph) -> BasicVerdict:
    root = recognize_lg_tf_chordless(g)
    if root is not None:
        return BasicVerdict(LINE_GRAPH, root=root)
    pg, reason = recognize_pgraph_explained(g)
    if pg is not None:
        return BasicVerdict(P_GRAPH, pgraph=pg)
    return BasicVerdict(NOT_BASIC, reason=f"not a line graph of a triangle-free chordless graph; {reason}")


def line_graph_of(root: RootGraph) -> Graph:
    """Rebuild ``L(R)`` in the ids of the recognised input."""
    lg, order = line_graph(root.graph)
    position = {e: i for i, e in enumerate(order)}
    inverse = [0] * lg.n
    for x, e in enumerate(root.edge_map):
        inverse[position[e]] = x
    return lg.relabel(inverse)
