"""Line graphs and root reconstruction for triangle-free roots."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Edge, Graph, GraphError, is_connected, is_triangle_free, iter_bits


def line_graph(g: Graph) -> tuple[Graph, tuple[Edge, ...]]:
    """``L(g)`` plus the edge map: line-graph vertex ``i`` is root edge ``edges[i]``.

    Line-graph vertices follow the sorted edge order of ``g``.
    """
    edges = g.edges
    at: list[list[int]] = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(edges):
        at[u].append(i)
        at[v].append(i)
    adj = [0] * len(edges)
    for incident in at:
        mask = 0
        for i in incident:
            mask |= 1 << i
        for i in incident:
            adj[i] |= mask & ~(1 << i)
    return Graph.from_masks(adj), edges


@dataclass(frozen=True)
class RootGraph:
    """A root ``graph`` with ``L(graph)`` equal to the input under ``edge_map``.

    ``edge_map[x]`` is the root edge represented by line-graph vertex ``x``.
    """

    graph: Graph
    edge_map: tuple[Edge, ...]


def root_graph_triangle_free(lg: Graph) -> RootGraph | None:
    """Find a triangle-free ``R`` with ``L(R) = lg``, or ``None`` if none exists.

    In the line graph of a triangle-free graph every edge ``xy`` lies in exactly
    one maximal clique, namely ``{x, y} + N(x) & N(y)`` (the star at the shared
    root vertex), and each vertex lies in at most two such stars.  The stars
    become root vertices of degree >= 2; vertices covered by fewer than two
    stars get fresh degree-1 root vertices.  The result is checked against
    ``lg`` before it is returned, so a ``None`` is a certificate by exhaustion.
    """
    if not is_connected(lg):
        raise GraphError("root_graph_triangle_free requires a connected graph")
    adj = lg.adj
    cliques: dict[int, int] = {}
    for x, y in lg.edges:
        mask = adj[x] & adj[y] | 1 << x | 1 << y
        if not lg.is_clique_mask(mask):
            return None
        cliques.setdefault(mask, len(cliques))
    ordered = sorted(cliques, key=lambda c: sorted(iter_bits(c)))
    ends: list[list[int]] = [[] for _ in range(lg.n)]
    for cid, mask in enumerate(ordered):
        for x in iter_bits(mask):
            ends[x].append(cid)
    nroot = len(ordered)
    for x in range(lg.n):
        if len(ends[x]) > 2:
            return None
        while len(ends[x]) < 2:
            ends[x].append(nroot)
            nroot += 1
    edge_map = tuple((min(e), max(e)) for e in ends)
    if len(set(edge_map)) != len(edge_map):
        return None
    root = Graph(nroot, edge_map)
    if not is_triangle_free(root):
        return None
    rebuilt, order = line_graph(root)
    position = {e: i for i, e in enumerate(order)}
    mapping = [position[e] for e in edge_map]
    if lg.relabel(mapping) != rebuilt:
        return None
    return RootGraph(root, edge_map)
