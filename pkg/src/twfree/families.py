"""Named graphs and small constructions used by tests, the CLI and the generator."""

from __future__ import annotations

from collections.abc import Sequence

from .graph import Edge, Graph


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def claw() -> Graph:
    return star(3)


def diamond() -> Graph:
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def bowtie() -> Graph:
    return Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def wheel(rim: int) -> Graph:
    """``W_rim``: a hole of length ``rim`` (vertices ``0..rim-1``) plus a universal centre ``rim``."""
    return Graph(rim + 1, [(i, (i + 1) % rim) for i in range(rim)] + [(i, rim) for i in range(rim)])


def spider(legs: Sequence[int]) -> Graph:
    """A centre (vertex 0) with one path of each given length hanging off it."""
    edges: list[Edge] = []
    n = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, n))
            prev = n
            n += 1
    return Graph(n, edges)


def theta_graph(lengths: Sequence[int]) -> Graph:
    """Two vertices (0 and 1) joined by three internally disjoint paths."""
    if len(lengths) != 3 or min(lengths) < 2:
        raise ValueError("a theta needs three paths of length >= 2")
    edges: list[Edge] = []
    n = 2
    for length in lengths:
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, 1))
    return Graph(n, edges)


def pyramid(lengths: Sequence[int]) -> Graph:
    """Apex 0 joined to triangle ``1, 2, 3`` by paths of the given lengths."""
    if len(lengths) != 3 or min(lengths) < 1 or sorted(lengths)[1] < 2:
        raise ValueError("a pyramid needs path lengths >= 1, two of them >= 2")
    edges: list[Edge] = [(1, 2), (1, 3), (2, 3)]
    n = 4
    for i, length in enumerate(lengths):
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, i + 1))
    return Graph(n, edges)


def prism(lengths: Sequence[int]) -> Graph:
    """Triangles ``0,1,2`` and ``3,4,5`` joined by paths ``i -> i+3``."""
    if len(lengths) != 3 or min(lengths) < 1:
        raise ValueError("a prism needs three paths of length >= 1")
    edges: list[Edge] = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]
    n = 6
    for i, length in enumerate(lengths):
        prev = i
        for _ in range(length - 1):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, i + 3))
    return Graph(n, edges)


def grid(rows: int, cols: int) -> Graph:
    idx = lambda r, c: r * cols + c  # noqa: E731
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((idx(r, c), idx(r, c + 1)))
            if r + 1 < rows:
                edges.append((idx(r, c), idx(r + 1, c)))
    return Graph(rows * cols, edges)


def subdivide(g: Graph, times: int = 1) -> Graph:
    """Replace every edge by a path of length ``times + 1``."""
    edges: list[Edge] = []
    n = g.n
    for u, v in g.edges:
        prev = u
        for _ in range(times):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, v))
    return Graph(n, edges)


NAMED = {
    "petersen": petersen,
    "claw": claw,
    "diamond": diamond,
    "bowtie": bowtie,
}
