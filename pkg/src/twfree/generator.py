"""Random members of the class built from basic pieces by gluing along cliques
and by 2-join compositions, with replayable recipes.

Randomness comes from numpy's PCG64.  Recipe ``index`` of a corpus with seed
``seed`` uses its own stream ``default_rng([seed, index])``, so any single
recipe can be regenerated without the others.
"""

from __future__ import annotations

import json
from collections.abc import Iterator, Sequence
from dataclasses import asdict, dataclass

import numpy as np

from .cutsets import compose_two_join, glue_clique, marker_problems
from .graph import (
    Edge,
    Graph,
    GraphError,
    component_masks,
    is_chordless_graph,
    is_triangle_free,
    iter_bits,
    maximal_cliques,
    parse_graph,
)
from .linegraph import line_graph
from .oracle import DEFAULT_BOUND, is_theta_wheel_free_oracle
from .skeleton import Skeleton, branches_and_limbs, parse_skeleton, pgraph_from_skeleton, validate_skeleton


class GenerationError(RuntimeError):
    pass


class VerificationFailure(GenerationError):
    """An emitted graph failed the oracle; carries the offending recipe."""

    def __init__(self, message: str, recipe: dict):
        super().__init__(message)
        self.recipe = recipe


@dataclass(frozen=True)
class GenSpec:
    seed: int = 0
    vertex_budget: int = 20
    skeleton_edges: int = 12
    k_range: tuple[int, int] = (1, 3)
    depth: int = 2
    glue_weight: float = 1.0
    join_weight: float = 1.0
    pgraph_weight: float = 1.0
    line_weight: float = 1.0
    bound: int = DEFAULT_BOUND
    max_tries: int = 2000

    def __post_init__(self) -> None:
        if self.vertex_budget < 1 or self.skeleton_edges < 1 or self.max_tries < 1:
            raise ValueError("budgets must be positive")
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")
        lo, hi = self.k_range
        if not 1 <= lo <= hi:
            raise ValueError("k_range must satisfy 1 <= lo <= hi")
        weights = (self.glue_weight, self.join_weight, self.pgraph_weight, self.line_weight)
        if min(weights) < 0:
            raise ValueError("weights must be nonnegative")
        if self.glue_weight + self.join_weight == 0 and self.depth > 0:
            raise ValueError("composition weights are all zero")
        if self.pgraph_weight + self.line_weight == 0:
            raise ValueError("basic-piece weights are all zero")


# skeleton proposals per P-graph piece before falling back to a line-graph piece
PIECE_TRIES = 100


def stream(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


# -- triangle-free chordless graphs ---------------------------------------------------


def _ok_root(g: Graph) -> bool:
    return is_triangle_free(g) and is_chordless_graph(g)


def random_tf_chordless(
    rng: np.random.Generator, vertices: int, strategy: str = "mixed", ear_prob: float = 0.3
) -> Graph:
    """A connected triangle-free chordless graph on exactly ``vertices`` vertices.

    ``strategy`` is ``"mixed"`` (a tree grown by pendant vertices and ears),
    ``"tree"`` or ``"cycle"`` (the cycle ``C_vertices``).  Every ear is kept
    only if the graph stays triangle-free and chordless.
    """
    if vertices < 2:
        raise GenerationError("need at least 2 vertices for a connected graph with an edge")
    if strategy == "cycle":
        if vertices < 4:
            raise GenerationError("a triangle-free cycle needs at least 4 vertices")
        g = Graph(vertices, [(i, (i + 1) % vertices) for i in range(vertices)])
    else:
        edges: list[Edge] = [(0, 1)]
        n = 2
        while n < vertices:
            room = vertices - n
            if strategy == "mixed" and n >= 3 and room >= 1 and rng.random() < ear_prob:
                inner = int(rng.integers(1, min(room, 4) + 1))
                u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
                path = [u] + list(range(n, n + inner)) + [v]
                trial = edges + [(path[i], path[i + 1]) for i in range(len(path) - 1)]
                if _ok_root(Graph(n + inner, trial)):
                    edges, n = trial, n + inner
                    continue
            edges.append((int(rng.integers(n)), n))
            n += 1
        g = Graph(vertices, edges)
    if not (_ok_root(g) and len(component_masks(g)) == 1):
        raise GenerationError("internal error: produced graph is not triangle-free chordless")
    return g


# -- skeletons -------------------------------------------------------------------


def _core_graph(rng: np.random.Generator, size: int, cyclic: bool) -> Graph:
    """A small connected simple graph used as the shape of the skeleton's branches."""
    if size == 1:
        return Graph(1)
    edges = {(int(rng.integers(i)), i) for i in range(1, size)}
    extra = int(rng.integers(1 if cyclic else 0, size))
    for _ in range(extra):
        u, v = sorted(int(x) for x in rng.choice(size, size=2, replace=False))
        edges.add((u, v))
    return Graph(size, edges)


def _limb_length(rng: np.random.Generator) -> int:
    # length-1 limbs at branch vertices need a private label, so keep them rare
    return 1 if rng.random() < 0.2 else int(rng.integers(2, 4))


def _propose_skeleton_graph(rng: np.random.Generator, edge_budget: int) -> Graph | None:
    cyclic = rng.random() < 0.5
    core = _core_graph(rng, int(rng.integers(3 if cyclic else 1, 6)), cyclic)
    edges: list[Edge] = []
    n = core.n
    for u, v in core.edges:
        prev = u
        for _ in range(int(rng.integers(1, 3 if cyclic else 4))):
            edges.append((prev, n))
            prev = n
            n += 1
        edges.append((prev, v))
    for v in range(core.n):
        need = max(0, 3 - core.degree(v)) if core.n > 1 else 3
        limbs = need + int(rng.integers(0, 2)) if need or rng.random() < 0.5 else 0
        if core.n == 1:
            limbs = 3 + int(rng.integers(0, 2))
        for _ in range(limbs):
            prev = v
            for _ in range(_limb_length(rng)):
                edges.append((prev, n))
                prev = n
                n += 1
    if len(edges) > edge_budget or len(edges) < 3:
        return None
    return Graph(n, edges)


def _assign_labels(rng: np.random.Generator, r: Graph, k: int) -> dict[Edge, int] | None:
    """Random labels using every value in ``1..k``; limbs sharing a base get distinct labels when possible."""
    bl = branches_and_limbs(r)
    pend = [(u, v) for u, v in r.edges if r.degree(u) == 1 or r.degree(v) == 1]
    if len(pend) < k + 1:
        return None
    labels = [i + 1 for i in range(k)]
    labels += [int(x) for x in rng.integers(1, k + 1, size=len(pend) - k)]
    rng.shuffle(labels)
    out = dict(zip(pend, labels))
    groups: dict[int, list[Edge]] = {}
    for limb in bl.limbs:
        e = (min(limb[-2], limb[-1]), max(limb[-2], limb[-1]))
        groups.setdefault(limb[0], []).append(e)
    for group in groups.values():
        if 1 < len(group) <= k and len({out[e] for e in group}) < len(group):
            for e, lab in zip(group, rng.permutation(k)[: len(group)]):
                out[e] = int(lab) + 1
    return out


def random_skeleton(
    rng: np.random.Generator, k: int | None = None, edge_budget: int = 12, max_tries: int = 2000
) -> Skeleton:
    """A valid k-skeleton by rejection sampling over subdivided cores with limbs.

    The validator is the only acceptance test; proposals just bias towards
    valid shapes.  Raises :class:`GenerationError` with rejection counts when
    ``max_tries`` proposals all fail.
    """
    stats: dict[str, int] = {}
    for _ in range(max_tries):
        kk = k if k is not None else int(rng.integers(1, 4))
        r = _propose_skeleton_graph(rng, edge_budget)
        if r is None:
            stats["budget"] = stats.get("budget", 0) + 1
            continue
        for _ in range(5):
            labels = _assign_labels(rng, r, kk)
            if labels is None:
                stats["too few pendant edges"] = stats.get("too few pendant edges", 0) + 1
                break
            s = Skeleton(r, kk, labels)
            report = validate_skeleton(s)
            if report.valid:
                return s
            for cond in report.violated():
                stats[cond] = stats.get(cond, 0) + 1
    raise GenerationError(f"no valid skeleton in {max_tries} proposals; rejections: {stats}")


# -- marker paths ---------------------------------------------------------------


def _marker_filters(g: Graph, markers: tuple[int, int, int]) -> bool:
    """Stricter generator-side conditions on a marker path (beyond the almost 2-join clauses)."""
    a, c, b = markers
    rest = g.all_mask & ~(1 << a | 1 << b | 1 << c)
    na = g.adj[a] & rest
    nb = g.adj[b] & rest
    if not (g.is_clique_mask(na) and g.is_clique_mask(nb)):
        return False
    for comp in component_masks(g, rest):
        if not (comp & na and comp & nb):
            return False
    for u in iter_bits(na):
        if g.adj[u] & nb == nb:
            return False
    for u in iter_bits(nb):
        if g.adj[u] & na == na:
            return False
    return True


def marker_candidates(g: Graph, strict: bool = True) -> list[tuple[int, int, int]]:
    """Paths ``a - c - b`` of ``g`` usable as marker paths, ``a < b``."""
    out = []
    for c in range(g.n):
        if g.degree(c) != 2:
            continue
        a, b = g.neighbors(c)
        mk = (a, c, b)
        if marker_problems(g, mk):
            continue
        if strict and not _marker_filters(g, mk):
            continue
        out.append(mk)
    return out


# -- recipes --------------------------------------------------------------------


@dataclass
class ProvenancedGraph:
    graph: Graph
    recipe: dict
    oracle: str = "skipped"

    def to_json(self) -> dict:
        return {"graph": self.graph.to_text(), "recipe": self.recipe, "oracle": self.oracle}

    @classmethod
    def from_json(cls, data: dict) -> ProvenancedGraph:
        return cls(parse_graph(data["graph"]), data["recipe"], data.get("oracle", "skipped"))


def replay(recipe: dict) -> Graph:
    """Rebuild the graph described by ``recipe`` (byte-identical to the original)."""
    op = recipe["op"]
    if op == "line-graph":
        return line_graph(parse_graph(recipe["root"]))[0]
    if op == "p-graph":
        return pgraph_from_skeleton(parse_skeleton(recipe["skeleton"])).graph
    if op == "glue":
        g1, g2 = replay(recipe["left"]), replay(recipe["right"])
        return glue_clique(g1, g2, recipe["k1"], recipe["k2"], dict(zip(recipe["k1"], recipe["k2"])))
    if op == "two-join":
        g1, g2 = replay(recipe["left"]), replay(recipe["right"])
        return compose_two_join(g1, tuple(recipe["markers1"]), g2, tuple(recipe["markers2"])).graph
    raise GenerationError(f"unknown recipe op {op!r}")


def _line_piece(rng: np.random.Generator, budget: int) -> tuple[Graph, dict]:
    # L(R) has |E(R)| vertices; a connected R on v vertices has at least v - 1 edges
    for _ in range(50):
        v = int(rng.integers(2, max(3, budget) + 1))
        r = random_tf_chordless(rng, v)
        if r.m <= budget:
            return line_graph(r)[0], {"op": "line-graph", "root": r.to_text()}
    r = random_tf_chordless(rng, 2)
    return line_graph(r)[0], {"op": "line-graph", "root": r.to_text()}


def _pgraph_piece(rng: np.random.Generator, spec: GenSpec, budget: int) -> tuple[Graph, dict] | None:
    # without a line-graph fallback, spend the whole retry budget
    tries = spec.max_tries if spec.line_weight == 0 else min(spec.max_tries, PIECE_TRIES)
    lo, hi = spec.k_range
    k = int(rng.integers(lo, hi + 1))
    edge_budget = min(spec.skeleton_edges, budget - k)
    if edge_budget < 6:
        return None
    try:
        s = random_skeleton(rng, k, edge_budget, tries)
    except GenerationError:
        return None
    return pgraph_from_skeleton(s).graph, {"op": "p-graph", "skeleton": s.to_text()}


def _basic_piece(rng: np.random.Generator, spec: GenSpec, budget: int) -> tuple[Graph, dict]:
    total = spec.pgraph_weight + spec.line_weight
    if rng.random() < spec.pgraph_weight / total:
        piece = _pgraph_piece(rng, spec, budget)
        if piece is not None:
            return piece
        if spec.line_weight == 0:
            raise GenerationError(f"no P-graph fits a budget of {budget} vertices")
    return _line_piece(rng, budget)


def _random_clique(rng: np.random.Generator, g: Graph, size: int) -> list[int] | None:
    big = [c for c in maximal_cliques(g) if c.bit_count() >= size]
    if not big:
        return None
    chosen = sorted(iter_bits(big[int(rng.integers(len(big)))]))
    return sorted(int(x) for x in rng.choice(chosen, size=size, replace=False))


def _build(rng: np.random.Generator, spec: GenSpec, depth: int, budget: int) -> tuple[Graph, dict]:
    if depth == 0 or budget < 6:
        return _basic_piece(rng, spec, budget)
    total = spec.glue_weight + spec.join_weight
    if rng.random() < spec.glue_weight / total:
        # each side keeps the shared clique, so it may use up to budget - 1 vertices
        left_budget = int(rng.integers(2, max(3, budget - 1)))
        g1, r1 = _build(rng, spec, depth - 1, left_budget)
        size = int(rng.integers(1, 3))
        k1 = _random_clique(rng, g1, size) or _random_clique(rng, g1, 1)
        g2, r2 = _build(rng, spec, depth - 1, budget - g1.n + len(k1))
        k2 = _random_clique(rng, g2, len(k1))
        if k2 is None or g1.n + g2.n - len(k1) > budget:
            return g1, r1
        g = glue_clique(g1, g2, k1, k2, dict(zip(k1, k2)))
        return g, {"op": "glue", "left": r1, "right": r2, "k1": k1, "k2": k2}
    for _ in range(20):
        left_budget = int(rng.integers(6, max(7, budget - 2)))
        g1, r1 = _build(rng, spec, depth - 1, left_budget)
        m1 = marker_candidates(g1)
        if not m1:
            continue
        g2, r2 = _build(rng, spec, depth - 1, budget - g1.n + 6)
        m2 = marker_candidates(g2)
        if not m2 or g1.n + g2.n - 6 > budget:
            continue
        mk1 = m1[int(rng.integers(len(m1)))]
        mk2 = m2[int(rng.integers(len(m2)))]
        g = compose_two_join(g1, mk1, g2, mk2).graph
        recipe = {"op": "two-join", "left": r1, "right": r2, "markers1": list(mk1), "markers2": list(mk2)}
        return g, recipe
    return _basic_piece(rng, spec, budget)


def generate_one(spec: GenSpec, index: int, verify: bool = True) -> ProvenancedGraph:
    rng = stream(spec.seed, index)
    g, recipe = _build(rng, spec, spec.depth, spec.vertex_budget)
    recipe = {"seed": spec.seed, "index": index, **recipe}
    pg = ProvenancedGraph(g, recipe)
    if verify and g.n <= spec.bound:
        verdict = is_theta_wheel_free_oracle(g, spec.bound)
        if not verdict.in_class:
            raise VerificationFailure(
                f"generated graph {index} contains a {verdict.witness.kind}: {verdict.witness.to_json()}", recipe
            )
        pg.oracle = "in-class"
    return pg


def iter_corpus(spec: GenSpec, count: int, start: int = 0, verify: bool = True) -> Iterator[ProvenancedGraph]:
    for index in range(start, start + count):
        yield generate_one(spec, index, verify)


def generate_corpus(spec: GenSpec, count: int, verify: bool = True) -> list[ProvenancedGraph]:
    """``count`` class members built from basic pieces, each oracle-verified when within the bound."""
    return list(iter_corpus(spec, count, verify=verify))


def write_manifest(items: Sequence[ProvenancedGraph]) -> str:
    return "".join(json.dumps(p.to_json(), sort_keys=True) + "\n" for p in items)


def read_manifest(text: str) -> list[ProvenancedGraph]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            out.append(ProvenancedGraph.from_json(json.loads(line)))
        except (ValueError, KeyError) as exc:
            raise GraphError(f"manifest line {lineno}: {exc}") from exc
    return out


def spec_to_json(spec: GenSpec) -> dict:
    return asdict(spec)
