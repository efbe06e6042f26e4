"""Recognition of (theta, wheel)-free graphs by decomposition, and the
decomposition tree it produces."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

from .basic import BasicVerdict, is_basic
from .cutsets import EXHAUSTIVE_LIMIT, TwoJoinSplit, find_clique_cutset, find_two_join, two_join_blocks
from .graph import Graph, component_masks
from .oracle import DEFAULT_BOUND, ConfigWitness, is_theta_wheel_free_oracle

log = logging.getLogger(__name__)

IN_CLASS = "in-class"
NOT_IN_CLASS = "not-in-class"
UNDECIDED = "undecided-by-decomposition"

BASIC_LEAF = "basic-leaf"
CLIQUE_CUTSET = "clique-cutset"
TWO_JOIN = "two-join"
COMPONENT_SPLIT = "component-split"
REJECT_LEAF = "reject-leaf"
ORACLE_LEAF = "oracle-leaf"
UNDECIDED_LEAF = "undecided-leaf"


@dataclass
class TreeNode:
    """One node of a decomposition tree.

    ``origin[i]`` names vertex ``i`` of ``graph``: values below the input's
    vertex count are input vertices, larger values are marker vertices
    introduced by 2-join blocks (fresh per block).  ``clique`` and ``split``
    are in the node's own vertex ids.
    """

    kind: str
    graph: Graph
    origin: tuple[int, ...]
    children: list[TreeNode] = field(default_factory=list)
    basic: BasicVerdict | None = None
    clique: frozenset[int] | None = None
    split: TwoJoinSplit | None = None
    witness: ConfigWitness | None = None
    reason: str = ""

    def leaves(self):
        if not self.children:
            yield self
        for child in self.children:
            yield from child.leaves()

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "size": self.graph.n, "vertices": list(self.origin)}
        if self.basic is not None:
            out["basic"] = self.basic.to_json()
        if self.clique is not None:
            out["clique"] = sorted(self.origin[v] for v in self.clique)
        if self.split is not None:
            out["split"] = {k: sorted(self.origin[v] for v in vs) for k, vs in self.split.to_json().items()}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.reason:
            out["reason"] = self.reason
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out


@dataclass
class Recognition:
    verdict: str
    tree: TreeNode
    witness: ConfigWitness | None = None
    oracle_fallbacks: int = 0

    @property
    def in_class(self) -> bool:
        return self.verdict == IN_CLASS

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "tree": self.tree.to_json()}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.oracle_fallbacks:
            out["oracle_fallbacks"] = self.oracle_fallbacks
        return out


class _Decomposer:
    def __init__(self, n_input: int, bound: int, stop_on_reject: bool, trust: bool):
        self.next_marker = n_input
        self.bound = bound
        self.stop_on_reject = stop_on_reject
        self.trust = trust
        self.rejected = False
        self.undecided = False
        self.fallbacks = 0

    def _markers(self) -> tuple[int, int, int]:
        m = self.next_marker
        self.next_marker += 3
        return m, m + 1, m + 2

    def run(self, g: Graph, origin: tuple[int, ...]) -> TreeNode:
        comps = component_masks(g)
        if len(comps) > 1:
            node = TreeNode(COMPONENT_SPLIT, g, origin)
            for mask in comps:
                if self.rejected and self.stop_on_reject:
                    break
                sub, local = g.induced_mask(mask)
                node.children.append(self.run(sub, tuple(origin[v] for v in local)))
            return node
        return self._connected(g, origin)

    def _connected(self, g: Graph, origin: tuple[int, ...]) -> TreeNode:
        verdict = is_basic(g)
        if verdict.is_basic:
            return TreeNode(BASIC_LEAF, g, origin, basic=verdict)
        clique = find_clique_cutset(g)
        if clique is not None:
            node = TreeNode(CLIQUE_CUTSET, g, origin, clique=clique)
            cmask = sum(1 << v for v in clique)
            for comp in component_masks(g, g.all_mask & ~cmask):
                if self.rejected and self.stop_on_reject:
                    break
                sub, local = g.induced_mask(comp | cmask)
                node.children.append(self._connected(sub, tuple(origin[v] for v in local)))
            return node
        split = find_two_join(g, min_side=4, consistent=True)
        if split is not None:
            node = TreeNode(TWO_JOIN, g, origin, split=split)
            for block in two_join_blocks(g, split):
                if self.rejected and self.stop_on_reject:
                    break
                markers = iter(self._markers())
                names = tuple(origin[v] if v >= 0 else next(markers) for v in block.origin)
                node.children.append(self._connected(block.graph, names))
            return node
        reason = "not basic, no clique cutset, no consistent 2-join with both sides of size >= 4"
        if g.n <= EXHAUSTIVE_LIMIT or self.trust:
            # a member without a clique cutset has no 2-join with a 3-vertex side,
            # so the exhaustive search above settles membership
            self.rejected = True
            return TreeNode(REJECT_LEAF, g, origin, basic=verdict, reason=reason)
        if g.n <= self.bound:
            self.fallbacks += 1
            log.warning("2-join search inconclusive on %d vertices; deciding by oracle", g.n)
            ov = is_theta_wheel_free_oracle(g, self.bound)
            if not ov.in_class:
                self.rejected = True
            return TreeNode(ORACLE_LEAF, g, origin, witness=ov.witness, reason="2-join search inconclusive")
        self.undecided = True
        return TreeNode(UNDECIDED_LEAF, g, origin, reason="2-join search inconclusive beyond the oracle bound")


def _decompose(g: Graph, bound: int, stop_on_reject: bool, trust: bool) -> tuple[TreeNode, _Decomposer]:
    d = _Decomposer(g.n, bound, stop_on_reject, trust)
    tree = d.run(g, tuple(range(g.n)))
    return tree, d


def recognize(g: Graph, bound: int = DEFAULT_BOUND, trust: bool = False) -> Recognition:
    """Decide whether ``g`` is (theta, wheel)-free by decomposing it.

    A graph is accepted when every leaf is basic.  It is rejected when some
    piece is neither basic nor decomposable; a theta or wheel witness from the
    oracle is attached when ``g`` has at most ``bound`` vertices.

    2-join search is exact up to ``EXHAUSTIVE_LIMIT`` vertices.  On larger
    pieces where it finds nothing, the oracle decides if the piece is within
    ``bound``; otherwise the verdict is undecided unless ``trust`` is set, in
    which case the piece is rejected.
    """
    tree, d = _decompose(g, bound, stop_on_reject=True, trust=trust)
    if d.rejected:
        witness = None
        if g.n <= bound:
            witness = is_theta_wheel_free_oracle(g, bound).witness
        return Recognition(NOT_IN_CLASS, tree, witness, d.fallbacks)
    if d.undecided:
        return Recognition(UNDECIDED, tree, None, d.fallbacks)
    return Recognition(IN_CLASS, tree, None, d.fallbacks)


def decompose_only(g: Graph) -> TreeNode:
    """The full decomposition tree; undecomposable pieces become reject leaves."""
    tree, _ = _decompose(g, DEFAULT_BOUND, stop_on_reject=False, trust=True)
    return tree


def tree_to_json(tree: TreeNode) -> str:
    return json.dumps(tree.to_json(), sort_keys=True)


def tree_to_dot(tree: TreeNode) -> str:
    lines = ["digraph decomposition {", "  node [shape=box];"]
    ids = {}
    for i, node in enumerate(tree.walk()):
        ids[id(node)] = i
        lines.append(f'  t{i} [label="{node.kind}\\nn={node.graph.n}"];')
    for node in tree.walk():
        for child in node.children:
            lines.append(f"  t{ids[id(node)]} -> t{ids[id(child)]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
