"""Deliberately broken skeletons, for exercising forced P-graph construction."""

from __future__ import annotations

from collections.abc import Iterator

from twfree.generator import random_skeleton, stream
from twfree.graph import Graph
from twfree.skeleton import Skeleton, branches_and_limbs, validate_skeleton


def contract_path(s: Skeleton, path: list[int]) -> Skeleton:
    """Replace ``path`` by the single edge joining its ends.

    A contracted limb keeps the label of its old pendant edge.
    """
    r = s.graph
    drop = set(path[1:-1])
    keep = [v for v in range(r.n) if v not in drop]
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in r.edges if u in index and v in index]
    edges.append((index[path[0]], index[path[-1]]))
    labels = {(index[u], index[v]): lab for (u, v), lab in s.labels.items() if u in index and v in index}
    if r.degree(path[-1]) == 1:
        labels[(index[path[0]], index[path[-1]])] = s.label((path[-2], path[-1]))
    return Skeleton(Graph(len(keep), edges), s.k, labels)


def broken_skeletons(condition: str, seed: int = 99, limit: int = 5000) -> Iterator[Skeleton]:
    """Skeletons violating exactly ``condition`` ("v" or "viii").

    Valid random skeletons have one branch (for "v") or one limb (for
    "viii") shortened to a single edge; only results whose sole violation is
    ``condition`` are kept.
    """
    for index in range(limit):
        s = random_skeleton(stream(seed, index), edge_budget=14)
        bl = branches_and_limbs(s.graph)
        paths = bl.branches if condition == "v" else bl.limbs
        for p in paths:
            if len(p) < 3:
                continue
            t = contract_path(s, p)
            if validate_skeleton(t).violated() == {condition}:
                yield t
                break
