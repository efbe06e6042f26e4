import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from brute import pair_on_cycle_or_leaf_path, to_nx
from mutations import broken_skeletons
from twfree.canon import is_isomorphic
from twfree.families import complete_bipartite, path_graph, pyramid, spider
from twfree.generator import random_skeleton, stream
from twfree.graph import Graph, GraphParseError, block_masks, is_sparse_graph, iter_bits
from twfree.oracle import find_diamond, find_pyramid, find_wheel, is_theta_wheel_free_oracle
from twfree.skeleton import (
    InvalidSkeletonError,
    PetalUnionLimitExceeded,
    Skeleton,
    SkeletonError,
    attaching_vertices,
    branches_and_limbs,
    parse_skeleton,
    petals,
    pgraph_from_skeleton,
    validate_skeleton,
)


def labelled(r: Graph, k: int, labels) -> Skeleton:
    pend = [e for e in r.edges if r.degree(e[0]) == 1 or r.degree(e[1]) == 1]
    if isinstance(labels, int):
        labels = [labels] * len(pend)
    return Skeleton(r, k, dict(zip(pend, labels)))


def subdivided_claw(k: int = 1, labels=1) -> Skeleton:
    return labelled(spider([2, 2, 2]), k, labels)


def sample_skeletons(count: int, seed: int = 5, **kw) -> list[Skeleton]:
    return [random_skeleton(stream(seed, i), **kw) for i in range(count)]


class TestBranchesAndLimbs:
    def test_subdivided_claw(self):
        bl = branches_and_limbs(spider([2, 2, 2]))
        assert bl.branches == [] and len(bl.limbs) == 3
        assert all(len(limb) == 3 for limb in bl.limbs)

    def test_k23(self):
        bl = branches_and_limbs(complete_bipartite(2, 3))
        assert len(bl.branches) == 3 and bl.limbs == []

    def test_path_has_leftovers(self):
        bl = branches_and_limbs(path_graph(3))
        assert bl.branches == [] and bl.limbs == [] and len(bl.leftover) == 2

    def test_limbs_run_from_branch_vertex_to_leaf(self):
        r = spider([1, 3, 2])
        for limb in branches_and_limbs(r).limbs:
            assert r.degree(limb[0]) >= 3 and r.degree(limb[-1]) == 1


class TestPetals:
    def test_limbs_merge_into_one_petal(self):
        r = Graph(8, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5), (5, 6), (6, 7), (7, 4)])
        assert sorted(map(sorted, petals(r, 0))) == [[0, 1, 2, 3], [0, 4, 5, 6, 7]]

    def test_single_limb_forms_no_petal(self):
        r = Graph(5, [(0, 1), (0, 2), (2, 3), (3, 4), (4, 0)])
        assert petals(r, 0) == [frozenset({0, 2, 3, 4})]

    def test_only_limbs(self):
        assert len(petals(spider([1, 2, 2]), 0)) == 1

    def test_non_attaching_vertex_is_an_error(self):
        r = Graph(5, [(0, 1), (0, 2), (2, 3), (3, 4), (4, 0)])
        with pytest.raises(SkeletonError):
            petals(r, 2)


class TestValidate:
    def test_subdivided_claw_is_valid(self):
        assert validate_skeleton(subdivided_claw()).valid

    def test_plain_claw_violates_viii(self):
        report = validate_skeleton(labelled(spider([1, 1, 1]), 1, 1))
        assert "viii" in report.violated()

    def test_two_labels_one_used_once(self):
        report = validate_skeleton(subdivided_claw(2, [1, 1, 2]))
        assert "xi" in report.violated()
        assert "ix" in report.violated()  # a branchless skeleton must have k = 1

    def test_missing_label_is_vi(self):
        r = spider([2, 2, 2])
        s = Skeleton(r, 1, {(1, 2): 1})
        assert "vi" in validate_skeleton(s).violated()

    def test_parallel_limbs_need_different_labels(self):
        r = Graph(11, [(0, 2), (2, 1), (0, 3), (3, 4), (0, 5), (5, 6), (1, 7), (7, 8), (1, 9), (9, 10)])
        same = Skeleton(r, 2, {(3, 4): 1, (5, 6): 1, (7, 8): 2, (9, 10): 2})
        assert "ix" in validate_skeleton(same).violated()
        crossed = Skeleton(r, 2, {(3, 4): 1, (5, 6): 2, (7, 8): 1, (9, 10): 2})
        assert validate_skeleton(crossed).valid

    def test_report_lists_every_violation(self):
        report = validate_skeleton(Skeleton(Graph(3, [(0, 1), (1, 2), (0, 2)]), 1, {}))
        assert {"i"} <= report.violated()
        assert report.valid is False and report.to_json()["violations"]

    def test_union_cap_refuses(self):
        # a centre with many petals forces many unions; the union clause needs k >= 2
        edges = []
        n = 1
        for _ in range(14):
            edges += [(0, n), (n, n + 1), (n + 1, n + 2), (n + 2, 0), (n, n + 3)]
            n += 4
        r = Graph(n, edges)
        s = labelled(r, 2, [1, 2] * 7)
        with pytest.raises(PetalUnionLimitExceeded):
            validate_skeleton(s, union_cap=64)

    @given(st.integers(0, 10_000), st.integers(1, 3))
    def test_generated_skeletons_validate(self, seed, k):
        s = random_skeleton(stream(seed, 0), k=k, edge_budget=14)
        assert validate_skeleton(s).valid and s.k == k


class TestSkeletonFormat:
    def test_round_trip(self):
        for s in sample_skeletons(20):
            assert parse_skeleton(s.to_text()) == s

    def test_label_on_internal_edge_rejected(self):
        text = "7 6\n0 1\n1 2\n0 3\n3 4\n0 5\n5 6\nk 1\nlabel 0 1 1\n"
        with pytest.raises(GraphParseError):
            parse_skeleton(text)

    def test_missing_k_line(self):
        with pytest.raises(GraphParseError):
            parse_skeleton("2 1\n0 1\n")

    def test_constructor_rejects_non_pendant_labels(self):
        with pytest.raises(SkeletonError):
            Skeleton(spider([2, 2, 2]), 1, {(0, 1): 1})


class TestPGraphConstruction:
    def test_subdivided_claw_gives_long_pyramid(self):
        b = pgraph_from_skeleton(subdivided_claw())
        assert b.graph.n == 7
        assert is_isomorphic(b.graph, pyramid([2, 2, 2]))
        assert find_pyramid(b.graph) is not None

    def test_invalid_skeleton_raises_with_report(self):
        with pytest.raises(InvalidSkeletonError) as exc:
            pgraph_from_skeleton(labelled(spider([1, 1, 1]), 1, 1))
        assert "viii" in exc.value.report.violated()

    def test_forced_v_violation_gives_wheel(self):
        s = next(broken_skeletons("v"))
        assert find_wheel(pgraph_from_skeleton(s, force=True).graph) is not None

    def test_forced_viii_violation_gives_wheel(self):
        b = pgraph_from_skeleton(labelled(spider([1, 2, 2]), 1, 1), force=True).graph
        assert find_wheel(b) is not None

    def test_generated_pgraphs_are_theta_wheel_diamond_free(self):
        for s in sample_skeletons(15, seed=8):
            b = pgraph_from_skeleton(s).graph
            assert is_theta_wheel_free_oracle(b).in_class
            assert find_diamond(b) is None

    def test_segments_cover_the_rest(self):
        for s in sample_skeletons(25, seed=9):
            pg = pgraph_from_skeleton(s)
            g = pg.graph
            k_mask = sum(1 << v for v in pg.special_clique)
            clique_edges = {(u, v) for u, v in g.edges if k_mask >> u & 1 and k_mask >> v & 1}
            for members in pg.big_cliques.values():
                clique_edges |= {(min(u, v), max(u, v)) for u, v in itertools.combinations(members, 2)}
            rest = set(g.edges) - clique_edges
            seg_edges = set()
            for seg in pg.segments:
                vs = seg.vertices
                seg_edges |= {(min(vs[i], vs[i + 1]), max(vs[i], vs[i + 1])) for i in range(len(vs) - 1)}
            assert rest == seg_edges
            assert g.is_clique(pg.special_clique) and len(pg.special_clique) == s.k


class TestSkeletonInvariants:
    skeletons = sample_skeletons(40, seed=21, edge_budget=16)

    @pytest.mark.parametrize("s", skeletons)
    def test_branches_and_limbs_partition_edges(self, s):
        r = s.graph
        bl = branches_and_limbs(r)
        assert bl.leftover == []
        seen = []
        for p in bl.branches + bl.limbs:
            seen += [tuple(sorted((p[i], p[i + 1]))) for i in range(len(p) - 1)]
        assert sorted(seen) == sorted(r.edges)

    @pytest.mark.parametrize("s", skeletons)
    def test_sizes_and_pendant_attachment(self, s):
        pg = pgraph_from_skeleton(s)
        assert pg.graph.n == s.graph.m + s.k
        k_mask = sum(1 << v for v in pg.special_clique)
        for x in range(len(pg.edge_map)):
            on_k = (pg.graph.adj[x] & k_mask).bit_count()
            assert on_k == (1 if x in pg.pendant_vertex_labels else 0)

    @pytest.mark.parametrize("s", skeletons)
    def test_every_two_edges_share_a_cycle_or_leaf_path(self, s):
        r = s.graph
        for e1, e2 in itertools.combinations(r.edges, 2):
            assert pair_on_cycle_or_leaf_path(r, e1, e2), (e1, e2)

    @pytest.mark.parametrize("s", skeletons)
    def test_two_connected_blocks_are_sparse_with_three_attachments(self, s):
        r = s.graph
        attach = set(attaching_vertices(r))
        for b in block_masks(r):
            if b.bit_count() <= 2:
                continue
            sub, origin = r.induced_mask(b)
            assert is_sparse_graph(sub)
            assert len(attach & set(iter_bits(b))) >= 3

    def test_sample_includes_cycles(self):
        assert any(to_nx(s.graph).number_of_edges() >= to_nx(s.graph).number_of_nodes() for s in self.skeletons)
