import json
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twfree.canon import is_isomorphic
from twfree.families import cycle_graph, path_graph
from twfree.generator import (
    GenerationError,
    GenSpec,
    VerificationFailure,
    generate_corpus,
    generate_one,
    marker_candidates,
    random_skeleton,
    random_tf_chordless,
    read_manifest,
    replay,
    stream,
    write_manifest,
)
from twfree.graph import Graph, format_graph, is_chordless_graph, is_triangle_free
from twfree.oracle import find_diamond, is_theta_wheel_free_oracle
from twfree.skeleton import parse_skeleton, pgraph_from_skeleton, validate_skeleton

# recorded outputs; a change here means the generator's streams changed
TF_CHORDLESS_SEED_1 = [(0, 1), (0, 2), (0, 4), (1, 3), (2, 7), (4, 5), (5, 6), (6, 7)]
SKELETON_SEED_2 = "9 8\n0 1\n0 4\n0 6\n1 2\n2 3\n4 5\n6 7\n7 8\nk 1\nlabel 2 3 1\nlabel 4 5 1\nlabel 7 8 1\n"


class TestTriangleFreeChordless:
    def test_recorded_fixture(self):
        assert list(random_tf_chordless(stream(1, 0), 8).edges) == TF_CHORDLESS_SEED_1

    def test_two_vertices_is_an_edge(self):
        assert random_tf_chordless(stream(0, 0), 2) == path_graph(2)

    def test_cycle_strategy(self):
        assert is_isomorphic(random_tf_chordless(stream(0, 0), 6, strategy="cycle"), cycle_graph(6))

    def test_too_small(self):
        with pytest.raises(GenerationError):
            random_tf_chordless(stream(0, 0), 1)

    @given(st.integers(0, 10_000), st.integers(2, 16), st.sampled_from(["mixed", "tree"]))
    def test_output_is_verified(self, seed, n, strategy):
        g = random_tf_chordless(stream(seed, 0), n, strategy)
        assert g.n == n and is_triangle_free(g) and is_chordless_graph(g)


class TestSkeletons:
    def test_recorded_fixture(self):
        assert random_skeleton(stream(2, 0), k=1).to_text() == SKELETON_SEED_2

    def test_k2_uses_both_labels_twice(self):
        for i in range(10):
            s = random_skeleton(stream(3, i), k=2)
            counts = Counter(s.labels.values())
            assert set(counts) == {1, 2} and min(counts.values()) >= 2

    def test_impossible_request_reports_rejections(self):
        with pytest.raises(GenerationError, match="rejections"):
            random_skeleton(stream(0, 0), k=3, edge_budget=3, max_tries=50)

    @settings(max_examples=30)
    @given(st.integers(0, 10_000))
    def test_pgraphs_are_free_of_all_three(self, seed):
        b = pgraph_from_skeleton(random_skeleton(stream(seed, 1))).graph
        assert is_theta_wheel_free_oracle(b).in_class and find_diamond(b) is None

    def test_round_trip_through_text(self):
        s = random_skeleton(stream(4, 4), k=3)
        assert parse_skeleton(s.to_text()) == s and validate_skeleton(s).valid


class TestMarkers:
    def test_cycle_has_no_marker(self):
        # every candidate path leaves a path behind, so no side is a proper piece
        assert marker_candidates(cycle_graph(5)) == marker_candidates(cycle_graph(5), strict=False)

    def test_strict_is_a_subset(self):
        g = pgraph_from_skeleton(random_skeleton(stream(6, 0))).graph
        assert set(marker_candidates(g)) <= set(marker_candidates(g, strict=False))


class TestCorpus:
    def test_pgraph_only_mix(self):
        spec = GenSpec(seed=1, depth=0, line_weight=0.0)
        for p in generate_corpus(spec, 5):
            assert p.recipe["op"] == "p-graph" and p.oracle == "in-class"

    def test_glue_only(self):
        spec = GenSpec(seed=2, depth=1, join_weight=0.0)
        ops = {p.recipe["op"] for p in generate_corpus(spec, 8)}
        assert "two-join" not in ops

    def test_join_only(self):
        spec = GenSpec(seed=3, depth=1, glue_weight=0.0)
        ops = {p.recipe["op"] for p in generate_corpus(spec, 8)}
        assert "glue" not in ops and "two-join" in ops

    def test_replay_is_byte_identical(self):
        for p in generate_corpus(GenSpec(seed=4), 10):
            assert format_graph(replay(p.recipe)) == format_graph(p.graph)

    def test_same_seed_same_corpus(self):
        a = write_manifest(generate_corpus(GenSpec(seed=8), 5))
        b = write_manifest(generate_corpus(GenSpec(seed=8), 5))
        assert a == b

    def test_manifest_round_trip(self):
        items = generate_corpus(GenSpec(seed=5), 4)
        back = read_manifest(write_manifest(items))
        assert [p.graph for p in back] == [p.graph for p in items]
        assert [p.recipe for p in back] == [p.recipe for p in items]
        assert all(json.loads(line)["oracle"] == "in-class" for line in write_manifest(items).splitlines())

    def test_budget_respected(self):
        spec = GenSpec(seed=6, vertex_budget=14)
        assert all(p.graph.n <= 14 for p in generate_corpus(spec, 10))

    def test_unverified_emission(self):
        assert generate_one(GenSpec(seed=6), 0, verify=False).oracle == "skipped"

    def test_verification_failure_carries_recipe(self):
        failure = VerificationFailure("boom", {"op": "glue"})
        assert isinstance(failure, GenerationError) and failure.recipe == {"op": "glue"}

    def test_bad_recipe(self):
        with pytest.raises(GenerationError):
            replay({"op": "mystery"})


class TestGenSpec:
    @pytest.mark.parametrize(
        "kwargs",
        [
            {"vertex_budget": 0},
            {"depth": -1},
            {"k_range": (0, 2)},
            {"k_range": (3, 2)},
            {"glue_weight": -1.0},
            {"glue_weight": 0.0, "join_weight": 0.0},
            {"pgraph_weight": 0.0, "line_weight": 0.0},
        ],
    )
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            GenSpec(**kwargs)

    def test_zero_composition_weights_allowed_at_depth_zero(self):
        GenSpec(depth=0, glue_weight=0.0, join_weight=0.0)

    def test_streams_are_independent_of_order(self):
        assert generate_one(GenSpec(seed=9), 3).graph == generate_corpus(GenSpec(seed=9), 4)[3].graph


def test_marker_candidates_handle_graph_without_degree_two():
    assert marker_candidates(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)])) == []
