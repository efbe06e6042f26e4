import itertools

import pytest
from hypothesis import given

from conftest import graphs
from twfree.basic import (
    LINE_GRAPH,
    NOT_BASIC,
    P_GRAPH,
    is_basic,
    line_graph_of,
    recognize_lg_tf_chordless,
    recognize_pgraph,
    recognize_pgraph_explained,
)
from twfree.canon import is_isomorphic
from twfree.families import claw, complete_graph, cycle_graph, pyramid, wheel
from twfree.generator import random_skeleton, random_tf_chordless, stream
from twfree.graph import Graph, disjoint_union, is_chordless_graph, is_triangle_free
from twfree.linegraph import line_graph
from twfree.oracle import is_theta_wheel_free_oracle
from twfree.skeleton import pgraph_from_skeleton, validate_skeleton


def pyramid_with_crosspath(through_apex: bool) -> Graph:
    # apex 0; paths 0-4-5-1, 0-6-7-2, 0-8-9-3; the crosspath 10-11 leaves the
    # apex's neighbour 4 (and the apex itself when through_apex) and lands on 7, 2
    edges = list(pyramid([3, 3, 3]).edges) + [(4, 10), (10, 11), (11, 7), (11, 2)]
    if through_apex:
        edges.append((0, 10))
    return Graph(12, edges)


class TestLineGraphKind:
    def test_c6(self):
        root = recognize_lg_tf_chordless(cycle_graph(6))
        assert root is not None and is_isomorphic(root.graph, cycle_graph(6))

    def test_line_graph_of_k4_rejected(self):
        assert recognize_lg_tf_chordless(line_graph(complete_graph(4))[0]) is None

    def test_triangle_root_is_claw(self):
        root = recognize_lg_tf_chordless(complete_graph(3))
        assert root is not None and is_isomorphic(root.graph, claw())

    def test_chorded_root_rejected(self):
        # a 6-cycle with a long chord
        r = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
        assert is_triangle_free(r) and not is_chordless_graph(r)
        assert recognize_lg_tf_chordless(line_graph(r)[0]) is None

    def test_components_handled_separately(self):
        g, _ = disjoint_union(cycle_graph(5), complete_graph(3))
        root = recognize_lg_tf_chordless(g)
        assert root is not None and line_graph_of(root) == g

    def test_round_trip_on_generated_roots(self):
        for i in range(30):
            r = random_tf_chordless(stream(4, i), 3 + i % 9)
            lg, _ = line_graph(r)
            root = recognize_lg_tf_chordless(lg)
            assert root is not None
            assert line_graph_of(root) == lg


class TestPGraphKind:
    @pytest.mark.parametrize("lengths", [(2, 2, 2), (2, 3, 4), (3, 4, 5), (5, 5, 5)])
    def test_long_pyramids_have_k_1(self, lengths):
        pg = recognize_pgraph(pyramid(lengths))
        assert pg is not None and pg.k == 1

    def test_short_pyramid_rejected(self):
        pg, reason = recognize_pgraph_explained(pyramid([1, 2, 2]))
        assert pg is None and reason

    @pytest.mark.parametrize("through_apex, k", [(False, 2), (True, 3)])
    def test_pyramid_with_crosspath(self, through_apex, k):
        g = pyramid_with_crosspath(through_apex)
        assert is_theta_wheel_free_oracle(g).in_class
        pg = recognize_pgraph(g)
        assert pg is not None and pg.k == k
        special = {pg.vertex_map[v] for v in pg.special_clique}
        assert special == ({0, 4, 10} if through_apex else {0, 4})

    def test_disconnected_is_not_a_pgraph(self):
        g, _ = disjoint_union(pyramid([2, 2, 2]), pyramid([2, 2, 2]))
        assert recognize_pgraph(g) is None

    def test_reconstruction_is_exact(self):
        for i in range(40):
            s = random_skeleton(stream(12, i), edge_budget=16)
            b = pgraph_from_skeleton(s).graph
            pg = recognize_pgraph(b)
            assert pg is not None
            assert pg.as_input() == b
            assert validate_skeleton(pg.skeleton).valid

    def test_reconstruction_after_relabelling(self):
        s = random_skeleton(stream(13, 0), edge_budget=16)
        b = pgraph_from_skeleton(s).graph
        perm = list(reversed(range(b.n)))
        shuffled = b.relabel(perm)
        pg = recognize_pgraph(shuffled)
        assert pg is not None and pg.as_input() == shuffled


class TestIsBasic:
    def test_examples(self):
        assert is_basic(cycle_graph(7)).kind == LINE_GRAPH
        assert is_basic(pyramid([2, 3, 2])).kind == P_GRAPH
        assert is_basic(wheel(5)).kind == NOT_BASIC

    def test_deterministic(self):
        g = pyramid_with_crosspath(True)
        assert is_basic(g).to_json() == is_basic(g).to_json()

    @given(graphs(max_n=8))
    def test_accepted_graphs_are_in_class(self, g):
        if is_basic(g).is_basic:
            assert is_theta_wheel_free_oracle(g).in_class

    def test_accepted_graphs_are_in_class_on_all_5_vertex_graphs(self):
        slots = list(itertools.combinations(range(5), 2))
        for code in range(1 << len(slots)):
            g = Graph(5, [slots[i] for i in range(len(slots)) if code >> i & 1])
            if is_basic(g).is_basic:
                assert is_theta_wheel_free_oracle(g).in_class
