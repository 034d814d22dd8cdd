import random

import numpy as np
import pytest

from substream import (
    DataError,
    ParameterError,
    ParseError,
    build_skip_array,
    parse_edge_list,
    reachable_positions,
    stream_stats,
    union_streams,
    write_edge_list,
)
from substream.oracle import oracle_reachable_positions

from .conftest import FIG1_SORTED, labeled_edges
from .gen import random_temporal_graph


class TestParse:
    def test_fig1_sorted_order(self, fig1):
        assert fig1.n == 6
        assert fig1.m == 9
        assert labeled_edges(fig1) == FIG1_SORTED
        assert fig1.positions.tolist() == list(range(9))

    def test_fig1_lifetime(self, fig1):
        assert (fig1.lifetime.a, fig1.lifetime.b) == (1, 10)

    def test_single_edge_with_transition(self):
        s = parse_edge_list("x y 5 2")
        assert s.n == 2
        assert s.m == 1
        assert (s.lifetime.a, s.lifetime.b) == (5, 7)

    def test_undirected_yields_both_directions(self):
        s = parse_edge_list("x y 5", undirected=True)
        assert labeled_edges(s) == [("x", "y", 5), ("y", "x", 5)]
        assert s.transitions.tolist() == [1, 1]

    def test_default_transition_applied(self):
        s = parse_edge_list("x y 5", default_transition=3)
        assert s.transitions.tolist() == [3]

    def test_comments_and_blank_lines_skipped(self):
        s = parse_edge_list("# header\n% other\n\nx y 5\n")
        assert s.m == 1

    def test_malformed_line_reports_number(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_edge_list("x y 1\nx y\n")

    def test_non_integer_time(self):
        with pytest.raises(ParseError, match="line 1"):
            parse_edge_list("x y abc")

    def test_zero_transition_rejected(self):
        with pytest.raises(ParseError, match="transition"):
            parse_edge_list("x y 5 0")

    def test_negative_timestamp_rejected(self):
        with pytest.raises(ParseError, match="negative"):
            parse_edge_list("x y -3")

    def test_empty_input_rejected(self):
        with pytest.raises(DataError, match="empty"):
            parse_edge_list("# only a comment\n")

    def test_bad_default_transition(self):
        with pytest.raises(ParameterError):
            parse_edge_list("x y 1", default_transition=0)

    def test_stable_ties_keep_input_order(self):
        s = parse_edge_list("b c 7\na b 7\nc a 7")
        assert labeled_edges(s) == [("b", "c", 7), ("a", "b", 7), ("c", "a", 7)]

    def test_reparse_reproduces_positions(self, fig1):
        again = parse_edge_list(write_edge_list(fig1))
        assert labeled_edges(again) == labeled_edges(fig1)
        assert again.positions.tolist() == fig1.positions.tolist()
        assert again.transitions.tolist() == fig1.transitions.tolist()

    def test_self_loops_allowed(self):
        s = parse_edge_list("x x 1\nx x 2\ny x 1")
        assert s.m == 3

    def test_duplicate_edges_stay_distinct(self):
        s = parse_edge_list("x y 5 2\nx y 5 2")
        assert s.m == 2
        assert s.positions.tolist() == [0, 1]

    def test_interval_validation(self):
        from substream import Interval

        with pytest.raises(ParameterError):
            Interval(5, 3)
        assert Interval(3, 9).admits(4, 2)
        assert not Interval(3, 9).admits(8, 2)
        assert not Interval(3, 9).admits(2, 1)

    def test_unknown_label_lookup(self, fig1):
        with pytest.raises(DataError, match="unknown vertex"):
            fig1.vertex_id("zz")


class TestUnion:
    def test_identity_with_empty(self, fig1):
        empty = fig1.restrict(np.empty(0, dtype=np.int64))
        sub = fig1.restrict(np.asarray([1, 4]))
        out = union_streams(sub, empty)
        assert out.positions.tolist() == [1, 4]

    def test_fig1c_union_of_reachable_streams(self, fig1):
        skip = build_skip_array(fig1)
        xi_d = fig1.restrict(reachable_positions(fig1, fig1.vertex_id("d"), skip))
        xi_e = fig1.restrict(reachable_positions(fig1, fig1.vertex_id("e"), skip))
        union = union_streams(xi_d, xi_e)
        assert labeled_edges(union) == [
            ("d", "f", 1), ("e", "f", 6), ("f", "c", 7), ("c", "e", 9),
        ]

    def test_disjoint_sizes_add(self, fig1):
        s1 = fig1.restrict(np.asarray([0, 2]))
        s2 = fig1.restrict(np.asarray([5, 7, 8]))
        assert union_streams(s1, s2).m == 5

    def test_set_semantics(self, fig1):
        rng = random.Random(5)
        for _ in range(25):
            pos = lambda: np.asarray(
                sorted(rng.sample(range(fig1.m), rng.randint(0, fig1.m))), dtype=np.int64
            )
            a, b, c = fig1.restrict(pos()), fig1.restrict(pos()), fig1.restrict(pos())
            ab = union_streams(a, b)
            assert union_streams(a, a).position_set() == a.position_set()
            assert ab.position_set() == union_streams(b, a).position_set()
            assert (
                union_streams(ab, c).position_set()
                == union_streams(a, union_streams(b, c)).position_set()
            )
            assert ab.timestamps.tolist() == sorted(ab.timestamps.tolist())

    def test_different_roots_rejected(self, fig1):
        other = parse_edge_list("x y 1")
        with pytest.raises(ParameterError):
            union_streams(fig1, other)


class TestStats:
    def test_fig1_counts(self, fig1):
        st = stream_stats(fig1)
        assert st.vertices == 6
        assert st.edges == 9
        assert st.distinct_timestamps == 6

    def test_fig1_reach_sizes_match_oracle(self, fig1):
        # independent oracle: reachable edges via label-setting earliest arrival
        sizes = [len(oracle_reachable_positions(fig1, v)) for v in range(fig1.n)]
        st = stream_stats(fig1)
        assert st.max_reach_edges == max(sizes) == 5
        assert st.avg_reach_edges == pytest.approx(sum(sizes) / 6)
        assert st.avg_reach_edges == pytest.approx(17 / 6)

    def test_empty_substream(self, fig1):
        sub = fig1.restrict(np.empty(0, dtype=np.int64))
        st = stream_stats(sub)
        assert st.edges == 0
        assert st.max_reach_edges == 0

    def test_every_vertex_appears(self):
        for seed in range(5):
            s = random_temporal_graph(seed, n_range=(5, 40), m_cap=120)
            seen = set(s.tails.tolist()) | set(s.heads.tolist())
            assert seen == set(range(s.n))
