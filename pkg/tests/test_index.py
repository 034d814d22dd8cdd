import random

import numpy as np
import pytest

from substream import (
    INFINITY,
    FormatError,
    ParameterError,
    build_greedy,
    build_parallel,
    build_skip_array,
    deserialize,
    fastest_durations,
    earliest_arrival,
    parse_edge_list,
    reachable_positions,
    serialize,
    validate,
)
from substream.index import GREEDY, SKETCH, IndexedSubstream, SubstreamIndex

from .gen import random_interval, random_temporal_graph

STARS = """\
s1 l1 1
s1 l2 2
s2 l3 10
s2 l4 11
s2 l5 12
s3 l6 20
s3 l7 21
s3 l8 22
s3 l9 23
"""


def assert_index_matches_fullstream(ix, rng, rounds=3):
    s = ix.base
    for _ in range(rounds):
        tau = random_interval(s, rng)
        for v in range(s.n):
            got = ix.query(v, tau, "fastest")
            want = fastest_durations(s, v, tau)
            assert np.array_equal(got.duration, want.duration)
            got_ea = ix.query(v, tau, "ea")
            want_ea = earliest_arrival(s, v, tau)
            assert np.array_equal(got_ea.arrival, want_ea.arrival)


class TestGreedy:
    def test_fig1_trace(self, fig1):
        # deterministic outcome of union-size-minimal assignment with
        # smallest-id ties, vertices in ascending id order
        ix = build_greedy(fig1, 2)
        by_label = {fig1.labels[v]: int(j) for v, j in enumerate(ix.assignment)}
        assert by_label == {"a": 1, "d": 1, "c": 2, "b": 2, "e": 2, "f": 2}
        assert ix.size() == 7
        assert validate(ix).ok

    def test_fig1_queries_answerable(self, fig1):
        ix = build_greedy(fig1, 2)
        assert_index_matches_fullstream(ix, random.Random(0))

    def test_component_stars_split_cleanly(self):
        s = parse_edge_list(STARS)
        ix = build_greedy(s, 3)
        assert ix.size() == 4  # the largest star
        # each star center lands in its own substream
        centers = [s.vertex_id(x) for x in ("s1", "s2", "s3")]
        assert len({int(ix.assignment[c]) for c in centers}) == 3
        # leaves are sinks
        assert all(
            int(ix.assignment[s.vertex_id(f"l{i}")]) == 0 for i in range(1, 10)
        )
        # brute force over all assignments of the three reachable streams:
        # the minimal achievable size equals the largest star
        skip = build_skip_array(s)
        xis = [reachable_positions(s, c, skip) for c in centers]
        best = None
        for a in [(x, y, z) for x in range(3) for y in range(3) for z in range(3)]:
            size = 0
            for j in range(3):
                merged = np.empty(0, dtype=np.int64)
                for i in range(3):
                    if a[i] == j:
                        merged = np.union1d(merged, xis[i])
                size = max(size, len(merged))
            best = size if best is None else min(best, size)
        assert ix.size() == best

    def test_k_out_of_range(self, fig1):
        with pytest.raises(ParameterError):
            build_greedy(fig1, 1)
        with pytest.raises(ParameterError):
            build_greedy(fig1, 6)
        two = parse_edge_list("x y 1")
        with pytest.raises(ParameterError):
            build_greedy(two, 2)

    def test_substream_input_rejected(self, fig1):
        sub = fig1.restrict(np.asarray([0, 1, 2]))
        with pytest.raises(ParameterError):
            build_greedy(sub, 2)


class TestParallel:
    def test_fig1_valid_any_seed(self, fig1):
        for seed in (1, 2, 99):
            ix = build_parallel(fig1, 2, h=4, seed=seed)
            report = validate(ix)
            assert report.ok, report.violations

    def test_thread_count_is_invisible(self, fig1):
        blobs = set()
        for threads in (1, 2, 8):
            ix = build_parallel(fig1, 2, h=4, seed=5, threads=threads)
            blobs.add(serialize(ix))
        assert len(blobs) == 1

    def test_batch_size_one_vs_whole(self):
        s = random_temporal_graph(77, n_range=(50, 50), m_cap=400)
        one = build_parallel(s, 4, h=8, batch=1, seed=9)
        whole = build_parallel(s, 4, h=8, batch=s.n, seed=9)
        assert validate(one).ok
        assert validate(whole).ok

    def test_parameter_validation(self, fig1):
        with pytest.raises(ParameterError):
            build_parallel(fig1, 1)
        with pytest.raises(ParameterError):
            build_parallel(fig1, 2, h=0)
        with pytest.raises(ParameterError):
            build_parallel(fig1, 2, batch=0)
        with pytest.raises(ParameterError):
            build_parallel(fig1, 5, h=2)  # h*k = 10 > m = 9

    def test_counts_match_assignment(self, fig1):
        ix = build_parallel(fig1, 2, h=4, seed=3)
        counts = ix.assigned_counts
        for j in range(1, ix.k + 1):
            assert counts[j - 1] == int(np.count_nonzero(ix.assignment == j))


class TestQuery:
    def test_fig1_fastest_from_d(self, fig1):
        ix = build_greedy(fig1, 2)
        table = ix.query(fig1.vertex_id("d"), kind="fastest")
        by = {fig1.labels[v]: int(x) for v, x in enumerate(table.duration)}
        assert by["f"] == 1 and by["c"] == 7 and by["e"] == 9
        assert by["a"] == by["b"] == INFINITY

    def test_sink_gets_all_infinite(self):
        s = parse_edge_list(STARS)
        ix = build_greedy(s, 2)
        leaf = s.vertex_id("l1")
        table = ix.query(leaf, kind="fastest")
        assert table.duration[leaf] == 0
        mask = np.ones(s.n, dtype=bool)
        mask[leaf] = False
        assert np.all(table.duration[mask] == INFINITY)
        ea = ix.query(leaf, kind="ea")
        assert ea.arrival[leaf] == s.lifetime.a
        assert np.all(ea.arrival[mask] == INFINITY)

    def test_unknown_vertex_and_kind(self, fig1):
        ix = build_greedy(fig1, 2)
        with pytest.raises(Exception):
            ix.query(99)
        with pytest.raises(ParameterError):
            ix.query(0, kind="nope")

    def test_equals_fullstream_on_random_graphs(self):
        rng = random.Random(55)
        for seed in range(6):
            s = random_temporal_graph(seed, n_range=(10, 80), m_cap=400)
            for ix in (build_greedy(s, 4), build_parallel(s, 4, h=8, seed=seed)):
                assert_index_matches_fullstream(ix, rng, rounds=2)


class TestValidate:
    def test_greedy_clean_and_bound_reported(self, fig1):
        report = validate(build_greedy(fig1, 2))
        assert report.ok
        assert report.size == 7
        assert report.greedy_bound is not None
        assert report.size <= report.greedy_bound
        assert report.union_reach_edges <= report.size * 2

    def test_mutated_index_reports_violation(self, fig1):
        ix = build_greedy(fig1, 2)
        # drop one edge that some assigned reachable stream needs
        sub = ix.substreams[0]
        broken_positions = sub.positions[1:]
        broken = SubstreamIndex(
            ix.base,
            ix.assignment,
            [
                IndexedSubstream(ix.base.restrict(broken_positions), sub.skip),
                ix.substreams[1],
            ],
            ix.params,
        )
        report = validate(broken)
        assert not report.ok
        assert any("not contained" in v for v in report.violations)

    def test_misrouted_sink_reported(self, fig1):
        ix = build_greedy(fig1, 2)
        assignment = ix.assignment.copy()
        assignment[fig1.vertex_id("a")] = 0  # non-empty reachable stream routed to S_0
        report = validate(
            SubstreamIndex(ix.base, assignment, ix.substreams, ix.params)
        )
        assert not report.ok


class TestSerialization:
    def roundtrip(self, ix):
        blob = serialize(ix)
        again = deserialize(blob)
        assert again.k == ix.k
        assert again.assignment.tolist() == ix.assignment.tolist()
        assert again.base.labels == ix.base.labels
        assert again.base.tails.tolist() == ix.base.tails.tolist()
        assert again.base.timestamps.tolist() == ix.base.timestamps.tolist()
        assert again.base.transitions.tolist() == ix.base.transitions.tolist()
        for a, b in zip(again.substreams, ix.substreams):
            assert a.positions.tolist() == b.positions.tolist()
            assert a.skip.to_dict() == b.skip.to_dict()
        assert again.params == type(ix.params)(
            ix.params.algorithm, ix.params.k, ix.params.h, ix.params.seed
        )
        assert serialize(again) == blob
        return again

    def test_roundtrip_both_builders(self, fig1):
        self.roundtrip(build_greedy(fig1, 2))
        self.roundtrip(build_parallel(fig1, 2, h=4, seed=11))

    def test_roundtrip_random_graph(self):
        s = random_temporal_graph(8, n_range=(20, 60), m_cap=300)
        again = self.roundtrip(build_parallel(s, 8, h=4, seed=2))
        assert again.params.algorithm == SKETCH
        again_greedy = self.roundtrip(build_greedy(s, 3))
        assert again_greedy.params.algorithm == GREEDY

    def test_corrupted_magic(self, fig1):
        blob = bytearray(serialize(build_greedy(fig1, 2)))
        blob[:4] = b"XXXX"
        import zlib, struct

        blob[-4:] = struct.pack("<I", zlib.crc32(bytes(blob[:-4])) & 0xFFFFFFFF)
        with pytest.raises(FormatError, match="magic"):
            deserialize(bytes(blob))

    def test_unsupported_version(self, fig1):
        import struct, zlib

        blob = bytearray(serialize(build_greedy(fig1, 2)))
        blob[4:8] = struct.pack("<I", 0)
        blob[-4:] = struct.pack("<I", zlib.crc32(bytes(blob[:-4])) & 0xFFFFFFFF)
        with pytest.raises(FormatError, match="version"):
            deserialize(bytes(blob))

    def test_crc_corruption_rejected(self, fig1):
        blob = bytearray(serialize(build_greedy(fig1, 2)))
        blob[len(blob) // 2] ^= 0xFF
        with pytest.raises(FormatError, match="CRC"):
            deserialize(bytes(blob))

    def test_truncation_rejected(self, fig1):
        blob = serialize(build_greedy(fig1, 2))
        with pytest.raises(FormatError):
            deserialize(blob[:5])
