"""Reference algorithms over adjacency lists, for cross-checking the streaming scans.

These favor obviousness over speed: a label-setting search with Pareto
dominance for minimum durations, a plain Dijkstra-style search for earliest
arrivals, and exhaustive temporal-path enumeration for tiny instances.
"""

from __future__ import annotations

import heapq
from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .stream import INFINITY, EdgeStream, Interval
from .streaming import ArrivalTable, DurationTable

SOFT_VERTEX_CAP = 10_000


@dataclass
class AdjacencyView:
    """Per-vertex outgoing edges (timestamp, transition, head) sorted by timestamp."""

    out: list[list[tuple[int, int, int]]]

    @classmethod
    def from_stream(cls, s: EdgeStream) -> "AdjacencyView":
        out: list[list[tuple[int, int, int]]] = [[] for _ in range(s.n)]
        for i in range(s.m):
            out[int(s.tails[i])].append(
                (int(s.timestamps[i]), int(s.transitions[i]), int(s.heads[i]))
            )
        for lst in out:
            lst.sort()
        return cls(out)

    def departures(self, v: int, not_before: int, tau: Interval):
        """Admitted edges leaving v no earlier than ``not_before``."""
        lst = self.out[v]
        i = bisect_left(lst, (max(not_before, tau.a), -1, -1))
        for t, lam, w in lst[i:]:
            if t + lam <= tau.b:
                yield t, lam, w


def _prep(s: EdgeStream, source: int, tau: Interval | None) -> Interval:
    if s.n > SOFT_VERTEX_CAP:
        raise ParameterError(f"oracle capped at {SOFT_VERTEX_CAP} vertices, got {s.n}")
    s.check_vertex(source)
    return tau if tau is not None else s.lifetime


def oracle_fastest(s: EdgeStream, source: int, tau: Interval | None = None) -> DurationTable:
    """Minimum durations by label setting over (arrival, start) pairs.

    Labels pop in ascending arrival order; a label survives at a vertex only
    if it starts later than every earlier-arriving label there, which is
    exactly Pareto dominance.
    """
    tau = _prep(s, source, tau)
    adj = AdjacencyView.from_stream(s)
    duration = np.full(s.n, INFINITY, dtype=np.int64)
    duration[source] = 0
    best_start = [-1] * s.n  # max start among accepted labels, per vertex

    heap: list[tuple[int, int, int]] = []
    for t, lam, w in adj.departures(source, tau.a, tau):
        heapq.heappush(heap, (t + lam, -t, w))
    while heap:
        arrival, neg_s, v = heapq.heappop(heap)
        start = -neg_s
        if start <= best_start[v]:
            continue
        best_start[v] = start
        if v != source and arrival - start < duration[v]:
            duration[v] = arrival - start
        for t, lam, w in adj.departures(v, arrival, tau):
            heapq.heappush(heap, (t + lam, neg_s, w))
    return DurationTable(source, tau, duration)


def oracle_earliest_arrival(s: EdgeStream, source: int, tau: Interval | None = None) -> ArrivalTable:
    """Earliest arrivals by Dijkstra-style label setting over adjacency lists."""
    tau = _prep(s, source, tau)
    adj = AdjacencyView.from_stream(s)
    arrival = np.full(s.n, INFINITY, dtype=np.int64)
    arrival[source] = tau.a
    done = [False] * s.n
    heap: list[tuple[int, int]] = [(tau.a, source)]
    while heap:
        a, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for t, lam, w in adj.departures(v, a, tau):
            if t + lam < arrival[w]:
                arrival[w] = t + lam
                heapq.heappush(heap, (t + lam, w))
    return ArrivalTable(source, tau, arrival)


def oracle_enumerate_paths(
    s: EdgeStream,
    source: int,
    tau: Interval | None = None,
    max_len: int | None = None,
) -> DurationTable:
    """Ground truth by exhausting every temporal path from ``source``.

    Feasible only on tiny instances; enforced as n <= 12 or m <= 20.
    """
    if not (s.n <= 12 or s.m <= 20):
        raise ParameterError(f"enumeration needs n <= 12 or m <= 20, got n={s.n}, m={s.m}")
    tau = s.lifetime if tau is None else tau
    s.check_vertex(source)
    adj = AdjacencyView.from_stream(s)
    limit = max_len if max_len is not None else s.n - 1
    duration = np.full(s.n, INFINITY, dtype=np.int64)
    duration[source] = 0
    visited = [False] * s.n
    visited[source] = True

    def walk(v: int, start: int, arrived: int, length: int) -> None:
        if length >= limit:
            return
        for t, lam, w in adj.departures(v, arrived, tau):
            if visited[w]:
                continue
            d = t + lam - start
            if d < duration[w]:
                duration[w] = d
            visited[w] = True
            walk(w, start, t + lam, length + 1)
            visited[w] = False

    for t, lam, w in adj.departures(source, tau.a, tau):
        if visited[w]:
            continue
        d = lam
        if d < duration[w]:
            duration[w] = d
        visited[w] = True
        walk(w, t, t + lam, 1)
        visited[w] = False
    return DurationTable(source, tau, duration)


def oracle_reachable_positions(s: EdgeStream, source: int) -> np.ndarray:
    """Brute-force reachable edge stream: an edge is usable iff some walk reaches its tail in time."""
    s.check_vertex(source)
    lifetime = s.lifetime
    ea = oracle_earliest_arrival(s, source, Interval(lifetime.a, lifetime.b))
    out = []
    for i in range(s.m):
        u = int(s.tails[i])
        t = int(s.timestamps[i])
        if u == source or (ea.arrival[u] != INFINITY and ea.arrival[u] <= t):
            out.append(int(s.positions[i]))
    return np.asarray(out, dtype=np.int64)
