"""One-pass edge-stream algorithms: earliest arrival, minimum durations, reachability.

Every operation is pure with respect to its input stream; result tables are
private to the caller, so any number of queries may run concurrently against
a shared stream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ParameterError
from .sketch import BottomHSketch, SketchAccumulator
from .stream import INFINITY, EdgeStream, Interval

_EMPTY_PERM = np.empty(0, dtype=np.int64)


@dataclass(frozen=True)
class SkipArray:
    """First outgoing-edge position per vertex, sparse over vertices that have one."""

    vertices: np.ndarray  # ascending vertex ids
    positions: np.ndarray  # matching 0-based positions in the scanned stream

    def get(self, vertex: int) -> int:
        """Position of the vertex's earliest outgoing edge, or -1 if it is a sink."""
        i = int(np.searchsorted(self.vertices, vertex))
        if i < len(self.vertices) and self.vertices[i] == vertex:
            return int(self.positions[i])
        return -1

    def __len__(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict[int, int]:
        return {int(v): int(p) for v, p in zip(self.vertices, self.positions)}


def build_skip_array(s: EdgeStream) -> SkipArray:
    """One pass over the stream; O(n + m) time, entries only for non-sinks."""
    dense = _kernels.first_out_dense(s.tails, s.n)
    verts = np.nonzero(dense >= 0)[0].astype(np.int64)
    return SkipArray(verts, dense[verts])


@dataclass
class ArrivalTable:
    """Earliest arrival time per vertex; INFINITY marks unreached vertices."""

    source: int
    interval: Interval
    arrival: np.ndarray

    def get(self, vertex: int) -> int:
        return int(self.arrival[vertex])

    def to_dict(self) -> dict[int, int]:
        return {v: int(a) for v, a in enumerate(self.arrival)}


@dataclass
class DurationTable:
    """Minimum duration per vertex; INFINITY marks unreachable vertices."""

    source: int
    interval: Interval
    duration: np.ndarray
    dominance: dict[int, list[tuple[int, int]]] | None = None

    def get(self, vertex: int) -> int:
        return int(self.duration[vertex])

    def to_dict(self) -> dict[int, int]:
        return {v: int(d) for v, d in enumerate(self.duration)}


def _resolve(s: EdgeStream, source: int, tau: Interval | None, skip: SkipArray | None):
    s.check_vertex(source)
    if tau is None:
        tau = s.lifetime
    start = 0 if skip is None else skip.get(source)
    return tau, start


def earliest_arrival(
    s: EdgeStream,
    source: int,
    tau: Interval | None = None,
    skip: SkipArray | None = None,
) -> ArrivalTable:
    """Earliest arrival times from ``source`` within ``tau`` in one pass.

    Results are identical with or without a skip array.
    """
    tau, start = _resolve(s, source, tau, skip)
    arrival = _kernels.ea_scan(
        s.tails, s.heads, s.timestamps, s.transitions, start, source, tau.a, tau.b, s.n
    )
    return ArrivalTable(source, tau, arrival)


def fastest_durations(
    s: EdgeStream,
    source: int,
    tau: Interval | None = None,
    skip: SkipArray | None = None,
    fast_path: bool | None = None,
    debug_lists: bool = False,
) -> DurationTable:
    """Minimum durations from ``source`` to every vertex within ``tau``.

    ``fast_path`` selects the uniform-transition scan; by default it is taken
    exactly when every edge shares one transition time.  Both paths produce
    identical tables.
    """
    tau, start = _resolve(s, source, tau, skip)
    use_uniform = s.uniform_transition if fast_path is None else (fast_path and s.uniform_transition)
    if use_uniform and not debug_lists:
        dur = _kernels.fp_scan_uniform(
            s.tails, s.heads, s.timestamps, s.transitions, start, source, tau.a, tau.b, s.n
        )
        return DurationTable(source, tau, dur)
    dur, off, ln, ps, pa = _kernels.fp_scan(
        s.tails, s.heads, s.timestamps, s.transitions, start, source,
        tau.a, tau.b, s.n, debug_lists,
    )
    table = DurationTable(source, tau, dur)
    if debug_lists:
        table.dominance = {
            v: [(int(ps[off[v] + i]), int(pa[off[v] + i])) for i in range(ln[v])]
            for v in range(s.n)
            if ln[v] > 0
        }
    return table


def reachable_positions(s: EdgeStream, source: int, skip: SkipArray) -> np.ndarray:
    """Stream positions of the edges usable by some walk starting at ``source``."""
    s.check_vertex(source)
    local, _ = _kernels.xi_scan(
        s.tails, s.heads, s.timestamps, s.transitions, s.last_out, skip.get(source),
        source, s.n, _EMPTY_PERM, 0,
    )
    if s.is_root:
        return local
    return s.positions[local]


def reachable_stream(
    s: EdgeStream,
    source: int,
    skip: SkipArray,
    sketcher: SketchAccumulator | None = None,
) -> tuple[EdgeStream, BottomHSketch | None]:
    """The reachable edge stream of ``source`` in stream order.

    With a sketch accumulator, each included edge's permuted stream position
    is folded into a bottom-h sketch during the same pass.
    """
    s.check_vertex(source)
    if sketcher is None:
        return s.restrict(reachable_positions(s, source, skip)), None
    local, sk = _kernels.xi_scan(
        s.tails, s.heads, s.timestamps, s.transitions, s.last_out, skip.get(source),
        source, s.n, sketcher.permutation.table, sketcher.h,
    )
    pos = local if s.is_root else s.positions[local]
    sketch = BottomHSketch(sketcher.h, tuple(int(x) for x in sk), sketcher.permutation.m)
    return s.restrict(pos), sketch


def unreachable_table(s: EdgeStream, source: int, tau: Interval | None, kind: str):
    """Result table for a query source that reaches nothing."""
    s.check_vertex(source)
    if tau is None:
        tau = s.lifetime
    if kind == "ea":
        arrival = np.full(s.n, INFINITY, dtype=np.int64)
        arrival[source] = tau.a
        return ArrivalTable(source, tau, arrival)
    if kind == "fastest":
        dur = np.full(s.n, INFINITY, dtype=np.int64)
        dur[source] = 0
        return DurationTable(source, tau, dur)
    raise ParameterError(f"unknown query kind {kind!r}")
