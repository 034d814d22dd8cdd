"""Temporal edge streams: parsing, interning, substreams, unions, statistics.

An edge stream keeps its edges in four parallel numpy columns sorted by
(timestamp, stream position).  Substreams share the root stream's columns
conceptually: they carry the global stream positions of their edges plus
gathered copies of the columns, so scans stay sequential.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DataError, ParseError, ParameterError

INFINITY: int = int(np.iinfo(np.int64).max)
NEG_INFINITY: int = int(np.iinfo(np.int64).min)


@dataclass(frozen=True)
class TemporalEdge:
    """One directed timed edge; stream_pos is its identity in the root stream."""

    tail: int
    head: int
    timestamp: int
    transition: int
    stream_pos: int

    def key(self) -> tuple[int, int, int, int]:
        return (self.tail, self.head, self.timestamp, self.transition)


@dataclass(frozen=True)
class Interval:
    """Restrictive time window [a, b]; an edge participates iff a <= t and t + transition <= b."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a > self.b:
            raise ParameterError(f"invalid interval [{self.a}, {self.b}]: a > b")

    def admits(self, timestamp: int, transition: int) -> bool:
        return self.a <= timestamp and timestamp + transition <= self.b


class EdgeStream:
    """A chronologically sorted sequence of temporal edges over an interned vertex table.

    Immutable after construction; safe to share across worker threads.
    """

    __slots__ = (
        "tails",
        "heads",
        "timestamps",
        "transitions",
        "positions",
        "labels",
        "_label_ids",
        "_base",
        "_uniform",
        "_last_out",
    )

    def __init__(
        self,
        tails: np.ndarray,
        heads: np.ndarray,
        timestamps: np.ndarray,
        transitions: np.ndarray,
        positions: np.ndarray,
        labels: list[str],
        base: "EdgeStream | None" = None,
        label_ids: dict[str, int] | None = None,
    ):
        self.tails = tails
        self.heads = heads
        self.timestamps = timestamps
        self.transitions = transitions
        self.positions = positions
        self.labels = labels
        self._label_ids = label_ids if label_ids is not None else {
            lab: i for i, lab in enumerate(labels)
        }
        self._base = base
        self._last_out = None
        m = len(timestamps)
        self._uniform = bool(m == 0 or np.all(transitions == transitions[0]))

    # -- basic shape -------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.timestamps)

    def __len__(self) -> int:
        return self.m

    @property
    def base(self) -> "EdgeStream":
        return self._base if self._base is not None else self

    @property
    def is_root(self) -> bool:
        return self._base is None

    @property
    def uniform_transition(self) -> bool:
        return self._uniform

    @property
    def last_out(self) -> np.ndarray:
        """Position of each vertex's latest outgoing edge (-1 when none); cached."""
        if self._last_out is None:
            from ._kernels import last_out_dense

            self._last_out = last_out_dense(self.tails, self.n)
        return self._last_out

    @property
    def lifetime(self) -> Interval:
        if self.m == 0:
            return Interval(0, 0)
        t_min = int(self.timestamps[0])
        t_max = int(np.max(self.timestamps + self.transitions))
        return Interval(t_min, t_max)

    # -- vertices ----------------------------------------------------------

    def vertex_id(self, label: str) -> int:
        try:
            return self._label_ids[label]
        except KeyError:
            raise DataError(f"unknown vertex label {label!r}") from None

    def vertex_label(self, vid: int) -> str:
        return self.labels[vid]

    def check_vertex(self, vid: int) -> None:
        if not (0 <= vid < self.n):
            raise DataError(f"unknown vertex id {vid}")

    # -- edges -------------------------------------------------------------

    def edge(self, i: int) -> TemporalEdge:
        return TemporalEdge(
            int(self.tails[i]),
            int(self.heads[i]),
            int(self.timestamps[i]),
            int(self.transitions[i]),
            int(self.positions[i]),
        )

    def __iter__(self) -> Iterator[TemporalEdge]:
        return (self.edge(i) for i in range(self.m))

    def restrict(self, positions: np.ndarray) -> "EdgeStream":
        """Substream holding the given ascending global stream positions."""
        root = self.base
        pos = np.asarray(positions, dtype=np.int64)
        return EdgeStream(
            root.tails[pos],
            root.heads[pos],
            root.timestamps[pos],
            root.transitions[pos],
            pos,
            root.labels,
            base=root,
            label_ids=root._label_ids,
        )

    def position_set(self) -> set[int]:
        return set(int(p) for p in self.positions)


def _intern(label: str, table: dict[str, int], labels: list[str]) -> int:
    vid = table.get(label)
    if vid is None:
        vid = len(labels)
        table[label] = vid
        labels.append(label)
    return vid


def parse_edge_list(
    text: str,
    default_transition: int = 1,
    undirected: bool = False,
) -> EdgeStream:
    """Parse whitespace-separated edge lines ``tail head timestamp [transition]``.

    Lines starting with '#' or '%' are comments; blank lines are skipped.
    Vertex labels are interned in first-appearance order; edges are stably
    sorted by timestamp so equal timestamps keep input order.  With
    ``undirected`` every line yields a forward and a backward edge with equal
    timestamp and transition.
    """
    if default_transition <= 0:
        raise ParameterError(f"default transition must be >= 1, got {default_transition}")
    table: dict[str, int] = {}
    labels: list[str] = []
    tails: list[int] = []
    heads: list[int] = []
    times: list[int] = []
    trans: list[int] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        toks = line.split()
        if len(toks) not in (3, 4):
            raise ParseError(f"expected 3 or 4 fields, got {len(toks)}", lineno)
        try:
            t = int(toks[2])
            lam = int(toks[3]) if len(toks) == 4 else default_transition
        except ValueError:
            raise ParseError(f"non-integer time value in {line!r}", lineno) from None
        if t < 0:
            raise ParseError(f"negative timestamp {t}", lineno)
        if lam <= 0:
            raise ParseError(f"transition must be >= 1, got {lam}", lineno)
        u = _intern(toks[0], table, labels)
        v = _intern(toks[1], table, labels)
        tails.append(u)
        heads.append(v)
        times.append(t)
        trans.append(lam)
        if undirected:
            tails.append(v)
            heads.append(u)
            times.append(t)
            trans.append(lam)

    if not tails:
        raise DataError("empty edge stream: input contains no edges")

    ts = np.asarray(times, dtype=np.int64)
    order = np.argsort(ts, kind="stable")
    m = len(ts)
    return EdgeStream(
        np.asarray(tails, dtype=np.int64)[order],
        np.asarray(heads, dtype=np.int64)[order],
        ts[order],
        np.asarray(trans, dtype=np.int64)[order],
        np.arange(m, dtype=np.int64),
        labels,
    )


def write_edge_list(s: EdgeStream) -> str:
    """Serialize a stream back to text, one edge per line in stream order."""
    lines = [
        f"{s.labels[int(s.tails[i])]} {s.labels[int(s.heads[i])]} "
        f"{int(s.timestamps[i])} {int(s.transitions[i])}"
        for i in range(s.m)
    ]
    return "\n".join(lines) + "\n"


def union_streams(s1: EdgeStream, s2: EdgeStream) -> EdgeStream:
    """Set union of two substreams of the same root, merged in linear time."""
    if s1.base is not s2.base:
        raise ParameterError("union requires substreams of the same root stream")
    from ._kernels import merge_union

    pos = merge_union(s1.positions, s2.positions)
    return s1.restrict(pos)


@dataclass(frozen=True)
class StreamStats:
    """Dataset statistics: |V|, |E|, distinct timestamps, reachable-stream sizes."""

    vertices: int
    edges: int
    distinct_timestamps: int
    avg_reach_edges: float
    max_reach_edges: int


def stream_stats(s: EdgeStream, threads: int = 1) -> StreamStats:
    """Compute dataset statistics; reachable-stream sizes via one pass per vertex."""
    from .streaming import build_skip_array, reachable_positions

    skip = build_skip_array(s)
    sizes = _map_vertices(lambda v: len(reachable_positions(s, v, skip)), s.n, threads)
    return StreamStats(
        vertices=s.n,
        edges=s.m,
        distinct_timestamps=int(np.unique(s.timestamps).size),
        avg_reach_edges=float(sum(sizes)) / s.n,
        max_reach_edges=max(sizes),
    )


def _map_vertices(fn, n: int, threads: int) -> list:
    if threads <= 1:
        return [fn(v) for v in range(n)]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(n)))
