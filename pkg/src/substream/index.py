"""The substream index: construction, queries, validation, and the binary file format.

An index holds k substreams plus a vertex assignment such that every vertex's
reachable edge stream is contained in its assigned substream; queries then
scan only that substream.  Two builders are provided: the exact greedy one,
which picks the substream whose union with the new reachable stream is
smallest, and the batched parallel one, which ranks candidates by assigned
vertex count and estimated Jaccard distance between bottom-h sketches.
"""

from __future__ import annotations

import struct
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import FormatError, ParameterError
from .sketch import DEFAULT_H, make_permutation
from .stream import EdgeStream, Interval
from .streaming import (
    ArrivalTable,
    DurationTable,
    SkipArray,
    build_skip_array,
    earliest_arrival,
    fastest_durations,
    reachable_positions,
    unreachable_table,
)

MAGIC = b"TGSI"
VERSION = 1
FLAG_SKETCH = 0x1

GREEDY = "greedy"
SKETCH = "sketch"

DEFAULT_K = 256


def default_batch(n: int) -> int:
    """Whole-graph batches below a million vertices, 2048 beyond."""
    return n if n < 1_000_000 else 2048


@dataclass(frozen=True)
class BuildParams:
    """Construction parameters; batch and threads are not part of the persisted identity."""

    algorithm: str
    k: int
    h: int
    seed: int
    batch: int = 0
    threads: int = 1


@dataclass
class IndexedSubstream:
    """A substream together with its own edge-skipping array (local positions)."""

    stream: EdgeStream
    skip: SkipArray

    @property
    def positions(self) -> np.ndarray:
        return self.stream.positions

    def __len__(self) -> int:
        return self.stream.m


class SubstreamIndex:
    """k substreams, a vertex assignment f (0 = empty substream), and build parameters."""

    def __init__(
        self,
        base: EdgeStream,
        assignment: np.ndarray,
        substreams: list[IndexedSubstream],
        params: BuildParams,
    ):
        self.base = base
        self.assignment = assignment
        self.substreams = substreams
        self.params = params
        self._arena: tuple | None = None

    @property
    def k(self) -> int:
        return len(self.substreams)

    @property
    def assigned_counts(self) -> np.ndarray:
        """Vertices assigned per substream, I_1..I_k."""
        return np.bincount(self.assignment, minlength=self.k + 1)[1:]

    def substream_sizes(self) -> list[int]:
        return [len(sub) for sub in self.substreams]

    def size(self) -> int:
        """Index size: the maximum substream edge count."""
        return max(self.substream_sizes(), default=0)

    def total_query_work(self) -> int:
        """Sum over vertices of the assigned substream's edge count."""
        sizes = np.asarray([0] + self.substream_sizes(), dtype=np.int64)
        return int(sizes[self.assignment].sum())

    def query(
        self, vertex: int, tau: Interval | None = None, kind: str = "fastest"
    ) -> DurationTable | ArrivalTable:
        """Answer an SSAD query on the assigned substream only.

        The result equals the same query on the full stream.
        """
        self.base.check_vertex(vertex)
        if kind not in ("fastest", "ea"):
            raise ParameterError(f"unknown query kind {kind!r}")
        if tau is None:
            tau = self.base.lifetime
        j = int(self.assignment[vertex])
        if j == 0:
            return unreachable_table(self.base, vertex, tau, kind)
        sub = self.substreams[j - 1]
        if kind == "fastest":
            return fastest_durations(sub.stream, vertex, tau, skip=sub.skip)
        return earliest_arrival(sub.stream, vertex, tau, skip=sub.skip)

    def arena(self) -> tuple:
        """Substream columns concatenated for batched scans: (tails, heads,
        timestamps, transitions, boundaries, vertex->substream, vertex->start)."""
        if self._arena is None:
            n = self.base.n
            streams = [sub.stream for sub in self.substreams]
            bounds = np.zeros(self.k + 1, dtype=np.int64)
            bounds[1:] = np.cumsum([st.m for st in streams])
            vsub = self.assignment.astype(np.int64) - 1
            vstart = np.full(n, -1, dtype=np.int64)
            for j, sub in enumerate(self.substreams):
                members = np.nonzero(vsub == j)[0]
                if len(members) == 0:
                    continue
                dense = np.full(n, -1, dtype=np.int64)
                dense[sub.skip.vertices] = sub.skip.positions
                vstart[members] = dense[members]
            self._arena = (
                np.concatenate([st.tails for st in streams] or [np.empty(0, np.int64)]),
                np.concatenate([st.heads for st in streams] or [np.empty(0, np.int64)]),
                np.concatenate([st.timestamps for st in streams] or [np.empty(0, np.int64)]),
                np.concatenate([st.transitions for st in streams] or [np.empty(0, np.int64)]),
                bounds,
                vsub,
                vstart,
            )
        return self._arena


def query(
    ix: SubstreamIndex, vertex: int, tau: Interval | None = None, kind: str = "fastest"
) -> DurationTable | ArrivalTable:
    return ix.query(vertex, tau, kind)


def _check_build_input(s: EdgeStream, k: int) -> None:
    if not s.is_root:
        raise ParameterError("indices are built over a root stream, not a substream")
    if not 2 <= k < s.n:
        raise ParameterError(f"k must satisfy 2 <= k < n (n={s.n}), got {k}")


def _pmap(fn, items, threads: int) -> list:
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _fold_union(arrays: list[np.ndarray]) -> np.ndarray:
    """Multi-way union of ascending position arrays by pairwise tree merging."""
    while len(arrays) > 1:
        nxt = [
            _kernels.merge_union(arrays[i], arrays[i + 1])
            if i + 1 < len(arrays)
            else arrays[i]
            for i in range(0, len(arrays), 2)
        ]
        arrays = nxt
    return arrays[0]


def _finalize(
    base: EdgeStream,
    assignment: np.ndarray,
    positions: list[np.ndarray],
    params: BuildParams,
    threads: int,
) -> SubstreamIndex:
    def make(pos: np.ndarray) -> IndexedSubstream:
        sub = base.restrict(pos)
        return IndexedSubstream(sub, build_skip_array(sub))

    subs = _pmap(make, positions, threads)
    return SubstreamIndex(base, assignment, subs, params)


def build_greedy(s: EdgeStream, k: int) -> SubstreamIndex:
    """Greedy construction: assign each reachable stream to the substream
    whose union with it is smallest, ties to the smallest substream id."""
    _check_build_input(s, k)
    skip = build_skip_array(s)
    subs: list[np.ndarray] = [np.empty(0, dtype=np.int64) for _ in range(k)]
    f = np.zeros(s.n, dtype=np.int64)
    for v in range(s.n):
        xi = reachable_positions(s, v, skip)
        if len(xi) == 0:
            continue
        best_j = 0
        best_sz = -1
        for j in range(k):
            sz = _kernels.union_size(subs[j], xi)
            if best_sz < 0 or sz < best_sz:
                best_sz = sz
                best_j = j
        subs[best_j] = _kernels.merge_union(subs[best_j], xi)
        f[v] = best_j + 1
    params = BuildParams(GREEDY, k, 0, 0)
    return _finalize(s, f, subs, params, threads=1)


def build_parallel(
    s: EdgeStream,
    k: int,
    h: int = DEFAULT_H,
    batch: int | None = None,
    seed: int = 1,
    threads: int = 1,
) -> SubstreamIndex:
    """Batched sketch-accelerated construction.

    Per batch: phase 1 computes reachable streams and their sketches (in
    parallel), phase 2 sequentially assigns each vertex to the substream with
    the minimal ranking value and folds its sketch into that substream's
    sketch, phase 3 merges the batch's reachable streams into the substreams
    (in parallel).  The result is independent of the thread count.
    """
    _check_build_input(s, k)
    if h < 1:
        raise ParameterError(f"sketch size h must be >= 1, got {h}")
    if batch is None:
        batch = default_batch(s.n)
    if batch < 1:
        raise ParameterError(f"batch size must be >= 1, got {batch}")
    if h * k > s.m:
        raise ParameterError(f"h*k must not exceed m, got {h}*{k} > {s.m}")

    perm = make_permutation(seed, s.m)
    starts = _kernels.first_out_dense(s.tails, s.n)
    c_vals = np.zeros((k, h), dtype=np.int64)
    c_lens = np.zeros(k, dtype=np.int64)
    counts = np.zeros(k, dtype=np.int64)
    f = np.zeros(s.n, dtype=np.int64)
    subs: list[np.ndarray] = [np.empty(0, dtype=np.int64) for _ in range(k)]

    def compute(span: tuple[int, int]):
        return _kernels.xi_batch(
            s.tails, s.heads, s.timestamps, s.transitions, s.last_out, starts,
            span[0], span[1], s.n, perm.table, h,
        )

    for b0 in range(0, s.n, batch):
        b1 = min(b0 + batch, s.n)
        step = max(1, -(-(b1 - b0) // max(threads * 4, 1)))
        spans = [(lo, min(lo + step, b1)) for lo in range(b0, b1, step)]
        chunks = _pmap(compute, spans, threads)

        sk_mat = np.vstack([c[2] for c in chunks])
        sk_lens = np.concatenate([c[3] for c in chunks])
        sizes = np.concatenate([np.diff(c[1]) for c in chunks])
        choices = np.empty(b1 - b0, dtype=np.int64)
        _kernels.assign_batch(
            c_vals, c_lens, counts, sk_mat, sk_lens, sizes == 0, k, h, choices
        )
        f[b0:b1] = choices + 1

        pending: dict[int, list[np.ndarray]] = {}
        at = 0
        for (lo, hi), (buf, offs, _, _) in zip(spans, chunks):
            for idx in range(hi - lo):
                j = int(choices[at])
                at += 1
                if j >= 0:
                    pending.setdefault(j, []).append(buf[offs[idx] : offs[idx + 1]])

        def update(j: int) -> None:
            subs[j] = _fold_union([subs[j]] + pending[j])

        _pmap(update, sorted(pending), threads)

    params = BuildParams(SKETCH, k, h, seed, batch, threads)
    return _finalize(s, f, subs, params, threads)


@dataclass
class IndexReport:
    """Validation outcome plus the size figures the bounds refer to."""

    ok: bool
    violations: list[str]
    size: int
    substream_sizes: list[int]
    assigned_counts: list[int]
    max_substream_vertices: int
    union_reach_edges: int
    greedy_bound: int | None

    def summary(self) -> str:
        state = "OK" if self.ok else f"{len(self.violations)} violation(s)"
        return (
            f"index size {self.size} edges, max vertices per substream "
            f"{self.max_substream_vertices}, |union of reachable streams| "
            f"{self.union_reach_edges}: {state}"
        )


def validate(ix: SubstreamIndex) -> IndexReport:
    """Check containment, sink routing, and the size bounds; report violations."""
    base = ix.base
    skip = build_skip_array(base)
    violations: list[str] = []
    size = ix.size()
    xi_sizes = np.zeros(base.n, dtype=np.int64)
    union_all = np.empty(0, dtype=np.int64)

    for v in range(base.n):
        xi = reachable_positions(base, v, skip)
        xi_sizes[v] = len(xi)
        union_all = _kernels.merge_union(union_all, xi)
        j = int(ix.assignment[v])
        if (len(xi) == 0) != (j == 0):
            violations.append(
                f"vertex {v}: empty-reachability routing broken (|xi|={len(xi)}, f={j})"
            )
        if j < 0 or j > ix.k:
            violations.append(f"vertex {v}: assignment {j} out of range")
        elif j > 0:
            sub_pos = ix.substreams[j - 1].positions
            if _kernels.union_size(sub_pos, xi) != len(sub_pos):
                violations.append(f"vertex {v}: reachable stream not contained in substream {j}")

    max_vertices = 0
    for i, sub in enumerate(ix.substreams, start=1):
        if len(sub) == 0:
            continue
        occ = int(np.union1d(sub.stream.tails, sub.stream.heads).size)
        max_vertices = max(max_vertices, occ)
        if occ > 2 * size:
            violations.append(f"substream {i}: {occ} vertices exceed 2*size = {2 * size}")
    for i, cnt in enumerate(ix.assigned_counts, start=1):
        if cnt > 2 * size:
            violations.append(f"substream {i}: {cnt} assigned vertices exceed 2*size = {2 * size}")

    if size * ix.k < len(union_all):
        violations.append(
            f"size {size} below the floor |union|/k = {len(union_all)}/{ix.k}"
        )

    greedy_bound: int | None = None
    if ix.params.algorithm == GREEDY:
        n_plus = int(np.count_nonzero(xi_sizes))
        take = -(-n_plus // ix.k)  # ceil
        greedy_bound = int(np.sort(xi_sizes)[::-1][:take].sum())
        if size > greedy_bound:
            violations.append(f"greedy size {size} exceeds bound {greedy_bound}")

    return IndexReport(
        ok=not violations,
        violations=violations,
        size=size,
        substream_sizes=ix.substream_sizes(),
        assigned_counts=[int(c) for c in ix.assigned_counts],
        max_substream_vertices=max_vertices,
        union_reach_edges=len(union_all),
        greedy_bound=greedy_bound,
    )


# -- binary serialization ----------------------------------------------------

_EDGE_DTYPE = np.dtype([("tail", "<u4"), ("head", "<u4"), ("t", "<u8"), ("lam", "<u8")])
_SKIP_DTYPE = np.dtype([("vertex", "<u4"), ("pos", "<u8")])


def serialize(ix: SubstreamIndex) -> bytes:
    """Little-endian index file: header, vertex table, assignment, edge table,
    substream position lists, per-substream skip entries, CRC-32 trailer."""
    base = ix.base
    flags = FLAG_SKETCH if ix.params.algorithm == SKETCH else 0
    buf = bytearray()
    buf += MAGIC
    buf += struct.pack(
        "<IIIIQIQ", VERSION, flags, ix.k, base.n, base.m, ix.params.h, ix.params.seed
    )
    for label in base.labels:
        raw = label.encode("utf-8")
        buf += struct.pack("<I", len(raw))
        buf += raw
    buf += ix.assignment.astype("<u4").tobytes()

    edges = np.empty(base.m, dtype=_EDGE_DTYPE)
    edges["tail"] = base.tails
    edges["head"] = base.heads
    edges["t"] = base.timestamps
    edges["lam"] = base.transitions
    buf += edges.tobytes()

    for sub in ix.substreams:
        buf += struct.pack("<Q", len(sub))
        buf += sub.positions.astype("<u8").tobytes()
    for sub in ix.substreams:
        buf += struct.pack("<Q", len(sub.skip))
        entries = np.empty(len(sub.skip), dtype=_SKIP_DTYPE)
        entries["vertex"] = sub.skip.vertices
        entries["pos"] = sub.skip.positions
        buf += entries.tobytes()

    buf += struct.pack("<I", zlib.crc32(bytes(buf)) & 0xFFFFFFFF)
    return bytes(buf)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.at = 0

    def take(self, count: int) -> bytes:
        if self.at + count > len(self.data):
            raise FormatError("truncated index file")
        out = self.data[self.at : self.at + count]
        self.at += count
        return out

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))


def deserialize(data: bytes) -> SubstreamIndex:
    """Rebuild an index from its file bytes; rejects bad magic, version, or CRC."""
    if len(data) < 8:
        raise FormatError("truncated index file")
    payload, (crc,) = data[:-4], struct.unpack("<I", data[-4:])
    if zlib.crc32(payload) & 0xFFFFFFFF != crc:
        raise FormatError("CRC mismatch: index file is corrupt")
    r = _Reader(payload)
    if r.take(4) != MAGIC:
        raise FormatError("bad magic: not a substream index file")
    version, flags, k, n, m, h, seed = r.unpack("<IIIIQIQ")
    if version != VERSION:
        raise FormatError(f"unsupported index file version {version}")

    labels = []
    for _ in range(n):
        (ln,) = r.unpack("<I")
        try:
            labels.append(r.take(ln).decode("utf-8"))
        except UnicodeDecodeError as e:
            raise FormatError(f"bad vertex label encoding: {e}") from None
    assignment = np.frombuffer(r.take(4 * n), dtype="<u4").astype(np.int64)
    if assignment.size and int(assignment.max()) > k:
        raise FormatError("assignment references a substream beyond k")

    edges = np.frombuffer(r.take(_EDGE_DTYPE.itemsize * m), dtype=_EDGE_DTYPE)
    ts = edges["t"].astype(np.int64)
    lams = edges["lam"].astype(np.int64)
    if m and (np.any(np.diff(ts) < 0) or np.any(lams < 1)):
        raise FormatError("edge table is not a sorted temporal stream")
    base = EdgeStream(
        edges["tail"].astype(np.int64),
        edges["head"].astype(np.int64),
        ts,
        lams,
        np.arange(m, dtype=np.int64),
        labels,
    )

    positions = []
    for _ in range(k):
        (cnt,) = r.unpack("<Q")
        positions.append(np.frombuffer(r.take(8 * cnt), dtype="<u8").astype(np.int64))
    substreams = []
    for pos in positions:
        if pos.size and (int(pos.max()) >= m or np.any(np.diff(pos) <= 0)):
            raise FormatError("substream positions must be ascending edge-table indices")
        (cnt,) = r.unpack("<Q")
        entries = np.frombuffer(r.take(_SKIP_DTYPE.itemsize * cnt), dtype=_SKIP_DTYPE)
        skip = SkipArray(entries["vertex"].astype(np.int64), entries["pos"].astype(np.int64))
        substreams.append(IndexedSubstream(base.restrict(pos), skip))
    if r.at != len(payload):
        raise FormatError("trailing bytes after index payload")

    algorithm = SKETCH if flags & FLAG_SKETCH else GREEDY
    params = BuildParams(algorithm, k, h, seed)
    return SubstreamIndex(base, assignment, substreams, params)
