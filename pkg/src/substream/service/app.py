"""FastAPI service wrapping the core package.

Datasets and indexes live in process memory: build once, then serve any
number of concurrent distance and closeness queries against the immutable
index.
"""

from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass

from fastapi import FastAPI, HTTPException, Request, Response

from .. import __version__
from .. import closeness as closeness_mod
from .. import index as index_mod
from ..errors import DataError, ParameterError
from ..stream import INFINITY, EdgeStream, Interval, parse_edge_list, stream_stats
from . import schemas


@dataclass
class _IndexEntry:
    index: index_mod.SubstreamIndex
    dataset_id: str
    build_seconds: float


class Registry:
    def __init__(self) -> None:
        self.datasets: dict[str, EdgeStream] = {}
        self.indexes: dict[str, _IndexEntry] = {}
        self.lock = threading.Lock()

    def new_id(self) -> str:
        return uuid.uuid4().hex[:12]

    def dataset(self, dataset_id: str) -> EdgeStream:
        try:
            return self.datasets[dataset_id]
        except KeyError:
            raise HTTPException(404, f"unknown dataset {dataset_id}") from None

    def index(self, index_id: str) -> _IndexEntry:
        try:
            return self.indexes[index_id]
        except KeyError:
            raise HTTPException(404, f"unknown index {index_id}") from None


registry = Registry()
app = FastAPI(title="substream", version=__version__)


@app.exception_handler(DataError)
async def _data_error(request: Request, exc: DataError):
    raise HTTPException(400, str(exc))


@app.exception_handler(ParameterError)
async def _param_error(request: Request, exc: ParameterError):
    raise HTTPException(400, str(exc))


def _interval(s: EdgeStream, from_time: int | None, to_time: int | None) -> Interval:
    life = s.lifetime
    return Interval(
        life.a if from_time is None else from_time,
        life.b if to_time is None else to_time,
    )


def _dataset_info(dataset_id: str, s: EdgeStream) -> schemas.DatasetInfo:
    import numpy as np

    life = s.lifetime
    return schemas.DatasetInfo(
        dataset_id=dataset_id,
        vertices=s.n,
        edges=s.m,
        distinct_timestamps=int(np.unique(s.timestamps).size),
        lifetime=(life.a, life.b),
    )


def _index_info(index_id: str, entry: _IndexEntry) -> schemas.IndexInfo:
    ix = entry.index
    return schemas.IndexInfo(
        index_id=index_id,
        dataset_id=entry.dataset_id,
        algorithm=ix.params.algorithm,
        k=ix.k,
        h=ix.params.h,
        seed=ix.params.seed,
        size_edges=ix.size(),
        substream_sizes=ix.substream_sizes(),
        assigned_counts=[int(c) for c in ix.assigned_counts],
        total_query_work=ix.total_query_work(),
        build_seconds=entry.build_seconds,
    )


def _closeness_response(engine, ranking, tau, build_seconds, query_seconds, labels):
    return schemas.ClosenessResponse(
        engine=engine,
        interval=(tau.a, tau.b),
        timing=schemas.ClosenessTiming(
            build_seconds=build_seconds,
            query_seconds=query_seconds,
            total_seconds=build_seconds + query_seconds,
        ),
        ranking=[schemas.ClosenessEntry(**rec) for rec in ranking.to_records(labels)],
    )


@app.get("/", response_model=schemas.ServiceInfo)
def info() -> schemas.ServiceInfo:
    return schemas.ServiceInfo(
        version=__version__,
        datasets=len(registry.datasets),
        indexes=len(registry.indexes),
    )


@app.post("/datasets", response_model=schemas.DatasetInfo)
def create_dataset(req: schemas.DatasetCreateRequest) -> schemas.DatasetInfo:
    s = parse_edge_list(req.edges_text, req.default_transition, req.undirected)
    with registry.lock:
        dataset_id = registry.new_id()
        registry.datasets[dataset_id] = s
    return _dataset_info(dataset_id, s)


@app.get("/datasets", response_model=list[schemas.DatasetInfo])
def list_datasets() -> list[schemas.DatasetInfo]:
    return [_dataset_info(did, s) for did, s in registry.datasets.items()]


@app.get("/datasets/{dataset_id}/stats", response_model=schemas.DatasetStats)
def dataset_stats(dataset_id: str, threads: int = 1) -> schemas.DatasetStats:
    s = registry.dataset(dataset_id)
    st = stream_stats(s, threads=threads)
    life = s.lifetime
    return schemas.DatasetStats(
        dataset_id=dataset_id,
        vertices=st.vertices,
        edges=st.edges,
        distinct_timestamps=st.distinct_timestamps,
        lifetime=(life.a, life.b),
        avg_reach_edges=st.avg_reach_edges,
        max_reach_edges=st.max_reach_edges,
    )


@app.post("/datasets/{dataset_id}/indexes", response_model=schemas.IndexInfo)
def build_index(dataset_id: str, req: schemas.IndexBuildRequest) -> schemas.IndexInfo:
    s = registry.dataset(dataset_id)
    t0 = time.perf_counter()
    if req.algorithm == index_mod.GREEDY:
        ix = index_mod.build_greedy(s, req.k)
    else:
        ix = index_mod.build_parallel(
            s, req.k, h=req.h, batch=req.batch_size, seed=req.seed, threads=req.threads
        )
    build_seconds = time.perf_counter() - t0
    entry = _IndexEntry(ix, dataset_id, build_seconds)
    with registry.lock:
        index_id = registry.new_id()
        registry.indexes[index_id] = entry
    return _index_info(index_id, entry)


@app.get("/indexes", response_model=list[schemas.IndexInfo])
def list_indexes() -> list[schemas.IndexInfo]:
    return [_index_info(iid, e) for iid, e in registry.indexes.items()]


@app.get("/indexes/{index_id}", response_model=schemas.IndexInfo)
def index_info(index_id: str) -> schemas.IndexInfo:
    return _index_info(index_id, registry.index(index_id))


@app.get("/indexes/{index_id}/validation", response_model=schemas.ValidationReport)
def index_validation(index_id: str) -> schemas.ValidationReport:
    report = index_mod.validate(registry.index(index_id).index)
    return schemas.ValidationReport(
        ok=report.ok,
        violations=report.violations,
        size_edges=report.size,
        max_substream_vertices=report.max_substream_vertices,
        union_reach_edges=report.union_reach_edges,
        greedy_bound=report.greedy_bound,
    )


@app.get("/indexes/{index_id}/file")
def download_index(index_id: str) -> Response:
    blob = index_mod.serialize(registry.index(index_id).index)
    return Response(content=blob, media_type="application/octet-stream")


@app.post("/indexes/file", response_model=schemas.IndexInfo)
async def upload_index(request: Request) -> schemas.IndexInfo:
    blob = await request.body()
    ix = index_mod.deserialize(blob)
    with registry.lock:
        dataset_id = registry.new_id()
        registry.datasets[dataset_id] = ix.base
        index_id = registry.new_id()
        entry = _IndexEntry(ix, dataset_id, 0.0)
        registry.indexes[index_id] = entry
    return _index_info(index_id, entry)


@app.post("/indexes/{index_id}/query", response_model=schemas.QueryResponse)
def run_query(index_id: str, req: schemas.QueryRequest) -> schemas.QueryResponse:
    ix = registry.index(index_id).index
    base = ix.base
    src = base.vertex_id(req.source)
    tau = _interval(base, req.from_time, req.to_time)
    table = ix.query(src, tau, req.kind)
    values = table.duration if req.kind == "fastest" else table.arrival
    return schemas.QueryResponse(
        source=req.source,
        kind=req.kind,
        interval=(tau.a, tau.b),
        values={
            base.labels[v]: (None if int(values[v]) == INFINITY else int(values[v]))
            for v in range(base.n)
        },
    )


@app.post("/indexes/{index_id}/closeness", response_model=schemas.ClosenessResponse)
def index_closeness(index_id: str, req: schemas.ClosenessRequest) -> schemas.ClosenessResponse:
    entry = registry.index(index_id)
    ix = entry.index
    tau = _interval(ix.base, req.from_time, req.to_time)
    t0 = time.perf_counter()
    ranking = closeness_mod.closeness_via_index(ix, tau, threads=req.threads)
    query_seconds = time.perf_counter() - t0
    return _closeness_response(
        "index", ranking, tau, entry.build_seconds, query_seconds, ix.base.labels
    )


@app.post("/datasets/{dataset_id}/closeness", response_model=schemas.ClosenessResponse)
def dataset_closeness(
    dataset_id: str, req: schemas.BaselineClosenessRequest
) -> schemas.ClosenessResponse:
    s = registry.dataset(dataset_id)
    tau = _interval(s, req.from_time, req.to_time)
    fn = (
        closeness_mod.closeness_baseline
        if req.engine == "fullstream"
        else closeness_mod.closeness_oracle
    )
    t0 = time.perf_counter()
    ranking = fn(s, tau, threads=req.threads)
    query_seconds = time.perf_counter() - t0
    return _closeness_response(req.engine, ranking, tau, 0.0, query_seconds, s.labels)
