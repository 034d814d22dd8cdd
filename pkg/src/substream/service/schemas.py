"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class ServiceInfo(BaseModel):
    name: str = "substream"
    version: str
    datasets: int
    indexes: int


class DatasetCreateRequest(BaseModel):
    edges_text: str = Field(description="edge-list text: tail head timestamp [transition]")
    default_transition: int = 1
    undirected: bool = False


class DatasetInfo(BaseModel):
    dataset_id: str
    vertices: int
    edges: int
    distinct_timestamps: int
    lifetime: tuple[int, int]


class DatasetStats(DatasetInfo):
    avg_reach_edges: float
    max_reach_edges: int


class IndexBuildRequest(BaseModel):
    algorithm: Literal["sketch", "greedy"] = "sketch"
    k: int = 256
    h: int = 8
    batch_size: Optional[int] = None
    seed: int = 1
    threads: int = 1


class IndexInfo(BaseModel):
    index_id: str
    dataset_id: str
    algorithm: str
    k: int
    h: int
    seed: int
    size_edges: int
    substream_sizes: list[int]
    assigned_counts: list[int]
    total_query_work: int
    build_seconds: float


class ValidationReport(BaseModel):
    ok: bool
    violations: list[str]
    size_edges: int
    max_substream_vertices: int
    union_reach_edges: int
    greedy_bound: Optional[int] = None


class QueryRequest(BaseModel):
    source: str
    kind: Literal["fastest", "ea"] = "fastest"
    from_time: Optional[int] = None
    to_time: Optional[int] = None


class QueryResponse(BaseModel):
    source: str
    kind: str
    interval: tuple[int, int]
    values: dict[str, Optional[int]]


class ClosenessRequest(BaseModel):
    from_time: Optional[int] = None
    to_time: Optional[int] = None
    threads: int = 1


class BaselineClosenessRequest(ClosenessRequest):
    engine: Literal["fullstream", "oracle"] = "fullstream"


class ClosenessEntry(BaseModel):
    vertex: str
    closeness: float
    rank: int


class ClosenessTiming(BaseModel):
    build_seconds: float
    query_seconds: float
    total_seconds: float


class ClosenessResponse(BaseModel):
    engine: str
    interval: tuple[int, int]
    timing: ClosenessTiming
    ranking: list[ClosenessEntry]
