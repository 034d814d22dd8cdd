"""Substream index for single-source-all-destinations distance queries on temporal graphs."""

__version__ = "0.1.0"

from .closeness import (
    ClosenessRanking,
    closeness_baseline,
    closeness_oracle,
    closeness_via_index,
)
from .errors import (
    DataError,
    FormatError,
    InvariantError,
    ParameterError,
    ParseError,
    SubstreamError,
)
from .index import (
    BuildParams,
    IndexReport,
    SubstreamIndex,
    build_greedy,
    build_parallel,
    deserialize,
    query,
    serialize,
    validate,
)
from .oracle import (
    AdjacencyView,
    oracle_earliest_arrival,
    oracle_enumerate_paths,
    oracle_fastest,
)
from .sketch import (
    BottomHSketch,
    PermutationHash,
    SketchAccumulator,
    jaccard_estimate,
    make_permutation,
    sketch_insert,
    sketch_of,
    sketch_union,
)
from .stream import (
    INFINITY,
    EdgeStream,
    Interval,
    StreamStats,
    TemporalEdge,
    parse_edge_list,
    stream_stats,
    union_streams,
    write_edge_list,
)
from .streaming import (
    ArrivalTable,
    DurationTable,
    SkipArray,
    build_skip_array,
    earliest_arrival,
    fastest_durations,
    reachable_positions,
    reachable_stream,
)
