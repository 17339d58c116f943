"""Slice statistics for timestamped edge sequences.

Build once over a relational event graph, then answer component counts,
degree/multiplicity/reciprocity statistics, edge-neighbor profiles,
influence reach, and triad closures for any contiguous index window in time
logarithmic in the window length.
"""

from .dominance import (
    DominanceError,
    DominanceIndex,
    StabbingIndex,
    ZerolessShape,
    build_dominance,
    build_stabbing,
    zeroless_digits,
)
from .engine import BuildReport, EngineConfig, SliceEngine, build_engine
from .graph import (
    GraphError,
    ParseError,
    RawEvent,
    RelationalEventGraph,
    Slice,
    build_graph,
    parse_events,
)
from .matroids import RankIndex, TauTable, compute_tau_partition, rank_query
from .oracle import (
    OracleParams,
    SliceStats,
    SweepOracle,
    gen_lb_influence,
    gen_lb_repeated,
    gen_random_graph,
    oracle_slice_stats,
)

__version__ = "0.1.0"

__all__ = [
    "BuildReport",
    "DominanceError",
    "DominanceIndex",
    "EngineConfig",
    "GraphError",
    "OracleParams",
    "ParseError",
    "RankIndex",
    "RawEvent",
    "RelationalEventGraph",
    "Slice",
    "SliceEngine",
    "SliceStats",
    "StabbingIndex",
    "SweepOracle",
    "TauTable",
    "ZerolessShape",
    "build_dominance",
    "build_engine",
    "build_graph",
    "build_stabbing",
    "compute_tau_partition",
    "gen_lb_influence",
    "gen_lb_repeated",
    "gen_random_graph",
    "oracle_slice_stats",
    "parse_events",
    "rank_query",
    "zeroless_digits",
]
