"""Exhaustive engine-vs-oracle comparison shared by the fuzz command and tests."""

from __future__ import annotations

from typing import Optional

from .engine import SliceEngine
from .graph import RelationalEventGraph
from .oracle import OracleParams, SliceStats, SweepOracle


def expected_key_values(stats: SliceStats, params: OracleParams, directed: bool) -> dict:
    """Oracle record flattened into the engine's key namespace."""
    out = {
        "components": stats.components,
        "nontrivial_components": stats.nontrivial_components,
        "avg_size": stats.avg_size,
        "avg_nontrivial_size": stats.avg_nontrivial_size,
        "loopy_edges": stats.loopy_edges,
        "loopy_components": stats.loopy_components,
        "tree_components": stats.tree_components,
        "nontrivial_trees": stats.nontrivial_trees,
        "isolated_vertices": stats.isolated_vertices,
        "distinct": stats.distinct,
        "repeated": stats.repeated,
        "isolated_edges": stats.isolated_edges,
        "influenced": stats.influenced,
        "influenced_incl": stats.influenced_incl,
        "triad_closures": stats.triad_closures,
    }
    for d in params.degrees:
        out[f"degree_gt:d={d}"] = stats.degree_gt[d]
        out[f"degree_eq:d={d}"] = stats.degree_eq[d]
        out[f"degree_le:d={d}"] = stats.degree_le[d]
    for mu in params.multiplicities:
        out[f"pairs_ge:t={mu}"] = stats.pairs_ge[mu]
        out[f"mult_eq:mu={mu}"] = stats.mult_eq[mu]
        out[f"mult_le:mu={mu}"] = stats.mult_le[mu]
    if directed:
        out["reciprocity"] = stats.reciprocity
        out["reciprocated_dyads"] = stats.reciprocated_dyads
        out["distinct_directed"] = stats.distinct_directed
        out["distinct_undirected"] = stats.distinct_undirected
    for r, s in params.neighbor_pairs:
        out[f"neighbors_le:r={r},s={s}"] = stats.neighbors_le[(r, s)]
        out[f"neighbors_exact:r={r},s={s}"] = stats.neighbors_eq[(r, s)]
    for c in range(1, params.hops + 1):
        out[f"influenced:h={c}"] = stats.influenced_h[c]
    return out


def engine_oracle_mismatches(
    engine: SliceEngine,
    graph: RelationalEventGraph,
    params: OracleParams,
    report: Optional[list] = None,
    max_report: int = 10,
) -> int:
    """Count mismatching (slice, key) values over every slice of the graph."""
    bad = 0
    for i in range(graph.m):
        sweep = SweepOracle(graph, i, params)
        for j in range(i, graph.m):
            stats = sweep.advance(j)
            expected = expected_key_values(stats, params, graph.directed)
            for key, want in expected.items():
                got = engine.stat(key, i, j)
                if got != want:
                    bad += 1
                    if report is not None and len(report) < max_report:
                        report.append((i, j, key, got, want))
    return bad
