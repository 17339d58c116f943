"""Triad closure events: edges completing a triangle with two earlier
in-slice edges.

Delta(e_k) is the smallest window start d at which e_k no longer closes any
triangle inside G_{d,k} (0 when it never does); an edge counts for slice
[i, j] exactly when k <= j and Delta(e_k) > i, one toward-diagonal
dominance query.

Preprocessing splits vertices by the aggregate graph's h-index into a small
high-degree set H and a low-degree rest L, so each edge's best completing
wedge is found in O(h): wedges through L are maintained incrementally in a
pair table, wedges through H are probed directly.  Edges are treated as
unordered here; self loops and parallel pairs alone never form a triangle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import RelationalEventGraph
from .matroids import EDGE_SPACE, RankIndex, TauTable


@dataclass(frozen=True)
class HPartition:
    """Vertices split by aggregate degree: |H| <= h, every L vertex has degree <= h."""

    h: int
    high: frozenset[int]

    def in_high(self, v: int) -> bool:
        return v in self.high


def compute_h_partition(graph: RelationalEventGraph) -> HPartition:
    """Largest h with at least h vertices of aggregate degree >= h; ties stay in L."""
    deg = [0] * graph.n
    for u, v in zip(graph.us, graph.vs):
        deg[u] += 1
        deg[v] += 1
    ordered = sorted(deg, reverse=True)
    h = 0
    for idx, d in enumerate(ordered, start=1):
        if d >= idx:
            h = idx
        else:
            break
    high = frozenset(v for v in range(graph.n) if deg[v] > h)
    return HPartition(h, high)


@dataclass
class TriangleThresholds:
    """Delta per edge plus the instrumentation counter from preprocessing."""

    delta: tuple[int, ...]
    h: int
    probes: int


def compute_delta(graph: RelationalEventGraph, partition: HPartition | None = None) -> TriangleThresholds:
    """Delta(e_k) for every edge in O(h) dictionary probes per edge."""
    if partition is None:
        partition = compute_h_partition(graph)
    high = partition.high
    latest: dict[tuple[int, int], int] = {}  # unordered pair -> most recent edge index
    best_low: dict[tuple[int, int], int] = {}  # best wedge via an L middle: max min-index
    adj: dict[int, set[int]] = {}
    probes = 0
    deltas = []

    def pair(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a <= b else (b, a)

    for k, (u, v) in enumerate(zip(graph.us, graph.vs)):
        if u == v:
            deltas.append(0)
            continue
        key = pair(u, v)
        wedge = best_low.get(key, -1)
        probes += 1
        for w in high:
            if w == u or w == v:
                continue
            probes += 2
            a = latest.get(pair(u, w))
            if a is None:
                continue
            b = latest.get(pair(w, v))
            if b is None:
                continue
            quality = a if a < b else b
            if quality > wedge:
                wedge = quality
        deltas.append(wedge + 1)

        # updates: record the edge, then refresh L-mediated wedges it creates
        latest[key] = k
        probes += 1
        for mid, other in ((u, v), (v, u)):
            if mid in high:
                continue
            for w in adj.get(mid, ()):
                if w == other or w == mid:
                    continue
                quality = latest[pair(mid, w)]
                wkey = pair(other, w)
                probes += 2
                if best_low.get(wkey, -1) < quality:
                    best_low[wkey] = quality
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)

    return TriangleThresholds(tuple(deltas), partition.h, probes)


class TriadIndex:
    """Dominance-backed count of triad closure events per slice."""

    def __init__(self, graph: RelationalEventGraph):
        self.thresholds = compute_delta(graph)
        # Delta <= k always, so the tau-table shift keeps points in grid
        self.rank = RankIndex(TauTable(self.thresholds.delta, EDGE_SPACE))

    def count(self, i: int, j: int) -> int:
        return self.rank.count_dependent(i, j)

    def state(self) -> dict:
        return {
            "delta": list(self.thresholds.delta),
            "h": self.thresholds.h,
            "probes": self.thresholds.probes,
            "rank": self.rank.state(),
        }

    @classmethod
    def from_state(cls, state: dict) -> "TriadIndex":
        obj = cls.__new__(cls)
        obj.thresholds = TriangleThresholds(tuple(state["delta"]), state["h"], state["probes"])
        obj.rank = RankIndex.from_state(state["rank"])
        return obj


def count_triad_closures(index: TriadIndex, i: int, j: int) -> int:
    return index.count(i, j)
