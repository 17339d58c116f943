"""Independence times for partition matroids and rank queries over index windows.

For a matroid over the edge sequence (or its half-edges), tau(e_k) is the
smallest window start i at which e_k raises the rank of the slice ending at
k; -1 when it always does, and k+1 (a sentinel) for elements that are
dependent even alone.  The rank of any window [I, J] is then

    (J - I + 1) - #{k <= J : tau(e_k) > I}

where the count is one toward-diagonal dominance query: tau(e_k) <= k + 1
forces every counted element inside the window.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .dominance import DominanceIndex
from .graph import GraphError, RelationalEventGraph

EDGE_SPACE = "edge"
HALF_EDGE_SPACE = "half_edge"


@dataclass(frozen=True)
class TauTable:
    """Per-element independence times, tagged with their index space."""

    values: tuple[int, ...]
    space: str

    def __post_init__(self):
        for k, tau in enumerate(self.values):
            if tau > k + 1:
                raise ValueError(f"tau[{k}] = {tau} exceeds the k+1 sentinel")

    @property
    def size(self) -> int:
        return len(self.values)

    def window(self, i: int, j: int) -> tuple[int, int]:
        """Translate an edge slice [i, j] into this table's element window."""
        if self.space == HALF_EDGE_SPACE:
            return 2 * i, 2 * j + 1
        return i, j


class RankIndex:
    """Dominance-backed matroid rank over arbitrary element windows.

    Element k maps to the point (k + 2, tau(e_k) + 1); the +2/+1 shifts keep
    every point (sentinels included) on or below the diagonal of the grid.
    """

    __slots__ = ("tau", "dom")

    def __init__(self, tau: TauTable):
        pts = [(k + 2, t + 1, 1) for k, t in enumerate(tau.values)]
        self.tau = tau
        self.dom = DominanceIndex(pts, grid=len(pts) + 2)

    def count_dependent(self, start: int, end: int) -> int:
        """#{k <= end : tau(e_k) > start} for element indices."""
        if start < 0 or end >= self.tau.size:
            raise GraphError(f"element window [{start}, {end}] out of range")
        return self.dom.query_toward_diagonal(end + 3, start + 1)

    def rank_elements(self, start: int, end: int) -> int:
        return (end - start + 1) - self.count_dependent(start, end)

    def rank_slice(self, i: int, j: int) -> int:
        start, end = self.tau.window(i, j)
        return self.rank_elements(start, end)

    def state(self) -> dict:
        return {
            "tau": list(self.tau.values),
            "space": self.tau.space,
            "dom": self.dom.state(),
        }

    @classmethod
    def from_state(cls, state: dict) -> "RankIndex":
        obj = cls.__new__(cls)
        obj.tau = TauTable(tuple(state["tau"]), state["space"])
        obj.dom = DominanceIndex.from_state(state["dom"])
        return obj


def rank_query(index: RankIndex, i: int, j: int) -> int:
    """Matroid rank of the element set induced by edge slice [i, j]."""
    return index.rank_slice(i, j)


VERTEX_DEGREE = "vertex_degree"
PAIR_DIRECTED = "pair_directed"
PAIR_UNDIRECTED = "pair_undirected"


def compute_tau_partition(graph: RelationalEventGraph, mode: str, parameter: int) -> TauTable:
    """Independence times for the capacity-``parameter`` partition matroid.

    vertex_degree partitions half-edges by endpoint (edge e_i contributes
    elements 2i and 2i+1); the pair modes partition whole edges by their
    ordered or unordered endpoint pair.  Each class keeps a queue of its
    ``parameter`` most recent elements; tau is one more than the evicted
    element's index, or -1 while the queue still has room.
    """
    if parameter < 1:
        raise GraphError(f"partition parameter must be >= 1, got {parameter}")
    queues: dict = {}
    if mode == VERTEX_DEGREE:
        classes = []
        for u, v in zip(graph.us, graph.vs):
            classes.append(u)
            classes.append(v)
        space = HALF_EDGE_SPACE
    elif mode in (PAIR_DIRECTED, PAIR_UNDIRECTED):
        if mode == PAIR_DIRECTED:
            classes = list(zip(graph.us, graph.vs))
        else:
            classes = [(u, v) if u <= v else (v, u) for u, v in zip(graph.us, graph.vs)]
        space = EDGE_SPACE
    else:
        raise GraphError(f"unknown partition mode {mode!r}")

    taus = []
    for k, cls in enumerate(classes):
        q = queues.get(cls)
        if q is None:
            q = deque()
            queues[cls] = q
        if len(q) == parameter:
            taus.append(q.popleft() + 1)
        else:
            taus.append(-1)
        q.append(k)
    return TauTable(tuple(taus), space)


def influential_touch_tau(graph: RelationalEventGraph) -> TauTable:
    """Half-edge tau table whose rank counts influential vertices touched by a slice.

    Non-influential endpoints get the dependent-alone sentinel so they never
    contribute; influential endpoints behave like a capacity-1 class.
    """
    last_seen: dict[int, int] = {}
    taus = []
    k = 0
    for u, v in zip(graph.us, graph.vs):
        for endpoint in (u, v):
            if endpoint in graph.influential:
                prev = last_seen.get(endpoint)
                taus.append(-1 if prev is None else prev + 1)
                last_seen[endpoint] = k
            else:
                taus.append(k + 1)
            k += 1
    return TauTable(tuple(taus), HALF_EDGE_SPACE)


def greedy_partition_rank(classes: Sequence, parameter: int) -> int:
    """Reference rank: sum of min(class size, parameter) over classes."""
    counts: dict = {}
    for cls in classes:
        counts[cls] = counts.get(cls, 0) + 1
    return sum(min(c, parameter) for c in counts.values())
