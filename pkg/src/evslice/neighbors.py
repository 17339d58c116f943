"""Past/future neighbor thresholds and edge-neighbor-count queries.

A neighbor of e_k is any other edge sharing at least one endpoint.  For
each edge we precompute, per bound t, the extreme window endpoints at which
e_k still has at most t past (pi) or future (phi) neighbors; an edge then
has at most r past and s future neighbors inside [i, j] exactly when the
rectangle [pi_r(e_k), k] x [k, phi_s(e_k)] contains the point (i, j), which
a stabbing index answers in O(log window).

Parallel edges share both endpoints and would be scanned from both endpoint
queues, so the merge de-duplicates by edge index; a self loop enters its
vertex queue once.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dominance import StabbingIndex
from .graph import GraphError, RelationalEventGraph


@dataclass(frozen=True)
class NeighborThresholds:
    """pi[t][k] / phi[t][k] for t = 0..r / 0..s, with clamped sentinels.

    pi values clamp to 0 (fewer than t past neighbors ever), phi values to
    m-1; both keep the rectangle of every edge well formed inside the grid.
    """

    r: int
    s: int
    pi: tuple[tuple[int, ...], ...]
    phi: tuple[tuple[int, ...], ...]

    def rectangles(self, r: int, s: int) -> list[tuple[int, int, int, int]]:
        """One rectangle [pi_r(k), k] x [k, phi_s(k)] per edge."""
        if not (0 <= r <= self.r and 0 <= s <= self.s):
            raise GraphError(f"thresholds built for r <= {self.r}, s <= {self.s}")
        pi_r = self.pi[r]
        phi_s = self.phi[s]
        return [(pi_r[k], k, k, phi_s[k]) for k in range(len(pi_r))]


def _distinct_recent(queues: dict[int, list[int]], u: int, v: int, cap: int) -> list[int]:
    """Merge two per-vertex queues of recent edge indices, deduped, descending."""
    qa = queues.get(u, ())
    qb = queues.get(v, ()) if v != u else ()
    merged: list[int] = []
    ia, ib = len(qa) - 1, len(qb) - 1
    last = None
    while (ia >= 0 or ib >= 0) and len(merged) < cap:
        if ib < 0 or (ia >= 0 and qa[ia] >= qb[ib]):
            nxt = qa[ia]
            ia -= 1
        else:
            nxt = qb[ib]
            ib -= 1
        if nxt != last:
            merged.append(nxt)
            last = nxt
    return merged


def compute_thresholds(graph: RelationalEventGraph, r: int, s: int) -> NeighborThresholds:
    """Queue-scan computation of pi_t (t <= r) and phi_t (t <= s) in O((r+s)m)."""
    if r < 0 or s < 0:
        raise GraphError(f"neighbor bounds must be non-negative, got r={r}, s={s}")
    m = graph.m
    pi = [[0] * m for _ in range(r + 1)]
    queues: dict[int, list[int]] = {}
    for k, (u, v) in enumerate(zip(graph.us, graph.vs)):
        recent = _distinct_recent(queues, u, v, r + 1)
        for t in range(r + 1):
            # least window start keeping exactly t past neighbors: one past the
            # (t+1)-th most recent distinct neighbor, or 0 when none exists
            pi[t][k] = recent[t] + 1 if len(recent) > t else 0
        for endpoint in {u, v}:
            q = queues.setdefault(endpoint, [])
            q.append(k)
            if len(q) > r + 1:
                q.pop(0)

    phi = [[m - 1] * m for _ in range(s + 1)]
    queues = {}
    for k in range(m - 1, -1, -1):
        u, v = graph.us[k], graph.vs[k]
        recent = _distinct_recent(queues, u, v, s + 1)
        # queues hold the nearest future indices; recent is descending but we
        # need ascending distance, so invert via -index storage
        for t in range(s + 1):
            phi[t][k] = -recent[t] - 1 if len(recent) > t else m - 1
        for endpoint in {u, v}:
            q = queues.setdefault(endpoint, [])
            q.append(-k)
            if len(q) > s + 1:
                q.pop(0)

    return NeighborThresholds(
        r, s, tuple(tuple(col) for col in pi), tuple(tuple(col) for col in phi)
    )


class NeighborCounts:
    """Stabbing indexes for the registered (r, s) at-most combinations."""

    def __init__(self, graph: RelationalEventGraph, pairs: set[tuple[int, int]]):
        self.m = graph.m
        self.pairs = set(pairs)
        needed = set()
        for r, s in self.pairs:
            for rr in (r - 1, r):
                for ss in (s - 1, s):
                    if rr >= 0 and ss >= 0:
                        needed.add((rr, ss))
        max_r = max((r for r, _ in needed), default=0)
        max_s = max((s for _, s in needed), default=0)
        self.thresholds = compute_thresholds(graph, max_r, max_s)
        self.at_most_indexes = {
            (r, s): StabbingIndex(self.thresholds.rectangles(r, s), grid=graph.m)
            for r, s in needed
        }

    def at_most(self, r: int, s: int, i: int, j: int) -> int:
        if r < 0 or s < 0:
            return 0
        idx = self.at_most_indexes.get((r, s))
        if idx is None:
            raise GraphError(
                f"neighbor bound ({r}, {s}) not registered; available: "
                f"{sorted(self.at_most_indexes)}"
            )
        return idx.query_stab(i, j)

    def exact(self, r: int, s: int, i: int, j: int) -> int:
        if (r, s) not in self.pairs:
            raise GraphError(
                f"neighbor pair ({r}, {s}) not registered; available: {sorted(self.pairs)}"
            )
        return (
            self.at_most(r, s, i, j)
            - self.at_most(r, s - 1, i, j)
            - self.at_most(r - 1, s, i, j)
            + self.at_most(r - 1, s - 1, i, j)
        )

    def isolated_edges(self, i: int, j: int) -> int:
        return self.at_most(0, 0, i, j)

    def exact_total(self, k: int, i: int, j: int) -> int:
        """Edges with exactly k neighbors in the slice: sum of exact(r, k - r)."""
        missing = [(r, k - r) for r in range(k + 1) if (r, k - r) not in self.pairs]
        if missing:
            raise GraphError(f"neighbor total {k} needs unregistered pairs {missing}")
        return sum(self.exact(r, k - r, i, j) for r in range(k + 1))

    def state(self) -> dict:
        return {
            "m": self.m,
            "pairs": sorted(self.pairs),
            "pi": [list(col) for col in self.thresholds.pi],
            "phi": [list(col) for col in self.thresholds.phi],
            "indexes": {f"{r},{s}": idx.state() for (r, s), idx in self.at_most_indexes.items()},
        }

    @classmethod
    def from_state(cls, state: dict) -> "NeighborCounts":
        obj = cls.__new__(cls)
        obj.m = state["m"]
        obj.pairs = {tuple(p) for p in state["pairs"]}
        obj.thresholds = NeighborThresholds(
            len(state["pi"]) - 1,
            len(state["phi"]) - 1,
            tuple(tuple(col) for col in state["pi"]),
            tuple(tuple(col) for col in state["phi"]),
        )
        obj.at_most_indexes = {}
        for key, sub in state["indexes"].items():
            r, s = key.split(",")
            obj.at_most_indexes[(int(r), int(s))] = StabbingIndex.from_state(sub)
        return obj
