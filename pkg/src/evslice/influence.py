"""Influence reach over strictly index-increasing paths from a fixed
influential set, answered per slice via rectangle stabbing.

For every edge arrival we record iota(e_k): the greatest window start i at
which the edge's destination is influenced in G_{i,k}.  Because iota is
non-decreasing across the in-edges of a vertex, v is influenced in G_{i,j}
exactly when the last in-slice in-edge of v has iota >= i; with nu(e_k) the
index of the next edge into the same destination, that gives one rectangle
[0, iota(e_k)] x [k, nu(e_k) - 1] per edge and each influenced vertex is
counted exactly once.

Hop-bounded variants keep one iota column per hop budget c <= h (reachable
by a path of at most c edges).  Undirected edges act as two simultaneous
directed events processed jointly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .dominance import StabbingIndex
from .graph import GraphError, RelationalEventGraph
from .matroids import RankIndex, influential_touch_tau

UNBOUNDED = 0  # hop-layer key for the plain (no hop limit) tables


@dataclass
class InfluenceTable:
    """Per-destination-side influence times.

    ``dests[t]`` is the destination vertex of rectangle slot t, ``edge_of[t]``
    the edge index it belongs to (undirected edges contribute one slot per
    endpoint), ``nu[t]`` the next slot index of the same destination mapped
    to its edge (m when none).  ``iota[c]`` holds the hop-c column; key 0 is
    the unbounded table.  ``lam`` follows the least-window-end definition
    and is kept for cross-checking only.
    """

    m: int
    dests: list[int]
    edge_of: list[int]
    nu: list[int]
    iota: dict[int, list[int]]
    lam: Optional[list[int]] = None


def _destination_slots(graph: RelationalEventGraph) -> tuple[list[int], list[int]]:
    dests: list[int] = []
    edge_of: list[int] = []
    for k, (u, v) in enumerate(zip(graph.us, graph.vs)):
        if graph.directed:
            dests.append(v)
            edge_of.append(k)
        else:
            dests.append(v)
            edge_of.append(k)
            if u != v:
                dests.append(u)
                edge_of.append(k)
    return dests, edge_of


def compute_influence(graph: RelationalEventGraph, hops: int = 0) -> InfluenceTable:
    """One forward pass computing iota (per hop budget when hops >= 1) and nu.

    hops = 0 builds only the unbounded column.  An empty influential set is
    valid and yields all -1.
    """
    if hops < 0:
        raise GraphError(f"hop bound must be >= 1, got {hops}")
    influential = graph.influential
    n = graph.n
    budgets = [UNBOUNDED] + list(range(1, hops + 1))
    running = {c: [-1] * n for c in budgets}
    dests, edge_of = _destination_slots(graph)
    iota = {c: [] for c in budgets}

    for k, (u, v) in enumerate(zip(graph.us, graph.vs)):
        sides = [(u, v)] if graph.directed else ([(u, v)] if u == v else [(u, v), (v, u)])
        # all candidates read pre-edge state: a path may use e_k at most once
        updates = []
        for c in budgets:
            for src, dst in sides:
                cand = k if src in influential else -1
                if c == UNBOUNDED:
                    cand = max(cand, running[UNBOUNDED][src])
                elif c > 1:
                    cand = max(cand, running[c - 1][src])
                if cand > running[c][dst]:
                    updates.append((c, dst, cand))
        for c, dst, cand in updates:
            if cand > running[c][dst]:
                running[c][dst] = cand
        for c in budgets:
            col = running[c]
            iota[c].append(col[v])
            if not graph.directed and u != v:
                iota[c].append(col[u])

    # nu: next slot with the same destination, as an edge index (m if none)
    nslots = len(dests)
    nu = [graph.m] * nslots
    nxt: dict[int, int] = {}
    for t in range(nslots - 1, -1, -1):
        nu[t] = nxt.get(dests[t], graph.m)
        nxt[dests[t]] = edge_of[t]

    table = InfluenceTable(graph.m, dests, edge_of, nu, iota)
    table.lam = _compute_lambda(graph)
    return table


def compute_h_influence(graph: RelationalEventGraph, hops: int) -> InfluenceTable:
    """Influence table with hop-bounded columns 1..hops alongside the unbounded one."""
    if hops < 1:
        raise GraphError(f"hop bound must be >= 1, got {hops}")
    return compute_influence(graph, hops)


def _compute_lambda(graph: RelationalEventGraph) -> list[int]:
    """Least window end j making each edge's destination influenced in G_{k,j}.

    Reverse sweep with cascading relaxation: when the source side of a later
    edge becomes influenced early enough, the edge fires once and lowers its
    head's value.  Sentinel m means "never".  Undirected graphs store the
    minimum over the edge's two destination sides.
    """
    m = graph.m
    n = graph.n
    best = [m] * n  # least final edge index of an influence path starting >= current k
    out: dict[int, list[int]] = {}
    for k in range(m):
        u, v = graph.us[k], graph.vs[k]
        out.setdefault(u, []).append(k)
        if not graph.directed and v != u:
            out.setdefault(v, []).append(k)
    pointer = {x: len(lst) - 1 for x, lst in out.items()}  # scan out-edges from latest down

    def drop(x: int, val: int) -> None:
        stack = [(x, val)]
        while stack:
            node, value = stack.pop()
            if value >= best[node]:
                continue
            best[node] = value
            lst = out.get(node)
            if lst is None:
                continue
            p = pointer[node]
            while p >= 0 and lst[p] > value:
                b = lst[p]
                uu, vv = graph.us[b], graph.vs[b]
                head = vv if uu == node else uu
                if b < best[head]:
                    stack.append((head, b))
                p -= 1
            pointer[node] = p

    lam = [m] * m
    for k in range(m - 1, -1, -1):
        u, v = graph.us[k], graph.vs[k]
        if u in graph.influential:
            drop(v, k)
        if not graph.directed and v in graph.influential and u != v:
            drop(u, k)
        if graph.directed:
            lam[k] = best[v]
        else:
            lam[k] = min(best[u], best[v])
    return lam


class InfluenceCounts:
    """Stabbing indexes answering influenced-vertex counts per slice.

    The default count excludes the influential vertices themselves; the
    inclusive variant adds back the influential vertices incident to at
    least one slice edge (a capacity-1 partition rank).
    """

    def __init__(self, graph: RelationalEventGraph, hops: int = 0):
        self.table = compute_influence(graph, hops)
        self.hops = hops
        self.m = graph.m
        self.influential = sorted(graph.influential)
        infl = graph.influential
        self.indexes: dict[int, Optional[StabbingIndex]] = {}
        for c, col in self.table.iota.items():
            rects = []
            for t, it in enumerate(col):
                if it >= 0 and self.table.dests[t] not in infl:
                    k = self.table.edge_of[t]
                    rects.append((0, it, k, self.table.nu[t] - 1))
            self.indexes[c] = StabbingIndex(rects, grid=graph.m) if rects else None
        self.touch_rank = RankIndex(influential_touch_tau(graph))

    def _layer(self, hops: Optional[int]) -> Optional[StabbingIndex]:
        if hops is None:
            return self.indexes[UNBOUNDED]
        if hops not in self.indexes or hops == UNBOUNDED:
            raise GraphError(f"hop bound {hops} not built (available: 1..{self.hops})")
        return self.indexes[hops]

    def count(self, i: int, j: int, hops: Optional[int] = None, include_influential: bool = False) -> int:
        idx = self._layer(hops)
        total = idx.query_stab(i, j) if idx is not None else 0
        if include_influential:
            total += self.touch_rank.rank_slice(i, j)
        return total

    def state(self) -> dict:
        return {
            "m": self.m,
            "hops": self.hops,
            "influential": self.influential,
            "dests": self.table.dests,
            "edge_of": self.table.edge_of,
            "nu": self.table.nu,
            "iota": {str(c): col for c, col in self.table.iota.items()},
            "lam": self.table.lam,
            "indexes": {
                str(c): idx.state() if idx is not None else None
                for c, idx in self.indexes.items()
            },
            "touch": self.touch_rank.state(),
        }

    @classmethod
    def from_state(cls, state: dict) -> "InfluenceCounts":
        obj = cls.__new__(cls)
        obj.m = state["m"]
        obj.hops = state["hops"]
        obj.influential = state["influential"]
        obj.table = InfluenceTable(
            state["m"],
            list(state["dests"]),
            list(state["edge_of"]),
            list(state["nu"]),
            {int(c): list(col) for c, col in state["iota"].items()},
            list(state["lam"]) if state["lam"] is not None else None,
        )
        obj.indexes = {
            int(c): StabbingIndex.from_state(sub) if sub is not None else None
            for c, sub in state["indexes"].items()
        }
        obj.touch_rank = RankIndex.from_state(state["touch"])
        return obj
