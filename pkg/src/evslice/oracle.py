"""Reference implementations computed from scratch on materialized slices.

Everything here is deliberately independent of the query engine: components
by union-find, degrees and multiplicities by direct tallies, neighbor
profiles by per-edge enumeration, influence by a monotone forward sweep,
triads by wedge scans.  ``oracle_slice_stats`` favors clarity and is
quadratic-ish per slice; ``SweepOracle`` produces the same numbers for all
windows [i, i..m-1] incrementally so exhaustive comparisons stay fast.
Also hosts the permutation-based adversarial instance generators used by
the acceptance suite and the fuzz command.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .graph import GraphError, RawEvent, RelationalEventGraph, build_graph


@dataclass
class SliceStats:
    """Every supported statistic for one window, straight from definitions."""

    components: int = 0
    nontrivial_components: int = 0
    avg_size: float = 0.0
    avg_nontrivial_size: float = 0.0
    loopy_edges: int = 0
    loopy_components: int = 0
    tree_components: int = 0
    nontrivial_trees: int = 0
    isolated_vertices: int = 0
    degree_gt: dict = field(default_factory=dict)
    degree_eq: dict = field(default_factory=dict)
    degree_le: dict = field(default_factory=dict)
    distinct: int = 0
    repeated: int = 0
    pairs_ge: dict = field(default_factory=dict)
    mult_eq: dict = field(default_factory=dict)
    mult_le: dict = field(default_factory=dict)
    distinct_directed: Optional[int] = None
    distinct_undirected: Optional[int] = None
    reciprocated_dyads: Optional[int] = None
    reciprocity: Optional[float] = None
    neighbors_le: dict = field(default_factory=dict)
    neighbors_eq: dict = field(default_factory=dict)
    isolated_edges: int = 0
    influenced: int = 0
    influenced_incl: int = 0
    influenced_h: dict = field(default_factory=dict)
    triad_closures: int = 0


@dataclass(frozen=True)
class OracleParams:
    degrees: tuple[int, ...] = (0, 1, 2)
    multiplicities: tuple[int, ...] = (1, 2)
    neighbor_pairs: tuple[tuple[int, int], ...] = ((0, 0), (1, 1))
    hops: int = 0


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def oracle_slice_stats(
    graph: RelationalEventGraph, i: int, j: int, params: OracleParams = OracleParams()
) -> SliceStats:
    """All statistics of G_{i,j} from scratch."""
    graph.check_slice(i, j)
    stats = SliceStats()
    n = graph.n
    w = j - i + 1
    edges = [(graph.us[k], graph.vs[k]) for k in range(i, j + 1)]

    # connectivity: union-find plus per-component edge/vertex tallies
    uf = _UnionFind(n)
    for u, v in edges:
        if u != v:
            uf.union(u, v)
    comp_edges: dict[int, int] = {}
    for u, v in edges:
        root = uf.find(u)
        comp_edges[root] = comp_edges.get(root, 0) + 1
    comp_vertices: dict[int, int] = {}
    touched = set()
    for u, v in edges:
        touched.add(u)
        touched.add(v)
    for v in touched:
        root = uf.find(v)
        comp_vertices[root] = comp_vertices.get(root, 0) + 1
    touched_comps = len(comp_vertices)
    stats.isolated_vertices = n - len(touched)
    stats.components = stats.isolated_vertices + touched_comps
    spanning = sum(cnt - 1 for cnt in comp_vertices.values())
    stats.loopy_edges = w - spanning
    loopy = sum(1 for root, cnt in comp_vertices.items() if comp_edges.get(root, 0) >= cnt)
    stats.loopy_components = loopy
    stats.tree_components = stats.components - loopy
    stats.nontrivial_components = touched_comps
    stats.nontrivial_trees = stats.tree_components - stats.isolated_vertices
    stats.avg_size = n / stats.components if stats.components else 0.0
    stats.avg_nontrivial_size = (
        len(touched) / touched_comps if touched_comps else 0.0
    )

    # degrees: a self loop contributes two endpoint slots
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    for d in params.degrees:
        stats.degree_gt[d] = sum(1 for x in deg if x > d)
        stats.degree_eq[d] = sum(1 for x in deg if x == d)
        stats.degree_le[d] = sum(1 for x in deg if x <= d)

    # multiplicities over the graph's native pair interpretation
    pairs: dict = {}
    for u, v in edges:
        key = (u, v) if graph.directed else ((u, v) if u <= v else (v, u))
        pairs[key] = pairs.get(key, 0) + 1
    stats.distinct = len(pairs)
    stats.repeated = w - stats.distinct
    for mu in params.multiplicities:
        stats.pairs_ge[mu] = sum(1 for c in pairs.values() if c >= mu)
        stats.mult_eq[mu] = sum(c for c in pairs.values() if c == mu + 1)
        stats.mult_le[mu] = sum(c for c in pairs.values() if c <= mu + 1)
    if graph.directed:
        upairs = set()
        for u, v in edges:
            upairs.add((u, v) if u <= v else (v, u))
        stats.distinct_directed = len(pairs)
        stats.distinct_undirected = len(upairs)
        stats.reciprocated_dyads = stats.distinct_directed - stats.distinct_undirected
        stats.reciprocity = (
            stats.reciprocated_dyads / stats.distinct_undirected
            if stats.distinct_undirected
            else 0.0
        )

    # neighbor profiles by direct enumeration inside the slice
    past = [0] * w
    future = [0] * w
    for a in range(w):
        ua, va = edges[a]
        for b in range(a):
            ub, vb = edges[b]
            if ua in (ub, vb) or va in (ub, vb):
                past[a] += 1
                future[b] += 1
    for r, s in params.neighbor_pairs:
        stats.neighbors_le[(r, s)] = sum(
            1 for a in range(w) if past[a] <= r and future[a] <= s
        )
        stats.neighbors_eq[(r, s)] = sum(
            1 for a in range(w) if past[a] == r and future[a] == s
        )
    stats.isolated_edges = sum(1 for a in range(w) if past[a] == 0 and future[a] == 0)

    # influence: monotone-index forward sweep; hops[v] = fewest edges used
    hops: dict[int, int] = {}
    touched_infl = {v for u, vv in edges for v in (u, vv) if v in graph.influential}
    for a in range(w):
        u, v = edges[a]
        sides = [(u, v)] if graph.directed else ([(u, v)] if u == v else [(u, v), (v, u)])
        arrivals = []
        for src, dst in sides:
            best = None
            if src in graph.influential:
                best = 1
            if src in hops and (best is None or hops[src] + 1 < best):
                best = hops[src] + 1
            if best is not None and (dst not in hops or best < hops[dst]):
                arrivals.append((dst, best))
        for dst, best in arrivals:
            if dst not in hops or best < hops[dst]:
                hops[dst] = best
    influenced = set(hops)
    stats.influenced = len(influenced - graph.influential)
    stats.influenced_incl = stats.influenced + len(touched_infl)
    for c in range(1, params.hops + 1):
        reach = {v for v, hp in hops.items() if hp <= c}
        stats.influenced_h[c] = len(reach - graph.influential)

    # triads: does edge a close a triangle with two earlier slice edges?
    closures = 0
    for a in range(w):
        ua, va = edges[a]
        if ua == va:
            continue
        nbr_u = set()
        nbr_v = set()
        for b in range(a):
            ub, vb = edges[b]
            if ub == vb:
                continue
            for x, y in ((ub, vb), (vb, ub)):
                if x == ua:
                    nbr_u.add(y)
                if x == va:
                    nbr_v.add(y)
        if (nbr_u & nbr_v) - {ua, va}:
            closures += 1
    stats.triad_closures = closures
    return stats


class SweepOracle:
    """Incremental oracle: fix i, then extend j one edge at a time.

    Produces numbers identical to oracle_slice_stats but with amortized
    near-constant work per window, keeping exhaustive all-slices
    comparisons tractable.  Untouched vertices are singleton components, so
    a touch creates a fresh (1 vertex, 0 edges) component; a component is
    loopy exactly when its edge count reaches its vertex count.
    """

    def __init__(self, graph: RelationalEventGraph, i: int, params: OracleParams):
        graph.check_slice(i, i)
        self.graph = graph
        self.i = i
        self.params = params
        n = graph.n
        self.uf = _UnionFind(n)
        self.comp_vertices: dict[int, int] = {}
        self.comp_edges: dict[int, int] = {}
        self.touched: set[int] = set()
        self.loopy = 0
        self.spanning = 0
        self.deg = [0] * n
        self.deg_hist: dict[int, int] = {0: n}
        self.pairs: dict = {}
        self.pair_hist: dict[int, int] = {}
        self.distinct = 0
        self.upairs: dict = {}
        self.udistinct = 0
        self.incident: dict[int, list[int]] = {}
        self.past: list[int] = []
        self.future: list[int] = []
        self.profile: dict[tuple[int, int], int] = {}
        self.hops: dict[int, int] = {}
        cap = params.hops + 1
        self.hop_excl = [0] * (cap + 1)  # index c: non-influential vertices at hops == c
        self.touched_infl: set[int] = set()
        self.adj: dict[int, set[int]] = {}
        self.closures = 0
        self.w = 0

    def _touch(self, v: int) -> None:
        if v not in self.touched:
            self.touched.add(v)
            self.comp_vertices[self.uf.find(v)] = 1
            self.comp_edges[self.uf.find(v)] = 0

    def _is_loopy(self, root: int) -> bool:
        return self.comp_edges[root] >= self.comp_vertices[root]

    def advance(self, j: int) -> SliceStats:
        """Extend the window to [i, j] (j must advance one step) and report it."""
        graph = self.graph
        u, v = graph.us[j], graph.vs[j]
        a = j - self.i
        assert a == self.w, "advance must be called with consecutive j"
        self.w += 1

        # connectivity
        self._touch(u)
        self._touch(v)
        ru, rv = self.uf.find(u), self.uf.find(v)
        if ru != rv:
            both_loopy = self._is_loopy(ru) and self._is_loopy(rv)
            vu, vv = self.comp_vertices.pop(ru), self.comp_vertices.pop(rv)
            eu, ev = self.comp_edges.pop(ru), self.comp_edges.pop(rv)
            self.uf.union(ru, rv)
            root = self.uf.find(u)
            self.comp_vertices[root] = vu + vv
            self.comp_edges[root] = eu + ev + 1
            if both_loopy:
                self.loopy -= 1
            self.spanning += 1
        else:
            was_tree = not self._is_loopy(ru)
            self.comp_edges[ru] += 1
            if was_tree:
                self.loopy += 1  # an intra-component edge always closes a cycle

        # degrees (self loop contributes two endpoint slots)
        for x in (u, v):
            old = self.deg[x]
            self.deg_hist[old] -= 1
            self.deg[x] = old + 1
            self.deg_hist[old + 1] = self.deg_hist.get(old + 1, 0) + 1

        # multiplicities
        key = (u, v) if graph.directed else ((u, v) if u <= v else (v, u))
        old = self.pairs.get(key, 0)
        if old:
            self.pair_hist[old] -= 1
        else:
            self.distinct += 1
        self.pairs[key] = old + 1
        self.pair_hist[old + 1] = self.pair_hist.get(old + 1, 0) + 1
        if graph.directed:
            ukey = (u, v) if u <= v else (v, u)
            if ukey not in self.upairs:
                self.udistinct += 1
                self.upairs[ukey] = 0
            self.upairs[ukey] += 1

        # neighbor profiles
        seen = set(self.incident.get(u, ()))
        if v != u:
            seen |= set(self.incident.get(v, ()))
        for t in seen:
            self.profile[(self.past[t], self.future[t])] -= 1
            self.future[t] += 1
            newp = (self.past[t], self.future[t])
            self.profile[newp] = self.profile.get(newp, 0) + 1
        past = len(seen)
        self.past.append(past)
        self.future.append(0)
        self.profile[(past, 0)] = self.profile.get((past, 0), 0) + 1
        self.incident.setdefault(u, []).append(a)
        if v != u:
            self.incident.setdefault(v, []).append(a)

        # influence
        if u in graph.influential:
            self.touched_infl.add(u)
        if v in graph.influential:
            self.touched_infl.add(v)
        sides = [(u, v)] if graph.directed else ([(u, v)] if u == v else [(u, v), (v, u)])
        arrivals = []
        for src, dst in sides:
            best = None
            if src in graph.influential:
                best = 1
            if src in self.hops and (best is None or self.hops[src] + 1 < best):
                best = self.hops[src] + 1
            if best is not None and (dst not in self.hops or best < self.hops[dst]):
                arrivals.append((dst, best))
        cap = len(self.hop_excl) - 1
        for dst, best in arrivals:
            prev = self.hops.get(dst)
            if prev is not None and best >= prev:
                continue
            self.hops[dst] = best
            if dst not in graph.influential:
                if prev is not None:
                    self.hop_excl[min(prev, cap)] -= 1
                self.hop_excl[min(best, cap)] += 1

        # triads
        if u != v:
            nu = self.adj.get(u, set())
            nv = self.adj.get(v, set())
            small, big = (nu, nv) if len(nu) <= len(nv) else (nv, nu)
            if any(x in big and x != u and x != v for x in small):
                self.closures += 1
            self.adj.setdefault(u, set()).add(v)
            self.adj.setdefault(v, set()).add(u)

        return self._snapshot()

    def _snapshot(self) -> SliceStats:
        graph = self.graph
        params = self.params
        stats = SliceStats()
        n = graph.n
        touched_comps = len(self.comp_vertices)
        stats.isolated_vertices = n - len(self.touched)
        stats.components = stats.isolated_vertices + touched_comps
        stats.loopy_edges = self.w - self.spanning
        stats.loopy_components = self.loopy
        stats.tree_components = stats.components - self.loopy
        stats.nontrivial_components = touched_comps
        stats.nontrivial_trees = stats.tree_components - stats.isolated_vertices
        stats.avg_size = n / stats.components if stats.components else 0.0
        stats.avg_nontrivial_size = (
            len(self.touched) / touched_comps if touched_comps else 0.0
        )
        for d in params.degrees:
            below = sum(self.deg_hist.get(x, 0) for x in range(d + 1))
            stats.degree_gt[d] = n - below
            stats.degree_eq[d] = self.deg_hist.get(d, 0)
            stats.degree_le[d] = below
        stats.distinct = self.distinct
        stats.repeated = self.w - self.distinct
        for mu in params.multiplicities:
            stats.pairs_ge[mu] = self.distinct - sum(
                self.pair_hist.get(c, 0) for c in range(1, mu)
            )
            stats.mult_eq[mu] = (mu + 1) * self.pair_hist.get(mu + 1, 0)
            stats.mult_le[mu] = sum(
                c * self.pair_hist.get(c, 0) for c in range(1, mu + 2)
            )
        if graph.directed:
            stats.distinct_directed = self.distinct
            stats.distinct_undirected = self.udistinct
            stats.reciprocated_dyads = self.distinct - self.udistinct
            stats.reciprocity = (
                stats.reciprocated_dyads / self.udistinct if self.udistinct else 0.0
            )
        for r, s in params.neighbor_pairs:
            stats.neighbors_le[(r, s)] = sum(
                self.profile.get((p, f), 0) for p in range(r + 1) for f in range(s + 1)
            )
            stats.neighbors_eq[(r, s)] = self.profile.get((r, s), 0)
        stats.isolated_edges = self.profile.get((0, 0), 0)
        influential = graph.influential
        stats.influenced = len(self.hops) - sum(1 for x in self.hops if x in influential)
        stats.influenced_incl = stats.influenced + len(self.touched_infl)
        running = 0
        for c in range(1, params.hops + 1):
            running += self.hop_excl[c]
            stats.influenced_h[c] = running
        stats.triad_closures = self.closures
        return stats


def gen_lb_repeated(perm: Sequence[int]) -> RelationalEventGraph:
    """Hard instance: each of n isolated edges appears at times n-i-1 and n+perm(i).

    The repeated-edge count of slice [n-X-1, n+Y] equals the dominance count
    #{i : i <= X and perm(i) <= Y}.
    """
    n = len(perm)
    _check_permutation(perm)
    events = []
    for idx in range(n):
        a, b = f"u{idx}", f"w{idx}"
        events.append(RawEvent(n - idx - 1, a, b, 2 * idx + 1))
        events.append(RawEvent(n + perm[idx], a, b, 2 * idx + 2))
    return build_graph(events, directed=False)


def gen_lb_influence(perm: Sequence[int]) -> RelationalEventGraph:
    """Hard instance for influence: a height-two tree rooted at one influential vertex.

    Edge e_i (root -> mid_i) arrives at time n-i, f_i (mid_i -> leaf_i) at
    time n+perm(i); the influenced count c of slice [n-X-1, n+Y] satisfies
    #{i : i <= X and perm(i) <= Y} = c - (X + 1), the X+1 being the
    in-window mid vertices.
    """
    n = len(perm)
    _check_permutation(perm)
    events = []
    for idx in range(n):
        events.append(RawEvent(n - idx, "root", f"mid{idx}", idx + 1))
    for idx in range(n):
        events.append(RawEvent(n + perm[idx], f"mid{idx}", f"leaf{idx}", n + idx + 1))
    return build_graph(events, directed=True, influential=["root"])


def _check_permutation(perm: Sequence[int]) -> None:
    if sorted(perm) != list(range(len(perm))) or not perm:
        raise GraphError("expected a permutation of 0..n-1")


def permutation_dominance(perm: Sequence[int], x: int, y: int) -> int:
    return sum(1 for idx in range(x + 1) if perm[idx] <= y)


def gen_random_events(
    rng: random.Random,
    n_vertices: int,
    m_edges: int,
    self_loop_rate: float = 0.08,
    time_tie_rate: float = 0.3,
) -> list[RawEvent]:
    """Random event streams with plentiful parallel edges, loops, and time ties."""
    names = [f"v{i}" for i in range(n_vertices)]
    events = []
    t = 0
    for k in range(m_edges):
        if rng.random() >= time_tie_rate:
            t += rng.randint(1, 3)
        u = rng.choice(names)
        if rng.random() < self_loop_rate:
            v = u
        else:
            v = rng.choice(names)
        events.append(RawEvent(t, u, v, k + 1))
    return events


def gen_random_graph(
    rng: random.Random,
    n_vertices: int,
    m_edges: int,
    directed: bool,
    influential_count: int = 0,
    **kwargs,
) -> RelationalEventGraph:
    events = gen_random_events(rng, n_vertices, m_edges, **kwargs)
    names = sorted({ev.source for ev in events} | {ev.target for ev in events})
    influential = rng.sample(names, min(influential_count, len(names)))
    return build_graph(events, directed=directed, influential=influential)
