"""Dynamic forests (link-cut trees) and independence times for the graphic
and bicycle matroids.

Edge weights are edge indices, so each arriving edge is the heaviest seen so
far and the maintained forest is always the maximum-weight spanning forest
of the current basis.  The bicycle computation additionally tracks, per
component, the one non-tree edge of its cycle (always the lightest edge on
that cycle, which is exactly the edge the max spanning forest excludes).
"""

from __future__ import annotations

from typing import Optional

from .graph import GraphError, RelationalEventGraph
from .matroids import EDGE_SPACE, TauTable

INF = 1 << 62
_NIL = -1


class LinkCutForest:
    """Splay-based link-cut trees over n vertices with weighted edge nodes.

    Edges are first-class nodes so path-minimum queries return a concrete
    edge handle.  link/cut/find_root/path_min_edge are O(log n) amortized.
    """

    def __init__(self, n: int):
        self.n = n
        self._par = [_NIL] * n
        self._left = [_NIL] * n
        self._right = [_NIL] * n
        self._flip = [False] * n
        self._val = [INF] * n
        self._mn = [INF] * n
        self._mnode = [_NIL] * n
        self._edge_u: dict[int, int] = {}
        self._edge_v: dict[int, int] = {}

    # -- splay machinery ---------------------------------------------------

    def _new_node(self, val: int) -> int:
        idx = len(self._par)
        self._par.append(_NIL)
        self._left.append(_NIL)
        self._right.append(_NIL)
        self._flip.append(False)
        self._val.append(val)
        self._mn.append(val)
        self._mnode.append(idx if val < INF else _NIL)
        return idx

    def _is_splay_root(self, x: int) -> bool:
        p = self._par[x]
        return p == _NIL or (self._left[p] != x and self._right[p] != x)

    def _push(self, x: int) -> None:
        if self._flip[x]:
            self._flip[x] = False
            l, r = self._left[x], self._right[x]
            self._left[x], self._right[x] = r, l
            if l != _NIL:
                self._flip[l] = not self._flip[l]
            if r != _NIL:
                self._flip[r] = not self._flip[r]

    def _pull(self, x: int) -> None:
        mn = self._val[x]
        mnode = x if mn < INF else _NIL
        l, r = self._left[x], self._right[x]
        if l != _NIL and self._mn[l] < mn:
            mn = self._mn[l]
            mnode = self._mnode[l]
        if r != _NIL and self._mn[r] < mn:
            mn = self._mn[r]
            mnode = self._mnode[r]
        self._mn[x] = mn
        self._mnode[x] = mnode

    def _rotate(self, x: int) -> None:
        p = self._par[x]
        g = self._par[p]
        if not self._is_splay_root(p):
            if self._left[g] == p:
                self._left[g] = x
            else:
                self._right[g] = x
        self._par[x] = g
        if self._left[p] == x:
            child = self._right[x]
            self._left[p] = child
            self._right[x] = p
        else:
            child = self._left[x]
            self._right[p] = child
            self._left[x] = p
        if child != _NIL:
            self._par[child] = p
        self._par[p] = x
        self._pull(p)
        self._pull(x)

    def _splay(self, x: int) -> None:
        stack = [x]
        node = x
        while not self._is_splay_root(node):
            node = self._par[node]
            stack.append(node)
        for node in reversed(stack):
            self._push(node)
        while not self._is_splay_root(x):
            p = self._par[x]
            if not self._is_splay_root(p):
                same_side = (self._left[self._par[p]] == p) == (self._left[p] == x)
                self._rotate(p if same_side else x)
            self._rotate(x)

    def _access(self, x: int) -> int:
        self._splay(x)
        if self._right[x] != _NIL:
            self._right[x] = _NIL
            self._pull(x)
        last = x
        while self._par[x] != _NIL:
            p = self._par[x]
            self._splay(p)
            self._right[p] = x
            self._pull(p)
            self._splay(x)
            last = p
        return last

    # -- forest operations ---------------------------------------------------

    def make_root(self, x: int) -> None:
        self._access(x)
        self._flip[x] = not self._flip[x]
        self._push(x)

    def find_root(self, x: int) -> int:
        self._access(x)
        while True:
            self._push(x)
            if self._left[x] == _NIL:
                break
            x = self._left[x]
        self._splay(x)
        return x

    def connected(self, u: int, v: int) -> bool:
        if u == v:
            return True
        return self.find_root(u) == self.find_root(v)

    def link_edge(self, u: int, v: int, weight: int) -> int:
        """Insert edge {u, v} with the given weight; returns its handle."""
        if u == v:
            raise GraphError("cannot link a self loop into a forest")
        z = self._new_node(weight)
        self._edge_u[z] = u
        self._edge_v[z] = v
        self.make_root(u)
        self._par[u] = z
        self.make_root(v)
        self._par[v] = z
        return z

    def _cut_above(self, x: int) -> None:
        # detach x from its represented parent
        self._access(x)
        l = self._left[x]
        assert l != _NIL, "node has no represented parent"
        self._par[l] = _NIL
        self._left[x] = _NIL
        self._pull(x)

    def cut_edge(self, handle: int) -> None:
        u = self._edge_u.pop(handle)
        v = self._edge_v.pop(handle)
        self.make_root(u)
        self._cut_above(handle)
        self.make_root(handle)
        self._cut_above(v)

    def edge_endpoints(self, handle: int) -> tuple[int, int]:
        return self._edge_u[handle], self._edge_v[handle]

    def path_min_edge(self, u: int, v: int) -> Optional[tuple[int, int]]:
        """(weight, handle) of the lightest edge on the u-v path; None if u == v
        or the vertices are disconnected."""
        if not 0 <= u < self.n or not 0 <= v < self.n:
            raise GraphError(f"vertex out of range: {u}, {v}")
        if u == v:
            return None
        self.make_root(u)
        if self.find_root(v) != u:
            return None
        self._access(v)
        if self._mn[v] >= INF:
            return None
        return self._mn[v], self._mnode[v]


def forest_path_lightest(forest: LinkCutForest, u: int, v: int) -> Optional[tuple[int, int]]:
    return forest.path_min_edge(u, v)


def compute_tau_graphic(graph: RelationalEventGraph, trace: Optional[list] = None) -> TauTable:
    """Independence times for the graphic matroid (independent sets = forests).

    Swap discipline per edge: joining two components keeps tau = -1; closing
    a cycle evicts the lightest edge on the tree path and records one more
    than its index; a self loop is a circuit by itself (sentinel k+1).
    """
    forest = LinkCutForest(graph.n)
    handles: dict[int, int] = {}  # edge index -> live handle
    taus = []
    for k, (u, v) in enumerate(zip(graph.us, graph.vs)):
        if u == v:
            taus.append(k + 1)
        elif not forest.connected(u, v):
            handles[k] = forest.link_edge(u, v, k)
            taus.append(-1)
        else:
            hit = forest.path_min_edge(u, v)
            assert hit is not None
            weight, handle = hit
            forest.cut_edge(handle)
            del handles[weight]
            handles[k] = forest.link_edge(u, v, k)
            taus.append(weight + 1)
        if trace is not None:
            trace.append(frozenset(handles))
    return TauTable(tuple(taus), EDGE_SPACE)


class _Extra:
    """The one non-tree edge of a unicyclic component (lightest on its cycle)."""

    __slots__ = ("u", "v", "idx")

    def __init__(self, u: int, v: int, idx: int):
        self.u = u
        self.v = v
        self.idx = idx


def compute_tau_bicycle(graph: RelationalEventGraph, trace: Optional[list] = None) -> TauTable:
    """Independence times for the bicycle matroid (independent sets = pseudoforests).

    Five insertion cases: joining trees, first cycle, tree+pseudotree join
    (tau = -1, with the cycle's lightest edge moved to the per-component
    dictionary), and second cycle / pseudotree+pseudotree join (tau = one
    more than the lightest edge in the union of both cycles and the
    connecting path, which is then discarded).
    """
    forest = LinkCutForest(graph.n)
    extras: dict[int, _Extra] = {}  # keyed by current component root
    taus = []

    def rekey(edge: _Extra) -> None:
        extras[forest.find_root(edge.u)] = edge

    for k, (u, v) in enumerate(zip(graph.us, graph.vs)):
        ru = forest.find_root(u)
        rv = forest.find_root(v)
        if ru != rv:
            e1 = extras.pop(ru, None)
            e2 = extras.pop(rv, None)
            if e1 is None or e2 is None:
                # cases 1 and 3: still a pseudoforest after linking
                forest.link_edge(u, v, k)
                taus.append(-1)
                if e1 is not None:
                    rekey(e1)
                if e2 is not None:
                    rekey(e2)
            else:
                # case 5: two unicyclic components joined
                best = e1.idx
                kind = 1
                hit = forest.path_min_edge(u, e1.u)
                if hit is not None and hit[0] < best:
                    best, kind = hit[0], 3
                    tree_hit = hit
                if e2.idx < best:
                    best, kind = e2.idx, 2
                hit2 = forest.path_min_edge(v, e2.u)
                if hit2 is not None and hit2[0] < best:
                    best, kind = hit2[0], 4
                    tree_hit = hit2
                taus.append(best + 1)
                if kind == 1:
                    forest.link_edge(u, v, k)
                    rekey(e2)
                elif kind == 2:
                    forest.link_edge(u, v, k)
                    rekey(e1)
                else:
                    # cut on one connector, then join the freed side with the other component
                    forest.cut_edge(tree_hit[1])
                    forest.link_edge(u, v, k)
                    rekey(e1)
                    rekey(e2)
        else:
            extra = extras.pop(ru, None)
            if extra is None:
                # case 2: first cycle in a tree component
                if u == v:
                    rekey(_Extra(u, v, k))
                else:
                    hit = forest.path_min_edge(u, v)
                    assert hit is not None
                    eu, ev = _cut_endpoints(forest, hit)
                    forest.cut_edge(hit[1])
                    forest.link_edge(u, v, k)
                    rekey(_Extra(eu, ev, hit[0]))
                taus.append(-1)
            else:
                # case 4: second cycle inside one component
                best = extra.idx
                best_hit = None
                path_uv = forest.path_min_edge(u, v) if u != v else None
                if path_uv is not None and path_uv[0] < best:
                    best, best_hit = path_uv[0], path_uv
                path_uc = forest.path_min_edge(u, extra.u)
                if path_uc is not None and path_uc[0] < best:
                    best, best_hit = path_uc[0], path_uc
                taus.append(best + 1)
                if best_hit is None:
                    # the old cycle edge leaves the basis; the new edge's cycle takes over
                    if u == v:
                        rekey(_Extra(u, v, k))
                    else:
                        assert path_uv is not None
                        eu, ev = _cut_endpoints(forest, path_uv)
                        forest.cut_edge(path_uv[1])
                        forest.link_edge(u, v, k)
                        rekey(_Extra(eu, ev, path_uv[0]))
                else:
                    eu, ev = _cut_endpoints(forest, best_hit)
                    forest.cut_edge(best_hit[1])
                    if u != v and not forest.connected(u, v):
                        # the discarded edge was on the new cycle: component stays whole
                        forest.link_edge(u, v, k)
                        # the surviving cycle may now route through lighter tree edges
                        if extra.u != extra.v:
                            pm = forest.path_min_edge(extra.u, extra.v)
                            if pm is not None and pm[0] < extra.idx:
                                pu, pv = _cut_endpoints(forest, pm)
                                forest.cut_edge(pm[1])
                                forest.link_edge(extra.u, extra.v, extra.idx)
                                extra = _Extra(pu, pv, pm[0])
                        rekey(extra)
                    else:
                        # connector cut: the component splits, one cycle on each side
                        if u == v:
                            rekey(_Extra(u, u, k))
                        else:
                            hit = forest.path_min_edge(u, v)
                            assert hit is not None
                            pu, pv = _cut_endpoints(forest, hit)
                            forest.cut_edge(hit[1])
                            forest.link_edge(u, v, k)
                            rekey(_Extra(pu, pv, hit[0]))
                        rekey(extra)
        if trace is not None:
            trace.append(tuple(taus))
    return TauTable(tuple(taus), EDGE_SPACE)


def _cut_endpoints(forest: LinkCutForest, hit: tuple[int, int]) -> tuple[int, int]:
    return forest.edge_endpoints(hit[1])
