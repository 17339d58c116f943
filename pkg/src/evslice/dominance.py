"""Persistent weight trees for dominance sums, plus rectangle stabbing on top.

The index stores weighted integer points on or below the main diagonal
(0 <= y <= x < M) and answers quadrant weight sums exactly.  One tree T_x is
kept per column x; T_x has x leaves, leaf p holding the total weight of
points with x_i < x and y_i = p.  Tree shapes follow the zeroless binary
representation of x (digits in {1,2}), so the path to leaf y has length
O(log(x - y)) and consecutive trees share all unchanged subtrees.  Nodes
live in an append-only arena and are never mutated, so every root remains
valid forever.

The toward-diagonal query Q(x, y) = sum of weights with x_i < x and y_i > y
is a single root-to-leaf descent in T_x; the other three quadrants are
derived from Q plus per-axis prefix totals.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

_NIL = -1


class DominanceError(ValueError):
    """Bad point data or query arguments."""


@dataclass(frozen=True)
class ZerolessShape:
    """Zeroless binary representation: value = sum of digits[i] * 2^i, digits in {1,2}."""

    digits: tuple[int, ...]

    @property
    def value(self) -> int:
        return sum(b << i for i, b in enumerate(self.digits))

    def block_leaf_counts(self) -> tuple[int, ...]:
        """Leaf count per complete subtree, leftmost (most significant digit) first."""
        return tuple(b << i for i, b in reversed(list(enumerate(self.digits))))


def zeroless_digits(x: int) -> ZerolessShape:
    """Unique representation of x >= 1 with digits b_0..b_k in {1,2}."""
    if x < 1:
        raise DominanceError(f"zeroless representation needs x >= 1, got {x}")
    digits = []
    while x > 0:
        if x % 2 == 0:
            digits.append(2)
            x = (x - 2) // 2
        else:
            digits.append(1)
            x = (x - 1) // 2
    return ZerolessShape(tuple(digits))


class DominanceIndex:
    """Signed dominance sums over points with 0 <= y <= x < grid.

    Construction is a single pass over columns x = 1..grid, evolving T_{x-1}
    into T_x (digit increment plus path-copied weight updates), so earlier
    roots are never touched.  ``node_count`` is the total arena size; the
    per-instance bound is O(grid + sum_i log(x_i - y_i + 2)).
    """

    __slots__ = ("grid", "npoints", "total_weight", "_arena", "_nnodes", "_roots", "_wpre", "_hy")

    def __init__(self, points: Iterable[tuple[int, int, int]], grid: int):
        pts = sorted(points)
        self.grid = grid
        self.npoints = len(pts)
        for x, y, _w in pts:
            if not (0 <= y <= x < grid):
                raise DominanceError(f"point ({x}, {y}) outside 0 <= y <= x < {grid}")
        self._arena = array("q")  # stride 4: left, right, right-leaf-count, right-weight
        self._nnodes = 0
        self._roots = array("q", [_NIL]) if grid >= 0 else array("q")
        self._build(pts)
        # prefix totals for the quadrant algebra
        wpre = array("q", bytes(8 * (grid + 2)))  # wpre[x] = weight of points with x_i < x
        hy = array("q", bytes(8 * (grid + 2)))  # hy[t] = weight of points with y_i >= t
        for x, y, w in pts:
            wpre[x + 1] += w
            hy[y] += w
        for x in range(1, grid + 2):
            wpre[x] += wpre[x - 1]
        for y in range(grid, -1, -1):
            hy[y] += hy[y + 1]
        self._wpre = wpre
        self._hy = hy
        self.total_weight = wpre[grid + 1]

    # -- construction ------------------------------------------------------

    def _build(self, pts: Sequence[tuple[int, int, int]]) -> None:
        arena = self._arena
        extend = arena.extend
        roots = self._roots
        nnodes = 0
        digits: list[int] = []
        brefs: list[int] = []  # per digit position: subtree root (-1 = bare leaf)
        bleaves: list[int] = []  # per digit position: leaf count
        btot: list[int] = []  # per digit position: total leaf weight
        spine: list[int] = []  # spine[j] = node whose right child is block j
        pi = 0
        npts = len(pts)
        for x in range(1, self.grid + 1):
            # digit increment: trailing 2s become 1s, lowest non-2 digit bumps
            ndig = len(digits)
            t = 0
            while t < ndig and digits[t] == 2:
                t += 1
            if t == ndig:
                # all digits were 2 (or none): new most significant digit, blocks shift
                for j in range(ndig):
                    digits[j] = 1
                digits.append(1)
                brefs.insert(0, _NIL)
                bleaves.insert(0, 1)
                btot.insert(0, 0)
                spine.append(_NIL)
            elif t == 0:
                digits[0] = 2
                extend((brefs[0], _NIL, 1, 0))
                brefs[0] = nnodes
                nnodes += 1
                bleaves[0] = 2
            else:
                digits[t] = 2
                lref, ltot = brefs[t], btot[t]
                rref, rleaves, rtot = brefs[t - 1], bleaves[t - 1], btot[t - 1]
                extend((lref, rref, rleaves, rtot))
                newref = nnodes
                nnodes += 1
                for j in range(t):
                    digits[j] = 1
                brefs[1:t] = brefs[0 : t - 1]
                bleaves[1:t] = bleaves[0 : t - 1]
                btot[1:t] = btot[0 : t - 1]
                brefs[t] = newref
                bleaves[t] = bleaves[t] * 2
                btot[t] = ltot + rtot
                brefs[0] = _NIL
                bleaves[0] = 1
                btot[0] = 0
            kk = len(digits) - 1  # spine indices 0..kk-1
            jhi = min(t, kk - 1)
            for j in range(jhi, -1, -1):
                left = spine[j + 1] if j + 1 <= kk - 1 else brefs[kk]
                extend((left, brefs[j], bleaves[j], btot[j]))
                spine[j] = nnodes
                nnodes += 1

            # weight phase: points in column x-1 enter T_x by path copying
            while pi < npts and pts[pi][0] == x - 1:
                y, wi = pts[pi][1], pts[pi][2]
                pi += 1
                acc = 0
                p = kk
                while y >= acc + bleaves[p]:
                    acc += bleaves[p]
                    p -= 1
                off = y - acc
                node = brefs[p]
                size = bleaves[p]
                trail: list[tuple[int, int, int, int, bool]] = []
                while node != _NIL:
                    base = node * 4
                    l = arena[base]
                    r = arena[base + 1]
                    c = arena[base + 2]
                    w = arena[base + 3]
                    lsize = size - c
                    if off < lsize:
                        trail.append((l, r, c, w, False))
                        node = l
                        size = lsize
                    else:
                        trail.append((l, r, c, w, True))
                        node = r
                        size = c
                        off -= lsize
                child = _NIL
                for l, r, c, w, went_right in reversed(trail):
                    if went_right:
                        extend((l, child, c, w + wi))
                    else:
                        extend((child, r, c, w))
                    child = nnodes
                    nnodes += 1
                brefs[p] = child
                btot[p] += wi
                for j in range(min(p, kk - 1), -1, -1):
                    left = spine[j + 1] if j + 1 <= kk - 1 else brefs[kk]
                    extend((left, brefs[j], bleaves[j], btot[j]))
                    spine[j] = nnodes
                    nnodes += 1

            roots.append(spine[0] if kk >= 1 else brefs[0])
        self._nnodes = nnodes

    # -- queries -----------------------------------------------------------

    @property
    def node_count(self) -> int:
        return self._nnodes

    def root(self, x: int) -> int:
        return self._roots[x]

    def _check_query(self, qx: int, qy: int) -> None:
        if not 0 <= qx <= self.grid:
            raise DominanceError(f"query column {qx} outside [0, {self.grid}]")
        if qy < -1:
            raise DominanceError(f"query row {qy} below -1")

    def query_toward_diagonal(self, qx: int, qy: int) -> int:
        """Q(qx, qy) = total weight with x_i < qx and y_i > qy.  qy = -1 gives W_qx."""
        self._check_query(qx, qy)
        if qy < 0:
            return self._wpre[qx]
        if qy >= qx - 1:
            return 0
        arena = self._arena
        node = self._roots[qx]
        size = qx
        target = qy
        acc = 0
        while node != _NIL:
            base = node * 4
            c = arena[base + 2]
            lsize = size - c
            if target < lsize:
                acc += arena[base + 3]
                node = arena[base]
                size = lsize
            else:
                node = arena[base + 1]
                size = c
                target -= lsize
        return acc

    def query_visited(self, qx: int, qy: int) -> tuple[int, int]:
        """Like query_toward_diagonal but also counts the nodes on the search path.

        The count covers the whole root-to-leaf path including the endpoint
        leaf (leaves are positions, not records, but the search does land on
        one); O(1)-shortcut queries report zero.
        """
        self._check_query(qx, qy)
        if qy < 0 or qy >= qx - 1:
            return (self._wpre[qx] if qy < 0 else 0), 0
        arena = self._arena
        node = self._roots[qx]
        size = qx
        target = qy
        acc = 0
        visited = 1  # the terminal leaf position
        while node != _NIL:
            visited += 1
            base = node * 4
            c = arena[base + 2]
            lsize = size - c
            if target < lsize:
                acc += arena[base + 3]
                node = arena[base]
                size = lsize
            else:
                node = arena[base + 1]
                size = c
                target -= lsize
        return acc, visited

    def _weight_x_below(self, bound: int) -> int:
        # total weight with x_i < bound, bound in [0, grid+1]
        return self._wpre[bound]

    def _weight_y_above(self, bound: int) -> int:
        # total weight with y_i > bound, bound in [-1, grid]
        return self._hy[bound + 1]

    def query_quadrant(self, xcmp: str, qx: int, ycmp: str, qy: int) -> int:
        """Weight sum of any axis-aligned quadrant, e.g. ("<=", X, ">=", Y).

        Comparison operators are "<", "<=", ">", ">=" per axis.  Everything
        reduces to one toward-diagonal descent plus O(1) prefix lookups.
        """
        if xcmp in ("<", "<="):
            xb = qx + 1 if xcmp == "<=" else qx
            x_low = True
        elif xcmp in (">", ">="):
            xb = qx if xcmp == ">=" else qx + 1
            x_low = False
        else:
            raise DominanceError(f"bad x comparison {xcmp!r}")
        if ycmp in (">", ">="):
            yb = qy - 1 if ycmp == ">=" else qy
            y_high = True
        elif ycmp in ("<", "<="):
            yb = qy if ycmp == "<=" else qy - 1
            y_high = False
        else:
            raise DominanceError(f"bad y comparison {ycmp!r}")
        xb = min(max(xb, 0), self.grid)
        yb = min(max(yb, -1), self.grid)
        q = self.query_toward_diagonal(xb, yb)
        if x_low and y_high:
            return q
        if x_low:
            return self._weight_x_below(xb) - q
        if y_high:
            return self._weight_y_above(yb) - q
        return self.total_weight - self._weight_x_below(xb) - self._weight_y_above(yb) + q

    # -- serialization -----------------------------------------------------

    def state(self) -> dict:
        return {
            "grid": self.grid,
            "npoints": self.npoints,
            "total_weight": self.total_weight,
            "nnodes": self._nnodes,
            "arena": self._arena,
            "roots": self._roots,
            "wpre": self._wpre,
            "hy": self._hy,
        }

    @classmethod
    def from_state(cls, state: dict) -> "DominanceIndex":
        obj = cls.__new__(cls)
        obj.grid = state["grid"]
        obj.npoints = state["npoints"]
        obj.total_weight = state["total_weight"]
        obj._nnodes = state["nnodes"]
        obj._arena = state["arena"]
        obj._roots = state["roots"]
        obj._wpre = state["wpre"]
        obj._hy = state["hy"]
        return obj


def build_dominance(points: Iterable[tuple[int, int, int]], grid: int) -> DominanceIndex:
    """Index weighted below-diagonal points for exact quadrant sums."""
    return DominanceIndex(points, grid)


class _CornerSet:
    """One rectangle-corner multiset, split so both halves sit below the diagonal.

    Corners above the diagonal are stored reflected ((x, y) -> (y, x)); the
    quadrant query swaps axes for that half.  This keeps every descent
    toward the diagonal, preserving the O(log window) path length for the
    engine's query patterns.
    """

    __slots__ = ("below", "above")

    def __init__(self, points: Sequence[tuple[int, int, int]], grid: int):
        lo = [p for p in points if p[1] <= p[0]]
        hi = [(y, x, w) for (x, y, w) in points if y > x]
        self.below = DominanceIndex(lo, grid) if lo else None
        self.above = DominanceIndex(hi, grid) if hi else None

    def quadrant(self, xcmp: str, qx: int, ycmp: str, qy: int) -> int:
        total = 0
        if self.below is not None:
            total += self.below.query_quadrant(xcmp, qx, ycmp, qy)
        if self.above is not None:
            total += self.above.query_quadrant(ycmp, qy, xcmp, qx)
        return total

    def state(self) -> dict:
        return {
            "below": self.below.state() if self.below else None,
            "above": self.above.state() if self.above else None,
        }

    @classmethod
    def from_state(cls, state: dict) -> "_CornerSet":
        obj = cls.__new__(cls)
        obj.below = DominanceIndex.from_state(state["below"]) if state["below"] else None
        obj.above = DominanceIndex.from_state(state["above"]) if state["above"] else None
        return obj


class StabbingIndex:
    """Counts rectangles [a, b] x [c, d] containing a query point.

    Four corner multisets are indexed for dominance counting; a stab query
    is the four-corner inclusion-exclusion

        N(a <= x, c <= y) - N(b < x, c <= y) - N(a <= x, d < y) + N(b < x, d < y)

    which is arithmetically equivalent to the six-term L-shape scheme.
    Weights default to one per rectangle but may be signed.
    """

    __slots__ = ("count", "grid", "_ll", "_lr", "_ul", "_ur")

    def __init__(
        self,
        rectangles: Sequence[tuple[int, int, int, int]],
        grid: Optional[int] = None,
        weights: Optional[Sequence[int]] = None,
    ):
        rects = list(rectangles)
        for a, b, c, d in rects:
            if a > b or c > d:
                raise DominanceError(f"degenerate rectangle [{a}, {b}] x [{c}, {d}]")
            if min(a, c) < 0:
                raise DominanceError("rectangle coordinates must be non-negative")
        if weights is None:
            ws: Sequence[int] = [1] * len(rects)
        else:
            ws = list(weights)
            if len(ws) != len(rects):
                raise DominanceError("weights must match rectangles")
        if grid is None:
            grid = max((max(b, d) for _, b, _, d in rects), default=0) + 1
        self.count = len(rects)
        self.grid = grid
        self._ll = _CornerSet([(a, c, w) for (a, b, c, d), w in zip(rects, ws)], grid)
        self._lr = _CornerSet([(b, c, w) for (a, b, c, d), w in zip(rects, ws)], grid)
        self._ul = _CornerSet([(a, d, w) for (a, b, c, d), w in zip(rects, ws)], grid)
        self._ur = _CornerSet([(b, d, w) for (a, b, c, d), w in zip(rects, ws)], grid)

    def query_stab(self, qx: int, qy: int) -> int:
        return (
            self._ll.quadrant("<=", qx, "<=", qy)
            - self._lr.quadrant("<", qx, "<=", qy)
            - self._ul.quadrant("<=", qx, "<", qy)
            + self._ur.quadrant("<", qx, "<", qy)
        )

    def state(self) -> dict:
        return {
            "count": self.count,
            "grid": self.grid,
            "ll": self._ll.state(),
            "lr": self._lr.state(),
            "ul": self._ul.state(),
            "ur": self._ur.state(),
        }

    @classmethod
    def from_state(cls, state: dict) -> "StabbingIndex":
        obj = cls.__new__(cls)
        obj.count = state["count"]
        obj.grid = state["grid"]
        obj._ll = _CornerSet.from_state(state["ll"])
        obj._lr = _CornerSet.from_state(state["lr"])
        obj._ul = _CornerSet.from_state(state["ul"])
        obj._ur = _CornerSet.from_state(state["ur"])
        return obj

    @property
    def node_count(self) -> int:
        total = 0
        for corner in (self._ll, self._lr, self._ul, self._ur):
            for half in (corner.below, corner.above):
                if half is not None:
                    total += half.node_count
        return total


def build_stabbing(
    rectangles: Sequence[tuple[int, int, int, int]],
    grid: Optional[int] = None,
    weights: Optional[Sequence[int]] = None,
) -> StabbingIndex:
    return StabbingIndex(rectangles, grid, weights)
