"""Shared construction and brute-force helpers for the test suite."""

from __future__ import annotations

import random

from evslice.graph import RawEvent, RelationalEventGraph, build_graph


def make_graph(triples, directed=False, influential=(), vertices=None):
    events = [RawEvent(t, u, v, k + 1) for k, (t, u, v) in enumerate(triples)]
    return build_graph(events, directed=directed, influential=influential, vertices=vertices)


def naive_quadrant(points, xcmp, qx, ycmp, qy):
    ops = {
        "<": lambda a, b: a < b,
        "<=": lambda a, b: a <= b,
        ">": lambda a, b: a > b,
        ">=": lambda a, b: a >= b,
    }
    return sum(w for x, y, w in points if ops[xcmp](x, qx) and ops[ycmp](y, qy))


def naive_stab(rects, qx, qy):
    return sum(1 for a, b, c, d in rects if a <= qx <= b and c <= qy <= d)


def brute_partition_rank(classes, k):
    counts = {}
    for cls in classes:
        counts[cls] = counts.get(cls, 0) + 1
    return sum(min(c, k) for c in counts.values())


def brute_graphic_rank(graph: RelationalEventGraph, i, j):
    parent = list(range(graph.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rank = 0
    for k in range(i, j + 1):
        u, v = graph.us[k], graph.vs[k]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            rank += 1
    return rank


def brute_bicycle_rank(graph: RelationalEventGraph, i, j):
    # greedy over any order is valid for matroid rank; track <=1 cycle per component
    parent = list(range(graph.n))
    has_cycle = [False] * graph.n

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rank = 0
    for k in range(i, j + 1):
        u, v = graph.us[k], graph.vs[k]
        ru, rv = find(u), find(v)
        if ru == rv:
            if not has_cycle[ru]:
                has_cycle[ru] = True
                rank += 1
        else:
            if has_cycle[ru] and has_cycle[rv]:
                continue
            merged_cycle = has_cycle[ru] or has_cycle[rv]
            parent[ru] = rv
            has_cycle[rv] = merged_cycle
            rank += 1
    return rank


def brute_max_spanning_forest(graph: RelationalEventGraph, upto):
    """Edge indices of the maximum-weight spanning forest of e_0..e_upto."""
    parent = list(range(graph.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    chosen = set()
    for k in range(upto, -1, -1):
        u, v = graph.us[k], graph.vs[k]
        if u == v:
            continue
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.add(k)
    return chosen


def random_points(rng: random.Random, grid_max=64, max_points=128, signed=True):
    grid = rng.randint(1, grid_max)
    count = rng.randint(0, min(max_points, grid * (grid + 1) // 2 + 40))
    pts = []
    for _ in range(count):
        x = rng.randrange(grid)
        y = rng.randrange(x + 1)
        w = rng.randint(-5, 9) if signed else 1
        pts.append((x, y, w))
    return pts, grid
