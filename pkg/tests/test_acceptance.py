"""Acceptance suite: one test per criterion, exact integer equality throughout.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
summary lines.
"""

import math
import random
import time

import numpy as np

from evslice.acceptance_support import engine_oracle_mismatches
from evslice.container import load_engine, save_engine
from evslice.dominance import DominanceIndex, zeroless_digits
from evslice.engine import EngineConfig, SliceEngine
from evslice.graph import RawEvent, build_graph
from evslice.oracle import (
    OracleParams,
    gen_lb_influence,
    gen_lb_repeated,
    gen_random_graph,
)

FULL_PAIRS = tuple((r, s) for r in range(3) for s in range(3))


def _report(name, detail=""):
    print(f"[acceptance] {name}: PASS {detail}")


# -- criterion 1: exhaustive oracle equivalence --------------------------------


def test_exhaustive_oracle_equivalence():
    started = time.perf_counter()
    rng = random.Random(0xACCE551)
    params = OracleParams(
        degrees=(0, 1, 2), multiplicities=(1, 2), neighbor_pairs=FULL_PAIRS, hops=3
    )
    sizes = (
        [(rng.randint(2, 12), rng.randint(1, 50)) for _ in range(38)]
        + [(rng.randint(8, 20), rng.randint(51, 120)) for _ in range(8)]
        + [(rng.randint(15, 25), rng.randint(150, 200)) for _ in range(4)]
    )
    total_slices = 0
    for trial, (n, m) in enumerate(sizes):
        directed = trial % 2 == 0
        graph = gen_random_graph(
            rng, n, m, directed=directed,
            influential_count=rng.randint(0, 3), self_loop_rate=0.08,
        )
        config = EngineConfig(
            directed=directed,
            degrees=params.degrees,
            multiplicities=params.multiplicities,
            neighbor_pairs=params.neighbor_pairs,
            hops=params.hops,
            influential=tuple(graph.vertex_name(v) for v in sorted(graph.influential)),
        )
        engine = SliceEngine(graph, config)
        failures = []
        bad = engine_oracle_mismatches(engine, graph, params, report=failures)
        assert bad == 0, (trial, n, m, directed, failures)
        total_slices += graph.m * (graph.m + 1) // 2
    elapsed = time.perf_counter() - started
    assert elapsed < 300, f"criterion must finish in 5 minutes, took {elapsed:.0f}s"
    _report(
        "exhaustive oracle equivalence",
        f"({len(sizes)} graphs, {total_slices} slices, every statistic, {elapsed:.0f}s)",
    )


# -- criterion 2: dominance backend ---------------------------------------------


def _random_point_set(rng):
    grid = rng.randint(1, 64)
    count = rng.randint(0, 128)
    pts = []
    for _ in range(count):
        x = rng.randrange(grid)
        pts.append((x, rng.randrange(x + 1), rng.randint(-5, 9)))
    return pts, grid


def _reachable(idx, root):
    seen = []
    stack = [root]
    visited = set()
    while stack:
        node = stack.pop()
        if node == -1 or node in visited:
            continue
        visited.add(node)
        rec = tuple(idx._arena[node * 4 : node * 4 + 4])
        seen.append((node, rec))
        stack.append(rec[0])
        stack.append(rec[1])
    return tuple(sorted(seen))


def test_dominance_backend():
    started = time.perf_counter()
    rng = random.Random(0xACCE552)
    cmps = ("<", "<=", ">", ">=")
    checked = 0
    for trial in range(1000):
        pts, grid = _random_point_set(rng)
        idx = DominanceIndex(pts, grid)

        # exact quadrant sums against vectorized naive scans
        if pts:
            xs = np.array([p[0] for p in pts])
            ys = np.array([p[1] for p in pts])
            ws = np.array([p[2] for p in pts])
        ops = {"<": np.less, "<=": np.less_equal, ">": np.greater, ">=": np.greater_equal}
        for _ in range(24):
            qx = rng.randint(-1, grid + 1)
            qy = rng.randint(-1, grid + 1)
            xc, yc = rng.choice(cmps), rng.choice(cmps)
            want = int(ws[ops[xc](xs, qx) & ops[yc](ys, qy)].sum()) if pts else 0
            assert idx.query_quadrant(xc, qx, yc, qy) == want
            checked += 1

        # node-count bound, C pinned at 8
        budget = 8 * (grid + sum(math.log2(x - y + 2) for x, y, _ in pts))
        assert idx.node_count <= budget, (trial, idx.node_count, budget)

        # per-query visited bound, C' pinned at 6
        for _ in range(12):
            qx = rng.randint(1, grid)
            qy = rng.randint(0, grid)
            _, visited = idx.query_visited(qx, qy)
            window = max(qx - qy, 1)
            assert visited <= 6 * (math.log2(window) + 2), (trial, qx, qy, visited)

        # persistence: earlier trees are never disturbed by later columns
        if trial % 25 == 0:
            for x in range(grid + 1):
                prefix = DominanceIndex([p for p in pts if p[0] < x], grid=x)
                assert _reachable(prefix, prefix.root(x)) == _reachable(idx, idx.root(x))

    elapsed = time.perf_counter() - started
    assert elapsed < 60, f"criterion must finish in 1 minute, took {elapsed:.0f}s"
    _report("dominance backend", f"(1000 point sets, {checked} quadrant checks, {elapsed:.1f}s)")


# -- criterion 3: zeroless representation ---------------------------------------


def _leaf_count(idx, node, size):
    # verify structure bottom-up: every stored right-count must be consistent
    if node == -1:
        assert size == 1
        return 1
    base = node * 4
    left, right, c, _w = idx._arena[base : base + 4]
    got_right = _leaf_count(idx, right, c)
    got_left = _leaf_count(idx, left, size - c)
    assert got_right == c
    return got_left + got_right


def test_zeroless_representation():
    started = time.perf_counter()
    prev = None
    for x in range(1, 2**16 + 1):
        shape = zeroless_digits(x)
        assert all(b in (1, 2) for b in shape.digits)
        assert sum(b << i for i, b in enumerate(shape.digits)) == x
        if prev is not None:
            # uniqueness via the increment recurrence
            digits = list(prev)
            t = 0
            while t < len(digits) and digits[t] == 2:
                digits[t] = 1
                t += 1
            if t == len(digits):
                digits.append(1)
            else:
                digits[t] += 1
            assert tuple(digits) == shape.digits, x
        prev = shape.digits
    assert zeroless_digits(24).digits == (2, 1, 1, 2)

    # tree skeletons carry exactly x leaves
    idx = DominanceIndex([], grid=2048)
    for x in range(1, 2049):
        assert _leaf_count(idx, idx.root(x), x) == x
    big = DominanceIndex([], grid=2**16)
    rng = random.Random(0xACCE553)
    for x in rng.sample(range(2049, 2**16 + 1), 50):
        assert _leaf_count(big, big.root(x), x) == x

    elapsed = time.perf_counter() - started
    assert elapsed < 10, f"criterion must finish in 10 seconds, took {elapsed:.1f}s"
    _report("zeroless representation", f"(x up to 2^16, {elapsed:.1f}s)")


# -- criterion 4: adversarial generators ----------------------------------------


def _dominance_matrix(perm):
    n = len(perm)
    grid = np.zeros((n, n), dtype=int)
    grid[np.arange(n), perm] = 1
    return grid.cumsum(axis=0).cumsum(axis=1)


def test_lower_bound_generators():
    started = time.perf_counter()
    rng = random.Random(0xACCE554)
    repeated_cfg = EngineConfig(
        directed=False, degrees=(), multiplicities=(), pair_rank_ks=(1,),
        neighbor_pairs=(), hops=0, with_connectivity=False, with_triads=False,
        with_influence=False,
    )
    influence_cfg = EngineConfig(
        directed=True, degrees=(), multiplicities=(), pair_rank_ks=(),
        neighbor_pairs=(), hops=0, with_connectivity=False, with_triads=False,
        with_influence=True, influential=("root",),
    )
    for trial in range(200):
        n = rng.randint(1, 64)
        perm = list(range(n))
        rng.shuffle(perm)
        dom = _dominance_matrix(perm)

        graph = gen_lb_repeated(perm)
        engine = SliceEngine(graph, repeated_cfg)
        for x in range(n):
            for y in range(n):
                got = engine.stat("repeated", n - x - 1, n + y)
                assert got == dom[x][y], (trial, perm, x, y)

        graph = gen_lb_influence(perm)
        engine = SliceEngine(graph, influence_cfg)
        for x in range(n):
            for y in range(n):
                count = engine.stat("influenced", n - x - 1, n + y)
                assert count - (x + 1) == dom[x][y], (trial, perm, x, y)

    elapsed = time.perf_counter() - started
    assert elapsed < 120, f"criterion must finish in 2 minutes, took {elapsed:.0f}s"
    _report("lower-bound generators", f"(200 permutations, both identities, {elapsed:.0f}s)")


# -- criterion 5: scale and complexity smoke -------------------------------------


def test_scale_smoke():
    rng = random.Random(0xACCE555)
    m = 1_000_000
    names = [f"v{i}" for i in range(20_000)]
    events = []
    t = 0
    for k in range(m):
        if rng.random() < 0.7:
            t += 1
        events.append(RawEvent(t, names[rng.randrange(len(names))],
                               names[rng.randrange(len(names))], k + 1))

    config = EngineConfig(
        directed=False, degrees=(), multiplicities=(), pair_rank_ks=(1,),
        neighbor_pairs=(), hops=0, with_connectivity=False, with_triads=False,
        with_influence=False,
    )
    started = time.perf_counter()
    graph = build_graph(events, directed=False)
    engine = SliceEngine(graph, config)
    build_seconds = time.perf_counter() - started
    assert build_seconds < 60, f"build took {build_seconds:.0f}s"

    # memory: the node arena obeys both the structural bound and C*m*log2(m)
    rank = engine.pair_ranks[1]
    nodes = rank.dom.node_count
    gap_budget = sum(
        math.log2((k + 2) - (tau + 1) + 2) for k, tau in enumerate(rank.tau.values)
    )
    assert nodes <= 8 * (rank.dom.grid + gap_budget)
    assert nodes <= 8 * m * math.log2(m)

    # queries scale with log(window): widths 100 vs 100000
    def mean_visited(width, samples=400):
        total = 0
        for _ in range(samples):
            i = rng.randrange(m - width)
            j = i + width - 1
            total += rank.dom.query_visited(j + 3, i + 1)[1]
        return total / samples

    small = mean_visited(100)
    large = mean_visited(100_000)
    ratio = large / small
    assert ratio <= 2.5, f"visited ratio {ratio:.2f} exceeds 2.5"
    _report(
        "scale smoke",
        f"(10^6 events, build {build_seconds:.0f}s, {nodes} nodes, "
        f"visited {small:.1f} vs {large:.1f}, ratio {ratio:.2f})",
    )


# -- criterion 6: persistence round-trip ------------------------------------------


def test_persistence_round_trip(tmp_path):
    started = time.perf_counter()
    rng = random.Random(0xACCE556)
    for trial in range(100):
        directed = rng.random() < 0.5
        graph = gen_random_graph(
            rng, rng.randint(2, 10), rng.randint(1, 25), directed=directed,
            influential_count=rng.randint(0, 2),
        )
        config = EngineConfig(
            directed=directed,
            degrees=(0, 1),
            multiplicities=(1,),
            neighbor_pairs=((0, 0), (1, 1)),
            hops=2,
            influential=tuple(graph.vertex_name(v) for v in sorted(graph.influential)),
        )
        engine = SliceEngine(graph, config)
        path = tmp_path / f"rt{trial}.evs"
        save_engine(engine, path)
        loaded = load_engine(path)
        keys = engine.available_keys()
        assert loaded.available_keys() == keys
        for _ in range(10):
            i = rng.randrange(graph.m)
            j = rng.randrange(i, graph.m)
            assert loaded.stats(keys, i, j) == engine.stats(keys, i, j), (trial, i, j)
    elapsed = time.perf_counter() - started
    _report("persistence round-trip", f"(100 graphs, query-identical, {elapsed:.0f}s)")
