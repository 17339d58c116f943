import random

import pytest

from evslice.graph import GraphError
from evslice.matroids import (
    PAIR_DIRECTED,
    PAIR_UNDIRECTED,
    VERTEX_DEGREE,
    RankIndex,
    TauTable,
    compute_tau_partition,
    influential_touch_tau,
    rank_query,
)
from evslice.oracle import gen_random_graph

from helpers import brute_partition_rank, make_graph


def test_ex1_vertex_degree_tau_k1(ex1):
    tau = compute_tau_partition(ex1, VERTEX_DEGREE, 1)
    assert tau.values == (-1, -1, 2, -1, 1, 3, 4, 5, 7, -1)
    assert tau.space == "half_edge"


def test_ex1_vertex_degree_tau_k2(ex1):
    tau = compute_tau_partition(ex1, VERTEX_DEGREE, 2)
    expected = [-1] * 10
    expected[5] = 2
    expected[7] = 1
    expected[8] = 4
    assert tau.values == tuple(expected)


def test_single_edge_all_free():
    g = make_graph([(0, "a", "b")])
    for k in (1, 2, 5):
        assert compute_tau_partition(g, VERTEX_DEGREE, k).values == (-1, -1)


def test_parameter_validation(ex1):
    with pytest.raises(GraphError):
        compute_tau_partition(ex1, VERTEX_DEGREE, 0)
    with pytest.raises(GraphError):
        compute_tau_partition(ex1, "nope", 1)


def test_rank_ex1_degree_k1(ex1):
    idx = RankIndex(compute_tau_partition(ex1, VERTEX_DEGREE, 1))
    assert rank_query(idx, 0, 2) == 3  # touched vertices a, b, c
    assert rank_query(idx, 0, 4) == 4


def test_rank_ex1_degree_k2(ex1):
    idx = RankIndex(compute_tau_partition(ex1, VERTEX_DEGREE, 2))
    assert rank_query(idx, 0, 2) == 5  # sum of min(deg, 2)


def test_singleton_slices_rank_one(ex1):
    idx = RankIndex(compute_tau_partition(ex1, VERTEX_DEGREE, 1))
    pairs = RankIndex(compute_tau_partition(ex1, PAIR_UNDIRECTED, 1))
    for k in range(ex1.m):
        assert rank_query(idx, k, k) == 2  # two half-edges, distinct vertices
        assert rank_query(pairs, k, k) == 1


def test_rank_out_of_range(ex1):
    idx = RankIndex(compute_tau_partition(ex1, PAIR_UNDIRECTED, 1))
    with pytest.raises(GraphError):
        idx.rank_slice(0, 5)


def test_ex1_pair_tau(ex1):
    tau = compute_tau_partition(ex1, PAIR_UNDIRECTED, 1)
    assert tau.values == (-1, -1, 1, -1, -1)
    assert tau.space == "edge"


def test_sentinel_bound_enforced():
    with pytest.raises(ValueError):
        TauTable((3,), "edge")  # tau may be at most k+1 = 1


def _all_slices(m):
    return [(i, j) for i in range(m) for j in range(i, m)]


@pytest.mark.parametrize("mode,k", [(VERTEX_DEGREE, 1), (VERTEX_DEGREE, 2), (VERTEX_DEGREE, 3),
                                    (PAIR_UNDIRECTED, 1), (PAIR_UNDIRECTED, 2),
                                    (PAIR_DIRECTED, 1)])
def test_rank_matches_brute_force_everywhere(mode, k):
    rng = random.Random(hash((mode, k)) & 0xFFFF)
    for _ in range(25):
        g = gen_random_graph(rng, rng.randint(2, 8), rng.randint(1, 40), directed=True)
        idx = RankIndex(compute_tau_partition(g, mode, k))
        for i, j in _all_slices(g.m):
            if mode == VERTEX_DEGREE:
                classes = []
                for t in range(i, j + 1):
                    classes += [g.us[t], g.vs[t]]
            elif mode == PAIR_DIRECTED:
                classes = [(g.us[t], g.vs[t]) for t in range(i, j + 1)]
            else:
                classes = [
                    (g.us[t], g.vs[t]) if g.us[t] <= g.vs[t] else (g.vs[t], g.us[t])
                    for t in range(i, j + 1)
                ]
            assert rank_query(idx, i, j) == brute_partition_rank(classes, k), (i, j)


def test_rank_monotone_in_k():
    rng = random.Random(7)
    for _ in range(10):
        g = gen_random_graph(rng, 6, 25, directed=False)
        idx1 = RankIndex(compute_tau_partition(g, VERTEX_DEGREE, 1))
        idx2 = RankIndex(compute_tau_partition(g, VERTEX_DEGREE, 2))
        for i, j in _all_slices(g.m):
            assert rank_query(idx2, i, j) >= rank_query(idx1, i, j)


def test_dominance_reduction_window_constraint_is_free():
    # tau(e_k) > i already forces k >= i, so the one-sided count suffices
    rng = random.Random(11)
    for _ in range(20):
        g = gen_random_graph(rng, 5, 30, directed=False)
        tau = compute_tau_partition(g, VERTEX_DEGREE, 1)
        for i, j in _all_slices(g.m):
            lo, hi = 2 * i, 2 * j + 1
            one_sided = sum(1 for k in range(hi + 1) if tau.values[k] > lo)
            windowed = sum(1 for k in range(lo, hi + 1) if tau.values[k] > lo)
            assert one_sided == windowed


def test_influential_touch_rank():
    g = make_graph([(0, "s", "a"), (1, "a", "b"), (2, "t", "s")], influential=["s", "t"])
    idx = RankIndex(influential_touch_tau(g))
    assert idx.rank_slice(0, 0) == 1  # s
    assert idx.rank_slice(1, 1) == 0
    assert idx.rank_slice(0, 2) == 2  # s and t
    assert idx.rank_slice(2, 2) == 2
