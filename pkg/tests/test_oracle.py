import dataclasses
import random

import pytest

from evslice.graph import GraphError
from evslice.oracle import (
    OracleParams,
    SweepOracle,
    gen_lb_influence,
    gen_lb_repeated,
    gen_random_graph,
    oracle_slice_stats,
    permutation_dominance,
)

from helpers import make_graph


def test_ex1_full_slice(ex1):
    stats = oracle_slice_stats(ex1, 0, 4)
    assert stats.components == 1
    assert stats.loopy_edges == 2
    assert stats.isolated_vertices == 0
    assert stats.distinct == 4


def test_single_edge_slice_components():
    g = make_graph([(0, "a", "b")], vertices=["a", "b", "c", "d"])
    stats = oracle_slice_stats(g, 0, 0)
    assert stats.components == 3  # n - rank = 4 - 1


def test_ex3_triads(ex3):
    assert oracle_slice_stats(ex3, 1, 3).triad_closures == 1
    assert oracle_slice_stats(ex3, 0, 3).triad_closures == 2


def test_ex1_slice_02(ex1):
    stats = oracle_slice_stats(ex1, 0, 2, OracleParams(degrees=(0, 1, 2)))
    assert stats.degree_gt[1] == 2
    assert stats.isolated_vertices == 1
    assert stats.distinct == 2
    assert stats.repeated == 1


def test_reciprocity_example():
    g = make_graph([(0, "a", "b"), (1, "b", "a"), (2, "a", "c")], directed=True)
    stats = oracle_slice_stats(g, 0, 2)
    assert stats.distinct_directed == 3
    assert stats.distinct_undirected == 2
    assert stats.reciprocated_dyads == 1
    assert stats.reciprocity == 0.5
    assert oracle_slice_stats(g, 0, 0).reciprocated_dyads == 0


def test_internal_identities():
    rng = random.Random(91)
    params = OracleParams(hops=3)
    for _ in range(30):
        g = gen_random_graph(
            rng, rng.randint(2, 9), rng.randint(1, 30),
            directed=rng.random() < 0.5, influential_count=1, self_loop_rate=0.1
        )
        for _ in range(10):
            i = rng.randrange(g.m)
            j = rng.randrange(i, g.m)
            s = oracle_slice_stats(g, i, j, params)
            w = j - i + 1
            assert s.components == s.tree_components + s.loopy_components
            assert s.distinct + s.repeated == w
            assert s.nontrivial_components == s.components - s.isolated_vertices
            assert s.nontrivial_trees == s.tree_components - s.isolated_vertices
            assert all(s.influenced_h[c] <= s.influenced for c in s.influenced_h)
            assert 0 <= s.loopy_edges <= w


def test_sweep_matches_slice_oracle():
    rng = random.Random(92)
    params = OracleParams(
        degrees=(0, 1, 2),
        multiplicities=(1, 2),
        neighbor_pairs=tuple((r, s) for r in range(3) for s in range(3)),
        hops=3,
    )
    for trial in range(20):
        g = gen_random_graph(
            rng, rng.randint(2, 8), rng.randint(1, 25),
            directed=rng.random() < 0.5, influential_count=rng.randint(0, 2),
            self_loop_rate=0.12,
        )
        for i in range(g.m):
            sweep = SweepOracle(g, i, params)
            for j in range(i, g.m):
                got = sweep.advance(j)
                want = oracle_slice_stats(g, i, j, params)
                assert dataclasses.asdict(got) == dataclasses.asdict(want), (trial, i, j)


# -- adversarial generators -----------------------------------------------------


def test_gen_repeated_identity_small():
    g = gen_lb_repeated([0, 1, 2])
    stats = oracle_slice_stats(g, 0, 5)
    assert stats.repeated == 3
    assert oracle_slice_stats(g, 2, 3).repeated == 1


def test_gen_repeated_single():
    g = gen_lb_repeated([0])
    assert oracle_slice_stats(g, 0, 1).repeated == 1


def test_gen_repeated_rejects_non_permutation():
    with pytest.raises(GraphError):
        gen_lb_repeated([0, 0, 2])
    with pytest.raises(GraphError):
        gen_lb_repeated([])


def test_gen_repeated_dominance_identity():
    rng = random.Random(93)
    for _ in range(20):
        n = rng.randint(1, 16)
        perm = list(range(n))
        rng.shuffle(perm)
        g = gen_lb_repeated(perm)
        for x in range(n):
            for y in range(n):
                got = oracle_slice_stats(g, n - x - 1, n + y).repeated
                assert got == permutation_dominance(perm, x, y), (perm, x, y)


def test_gen_influence_full_window():
    g = gen_lb_influence([0, 1, 2])
    assert oracle_slice_stats(g, 0, 5).influenced == 6  # all mids and leaves


def test_gen_influence_e_edges_only():
    g = gen_lb_influence([0, 1, 2])
    # indices 0..2 are the root->mid edges
    assert oracle_slice_stats(g, 0, 2).influenced == 3
    assert oracle_slice_stats(g, 1, 2).influenced == 2


def test_gen_influence_tiny():
    g = gen_lb_influence([0])
    assert oracle_slice_stats(g, 0, 1).influenced == 2


def test_gen_influence_dominance_identity():
    rng = random.Random(94)
    for _ in range(15):
        n = rng.randint(1, 12)
        perm = list(range(n))
        rng.shuffle(perm)
        g = gen_lb_influence(perm)
        for x in range(n):
            for y in range(n):
                count = oracle_slice_stats(g, n - x - 1, n + y).influenced
                assert count - (x + 1) == permutation_dominance(perm, x, y), (perm, x, y)
