import numpy as np
import pytest

from forestmfpt import (
    EnumerationLimitError,
    digraph_of,
    enumerate_in_forests,
    forest_recurrence,
    laplacian,
    oracle_accumulator,
    oracle_sigma_q,
    oracle_tree_and_two_tree,
    transition_matrix,
    tree_weights,
    two_tree_weights,
)
from forestmfpt.enumeration import all_in_forests, forests_by_first_choice

from conftest import generated_chains


@pytest.fixture(scope="module")
def fig1(example_chain):
    return digraph_of(example_chain)


def test_spanning_trees_of_fig1(fig1):
    trees = enumerate_in_forests(fig1, 3)
    assert len(trees) == 4
    assert sorted(next(iter(t.roots)) for t in trees) == [0, 1, 2, 3]
    assert sum(t.weight for t in trees) == pytest.approx(0.25, abs=1e-15)


def test_two_tree_forests_of_fig1(fig1):
    forests = enumerate_in_forests(fig1, 2)
    assert len(forests) == 8
    assert all(len(f.roots) == 2 for f in forests)
    assert sum(f.weight for f in forests) == pytest.approx(1.56, abs=1e-14)


def test_arcless_forest(fig1):
    (f,) = enumerate_in_forests(fig1, 0)
    assert f.weight == 1.0 and f.arcs == () and f.roots == frozenset(range(4))


def test_output_is_sorted_and_unique(fig1):
    for k in range(4):
        forests = enumerate_in_forests(fig1, k)
        keys = [f.arcs for f in forests]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)


def test_forest_invariants(fig1):
    for fs in all_in_forests(fig1).values():
        for f in fs:
            assert len(f.arcs) + len(f.roots) == f.n
            for v in range(f.n):
                f.root_of(v)  # terminates, i.e. acyclic
            assert sorted(v for r in f.roots for v in f.tree(r)) == list(range(f.n))


def test_oracle_sigma_q_fig1(fig1, example):
    sigma, Q = oracle_sigma_q(fig1, 2)
    assert sigma == pytest.approx(1.56, abs=1e-14)
    np.testing.assert_allclose(Q, example["Q2"], atol=1e-14)
    _, Q3 = oracle_sigma_q(fig1, 3)
    np.testing.assert_allclose(Q3, example["Q3"], atol=1e-14)
    sigma0, Q0 = oracle_sigma_q(fig1, 0)
    assert sigma0 == 1 and np.array_equal(Q0, np.eye(4))
    sigma1, _ = oracle_sigma_q(fig1, 1)
    assert sigma1 == pytest.approx(2.25, abs=1e-14)


def test_oracle_tree_and_two_tree_fig1(fig1, example):
    q, f = oracle_tree_and_two_tree(fig1)
    np.testing.assert_allclose(q, example["q"], atol=1e-15)
    assert f[0, 3] == pytest.approx(1.16, abs=1e-14)
    assert f[0, 2] == pytest.approx(0.3, abs=1e-14)  # printed 0.75 is a misprint


def test_oracle_cycle():
    q, f = oracle_tree_and_two_tree(digraph_of(transition_matrix([[0, 1], [1, 0]])))
    np.testing.assert_array_equal(q, [1, 1])
    np.testing.assert_array_equal(f, [[0, 1], [1, 0]])


def test_limit_enforced():
    g = digraph_of(np.full((9, 9), 1 / 9))
    with pytest.raises(EnumerationLimitError):
        enumerate_in_forests(g, 2)
    assert len(enumerate_in_forests(digraph_of(np.full((3, 3), 1 / 3)), 2, limit=3)) == 9


def test_k_out_of_range(fig1):
    with pytest.raises(ValueError):
        enumerate_in_forests(fig1, 4)


def test_first_choice_partition(fig1):
    for k in range(4):
        merged = sorted((f for piece in forests_by_first_choice(fig1, k) for f in piece), key=lambda f: f.arcs)
        assert merged == enumerate_in_forests(fig1, k)


def test_complete_digraph_counts():
    # rooted forests on n labelled vertices: (n + 1)^(n - 1) in total
    for n in range(1, 6):
        g = digraph_of(np.full((n, n), 1 / n))
        assert sum(len(v) for v in all_in_forests(g).values()) == (n + 1) ** (n - 1)


def test_recurrence_matches_oracle_three_state():
    (t,) = generated_chains(1, [3], seed=3)
    g = digraph_of(t)
    acc = forest_recurrence(laplacian(t))
    q, f = oracle_tree_and_two_tree(g)
    np.testing.assert_allclose(tree_weights(acc).q, q, atol=1e-12)
    np.testing.assert_allclose(two_tree_weights(acc).f, f, atol=1e-12)


def test_two_tree_identity_small_digraphs():
    for t in generated_chains(30, range(2, 7), seed=5):
        g = digraph_of(t)
        ora = oracle_accumulator(g)
        n = g.n
        Q = ora.qs[n - 2]
        _, f = oracle_tree_and_two_tree(g)
        np.testing.assert_allclose(np.diag(Q)[None, :] - Q, f, atol=1e-14)
        for k in range(n):
            np.testing.assert_allclose(ora.qs[k].sum(axis=1), ora.sigmas[k], rtol=1e-12)
