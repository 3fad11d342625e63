import numpy as np
import pytest

from forestmfpt import (
    SingularSystemError,
    forest_analysis,
    group_inverse,
    laplacian,
    meyer_analysis,
    mfpt_meyer,
    stationary_direct,
    stationary_from_trees,
    transition_matrix,
)
from forestmfpt.group_inverse import mfpt_meyer_matrix_form

from conftest import generated_chains


def assert_group_inverse(L, S, tol=1e-8):
    np.testing.assert_allclose(L @ S @ L, L, atol=tol)
    np.testing.assert_allclose(S @ L @ S, S, atol=tol)
    np.testing.assert_allclose(L @ S, S @ L, atol=tol)


@pytest.mark.parametrize("rows, pi", [
    ([[0, 1], [1, 0]], [0.5, 0.5]),
    ([[0, 1], [0.5, 0.5]], [1 / 3, 2 / 3]),
])
def test_stationary_direct_small(rows, pi):
    np.testing.assert_allclose(stationary_direct(transition_matrix(rows)), pi, atol=1e-15)


def test_stationary_direct_example(example_chain, example):
    np.testing.assert_allclose(stationary_direct(example_chain), example["pi"], atol=1e-12)


def test_stationary_direct_reducible():
    with pytest.raises(SingularSystemError):
        stationary_direct(np.array([[1, 0, 0], [0.5, 0, 0.5], [0, 0, 1]]))


def test_group_inverse_example(example_chain, example):
    L = laplacian(example_chain)
    S = group_inverse(L, stationary_direct(example_chain)).sharp
    np.testing.assert_allclose(S, example["L_sharp"], atol=1e-9, rtol=0)
    assert_group_inverse(L.entries, S)


def test_group_inverse_cycle():
    # (L + J~)^{-1} - J~ with L + J~ = [[1.5, -0.5], [-0.5, 1.5]]
    t = transition_matrix([[0, 1], [1, 0]])
    S = group_inverse(laplacian(t), [0.5, 0.5]).sharp
    np.testing.assert_allclose(S, [[0.25, -0.25], [-0.25, 0.25]], atol=1e-15)
    assert_group_inverse(laplacian(t).entries, S)


def test_group_inverse_singular():
    # wrong pi makes L + J~ singular here
    L = np.array([[1.0, -1.0], [-1.0, 1.0]])
    with pytest.raises(SingularSystemError):
        group_inverse(L, [1.0, -1.0])


def test_mfpt_meyer_example_corrected(example_chain, example):
    _, _, m = meyer_analysis(example_chain)
    expected = np.array(example["M"])
    expected[0, 2] = 6.0
    np.testing.assert_allclose(m.m, expected, atol=1e-9, rtol=0)


def test_mfpt_meyer_from_printed_sharp(example):
    # the printed L# and pi alone also give m_13 = (0.752 + 0.448) / 0.2 = 6
    S = np.array(example["L_sharp"])
    m = mfpt_meyer(S, example["pi"]).m
    assert m[0, 2] == pytest.approx(6.0, abs=1e-12)


def test_mfpt_meyer_lazy():
    _, _, m = meyer_analysis(transition_matrix([[0, 1], [0.5, 0.5]]))
    np.testing.assert_allclose(m.m, [[3, 1], [2, 1.5]], atol=1e-14)


@pytest.fixture(scope="module")
def random_chains():
    return generated_chains(60, range(2, 9), seed=11)


def test_random_chain_properties(random_chains):
    for t in random_chains:
        L = laplacian(t).entries
        pi = stationary_direct(t)
        assert np.all(pi > 0)
        S = group_inverse(L, pi).sharp
        assert_group_inverse(L, S)
        np.testing.assert_allclose(S.sum(axis=1), 0, atol=1e-8)
        np.testing.assert_allclose(pi @ S, 0, atol=1e-8)
        m = mfpt_meyer(S, pi).m
        np.testing.assert_allclose(np.diag(m), 1 / pi, rtol=1e-15)
        np.testing.assert_allclose(mfpt_meyer_matrix_form(S, pi), m, atol=1e-12)
        _, tw, _, _ = forest_analysis(t)
        np.testing.assert_allclose(pi, stationary_from_trees(tw), atol=1e-9, rtol=0)


def test_routes_agree_relatively_on_very_sparse_chains():
    # tiny stationary probabilities push passage times into the 1e4 range,
    # where only relative agreement is meaningful
    for t in generated_chains(300, range(2, 9), seed=13, sparse_density=0.35):
        a = forest_analysis(t)[3].m
        b = meyer_analysis(t)[2].m
        assert np.max(np.abs(a - b) / b) <= 1e-9
