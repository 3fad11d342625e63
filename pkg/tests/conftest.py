import json
from importlib import resources

import numpy as np
import pytest

from forestmfpt import load_chain, random_chain

DATA = resources.files("forestmfpt") / "data"
EXAMPLE_CHAIN = str(DATA / "paper.chain")


def first_step_mfpt(T):
    """Mean first passage times by solving, for each target j, the
    first-step system m_ij = 1 + sum_{k != j} t_ik m_kj; diagonal filled
    with return times m_jj = 1 + sum_k t_jk m_kj. Independent of both
    library routes."""
    T = np.asarray(T, dtype=float)
    n = T.shape[0]
    M = np.zeros((n, n))
    for j in range(n):
        keep = [k for k in range(n) if k != j]
        A = np.eye(n - 1) - T[np.ix_(keep, keep)]
        M[keep, j] = np.linalg.solve(A, np.ones(n - 1))
        M[j, j] = 1 + T[j, keep] @ M[keep, j]
    return M


def generated_chains(count, sizes, seed, sparse_density=0.35):
    """Half dense, half sparsified random irreducible chains."""
    rng = np.random.default_rng(seed)
    chains = []
    for idx in range(count):
        n = int(rng.choice(sizes))
        density = 1.0 if idx % 2 == 0 else sparse_density
        chains.append(random_chain(rng, n, density=density))
    return chains


@pytest.fixture(scope="session")
def example():
    return json.loads((DATA / "worked_example.json").read_text())


@pytest.fixture(scope="session")
def example_chain():
    return load_chain(EXAMPLE_CHAIN)


_criteria = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid and "criterion_" in report.nodeid:
        _criteria.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _criteria:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
