"""Monte Carlo estimates of first passage times.

``F_ij = min{p >= 1 : X_p = j | X_0 = i}``; note p >= 1, so a walk
started at j must leave and come back. The sample means therefore
estimate the recurrence-time convention on the diagonal.

Randomness: every ordered pair (i, j) gets its own PCG64 stream spawned
from ``SeedSequence(seed, spawn_key=(i, j))``. The trials of one pair are
run as a vectorised batch on that stream, so a report depends only on
``(t, trials, seed)`` and not on the order in which pairs are processed.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .exceptions import StepCapExceeded

STEP_CAP = 10**7


@dataclass(frozen=True, eq=False)
class SimulationReport:
    m_hat: np.ndarray
    stderr: np.ndarray
    trials: int
    seed: int

    def z_scores(self, m) -> np.ndarray:
        """``(m_hat - m) / stderr``. Where stderr is zero the score is 0 if
        the estimate matches ``m`` to roundoff (1e-9 relative) and +-inf
        otherwise."""
        m = np.asarray(m, dtype=float)
        diff = self.m_hat - m
        with np.errstate(divide="ignore", invalid="ignore"):
            z = diff / self.stderr
        exact = np.abs(diff) <= 1e-9 * np.maximum(1.0, np.abs(m))
        z[(self.stderr == 0) & exact] = 0.0
        return z


class _Sampler:
    def __init__(self, t):
        T = np.asarray(t, dtype=float)
        self.n = T.shape[0]
        self.cdf = np.cumsum(T, axis=1)
        # guard against u landing above a row total of 1 - eps
        self.last = np.array([np.flatnonzero(row > 0)[-1] for row in T])
        self._cdf_rows = self.cdf.tolist()
        self._last_list = self.last.tolist()

    def step(self, states, u):
        nxt = (u[:, None] >= self.cdf[states]).sum(axis=1)
        return np.minimum(nxt, self.last[states])

    def step_one(self, state: int, u: float) -> int:
        return min(bisect_right(self._cdf_rows[state], u), self._last_list[state])


def pair_rng(seed: int, i: int, j: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(i, j))))


def sample_first_passage(t, i: int, j: int, rng: np.random.Generator,
                         step_cap: int = STEP_CAP) -> int:
    """One draw of the first passage time from ``i`` to ``j`` (p >= 1)."""
    s = _Sampler(t)
    state = i
    for p in range(1, step_cap + 1):
        state = s.step_one(state, rng.random())
        if state == j:
            return p
    raise StepCapExceeded(f"no passage {i + 1} -> {j + 1} within {step_cap} steps")


def _batch(sampler, i, j, trials, rng, step_cap):
    steps = np.zeros(trials, dtype=np.int64)
    states = np.full(trials, i)
    active = np.arange(trials)
    p = 0
    while active.size:
        p += 1
        if p > step_cap:
            raise StepCapExceeded(
                f"{active.size} walks {i + 1} -> {j + 1} still running after {step_cap} steps"
            )
        states = sampler.step(states, rng.random(active.size))
        hit = states == j
        steps[active[hit]] = p
        active = active[~hit]
        states = states[~hit]
    return steps


def estimate_mfpt(t, trials: int, seed: int, step_cap: int = STEP_CAP) -> SimulationReport:
    """Sample-mean first passage times for every ordered pair of states.

    Parameters
    ----------
    t : TransitionMatrix or array_like, shape=(n, n)
    trials : int
        Independent walks per pair.
    seed : int
        Master seed; the report is a deterministic function of it.
    step_cap : int
        Per-walk step limit; exceeding it raises StepCapExceeded.

    Returns
    -------
    SimulationReport
        ``stderr`` is the sample standard deviation over sqrt(trials)
        (zero when ``trials == 1``).
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    sampler = _Sampler(t)
    n = sampler.n
    m_hat = np.empty((n, n))
    stderr = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            x = _batch(sampler, i, j, trials, pair_rng(seed, i, j), step_cap)
            m_hat[i, j] = x.mean()
            stderr[i, j] = x.std(ddof=1) / np.sqrt(trials) if trials > 1 else 0.0
    return SimulationReport(m_hat, stderr, trials, seed)


def estimate_stationary(t, steps: int, seed: int, start: int = 0) -> np.ndarray:
    """Visit frequencies of a single path of ``steps`` transitions."""
    sampler = _Sampler(t)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    counts = [0] * sampler.n
    state = start
    for u in rng.random(steps).tolist():
        state = sampler.step_one(state, u)
        counts[state] += 1
    return np.array(counts) / steps
