"""Linear-algebra route to pi, the group inverse of L and the passage times.

Shares nothing with the forest route beyond L = I - T, so the two can be
used to check each other.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .chain import laplacian
from .exceptions import SingularSystemError
from .forests import Diagonal, MfptMatrix

COND_LIMIT = 1e14


@dataclass(frozen=True, eq=False)
class GroupInverse:
    sharp: np.ndarray
    cond: float

    def __array__(self, dtype=None, copy=None):
        return self.sharp if dtype is None else self.sharp.astype(dtype)


def stationary_direct(t) -> np.ndarray:
    """Solve ``pi (I - T) = 0``, ``sum(pi) = 1`` by a dense LU solve.

    The last balance equation is replaced by the normalisation.
    """
    T = np.asarray(t, dtype=float)
    n = T.shape[0]
    A = (np.eye(n) - T).T
    A[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    if not np.linalg.cond(A) < COND_LIMIT:
        raise SingularSystemError("stationary system is singular; chain is not irreducible")
    lu = scipy.linalg.lu_factor(A)
    pi = scipy.linalg.lu_solve(lu, b)
    if np.any(pi <= 0):
        raise SingularSystemError(f"stationary solve produced a non-positive entry: {float(pi.min())!r}")
    return pi


def group_inverse(lap, pi) -> GroupInverse:
    """``L# = (L + J~)^{-1} - J~`` with ``J~ = 1 pi`` (every row equal to pi).

    Raises SingularSystemError if ``L + J~`` has condition number beyond
    1e14.
    """
    L = np.asarray(lap, dtype=float)
    pi = np.asarray(pi, dtype=float)
    n = L.shape[0]
    J = np.ones((n, 1)) * pi[None, :]
    A = L + J
    cond = float(np.linalg.cond(A))
    if not cond < COND_LIMIT:
        raise SingularSystemError(f"L + J~ is numerically singular (cond = {cond:.3g})")
    sharp = scipy.linalg.inv(A) - J
    sharp.setflags(write=False)
    return GroupInverse(sharp, cond)


def mfpt_meyer(sharp: GroupInverse, pi) -> MfptMatrix:
    """Entrywise Meyer formula: ``m_jj = 1/pi_j``,
    ``m_ij = (L#_jj - L#_ij) / pi_j``."""
    S = np.asarray(sharp, dtype=float)
    pi = np.asarray(pi, dtype=float)
    m = (np.diag(S)[None, :] - S) / pi[None, :]
    np.fill_diagonal(m, 1.0 / pi)
    m.setflags(write=False)
    return MfptMatrix(m, Diagonal.RECURRENCE)


def mfpt_meyer_matrix_form(sharp: GroupInverse, pi) -> np.ndarray:
    """Matrix form ``M = (I - L# + J L#_dg) Pi^{-1}``; kept for
    cross-checking :func:`mfpt_meyer`."""
    S = np.asarray(sharp, dtype=float)
    pi = np.asarray(pi, dtype=float)
    n = S.shape[0]
    J = np.ones((n, n))
    return (np.eye(n) - S + J @ np.diag(np.diag(S))) @ np.diag(1.0 / pi)


def meyer_analysis(t):
    """Return ``(pi, sharp, mfpt)`` for a transition matrix."""
    pi = stationary_direct(t)
    sharp = group_inverse(laplacian(t), pi)
    return pi, sharp, mfpt_meyer(sharp, pi)
