"""Mean first passage times from spanning in-forest weights.

The in-forest weights of the chain's digraph are generated by the matrix
recurrence

    sigma_{k+1} = tr(L Q_k) / (k + 1),    Q_{k+1} = -L Q_k + sigma_{k+1} I,

started from Q_0 = I, where L = I - T. ``sigma_k`` is the total weight of
in-forests with k arcs and ``Q_k[i, j]`` the weight of those in which i
belongs to the tree converging to j. From the last two steps:

* ``q_j``, the weight of spanning trees converging to j, is any row of
  ``Q_{n-1}``;
* ``f_ij = Q_{n-2}[j, j] - Q_{n-2}[i, j]`` is the weight of 2-tree
  in-forests with j a root and i in the other tree;

and the mean first passage times are ``m_ij = f_ij / q_j`` (i != j),
``m_jj = sum(q) / q_j``.

No pivoting or rescaling is done inside the recurrence. Like the
Faddeev-LeVerrier recurrence it resembles, it loses relative accuracy as
n grows; see ``demos/04_conditioning.py``. Results are only claimed
accurate to 1e-8 for n <= 12.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .chain import laplacian
from .exceptions import ChainError, ForestDimensionError

EQUAL_ROWS_TOL = 1e-6


class Diagonal(str, enum.Enum):
    """Convention for the diagonal of the passage-time matrix."""

    #: m_jj is the mean recurrence time 1 / pi_j (first return, p >= 1)
    RECURRENCE = "recurrence"
    #: m_jj = 0 (first passage allowed at p = 0)
    ZERO = "zero"


@dataclass(frozen=True, eq=False)
class ForestAccumulator:
    """``sigmas[k]`` and ``qs[k]`` for k = 0..n."""

    sigmas: np.ndarray
    qs: np.ndarray

    @property
    def n(self) -> int:
        return self.qs.shape[1]


@dataclass(frozen=True, eq=False)
class TreeWeights:
    q: np.ndarray
    sigma_tot: float

    @property
    def q_tilde(self) -> np.ndarray:
        return self.q / self.sigma_tot


@dataclass(frozen=True, eq=False)
class TwoTreeWeights:
    f: np.ndarray


@dataclass(frozen=True, eq=False)
class MfptMatrix:
    m: np.ndarray
    diagonal: Diagonal = Diagonal.RECURRENCE

    def __array__(self, dtype=None, copy=None):
        return self.m if dtype is None else self.m.astype(dtype)


def forest_recurrence(lap) -> ForestAccumulator:
    """Run the forest recurrence on a Laplacian up to k = n.

    Going one step past what the passage times need gives ``Q_n = 0`` and
    ``sigma_n = 0`` as a free check on accumulated roundoff.

    Parameters
    ----------
    lap : LaplacianMatrix or array_like, shape=(n, n)

    Returns
    -------
    ForestAccumulator
        ``sigmas`` has shape (n+1,), ``qs`` has shape (n+1, n, n).
    """
    L = np.asarray(lap, dtype=float)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise ValueError(f"Laplacian must be square, got shape {L.shape}")
    n = L.shape[0]
    eye = np.eye(n)
    sigmas = np.empty(n + 1)
    qs = np.empty((n + 1, n, n))
    sigmas[0] = 1.0
    qs[0] = eye
    for k in range(n):
        LQ = L @ qs[k]
        sigmas[k + 1] = np.trace(LQ) / (k + 1)
        qs[k + 1] = sigmas[k + 1] * eye - LQ
    sigmas.setflags(write=False)
    qs.setflags(write=False)
    return ForestAccumulator(sigmas, qs)


def tree_weights(acc: ForestAccumulator) -> TreeWeights:
    """Converging-tree weights ``q`` from the rows of ``Q_{n-1}``.

    The rows are averaged. They must agree (to 1e-6 relative to their
    total); otherwise the maximum in-forests have more than one tree and
    :class:`ForestDimensionError` is raised.
    """
    n = acc.n
    top = acc.qs[n - 1]
    q = top.mean(axis=0)
    total = q.sum()
    if not total > 0:
        raise ForestDimensionError(
            f"no spanning converging tree (sigma_{n - 1} = {float(acc.sigmas[n - 1])!r}); chain is not irreducible"
        )
    spread = np.max(np.abs(top - q))
    if spread > EQUAL_ROWS_TOL * total:
        raise ForestDimensionError(
            f"rows of Q_{n - 1} disagree by {spread:.3g}; in-forest dimension is not 1"
        )
    q.setflags(write=False)
    return TreeWeights(q, float(total))


def stationary_from_trees(tw: TreeWeights) -> np.ndarray:
    """Stationary distribution as normalised converging-tree weights."""
    return tw.q / tw.sigma_tot


def two_tree_weights(acc: ForestAccumulator) -> TwoTreeWeights:
    n = acc.n
    if n < 2:
        raise ChainError("2-tree in-forests need at least 2 states")
    Q = acc.qs[n - 2]
    f = np.diag(Q)[None, :] - Q
    np.fill_diagonal(f, 0.0)
    f.setflags(write=False)
    return TwoTreeWeights(f)


def mfpt_forest(tw: TreeWeights, ttw: TwoTreeWeights | None,
                diagonal: Diagonal | str = Diagonal.RECURRENCE) -> MfptMatrix:
    """Mean first passage times ``f_ij / q_j`` with the chosen diagonal.

    ``ttw`` may be None only for a one-state chain.
    """
    diagonal = Diagonal(diagonal)
    q = tw.q
    n = len(q)
    if np.any(q <= 0):
        j = int(np.flatnonzero(q <= 0)[0])
        raise ChainError(f"tree weight q_{j + 1} = {float(q[j])!r} is not positive")
    if ttw is None:
        if n != 1:
            raise ChainError("two-tree weights are required for n >= 2")
        m = np.zeros((1, 1))
    else:
        m = ttw.f / q[None, :]
    if diagonal is Diagonal.RECURRENCE:
        np.fill_diagonal(m, tw.sigma_tot / q)
    else:
        np.fill_diagonal(m, 0.0)
    m.setflags(write=False)
    return MfptMatrix(m, diagonal)


def forest_analysis(t, diagonal: Diagonal | str = Diagonal.RECURRENCE):
    """Run the whole forest route on a transition matrix.

    Returns ``(acc, tw, ttw, mfpt)``; ``ttw`` is None when n = 1.
    """
    acc = forest_recurrence(laplacian(t))
    tw = tree_weights(acc)
    ttw = two_tree_weights(acc) if acc.n >= 2 else None
    return acc, tw, ttw, mfpt_forest(tw, ttw, diagonal)
