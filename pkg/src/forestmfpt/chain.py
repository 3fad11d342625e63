"""Markov chain model: transition matrices, their digraphs and Laplacians.

States are 0-indexed in the Python API. Text output (CLI, DOT) is
1-indexed.

Only irreducibility (strong connectivity of the digraph) is enforced.
Aperiodicity is never checked: every quantity computed by this package
is well defined for any irreducible finite chain, periodic or not.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.sparse.csgraph import connected_components

from .exceptions import NotIrreducibleError, ParseError, ValidationError

ROW_SUM_TOL = 1e-12


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """Validated row-stochastic matrix of an irreducible chain.

    Construct through :func:`transition_matrix` or :func:`parse_chain`;
    the constructor itself only freezes the array.
    """

    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)


@dataclass(frozen=True)
class WeightedDigraph:
    """Loop-free digraph; ``arcs`` holds ``(tail, head, weight)`` triples
    sorted by ``(tail, head)``."""

    n: int
    arcs: tuple[tuple[int, int, float], ...]

    def out_arcs(self, v: int) -> list[tuple[int, float]]:
        return [(h, w) for t, h, w in self.arcs if t == v]

    def weight_matrix(self) -> np.ndarray:
        w = np.zeros((self.n, self.n))
        for t, h, x in self.arcs:
            w[t, h] = x
        return w


@dataclass(frozen=True, eq=False)
class LaplacianMatrix:
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)


def _check_stochastic(a: np.ndarray) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValidationError(f"transition matrix must be square and non-empty, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        i, j = np.argwhere(~np.isfinite(a))[0]
        raise ValidationError(f"entry ({i + 1},{j + 1}) is not finite")
    neg = np.argwhere(a < 0)
    if len(neg):
        i, j = neg[0]
        raise ValidationError(f"entry ({i + 1},{j + 1}) is negative: {float(a[i, j])!r}")
    big = np.argwhere(a > 1)
    if len(big):
        i, j = big[0]
        raise ValidationError(f"entry ({i + 1},{j + 1}) exceeds 1: {float(a[i, j])!r}")
    sums = a.sum(axis=1)
    bad = np.flatnonzero(np.abs(sums - 1.0) > ROW_SUM_TOL)
    if len(bad):
        i = bad[0]
        raise ValidationError(f"row {i + 1} sums to {float(sums[i])!r}, not 1")


def check_irreducible(t) -> bool:
    """True iff the digraph of ``t`` is strongly connected."""
    a = np.asarray(t, dtype=float)
    if a.shape[0] == 1:
        return True
    ncomp, _ = connected_components(a > 0, directed=True, connection="strong")
    return ncomp == 1


def transition_matrix(a) -> TransitionMatrix:
    """Validate ``a`` and wrap it as a :class:`TransitionMatrix`.

    Raises
    ------
    ValidationError
        Non-square input, a negative or non-finite entry, or a row whose
        sum differs from 1 by more than 1e-12.
    NotIrreducibleError
        The chain has more than one strongly connected component.
    """
    a = np.array(a, dtype=float)
    _check_stochastic(a)
    if not check_irreducible(a):
        _, labels = connected_components(a > 0, directed=True, connection="strong")
        # name a pair of states that cannot reach each other
        i = 0
        j = int(np.flatnonzero(labels != labels[0])[0])
        reach = _reachable(a > 0, i)
        if reach[j]:
            i, j = j, i
        raise NotIrreducibleError(
            f"chain is not irreducible: state {j + 1} cannot be reached from state {i + 1}"
        )
    return TransitionMatrix(a)


def _reachable(adj: np.ndarray, source: int) -> np.ndarray:
    seen = np.zeros(adj.shape[0], dtype=bool)
    seen[source] = True
    stack = [source]
    while stack:
        v = stack.pop()
        for w in np.flatnonzero(adj[v]):
            if not seen[w]:
                seen[w] = True
                stack.append(w)
    return seen


def _parse_text(source: str) -> np.ndarray:
    lines = [ln for ln in source.splitlines()]
    # blank lines at the end are tolerated, nothing else is
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise ParseError("empty chain specification")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ParseError(f"line 1: expected the state count, got {lines[0].strip()!r}") from None
    if n < 1:
        raise ParseError(f"line 1: state count must be >= 1, got {n}")
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} matrix rows after line 1, found {len(lines) - 1} lines")
    rows = []
    for lineno, ln in enumerate(lines[1:], start=2):
        fields = ln.split()
        if len(fields) != n:
            raise ParseError(f"line {lineno}: expected {n} entries, got {len(fields)}")
        try:
            rows.append([float(x) for x in fields])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return np.array(rows)


def _parse_json(source: str) -> np.ndarray:
    try:
        doc = json.loads(source)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or set(doc) != {"n", "rows"}:
        raise ParseError('JSON chain must be an object with exactly the keys "n" and "rows"')
    n, rows = doc["n"], doc["rows"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f'"n" must be a positive integer, got {n!r}')
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError(f'"rows" must be a list of {n} rows')
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"row {i + 1}: expected {n} entries")
        for x in row:
            if isinstance(x, bool) or not isinstance(x, (int, float)):
                raise ParseError(f"row {i + 1}: non-numeric entry {x!r}")
    return np.array(rows, dtype=float)


def parse_chain(source: str) -> TransitionMatrix:
    """Parse chain-spec text (plain or JSON) and validate it.

    The plain format is the state count ``n`` on the first line followed
    by ``n`` lines of ``n`` whitespace-separated probabilities. A source
    whose first non-blank character is ``{`` is read as
    ``{"n": int, "rows": [[...], ...]}``.
    """
    if source.lstrip().startswith("{"):
        a = _parse_json(source)
    else:
        a = _parse_text(source)
    return transition_matrix(a)


def load_chain(path) -> TransitionMatrix:
    return parse_chain(Path(path).read_text())


def format_chain(t) -> str:
    """Inverse of :func:`parse_chain` for the plain text format."""
    a = np.asarray(t)
    out = [str(a.shape[0])]
    out += [" ".join(repr(float(x)) for x in row) for row in a]
    return "\n".join(out) + "\n"


def digraph_of(t) -> WeightedDigraph:
    """Loop-free weighted digraph with an arc ``(i, j, t_ij)`` for every
    ``i != j`` with ``t_ij != 0``."""
    a = np.asarray(t, dtype=float)
    n = a.shape[0]
    arcs = tuple(
        (i, j, float(a[i, j])) for i in range(n) for j in range(n) if i != j and a[i, j] != 0
    )
    return WeightedDigraph(n, arcs)


def laplacian(t) -> LaplacianMatrix:
    a = np.asarray(t, dtype=float)
    return LaplacianMatrix(np.eye(a.shape[0]) - a)


def random_chain(rng: np.random.Generator, n: int, density: float = 1.0,
                 max_tries: int = 1000) -> TransitionMatrix:
    """Draw a random irreducible chain on ``n`` states.

    Entries are uniform on (0, 1]; with ``density < 1`` each entry is kept
    with that probability. Rows are then normalised. Draws that are not
    strongly connected (or have an empty row) are rejected.
    """
    for _ in range(max_tries):
        a = 1.0 - rng.random((n, n))
        if density < 1.0:
            a *= rng.random((n, n)) < density
        s = a.sum(axis=1)
        if np.any(s == 0):
            continue
        a /= s[:, None]
        if check_irreducible(a):
            return transition_matrix(a)
    raise ValidationError(f"no irreducible chain found in {max_tries} draws (n={n}, density={density})")
