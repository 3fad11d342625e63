"""Brute-force enumeration of spanning in-forests of small digraphs.

An in-forest is fixed by choosing, for every vertex, either one outgoing
arc or none, such that the chosen arcs contain no cycle. Vertices with no
chosen arc are the roots. This module walks all such choices (pruning a
branch as soon as it closes a cycle) and is the ground truth the matrix
recurrence in :mod:`forestmfpt.forests` is tested against.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .chain import WeightedDigraph
from .exceptions import ChainError, EnumerationLimitError
from .forests import ForestAccumulator

DEFAULT_LIMIT = 8


@dataclass(frozen=True)
class InForest:
    """A spanning in-forest.

    ``parent[v]`` is the head of the arc leaving ``v``, or -1 if ``v`` is a
    root. ``arc_weights`` follow the order of ``arcs``.
    """

    n: int
    parent: tuple[int, ...]
    arc_weights: tuple[float, ...]

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple((v, p) for v, p in enumerate(self.parent) if p >= 0)

    @property
    def roots(self) -> frozenset[int]:
        return frozenset(v for v, p in enumerate(self.parent) if p < 0)

    @property
    def weight(self) -> float:
        # math.prod of an empty tuple is 1: the arcless forest has weight 1
        return math.prod(self.arc_weights)

    def root_of(self, v: int) -> int:
        steps = 0
        while self.parent[v] >= 0:
            v = self.parent[v]
            steps += 1
            if steps > self.n:
                raise ChainError("cycle in in-forest")
        return v

    def tree(self, root: int) -> frozenset[int]:
        """Vertices of the tree converging to ``root``."""
        return frozenset(v for v in range(self.n) if self.root_of(v) == root)


def _check_limit(g: WeightedDigraph, limit: int) -> None:
    if g.n > limit:
        raise EnumerationLimitError(
            f"digraph has {g.n} vertices, enumeration limit is {limit}"
        )


def _walk(g: WeightedDigraph, first_choice=None):
    """Yield ``(parent, weights)`` for every in-forest of ``g``.

    ``first_choice`` restricts vertex 0 to one option (an out-arc index
    or None), which splits the search into independent pieces.
    """
    n = g.n
    options = [g.out_arcs(v) for v in range(n)]
    parent = [-1] * n
    weights = [0.0] * n

    def closes_cycle(v, h):
        while h >= 0:
            if h == v:
                return True
            h = parent[h]
        return False

    def rec(v):
        if v == n:
            yield tuple(parent), tuple(weights[u] for u in range(n) if parent[u] >= 0)
            return
        choices = [None] + list(range(len(options[v])))
        if v == 0 and first_choice is not None:
            choices = [first_choice] if first_choice != "none" else [None]
        for c in choices:
            if c is None:
                parent[v] = -1
                yield from rec(v + 1)
            else:
                h, w = options[v][c]
                if closes_cycle(v, h):
                    continue
                parent[v] = h
                weights[v] = w
                yield from rec(v + 1)
                parent[v] = -1

    yield from rec(0)


def _sort_key(f: InForest):
    return f.arcs


def all_in_forests(g: WeightedDigraph, limit: int = DEFAULT_LIMIT) -> dict[int, list[InForest]]:
    """Every in-forest of ``g`` grouped by arc count (keys 0..n-1)."""
    _check_limit(g, limit)
    out: dict[int, list[InForest]] = {k: [] for k in range(g.n)}
    for parent, w in _walk(g):
        out[len(w)].append(InForest(g.n, parent, w))
    for k in out:
        out[k].sort(key=_sort_key)
    return out


def enumerate_in_forests(g: WeightedDigraph, k: int, limit: int = DEFAULT_LIMIT) -> list[InForest]:
    """All in-forests of ``g`` with exactly ``k`` arcs, sorted by arc list."""
    if not 0 <= k <= g.n - 1:
        raise ValueError(f"arc count must lie in [0, {g.n - 1}], got {k}")
    _check_limit(g, limit)
    found = [InForest(g.n, p, w) for p, w in _walk(g) if len(w) == k]
    found.sort(key=_sort_key)
    return found


def oracle_sigma_q(g: WeightedDigraph, k: int, limit: int = DEFAULT_LIMIT):
    """``(sigma_k, Q_k)`` summed directly over the k-arc in-forests."""
    return _sigma_q(g.n, enumerate_in_forests(g, k, limit))


def _sigma_q(n, forests):
    Q = np.zeros((n, n))
    sigma = 0.0
    for f in forests:
        w = f.weight
        sigma += w
        for i in range(n):
            Q[i, f.root_of(i)] += w
    return sigma, Q


def oracle_accumulator(g: WeightedDigraph, limit: int = DEFAULT_LIMIT) -> ForestAccumulator:
    """All of ``sigma_0..sigma_n`` and ``Q_0..Q_n`` from one enumeration
    pass; ``sigma_n`` and ``Q_n`` are zero since no in-forest has n arcs."""
    n = g.n
    groups = all_in_forests(g, limit)
    sigmas = np.zeros(n + 1)
    qs = np.zeros((n + 1, n, n))
    for k in range(n):
        sigmas[k], qs[k] = _sigma_q(n, groups[k])
    return ForestAccumulator(sigmas, qs)


def oracle_tree_and_two_tree(g: WeightedDigraph, limit: int = DEFAULT_LIMIT):
    """Tree weights ``q`` and 2-tree weights ``f`` by direct membership.

    ``q[j]`` sums spanning trees rooted at j. ``f[i, j]`` sums 2-tree
    in-forests in which j is a root and i lies in the other tree. This
    does not go through ``Q_{n-2}``, so it checks that identity too.
    """
    n = g.n
    if n < 2:
        raise ChainError("2-tree in-forests need at least 2 states")
    groups = all_in_forests(g, limit)
    q = np.zeros(n)
    for t in groups[n - 1]:
        (r,) = t.roots
        q[r] += t.weight
    f = np.zeros((n, n))
    for forest in groups[n - 2]:
        w = forest.weight
        for j in forest.roots:
            members = forest.tree(j)
            for i in range(n):
                if i not in members:
                    f[i, j] += w
    return q, f


def forests_by_first_choice(g: WeightedDigraph, k: int, limit: int = DEFAULT_LIMIT) -> list[list[InForest]]:
    """The k-arc in-forests split by the choice made at vertex 0.

    The pieces are independent and can be produced concurrently;
    concatenating them and sorting gives :func:`enumerate_in_forests`.
    """
    _check_limit(g, limit)
    pieces = []
    for c in ["none"] + list(range(len(g.out_arcs(0)))):
        pieces.append([InForest(g.n, p, w) for p, w in _walk(g, c) if len(w) == k])
    return pieces


def count_by_arcs(g: WeightedDigraph, limit: int = DEFAULT_LIMIT) -> dict[int, int]:
    counts = defaultdict(int)
    for k, fs in all_in_forests(g, limit).items():
        counts[k] = len(fs)
    return dict(counts)
