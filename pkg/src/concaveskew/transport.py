"""Exact optimal transport between finite orbit-supported measures.

The ground space is (sequence, fiber point) with metric
max(base_distance, |x - y|), where the base distance between two
bi-infinite sequences is e^{-m} with m the radius of the largest
symmetric window on which they agree (m = 0 when they already differ at
the origin, so the base distance never exceeds 1).

Supports here are uniform on periodic orbits.  With equal uniform
weights optimal transport reduces to an assignment problem; unequal
support sizes are handled by replicating points up to the least common
multiple.  Small instances are solved by branch-and-bound enumeration,
larger ones by the Hungarian solver.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import linear_sum_assignment, linprog

EXHAUSTIVE_LIMIT = 8
ASSIGNMENT_LIMIT = 64
_BASE_HORIZON = 64  # window radius beyond which sequences count as equal


def shifted_periodic_symbol(word: str, shift: int, index: int) -> str:
    """Symbol at position `index` of the shifted two-sided periodization."""
    return word[(index + shift) % len(word)]


def base_distance(word1: str, shift1: int, word2: str, shift2: int,
                  horizon: int = _BASE_HORIZON) -> float:
    """e^{-m} distance between two shifted periodic sequences.

    m is the first radius at which the sequences disagree; agreement out
    to the horizon counts as distance 0 (e^{-64} is far below every
    tolerance used in this package).
    """
    for m in range(horizon + 1):
        if shifted_periodic_symbol(word1, shift1, m) != \
           shifted_periodic_symbol(word2, shift2, m):
            return math.exp(-m)
        if m and shifted_periodic_symbol(word1, shift1, -m) != \
           shifted_periodic_symbol(word2, shift2, -m):
            return math.exp(-m)
    return 0.0


def orbit_cost_matrix(word1: str, points1, word2: str, points2) -> np.ndarray:
    """Pairwise ground distances between two periodic orbits.

    Entry (i, j) couples time-i of the first orbit with time-j of the
    second: max of the base distance of the shifted itineraries and the
    fiber gap.
    """
    n1, n2 = len(points1), len(points2)
    cost = np.empty((n1, n2))
    for i in range(n1):
        for j in range(n2):
            db = base_distance(word1, i, word2, j)
            cost[i, j] = max(db, abs(points1[i] - points2[j]))
    return cost


def _assignment_exhaustive(cost: np.ndarray) -> float:
    """Minimal assignment cost by depth-first search with pruning."""
    n = cost.shape[0]
    order = list(range(n))
    best = sum(cost[i, i] for i in range(n))  # identity is a strong start
    used = [False] * n

    def descend(row, partial):
        nonlocal best
        if row == n:
            best = min(best, partial)
            return
        for j in order:
            if used[j]:
                continue
            nxt = partial + cost[row, j]
            if nxt < best:
                used[j] = True
                descend(row + 1, nxt)
                used[j] = False

    descend(0, 0.0)
    return best


def assignment_cost(cost: np.ndarray, exhaustive: bool = None) -> float:
    """Exact minimal assignment cost for a square matrix."""
    n = cost.shape[0]
    if exhaustive is None:
        exhaustive = n <= EXHAUSTIVE_LIMIT
    if exhaustive:
        return _assignment_exhaustive(cost)
    if n > ASSIGNMENT_LIMIT:
        raise ValueError(f"assignment size {n} exceeds limit {ASSIGNMENT_LIMIT}")
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].sum())


def transport_lp(cost: np.ndarray, weights1, weights2) -> float:
    """Exact optimal-transport value by the transportation LP (HiGHS)."""
    n1, n2 = cost.shape
    a_eq = np.zeros((n1 + n2, n1 * n2))
    for i in range(n1):
        a_eq[i, i * n2:(i + 1) * n2] = 1.0
    for j in range(n2):
        a_eq[n1 + j, j::n2] = 1.0
    b_eq = np.concatenate([weights1, weights2])
    res = linprog(cost.ravel(), A_eq=a_eq, b_eq=b_eq,
                  bounds=(0.0, None), method="highs")
    if not res.success:
        raise RuntimeError(f"transport LP failed: {res.message}")
    return float(res.fun)


def wasserstein_orbits(word1: str, points1, word2: str, points2) -> float:
    """W1 between the uniform measures on two periodic orbits.

    Equal orbit lengths reduce to an assignment; unequal lengths go
    through the transportation LP with uniform marginals.
    """
    n1, n2 = len(points1), len(points2)
    cost = orbit_cost_matrix(word1, points1, word2, points2)
    if n1 == n2:
        return assignment_cost(cost) / n1
    return transport_lp(cost, np.full(n1, 1.0 / n1), np.full(n2, 1.0 / n2))
