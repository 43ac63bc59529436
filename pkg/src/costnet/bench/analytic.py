"""Closed-form reference values for the grid benchmarks."""
from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ..costalg import CostVector, PhysicalCost, purify_n, to_physical


def mean_manhattan(n: int) -> float:
    """Mean L1 distance between two distinct nodes of an n x n grid."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return 2.0 * n / 3.0


def l1_distribution(n: int) -> dict[int, int]:
    """Number of unordered distinct node pairs at each L1 distance.

    Built by convolving the one-dimensional offset counts: along one axis
    ``n`` ordered coordinate pairs have offset 0 and ``2 (n - d)`` have
    offset ``d``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    axis = np.array([n] + [2 * (n - d) for d in range(1, n)], dtype=np.int64)
    ordered = np.convolve(axis, axis)
    ordered[0] -= n * n  # drop coincident points
    return {L: int(c) // 2 for L, c in enumerate(ordered) if L > 0 and c}


def _weighted_mean(dist: dict[int, int], f) -> float:
    total = sum(dist.values())
    return math.fsum(c * f(L) for L, c in dist.items()) / total


def single_path_expectation(n: int, edge_cost: CostVector = CostVector(1.0, 1.0)) -> PhysicalCost:
    """Exact mean (eta, F) of one shortest path between a uniformly random pair."""
    dist = l1_distribution(n)
    phys = {L: to_physical(CostVector(L * edge_cost.loss_db, L * edge_cost.deph_db)) for L in dist}
    return PhysicalCost(_weighted_mean(dist, lambda L: phys[L].eta), _weighted_mean(dist, lambda L: phys[L].fidelity))


def degree_counts(n: int) -> dict[int, int]:
    """Nodes of each degree in an n x n grid."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if n == 2:
        return {2: 4}
    return {2: 4, 3: 4 * (n - 2), 4: (n - 2) ** 2}


def analytic_path_probs(n: int, max_paths: int = 4) -> list[float]:
    """Path-count distribution when a pair gets min(deg A, deg B, max_paths) paths.

    Exact counting over unordered distinct node pairs; entry ``j`` is P_j.
    """
    if max_paths < 1:
        raise ValueError("max_paths must be at least 1")
    deg = degree_counts(n)
    total = math.comb(n * n, 2)
    counts = [0] * (max_paths + 1)
    items = sorted(deg.items())
    for i, (da, ca) in enumerate(items):
        for db, cb in items[i:]:
            pairs = math.comb(ca, 2) if da == db else ca * cb
            counts[min(da, db, max_paths)] += pairs
    return [c / total for c in counts]


def analytic_tradeoff(e1, i: int):
    """(E_i, F_i) after purifying ``i`` identical paths of efficiency ``e1``.

    Each path has F_1 = (E_1 + 1) / 2, i.e. equal loss and dephasing costs.
    Accepts a scalar or an array of E_1 values.
    """
    if not 1 <= i <= 4:
        raise ValueError("i must lie in [1, 4]")
    e1 = np.asarray(e1, dtype=float)
    if np.any(e1 <= 0) or np.any(e1 > 1):
        raise ValueError("E1 must lie in (0, 1]")
    f1 = (e1 + 1.0) / 2.0
    e, f = e1, f1
    for _ in range(i - 1):
        agree = f * f1 + (1.0 - f) * (1.0 - f1)
        e, f = e * e1 * agree, f * f1 / agree
    if e.ndim == 0:
        return float(e), float(f)
    return e, f


def competition_free_expectation(n: int, i: int, edge_cost: CostVector = CostVector(1.0, 1.0)) -> tuple[float, float]:
    """Mean (E_i, F_i) over random pairs when each pair purifies ``i`` shortest-length paths."""
    if edge_cost.loss_db != edge_cost.deph_db:
        raise ValueError("the identical-path curve assumes equal loss and dephasing costs")
    dist = l1_distribution(n)
    curve = {L: analytic_tradeoff(10.0 ** (-L * edge_cost.loss_db / 10.0), i) for L in dist}
    return _weighted_mean(dist, lambda L: curve[L][0]), _weighted_mean(dist, lambda L: curve[L][1])


# extra hops of the j-th edge-disjoint path on a clean grid
PATH_SETS = {
    "off_axis": (0, 0, 4, 4),
    "same_row": (0, 2, 2, 8),
}


def path_set_estimate(n: int, j: int, layout: str, edge_cost: CostVector = CostVector(1.0, 1.0)) -> PhysicalCost:
    """Purified cost of the first ``j`` paths of a layout at mean distance 2n/3.

    The two layouts bracket the multi-path curves: ``off_axis`` is a pair
    differing in both coordinates, ``same_row`` a pair on one grid line.
    """
    if not 1 <= j <= 4:
        raise ValueError("j must lie in [1, 4]")
    L = mean_manhattan(n)
    costs = [
        to_physical(CostVector((L + extra) * edge_cost.loss_db, (L + extra) * edge_cost.deph_db))
        for extra in PATH_SETS[layout][:j]
    ]
    return purify_n(costs)


def path_set_curves(ns: Sequence[int], j: int, edge_cost: CostVector = CostVector(1.0, 1.0)) -> dict[str, list[PhysicalCost]]:
    return {layout: [path_set_estimate(n, j, layout, edge_cost) for n in ns] for layout in PATH_SETS}
