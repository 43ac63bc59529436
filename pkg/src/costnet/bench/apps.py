"""Application-level figures of merit computed from routing records."""
from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from .scenario import SampleRecord


def binary_entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError("argument must lie in [0, 1]")
    if x in (0.0, 1.0):
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def secret_key_rate(F: float, R: float) -> float:
    """Key rate ``R (1 - H(1 - F))`` for Bell pairs of fidelity F arriving at rate R."""
    if not 0.5 <= F <= 1.0:
        raise ValueError("F must lie in [0.5, 1]")
    if R < 0:
        raise ValueError("R must be non-negative")
    return R * (1.0 - binary_entropy(1.0 - F))


def _pairs_per_sample(records: Sequence[SampleRecord]) -> int:
    return len({r.pair_id for r in records})


def network_rates(records: Sequence[SampleRecord], tau: float) -> tuple[float, float]:
    """Per-user and whole-network Bell-pair rates over a schedule of depth ``tau``.

    ``R_u = (1 - P_0) <eta> / tau`` with the conditional mean efficiency;
    ``R_n = M R_u`` with M the number of user pairs per sample.
    """
    if tau < 1:
        raise ValueError("tau must be at least 1")
    if not records:
        raise ValueError("no records")
    found = [r.eta for r in records if r.found]
    p0 = 1.0 - len(found) / len(records)
    mean_eta = math.fsum(found) / len(found) if found else 0.0
    r_u = (1.0 - p0) * mean_eta / tau
    return r_u, _pairs_per_sample(records) * r_u


def threshold_rate(records: Sequence[SampleRecord], F_th: float, R: float = 1.0) -> float:
    """``R`` times the fraction of all records delivering fidelity at least ``F_th``."""
    if F_th < 0.5:
        raise ValueError("F_th must be at least 0.5")
    if not records:
        raise ValueError("no records")
    hits = sum(1 for r in records if r.found and r.fidelity >= F_th)
    return R * hits / len(records)


def unification_advantage(scaling: Callable[[float], float], N: int, n: int) -> float:
    """Speed-up of one unified N*n-qubit computer over N separate n-qubit ones."""
    if N < 1 or n < 1:
        raise ValueError("N and n must be at least 1")
    return scaling(N * n) / (N * scaling(n))


def heatmap_bins(records: Sequence[SampleRecord], bins=50, ranges=((0.0, 1.0), (0.5, 1.0))):
    """Normalized 2-D histogram of (eta, F) over records with at least one path.

    Returns ``(density, eta_edges, f_edges)``; ``density`` sums to one.
    """
    pts = [(r.eta, r.fidelity) for r in records if r.found]
    if not pts:
        raise ValueError("no record has a path")
    b = (bins, bins) if np.isscalar(bins) else tuple(bins)
    if min(b) < 1:
        raise ValueError("need at least one bin per axis")
    eta, fid = np.array(pts).T
    h, ex, ef = np.histogram2d(eta, fid, bins=b, range=ranges)
    return h / h.sum(), ex, ef
