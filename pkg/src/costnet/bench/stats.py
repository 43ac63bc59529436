"""Aggregate statistics over sample records."""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from .scenario import SampleRecord


@dataclass(frozen=True)
class SummaryStats:
    n_records: int
    n_samples: int
    counts: tuple[int, ...]
    P: tuple[float, ...]
    P_P: float
    mean_eta: Optional[float]
    mean_fidelity: Optional[float]
    mean_eta_unconditional: float
    last_pair_success: float
    mean_manhattan: Optional[float]
    conditional_manhattan: Optional[float]
    mean_shortest: Optional[float]
    mean_depth: Optional[float] = None
    eta_sem: Optional[float] = None
    fidelity_sem: Optional[float] = None
    last_pair_success_sem: Optional[float] = None
    conditional_manhattan_sem: Optional[float] = None

    @property
    def P0(self) -> float:
        return self.P[0]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["counts"] = list(self.counts)
        d["P"] = list(self.P)
        return d


def _mean_sem(values) -> tuple[Optional[float], Optional[float]]:
    if len(values) == 0:
        return None, None
    a = np.asarray(values, dtype=float)
    sem = float(a.std(ddof=1) / math.sqrt(len(a))) if len(a) > 1 else 0.0
    return float(a.mean()), sem


def summarize(records: Sequence[SampleRecord], max_paths: Optional[int] = None) -> SummaryStats:
    """Path-count distribution and conditional/unconditional means.

    Conditional means run over records with at least one path.  ``P`` has
    one entry per path count ``0..max_paths`` (default: the largest count
    seen).
    """
    if not records:
        raise ValueError("no records to summarize")
    top = max(r.path_count for r in records)
    if max_paths is None:
        max_paths = top
    elif top > max_paths:
        raise ValueError(f"record with {top} paths exceeds max_paths={max_paths}")
    n = len(records)
    counts = [0] * (max_paths + 1)
    for r in records:
        counts[r.path_count] += 1
    P = tuple(c / n for c in counts)
    found = [r for r in records if r.found]
    mean_eta, eta_sem = _mean_sem([r.eta for r in found])
    mean_f, f_sem = _mean_sem([r.fidelity for r in found])
    last = [float(r.found) for r in records if r.last]
    last_rate, last_sem = _mean_sem(last)
    manhattan = [r.manhattan for r in records if r.manhattan is not None]
    cond_man, cond_man_sem = _mean_sem([r.manhattan for r in found if r.manhattan is not None])

    depth_by_sample: dict[int, int] = defaultdict(int)
    temporal = False
    for r in records:
        if r.layers_used is not None:
            temporal = True
            depth_by_sample[r.sample_id] = max(depth_by_sample[r.sample_id], r.layers_used)
    mean_depth = float(np.mean(list(depth_by_sample.values()))) if temporal else None

    return SummaryStats(
        n_records=n,
        n_samples=len({r.sample_id for r in records}),
        counts=tuple(counts),
        P=P,
        P_P=sum(counts[2:]) / n,
        mean_eta=mean_eta,
        mean_fidelity=mean_f,
        mean_eta_unconditional=math.fsum(r.eta for r in found) / n,
        last_pair_success=last_rate if last_rate is not None else float("nan"),
        mean_manhattan=float(np.mean(manhattan)) if manhattan else None,
        conditional_manhattan=cond_man,
        mean_shortest=_mean_sem([r.lengths[0] for r in found])[0],
        mean_depth=mean_depth,
        eta_sem=eta_sem,
        fidelity_sem=f_sem,
        last_pair_success_sem=last_sem,
        conditional_manhattan_sem=cond_man_sem,
    )


def sample_depths(records: Sequence[SampleRecord]) -> dict[int, int]:
    """Time depth reached per sample (temporal runs)."""
    out: dict[int, int] = defaultdict(int)
    for r in records:
        if r.layers_used is None:
            raise ValueError("records carry no layer information")
        out[r.sample_id] = max(out[r.sample_id], r.layers_used)
    return dict(out)
