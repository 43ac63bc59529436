"""Monte-Carlo scenario runner.

Every sample draws from its own generator seeded by ``(seed, sample_id)``;
pair sampling and percolation use separate child streams so that a
percolation run with ``q = 0`` reproduces the unpercolated baseline.
Samples are independent, so they can be fanned out to worker processes
without changing a single output byte.
"""
from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from ..costalg import CostVector
from ..netmodel import build_grid, percolate, sample_user_pairs
from ..routing import RoutingConfig, RoutingView, route_pairs
from ..temporal import build_meta, route_temporal


class ScenarioKind(str, Enum):
    SINGLE_USER_GRIDSIZE = "single_user_gridsize"
    MULTI_USER = "multi_user"
    PERCOLATION = "percolation"
    GRID_SCALING = "grid_scaling"
    TEMPORAL_DEPTH = "temporal_depth"
    MEMORY_COMPARISON = "memory_comparison"

    @property
    def temporal(self) -> bool:
        return self in (ScenarioKind.TEMPORAL_DEPTH, ScenarioKind.MEMORY_COMPARISON)


_DEFAULT_SAMPLES = {
    ScenarioKind.SINGLE_USER_GRIDSIZE: 5000,
    ScenarioKind.MULTI_USER: 5000,
    ScenarioKind.PERCOLATION: 5000,
    ScenarioKind.GRID_SCALING: 500,
    ScenarioKind.TEMPORAL_DEPTH: 1000,
    ScenarioKind.MEMORY_COMPARISON: 1000,
}

_DEFAULT_USERS = {
    ScenarioKind.SINGLE_USER_GRIDSIZE: 1,
    ScenarioKind.MULTI_USER: 50,
    ScenarioKind.PERCOLATION: 1,
    ScenarioKind.GRID_SCALING: 50,
    ScenarioKind.TEMPORAL_DEPTH: 50,
    ScenarioKind.MEMORY_COMPARISON: 50,
}


def _reject_unknown(cls, data: dict, where: str):
    unknown = set(data) - {f.name for f in fields(cls)}
    if unknown:
        raise ValueError(f"unknown {where} keys: {sorted(unknown)}")


@dataclass(frozen=True)
class TemporalSettings:
    depth: int = 5
    memory_cost_db: tuple[float, float] = (0.0, 0.0)
    async_epsilon: Optional[float] = None
    memories_enabled: bool = True

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("temporal.depth must be at least 1")
        CostVector(*self.memory_cost_db)
        if self.async_epsilon is not None and not self.async_epsilon > 0:
            raise ValueError("temporal.async_epsilon must be positive")


@dataclass(frozen=True)
class ScenarioConfig:
    kind: ScenarioKind = ScenarioKind.SINGLE_USER_GRIDSIZE
    grid_n: int = 10
    edge_cost: tuple[float, float] = (1.0, 1.0)
    users: Optional[int] = None
    samples: Optional[int] = None
    seed: int = 0
    percolation: float = 0.0
    routing: RoutingConfig = field(default_factory=RoutingConfig)
    temporal: TemporalSettings = field(default_factory=TemporalSettings)

    def __post_init__(self):
        object.__setattr__(self, "kind", ScenarioKind(self.kind))
        if self.users is None:
            object.__setattr__(self, "users", _DEFAULT_USERS[self.kind])
        if self.samples is None:
            object.__setattr__(self, "samples", _DEFAULT_SAMPLES[self.kind])
        if self.grid_n < 2:
            raise ValueError("grid_n must be at least 2")
        CostVector(*self.edge_cost)
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.users < 1 or 2 * self.users > self.grid_n**2:
            raise ValueError(f"cannot place {self.users} user pairs on a {self.grid_n}x{self.grid_n} grid")
        if self.kind in (ScenarioKind.SINGLE_USER_GRIDSIZE, ScenarioKind.PERCOLATION) and self.users != 1:
            raise ValueError(f"{self.kind.value} scenarios route a single user pair")
        if not 0.0 <= self.percolation <= 1.0:
            raise ValueError("percolation must lie in [0, 1]")
        if self.percolation > 0 and self.kind is not ScenarioKind.PERCOLATION:
            raise ValueError("percolation is only used by percolation scenarios")

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioConfig":
        _reject_unknown(cls, data, "scenario")
        data = dict(data)
        if "routing" in data:
            _reject_unknown(RoutingConfig, data["routing"], "routing")
            r = dict(data["routing"])
            if r.get("threshold") in ("inf", None):
                r["threshold"] = math.inf
            data["routing"] = RoutingConfig(**r)
        if "temporal" in data:
            _reject_unknown(TemporalSettings, data["temporal"], "temporal")
            t = dict(data["temporal"])
            if "memory_cost_db" in t:
                t["memory_cost_db"] = tuple(float(x) for x in t["memory_cost_db"])
            data["temporal"] = TemporalSettings(**t)
        if "edge_cost" in data:
            data["edge_cost"] = tuple(float(x) for x in data["edge_cost"])
        return cls(**data)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kind"] = self.kind.value
        d["edge_cost"] = list(self.edge_cost)
        d["temporal"]["memory_cost_db"] = list(self.temporal.memory_cost_db)
        if math.isinf(self.routing.threshold):
            d["routing"]["threshold"] = "inf"
        return d


@dataclass(frozen=True)
class SampleRecord:
    sample_id: int
    pair_id: int
    src: int
    dst: int
    path_count: int
    lengths: tuple[int, ...] = ()
    eta: Optional[float] = None
    fidelity: Optional[float] = None
    layers_used: Optional[int] = None
    last: bool = False
    manhattan: Optional[float] = None

    @property
    def found(self) -> bool:
        return self.path_count > 0


def _sample_streams(seed: int, sample_id: int):
    pair_seq, perc_seq = np.random.SeedSequence(seed, spawn_key=(sample_id,)).spawn(2)
    return np.random.default_rng(pair_seq), np.random.default_rng(perc_seq)


def _records(sample_id, outcomes, base, lengths_of, layers):
    out = []
    m = len(outcomes)
    for i, o in enumerate(outcomes):
        e2e = o.end_to_end
        out.append(
            SampleRecord(
                sample_id=sample_id,
                pair_id=i,
                src=o.pair.src,
                dst=o.pair.dst,
                path_count=o.path_count,
                lengths=tuple(lengths_of(p) for p in o.paths),
                eta=None if e2e is None else e2e.eta,
                fidelity=None if e2e is None else e2e.fidelity,
                layers_used=None if layers is None else layers[i],
                last=i == m - 1,
                manhattan=base.manhattan(o.pair.src, o.pair.dst),
            )
        )
    return out


def _run_samples(config: ScenarioConfig, sample_ids: Sequence[int]) -> list[SampleRecord]:
    base = build_grid(config.grid_n, CostVector(*config.edge_cost), has_memory=config.kind.temporal and config.temporal.memories_enabled)
    routing = config.routing
    records = []
    for sample_id in sample_ids:
        pair_rng, perc_rng = _sample_streams(config.seed, sample_id)
        g = percolate(base, config.percolation, perc_rng) if config.kind is ScenarioKind.PERCOLATION else base
        pairs = sample_user_pairs(g, config.users, pair_rng)
        if config.kind.temporal:
            ts = config.temporal
            meta = build_meta(
                g,
                ts.depth,
                pairs,
                memory_cost=CostVector(*ts.memory_cost_db),
                epsilon=ts.async_epsilon,
                memories=ts.memories_enabled,
                weights=(routing.w_loss, routing.w_deph),
            )
            result = route_temporal(meta, routing)
            records.extend(_records(sample_id, result.outcomes, base, meta.hops, result.pair_depth))
        else:
            view = RoutingView(g, routing.w_loss, routing.w_deph)
            outcomes = route_pairs(view, pairs, routing)
            records.extend(_records(sample_id, outcomes, base, len, None))
    return records


def run_scenario(config: ScenarioConfig, workers: int = 1) -> list[SampleRecord]:
    """Run every sample of a scenario; records come back in (sample, pair) order."""
    ids = list(range(config.samples))
    if workers <= 1 or len(ids) < 2:
        return _run_samples(config, ids)
    chunks = [c.tolist() for c in np.array_split(np.array(ids), min(workers * 4, len(ids))) if len(c)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_run_samples, [config] * len(chunks), chunks)
        return [r for part in parts for r in part]


def run_sweep(config: ScenarioConfig, param: str, values: Sequence, workers: int = 1) -> dict:
    """Run ``config`` once per value of a top-level or dotted (``routing.max_paths``) parameter."""
    out = {}
    for value in values:
        out[value] = run_scenario(with_param(config, param, value), workers)
    return out


def with_param(config: ScenarioConfig, param: str, value) -> ScenarioConfig:
    if "." in param:
        group, key = param.split(".", 1)
        return replace(config, **{group: replace(getattr(config, group), **{key: value})})
    return replace(config, **{param: value})


# CSV

def csv_header(max_paths: int = 4) -> list[str]:
    lens = [f"len{i}" for i in range(1, max(4, max_paths) + 1)]
    return ["sample_id", "pair_id", "src", "dst", "path_count", *lens, "eta", "fidelity", "layers_used"]


def _fmt(x) -> str:
    return "" if x is None else repr(float(x))


def write_csv(records: Sequence[SampleRecord], fh, max_paths: int = 4):
    header = csv_header(max_paths)
    n_len = len(header) - 8
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header)
    for r in records:
        lens = [str(x) for x in r.lengths] + [""] * (n_len - len(r.lengths))
        writer.writerow([r.sample_id, r.pair_id, r.src, r.dst, r.path_count, *lens, _fmt(r.eta), _fmt(r.fidelity), "" if r.layers_used is None else r.layers_used])


def records_to_csv(records: Sequence[SampleRecord], max_paths: int = 4) -> str:
    buf = io.StringIO()
    write_csv(records, buf, max_paths)
    return buf.getvalue()


def read_csv(fh, grid_n: Optional[int] = None) -> list[SampleRecord]:
    """Parse records written by :func:`write_csv`.

    The CSV carries no coordinates; pass ``grid_n`` to restore Manhattan
    distances.  The ``last`` flag is rebuilt from the pair count per sample.
    """
    rows = list(csv.DictReader(fh))
    per_sample: dict[int, int] = {}
    for row in rows:
        s = int(row["sample_id"])
        per_sample[s] = max(per_sample.get(s, 0), int(row["pair_id"]) + 1)
    out = []
    for row in rows:
        lens = tuple(int(row[k]) for k in row if k.startswith("len") and row[k])
        s, p = int(row["sample_id"]), int(row["pair_id"])
        src, dst = int(row["src"]), int(row["dst"])
        manhattan = None
        if grid_n:
            (ys, xs), (yd, xd) = divmod(src, grid_n), divmod(dst, grid_n)
            manhattan = float(abs(xs - xd) + abs(ys - yd))
        out.append(
            SampleRecord(
                s, p, src, dst, int(row["path_count"]), lens,
                float(row["eta"]) if row["eta"] else None,
                float(row["fidelity"]) if row["fidelity"] else None,
                int(row["layers_used"]) if row["layers_used"] else None,
                p == per_sample[s] - 1,
                manhattan,
            )
        )
    return out
