"""Shared plumbing for the experiment scripts."""
from __future__ import annotations

import argparse
import csv
import time
from pathlib import Path

from costnet.bench import ScenarioConfig, run_scenario, summarize, with_param

SUMMARY_FIELDS = [
    "P0", "P1", "P2", "P3", "P4", "P_P",
    "mean_eta", "mean_fidelity", "mean_eta_unconditional",
    "last_pair_success", "mean_manhattan", "conditional_manhattan", "mean_shortest", "mean_depth",
]


def parser(description: str, samples: int) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(description=description)
    p.add_argument("--samples", type=int, default=samples)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", type=Path, default=Path("results"))
    return p


def summary_row(records, max_paths: int = 4) -> dict:
    s = summarize(records, max_paths=max(4, max_paths))
    row = {f"P{j}": s.P[j] for j in range(5)}
    for k in SUMMARY_FIELDS[5:]:
        row[k] = getattr(s, k)
    return row


def sweep(base: ScenarioConfig, axes: dict, threads: int = 1, log=True) -> list[dict]:
    """Run the cartesian product of ``axes`` ({param: values}) and summarise each point."""
    names = list(axes)
    points = [[]]
    for name in names:
        points = [p + [v] for p in points for v in axes[name]]
    rows = []
    for values in points:
        cfg = base
        for name, value in zip(names, values):
            cfg = with_param(cfg, name, value)
        started = time.perf_counter()
        row = dict(zip(names, values))
        row.update(summary_row(run_scenario(cfg, workers=threads), cfg.routing.max_paths))
        rows.append(row)
        if log:
            print(", ".join(f"{k}={v}" for k, v in zip(names, values)), f"({time.perf_counter() - started:.1f}s)", flush=True)
    return rows


def write_rows(path: Path, rows: list[dict]):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: "" if v is None else v for k, v in row.items()})
    print(f"wrote {path}")
