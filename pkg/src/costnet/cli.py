"""Command-line entry point: ``costnet {simulate,reduce,curves,satellite}``.

Every run writes a manifest next to its outputs with the config echo, seed,
tool version, SHA-256 of each output file and the wall-clock duration.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import json
import sys
import time
from dataclasses import asdict
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .bench import ScenarioConfig, analytic_tradeoff, run_scenario, summarize, write_csv
from .netmodel import NetworkGraph
from .reduction import ReductionConfig, reduce_fixpoint
from .satellite import PassConfig, simulate_pass


class CliError(Exception):
    pass


def _load_json(path) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise CliError(f"{path} must hold a JSON object")
    return data


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _write_manifest(path: Path, command: str, config, seed, outputs: Sequence[Path], started: float):
    manifest = {
        "command": command,
        "version": __version__,
        "config": config,
        "seed": seed,
        "outputs": {p.name: _sha256(p) for p in outputs},
        "duration_s": time.perf_counter() - started,
    }
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _cmd_simulate(args, started: float):
    data = _load_json(args.config)
    if args.seed is not None:
        data["seed"] = args.seed
    config = ScenarioConfig.from_dict(data)
    records = run_scenario(config, workers=args.threads)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.format == "csv":
        rec_path = out / "records.csv"
        with open(rec_path, "w", newline="") as fh:
            write_csv(records, fh, config.routing.max_paths)
    else:
        rec_path = out / "records.json"
        rec_path.write_text(json.dumps([asdict(r) for r in records]) + "\n")
    summary_path = out / "summary.json"
    summary = {"config": config.to_dict(), "seed": config.seed, "summary": summarize(records, config.routing.max_paths).to_dict()}
    summary_path.write_text(json.dumps(summary, indent=2) + "\n")
    _write_manifest(out / "manifest.json", "simulate", config.to_dict(), config.seed, [rec_path, summary_path], started)


def _cmd_reduce(args, started: float):
    opts = _load_json(args.config) if args.config else {}
    unknown = set(opts) - {"threshold", "terminals"}
    if unknown:
        raise CliError(f"unknown reduction config keys: {sorted(unknown)}")
    if args.terminals is not None:
        opts["terminals"] = args.terminals
    if args.threshold is not None:
        opts["threshold"] = args.threshold
    threshold = opts.get("threshold", "inf")
    config = ReductionConfig(float(threshold), frozenset(opts.get("terminals", ())))
    g = NetworkGraph.from_dict(_load_json(args.graph))
    reduced = reduce_fixpoint(g, config)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(reduced.to_dict(), indent=2) + "\n")
    echo = {"graph": str(args.graph), "threshold": str(config.threshold), "terminals": sorted(config.terminals)}
    _write_manifest(out.with_name(out.name + ".manifest.json"), "reduce", echo, None, [out], started)


def _cmd_curves(args, started: float):
    if args.points < 2:
        raise CliError("--points must be at least 2")
    e1 = np.linspace(1.0 / args.points, 1.0, args.points)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    rows = []
    for i in range(1, args.max_paths + 1):
        e, f = analytic_tradeoff(e1, i)
        rows.extend({"paths": i, "E1": float(a), "E": float(b), "F": float(c)} for a, b, c in zip(e1, e, f))
    if args.format == "csv":
        with open(out, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["paths", "E1", "E", "F"])
            for r in rows:
                writer.writerow([r["paths"], repr(r["E1"]), repr(r["E"]), repr(r["F"])])
    else:
        out.write_text(json.dumps(rows) + "\n")
    echo = {"max_paths": args.max_paths, "points": args.points}
    _write_manifest(out.with_name(out.name + ".manifest.json"), "curves", echo, None, [out], started)


def _cmd_satellite(args, started: float):
    data = _load_json(args.config) if args.config else {}
    config = PassConfig.from_dict(data)
    samples = simulate_pass(config)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    fields = ["t", "static_eta", "static_F", "freespace_eta", "freespace_F", "purified_eta", "purified_F"]
    rows = [
        [s.t, s.static.eta, s.static.fidelity, s.freespace.eta, s.freespace.fidelity, s.purified.eta, s.purified.fidelity]
        for s in samples
    ]
    if args.format == "csv":
        with open(out, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(fields)
            for row in rows:
                writer.writerow([row[0], *(repr(float(x)) for x in row[1:])])
    else:
        out.write_text(json.dumps([dict(zip(fields, row)) for row in rows]) + "\n")
    _write_manifest(out.with_name(out.name + ".manifest.json"), "satellite", data, None, [out], started)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="costnet", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_help):
        p.add_argument("--out", required=True, help=out_help)
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("simulate", help="run a Monte-Carlo scenario")
    p.add_argument("--config", required=True, help="scenario config JSON")
    p.add_argument("--seed", type=int, help="overrides the config seed")
    p.add_argument("--threads", type=int, default=1, help="worker processes; results do not depend on it")
    common(p, "output directory")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("reduce", help="reduce a graph JSON to its fixpoint")
    p.add_argument("graph", help="graph JSON")
    p.add_argument("--config", help="JSON with threshold and terminals")
    p.add_argument("--terminals", type=int, nargs="+")
    p.add_argument("--threshold", type=float)
    p.add_argument("--out", required=True, help="reduced graph JSON")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("curves", help="identical-path purification curves")
    p.add_argument("--max-paths", type=int, default=4, choices=range(1, 5))
    p.add_argument("--points", type=int, default=100)
    common(p, "output file")
    p.set_defaults(func=_cmd_curves)

    p = sub.add_parser("satellite", help="single satellite pass")
    p.add_argument("--config", help="pass config JSON")
    common(p, "output file")
    p.set_defaults(func=_cmd_satellite)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return 2
    started = time.perf_counter()
    try:
        args.func(args, started)
    except (CliError, ValueError, KeyError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
