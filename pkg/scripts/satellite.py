"""Static, free-space and purified costs over one satellite pass."""
import argparse
import json
from pathlib import Path

from costnet.satellite import PassConfig, simulate_pass

from _common import write_rows


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--config", type=Path, help="pass config JSON")
    p.add_argument("--out", type=Path, default=Path("results"))
    args = p.parse_args()
    cfg = PassConfig.from_dict(json.loads(args.config.read_text())) if args.config else PassConfig()
    rows = []
    for s in simulate_pass(cfg):
        best = max((s.static, s.freespace), key=lambda c: c.fidelity)
        rows.append({
            "t": s.t,
            "static_eta": s.static.eta, "static_F": s.static.fidelity,
            "freespace_eta": s.freespace.eta, "freespace_F": s.freespace.fidelity,
            "purified_eta": s.purified.eta, "purified_F": s.purified.fidelity,
            "best_single_F": best.fidelity,
        })
    write_rows(args.out / "satellite.csv", rows)


if __name__ == "__main__":
    main()
