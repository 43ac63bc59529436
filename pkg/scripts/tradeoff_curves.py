"""Congestion-free efficiency/fidelity curves for 1 to 4 purified identical paths."""
import argparse
from pathlib import Path

import numpy as np

from costnet.bench import analytic_tradeoff

from _common import write_rows


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--out", type=Path, default=Path("results"))
    args = p.parse_args()
    e1 = np.geomspace(1e-4, 1.0, args.points)
    rows = []
    for i in range(1, 5):
        e, f = analytic_tradeoff(e1, i)
        rows.extend({"paths": i, "E1": a, "E": b, "F": c} for a, b, c in zip(e1, e, f))
    write_rows(args.out / "tradeoff_curves.csv", rows)


if __name__ == "__main__":
    main()
