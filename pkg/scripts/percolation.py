"""Single-user routing on a percolated 10x10 grid versus edge-removal probability."""
import numpy as np

from costnet.bench import ScenarioConfig

from _common import parser, sweep, write_rows


def main():
    p = parser(__doc__, samples=5000)
    p.add_argument("--steps", type=int, default=21, help="number of q values in [0, 1]")
    args = p.parse_args()
    qs = [round(float(q), 6) for q in np.linspace(0.0, 1.0, args.steps)]
    base = ScenarioConfig(kind="percolation", grid_n=10, samples=args.samples, seed=args.seed)
    write_rows(args.out / "percolation.csv", sweep(base, {"percolation": qs}, args.threads))


if __name__ == "__main__":
    main()
