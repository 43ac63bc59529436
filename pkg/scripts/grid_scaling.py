"""Fifty competing user pairs on grids of growing size.

Full size (n up to 150 at 500 samples) takes hours on one core; the
defaults are a shorter sweep.
"""
from costnet.bench import ScenarioConfig

from _common import parser, sweep, write_rows


def main():
    p = parser(__doc__.splitlines()[0], samples=500)
    p.add_argument("--sizes", type=int, nargs="+", default=[10, 20, 30, 40, 50, 60])
    p.add_argument("--users", type=int, default=50)
    args = p.parse_args()
    base = ScenarioConfig(kind="grid_scaling", grid_n=max(args.sizes), users=args.users, samples=args.samples, seed=args.seed)
    write_rows(args.out / "grid_scaling.csv", sweep(base, {"grid_n": args.sizes}, args.threads))


if __name__ == "__main__":
    main()
