"""Temporal routing of 50 pairs on a 10x10 grid versus the number of time layers.

Also writes the congestion-free asymptote for each path budget, the mean
over pairs of the identical-path purification curve.
"""
from costnet.bench import ScenarioConfig, competition_free_expectation

from _common import parser, sweep, write_rows


def main():
    p = parser(__doc__.splitlines()[0], samples=1000)
    p.add_argument("--depths", type=int, nargs="+", default=list(range(1, 21)))
    p.add_argument("--paths", type=int, nargs="+", default=[1, 2, 3, 4])
    args = p.parse_args()
    base = ScenarioConfig(kind="temporal_depth", samples=args.samples, seed=args.seed)
    rows = sweep(base, {"routing.max_paths": args.paths, "temporal.depth": args.depths}, args.threads)
    write_rows(args.out / "temporal_depth.csv", rows)
    asym = []
    for i in args.paths:
        e, f = competition_free_expectation(10, i)
        asym.append({"max_paths": i, "eta": e, "fidelity": f})
    write_rows(args.out / "asymptotes.csv", asym)


if __name__ == "__main__":
    main()
