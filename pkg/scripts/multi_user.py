"""Multi-user congestion on a 10x10 grid versus the number of user pairs."""
from costnet.bench import ScenarioConfig

from _common import parser, sweep, write_rows


def main():
    p = parser(__doc__, samples=5000)
    p.add_argument("--users", type=int, nargs="+", default=list(range(1, 51)))
    p.add_argument("--grid", type=int, default=10)
    args = p.parse_args()
    base = ScenarioConfig(kind="multi_user", grid_n=args.grid, users=1, samples=args.samples, seed=args.seed)
    write_rows(args.out / "multi_user.csv", sweep(base, {"users": args.users}, args.threads))


if __name__ == "__main__":
    main()
