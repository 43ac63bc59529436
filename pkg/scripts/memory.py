"""Mean time depth reached with and without quantum memories (T = 20, 50 pairs)."""
from costnet.bench import ScenarioConfig, TemporalSettings

from _common import parser, sweep, write_rows


def main():
    p = parser(__doc__, samples=1000)
    p.add_argument("--depth", type=int, default=20)
    args = p.parse_args()
    base = ScenarioConfig(kind="memory_comparison", samples=args.samples, seed=args.seed, temporal=TemporalSettings(depth=args.depth))
    rows = sweep(base, {"temporal.memories_enabled": [True, False], "routing.max_paths": [1, 2, 3, 4]}, args.threads)
    write_rows(args.out / "memory.csv", rows)


if __name__ == "__main__":
    main()
