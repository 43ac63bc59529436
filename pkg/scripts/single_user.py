"""Single-user multi-path routing versus grid size, with the analytic overlays.

Writes ``single_user_sim.csv`` (Monte-Carlo means and path-count probabilities per
n and path budget) and ``single_user_analytic.csv`` (exact one-path expectation,
min-degree path probabilities and the two path-set estimates).
"""
from costnet.bench import ScenarioConfig, analytic_path_probs, path_set_estimate, single_path_expectation

from _common import parser, sweep, write_rows


def main():
    p = parser(__doc__.splitlines()[0], samples=5000)
    p.add_argument("--sizes", type=int, nargs="+", default=list(range(2, 21)))
    args = p.parse_args()
    base = ScenarioConfig(kind="single_user_gridsize", samples=args.samples, seed=args.seed)
    rows = sweep(base, {"routing.max_paths": [1, 2, 3, 4], "grid_n": args.sizes}, args.threads)
    write_rows(args.out / "single_user_sim.csv", rows)

    analytic = []
    for n in args.sizes:
        row = {"grid_n": n}
        one = single_path_expectation(n)
        row.update(exact_eta_1=one.eta, exact_fidelity_1=one.fidelity)
        row.update({f"P{j}": v for j, v in enumerate(analytic_path_probs(n, 4))})
        for j in range(1, 5):
            for layout in ("off_axis", "same_row"):
                est = path_set_estimate(n, j, layout)
                row[f"{layout}_eta_{j}"] = est.eta
                row[f"{layout}_fidelity_{j}"] = est.fidelity
        analytic.append(row)
    write_rows(args.out / "single_user_analytic.csv", analytic)


if __name__ == "__main__":
    main()
