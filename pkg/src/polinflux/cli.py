"""Command-line interface.

Subcommands: ``influence``, ``equilibrium``, ``compare``, ``sweep``,
``simulate``.  Exit codes: 0 success, 2 input/validation error,
3 numerical failure.  CSV output carries full round-trip precision
(17 significant digits); the stdout table is rounded to 4 decimals.
With ``--out`` the report commands also render a figure next to the CSV.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import affective, comparative, oracle
from .equilibrium import check_interiority, solve_equilibrium
from .errors import InputError, NumericalError, PolinfluxError
from .influence import compute_influence
from .model import validate_params
from .scenario import Scenario, load_scenario


def _format_csv_value(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def _format_table_value(value) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.4f}"
    return str(value)


def _write_csv(rows, comments, stream) -> None:
    for comment in comments:
        stream.write(f"# {comment}\n")
    for row in rows:
        stream.write(",".join(_format_csv_value(v) for v in row) + "\n")


def _print_table(rows, comments, stream=sys.stdout) -> None:
    formatted = [[_format_table_value(v) for v in row] for row in rows]
    widths = [
        max(len(row[col]) for row in formatted) for col in range(len(formatted[0]))
    ]
    for row in formatted:
        stream.write("  ".join(cell.rjust(w) for cell, w in zip(row, widths)) + "\n")
    for comment in comments:
        stream.write(f"{comment}\n")


def _emit(args, rows, comments, figure=None) -> None:
    """Write the report: CSV to --out (plus figure), summary table to stdout."""
    if args.out:
        out_path = Path(args.out)
        with out_path.open("w", encoding="utf-8") as stream:
            _write_csv(rows, comments, stream)
        if figure is not None:
            figure(out_path.with_suffix(".png"))
        _print_table(rows, comments)
        print(f"wrote {out_path}")
    elif args.format == "csv":
        _write_csv(rows, comments, sys.stdout)
    else:
        _print_table(rows, comments)


def _parse_grid(spec: str) -> np.ndarray:
    try:
        start_s, stop_s, steps_s = spec.split(":")
        start, stop, steps = float(start_s), float(stop_s), int(steps_s)
    except ValueError as exc:
        raise InputError(f"grid {spec!r} must look like start:stop:steps") from exc
    if steps < 1:
        raise InputError(f"grid {spec!r} needs at least one step")
    return np.linspace(start, stop, steps)


def _load(args) -> Scenario:
    return load_scenario(args.scenario)


def _validate_or_die(scenario: Scenario, mode: str) -> None:
    report = validate_params(scenario.legislature, scenario.params, mode)
    for note in report.warnings():
        print(f"warning: {note}", file=sys.stderr)
    if report.fatal:
        raise InputError("scenario failed validation; see warnings above")


def cmd_influence(args) -> int:
    scenario = _load(args)
    _validate_or_die(scenario, args.mode)
    legislature, params = scenario.legislature, scenario.params
    influence = compute_influence(legislature, params.beta)
    report = validate_params(legislature, params, args.mode)
    comments = [
        f"I_F={influence.party_F_sum:.17g}",
        f"I_A={influence.party_A_sum:.17g}",
        f"beta*spectral_radius={params.beta * report.spectral_radius:.17g}",
    ]
    if args.mode == "affective":
        modified = affective.modified_influence(legislature, params)
        rows = [["legislator", "influence", "modified_influence"]]
        rows += [
            [label, float(base), float(mod)]
            for label, base, mod in zip(
                legislature.labels, modified.unmodified.entries, modified.modified.entries
            )
        ]
        comments += [
            f"omega_F={modified.omega_F:.17g}",
            f"omega_A={modified.omega_A:.17g}",
            f"alpha_hat={modified.alpha_hat:.17g}",
        ]
    else:
        rows = [["legislator", "influence"]]
        rows += [
            [label, float(value)]
            for label, value in zip(legislature.labels, influence.entries)
        ]
    _emit(args, rows, comments)
    return 0


def cmd_equilibrium(args) -> int:
    scenario = _load(args)
    _validate_or_die(scenario, args.mode)
    legislature, params, utility = scenario.legislature, scenario.params, scenario.utility
    if args.mode == "affective":
        result = affective.solve_affective_equilibrium(legislature, params, utility)
    else:
        result = solve_equilibrium(legislature, params, utility)
    interiority = check_interiority(legislature, params, utility, mode=args.mode)
    rows = [["legislator", "investment", "probability"]]
    rows += [
        [label, float(m), float(q)]
        for label, m, q in zip(legislature.labels, result.investments, result.probabilities)
    ]
    comments = [
        f"vote_share={result.vote_share:.17g}",
        f"shadow_price={result.shadow_price:.17g}",
        f"interiority_passes={str(interiority.passes).lower()}",
        f"q_high_F={interiority.q_high_F:.17g} q_low_F={interiority.q_low_F:.17g}",
        f"q_high_A={interiority.q_high_A:.17g} q_low_A={interiority.q_low_A:.17g}",
    ]
    if not interiority.passes:
        print("warning: interiority bounds violated; results are extrapolations",
              file=sys.stderr)
    _emit(args, rows, comments)
    return 0


def cmd_compare(args) -> int:
    scenario = _load(args)
    _validate_or_die(scenario, "baseline")
    if not scenario.has_comparison:
        raise InputError("compare needs added_edges in the scenario file")
    legislature, params, utility = scenario.legislature, scenario.params, scenario.utility
    stronger = scenario.comparison_legislature()
    sigmas = (
        _parse_grid(args.sigma_grid) if args.sigma_grid else np.array([params.sigma])
    )
    if np.any(sigmas < 0.0):
        raise InputError("sigma grid must be non-negative")

    reports = [
        comparative.analyze_network_change(
            legislature, stronger, replace(params, sigma=float(s)), utility
        )
        for s in sigmas
    ]
    first = reports[0]
    rows: list[list] = [["quantity", *legislature.labels, "total"]]
    rows.append(
        ["delta_influence", *first.delta_influence, float(first.delta_influence.sum())]
    )
    rows.append(
        ["delta_investment", *first.delta_investments, float(first.delta_investments.sum())]
    )
    for sigma, report in zip(sigmas, reports):
        rows.append(
            [
                f"delta_probability(sigma={sigma:g})",
                *report.delta_probabilities,
                report.delta_vote_share,
            ]
        )
    marker = (
        comparative.ALWAYS_BENEFICIAL if first.always_beneficial else first.sigma_hat
    )
    rows.append(["sigma_hat", *[""] * legislature.n, marker])
    comments = [f"investment_effect={first.investment_effect:.17g}"]

    def figure(path):
        from .plotting import render_compare_figure

        render_compare_figure(first, path)

    _emit(args, rows, comments, figure=figure)
    return 0


def cmd_sweep(args) -> int:
    scenario = _load(args)
    if bool(args.sigma_grid) == bool(args.alpha_grid):
        raise InputError("sweep needs exactly one of --sigma-grid or --alpha-grid")
    legislature, params, utility = scenario.legislature, scenario.params, scenario.utility
    if args.sigma_grid:
        _validate_or_die(scenario, args.mode)
        variable = "sigma"
        grid = _parse_grid(args.sigma_grid)
        if np.any(grid < 0.0):
            raise InputError("sigma grid must be non-negative")
        columns = {"sigma": [], "Q_star": [], "dQ_dsigma": []}
        for sigma in grid:
            point = replace(params, sigma=float(sigma))
            if args.mode == "affective":
                result = affective.solve_affective_equilibrium(legislature, point, utility)
                slope = affective.dQ_dsigma(legislature, point)
            else:
                result = solve_equilibrium(legislature, point, utility)
                slope = comparative.dQ_dsigma(legislature, point)
            columns["sigma"].append(float(sigma))
            columns["Q_star"].append(result.vote_share)
            columns["dQ_dsigma"].append(slope)
    else:
        _validate_or_die(scenario, "affective")
        variable = "alpha"
        grid = _parse_grid(args.alpha_grid)
        alpha_hat = affective.alpha_ceiling(legislature, params)
        if np.any(grid < 0.0) or np.any(grid >= alpha_hat):
            raise InputError(
                f"alpha grid must lie in [0, alpha_hat) with alpha_hat={alpha_hat:.6g}"
            )
        columns = {
            "alpha": [], "omega_F": [], "omega_A": [],
            "I_alpha_F": [], "I_alpha_A": [], "Q_star": [], "dQ_dalpha": [],
        }
        for alpha in grid:
            point = replace(params, alpha=float(alpha))
            modified = affective.modified_influence(legislature, point)
            result = affective.solve_affective_equilibrium(legislature, point, utility)
            columns["alpha"].append(float(alpha))
            columns["omega_F"].append(modified.omega_F)
            columns["omega_A"].append(modified.omega_A)
            columns["I_alpha_F"].append(modified.modified.party_F_sum)
            columns["I_alpha_A"].append(modified.modified.party_A_sum)
            columns["Q_star"].append(result.vote_share)
            columns["dQ_dalpha"].append(affective.dQ_dalpha(legislature, point, utility))

    header = list(columns)
    rows: list[list] = [header]
    for i in range(len(grid)):
        rows.append([columns[name][i] for name in header])

    def figure(path):
        from .plotting import render_sweep_figure

        render_sweep_figure(columns, variable, path)

    _emit(args, rows, [], figure=figure)
    return 0


def cmd_simulate(args) -> int:
    scenario = _load(args)
    _validate_or_die(scenario, args.mode)
    legislature, params, utility = scenario.legislature, scenario.params, scenario.utility
    config = oracle.SimulationConfig(trials=args.trials, seed=args.seed, mode=args.mode)
    if args.mode == "affective":
        result = affective.solve_affective_equilibrium(legislature, params, utility)
    else:
        result = solve_equilibrium(legislature, params, utility)
    frequencies = oracle.monte_carlo_frequencies(
        legislature, params, result.investments, config, utility
    )
    analytic = result.probabilities
    std_errors = np.sqrt(analytic * (1.0 - analytic) / config.trials)
    within = np.abs(frequencies - analytic) <= 3.0 * std_errors
    rows: list[list] = [["legislator", "q_analytic", "q_empirical", "std_error", "within_3se"]]
    rows += [
        [label, float(qa), float(qe), float(se), bool(ok)]
        for label, qa, qe, se, ok in zip(
            legislature.labels, analytic, frequencies, std_errors, within
        )
    ]
    comments = [
        f"seed={config.seed}",
        f"trials={config.trials}",
        f"generator={oracle.GENERATOR_ID}",
    ]

    def figure(path):
        from .plotting import render_simulate_figure

        render_simulate_figure(legislature.labels, analytic, frequencies, std_errors, path)

    _emit(args, rows, comments, figure=figure)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polinflux",
        description="Influence, equilibrium, and polarization analysis of a "
        "two-party legislature network",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--scenario", required=True, help="path to a scenario JSON file")
        p.add_argument("--mode", choices=["baseline", "affective"], default="baseline")
        p.add_argument("--out", help="write CSV (and a figure for report commands) here")
        p.add_argument("--format", choices=["csv", "table"], default="table",
                       help="stdout format when --out is not given")

    p = sub.add_parser("influence", help="per-legislator influence and party sums")
    common(p)
    p.set_defaults(func=cmd_influence)

    p = sub.add_parser("equilibrium", help="optimal investments and voting probabilities")
    common(p)
    p.set_defaults(func=cmd_equilibrium)

    p = sub.add_parser("compare", help="equilibrium deltas after strengthening the network")
    common(p)
    p.add_argument("--sigma-grid", help="sigma values start:stop:steps (default: scenario sigma)")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sweep", help="vote share along a sigma or alpha grid")
    common(p)
    p.add_argument("--sigma-grid", help="sigma grid start:stop:steps")
    p.add_argument("--alpha-grid", help="alpha grid start:stop:steps (affective mode)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("simulate", help="Monte-Carlo check of voting probabilities")
    common(p)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except PolinfluxError as exc:  # pragma: no cover - future error classes
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
