"""Command-line front end: JSON config in, deterministic CSV out.

Subcommands: ``equilibrium``, ``sweep``, ``design``, ``simulate``. Exit
codes: 0 success, 2 config error, 3 solver failure, 4 range error. Floats
are written with 17 significant digits, so identical config and seed yield
byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from .config import ConfigError, ExperimentConfig, load_config
from .design import (
    DesignError,
    design_optimal_contract,
    fundamental_budget,
    fundamental_performance,
    ir_delta_floor,
    total_budget,
)
from .equilibrium import (
    BestResponseObjective,
    SolveError,
    solve_best_response,
    solve_equilibrium,
)
from .families import RangeError
from .game import (
    ContractParams,
    EffortProfile,
    GameSpec,
    estimator_mse,
    expected_payment,
    expected_utility,
)
from .simulation import deviation_scan, simulate

__all__ = ["main", "run"]

_SOLVE_TOL = 1e-12


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _resolve_game(config: ExperimentConfig):
    """Build the game, solving for participation-floor deltas if requested.

    Equilibrium efforts depend only on the penalty weights, so the sentinel
    case solves once with placeholder deltas and then re-attaches the floors.
    """
    deltas = config.deltas if config.deltas is not None else (0.0,) * config.n
    spec = GameSpec(
        sensors=config.profiles,
        contracts=tuple(
            ContractParams(g, d) for g, d in zip(config.gammas, deltas)
        ),
    )
    efforts, diags = solve_equilibrium(spec, _SOLVE_TOL)
    if config.deltas is None:
        floors = tuple(ir_delta_floor(spec, efforts, i) for i in range(spec.n))
        spec = GameSpec(
            sensors=config.profiles,
            contracts=tuple(
                ContractParams(g, d) for g, d in zip(config.gammas, floors)
            ),
        )
    return spec, efforts, diags


def _symmetric_profile(config: ExperimentConfig, command: str):
    if not config.is_symmetric:
        raise ConfigError(f"{command} requires a symmetric game config")
    return config.profiles[0]


def cmd_equilibrium(config: ExperimentConfig, output: str) -> None:
    spec, efforts, diags = _resolve_game(config)
    n = spec.n
    rows = []
    for i in range(n):
        obj = BestResponseObjective(spec.sensors[i], spec.contracts[i].gamma, n)
        a = efforts.efforts[i]
        rows.append(
            [
                i,
                spec.contracts[i].gamma,
                spec.contracts[i].delta,
                a,
                diags[i].boundary_solution,
                float(obj.deriv1(a)),
                float(spec.sensors[i].noise.value(a)) / n**2,
            ]
        )
    _write_csv(
        output,
        ["sensor", "gamma", "delta", "a_star", "boundary", "foc_residual", "mse_contribution"],
        rows,
    )


def cmd_sweep(config: ExperimentConfig, output: str) -> None:
    if config.sweep is None:
        raise ConfigError("sweep command needs a 'sweep' block in the config")
    profile = _symmetric_profile(config, "sweep")
    block = config.sweep
    gammas = np.geomspace(block.gamma_min, block.gamma_max, block.gamma_steps)
    rows = []
    for n in block.n_list:
        for gamma in gammas:
            gamma = float(gamma)
            obj = BestResponseObjective(profile, gamma, n)
            a, diag = solve_best_response(obj, _SOLVE_TOL)
            efforts = EffortProfile((a,) * n)
            placeholder = GameSpec.symmetric_game(
                n, profile, ContractParams(gamma, 0.0)
            )
            delta = ir_delta_floor(placeholder, efforts, 0)
            spec = GameSpec.symmetric_game(n, profile, ContractParams(gamma, delta))
            rows.append(
                [
                    n,
                    gamma,
                    delta,
                    a,
                    estimator_mse(spec, efforts),
                    total_budget(spec, efforts).total_budget,
                    expected_payment(spec, efforts, 0),
                    expected_utility(spec, efforts, 0),
                    diag.boundary_solution,
                ]
            )
    _write_csv(
        output,
        [
            "n",
            "gamma",
            "delta",
            "a_star",
            "mse",
            "budget",
            "expected_payment",
            "expected_utility",
            "boundary",
        ],
        rows,
    )


def cmd_design(config: ExperimentConfig, output: str) -> None:
    if config.design is None:
        raise ConfigError("design command needs a 'design' block in the config")
    profile = _symmetric_profile(config, "design")
    n = config.n
    target = config.design
    if target.beta is not None:
        epsilon = fundamental_performance(profile, n, target.beta)
    else:
        epsilon = target.epsilon
    contract, _predicted = design_optimal_contract(profile, n, epsilon)
    spec = GameSpec.symmetric_game(n, profile, contract)
    efforts, _diags = solve_equilibrium(spec, _SOLVE_TOL)
    effort = efforts.efforts[0]
    achieved = float(profile.noise.value(effort))
    budget = total_budget(spec, efforts).total_budget
    floor = fundamental_budget(profile, n, epsilon)
    if target.beta is not None:
        header = [
            "beta",
            "performance_limit",
            "gamma",
            "delta",
            "effort",
            "mse",
            "budget",
            "fundamental_floor",
        ]
        rows = [
            [target.beta, epsilon, contract.gamma, contract.delta, effort, achieved, budget, floor]
        ]
    else:
        header = ["gamma", "delta", "effort", "mse", "budget", "fundamental_floor"]
        rows = [[contract.gamma, contract.delta, effort, achieved, budget, floor]]
    _write_csv(output, header, rows)


def _band_pass(analytic: float, empirical: float, se: float) -> bool:
    # 4 standard errors plus a machine-precision allowance for the
    # deterministic quantities whose standard error is exactly zero.
    slack = 4.0 * se + 8.0 * np.finfo(float).eps * (1.0 + abs(analytic))
    return bool(abs(empirical - analytic) <= slack)


def cmd_simulate(config: ExperimentConfig, output: str, seed_override: int | None) -> None:
    if config.sim is None:
        raise ConfigError("simulate command needs a 'simulate' block in the config")
    if seed_override is not None and not 0 <= seed_override < 2**64:
        raise ConfigError("--seed must be a 64-bit unsigned integer")
    spec, efforts, _diags = _resolve_game(config)
    cfg = config.sim.sim_config(seed_override)
    result = simulate(spec, efforts, cfg)

    rows = [
        [
            "mse",
            "",
            estimator_mse(spec, efforts),
            result.mse,
            result.mse_se,
            _band_pass(estimator_mse(spec, efforts), result.mse, result.mse_se),
        ]
    ]
    for i in range(spec.n):
        ana_p = expected_payment(spec, efforts, i)
        ana_u = expected_utility(spec, efforts, i)
        rows.append(
            [
                "payment",
                i,
                ana_p,
                result.payments[i],
                result.payment_ses[i],
                _band_pass(ana_p, result.payments[i], result.payment_ses[i]),
            ]
        )
        rows.append(
            [
                "utility",
                i,
                ana_u,
                result.utilities[i],
                result.utility_ses[i],
                _band_pass(ana_u, result.utilities[i], result.utility_ses[i]),
            ]
        )
    _write_csv(
        output,
        ["quantity", "sensor", "analytic", "empirical", "stderr", "passed"],
        rows,
    )

    scan = config.sim.scan
    if scan is not None:
        count = int(round((scan.grid_max - scan.grid_min) / scan.grid_step)) + 1
        grid = scan.grid_min + scan.grid_step * np.arange(count)
        points = deviation_scan(spec, efforts, scan.sensor, grid, cfg)
        scan_rows = [[p.effort, p.utility, p.utility_se] for p in points]
        scan_path = str(Path(output).with_suffix(".scan.csv"))
        _write_csv(scan_path, ["effort", "utility", "stderr"], scan_rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crowdcontract",
        description="Contract equilibria, budgets, and Monte-Carlo validation "
        "for effort-averse sensing games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("equilibrium", "solve the configured game and write per-sensor results"),
        ("sweep", "sweep the penalty weight over a gamma grid for several n"),
        ("design", "construct the budget-optimal contract for a target"),
        ("simulate", "Monte-Carlo validation of the analytic formulas"),
    ]:
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="path to the JSON config")
        cmd.add_argument("--output", help="CSV output path (overrides config)")
        cmd.add_argument("--seed", type=int, help="RNG seed (overrides config)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        output = args.output or config.output
        if output is None:
            raise ConfigError("no output path: set 'output' in the config or pass --output")
        if args.command == "equilibrium":
            cmd_equilibrium(config, output)
        elif args.command == "sweep":
            cmd_sweep(config, output)
        elif args.command == "design":
            cmd_design(config, output)
        else:
            cmd_simulate(config, output, args.seed)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (SolveError, DesignError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 3
    except RangeError as exc:
        print(f"range error: {exc}", file=sys.stderr)
        return 4
    return 0


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
