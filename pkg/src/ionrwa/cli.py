"""
Command-line entry point.

    ionrwa energies|regions|prob|concurrence|evolve|validate --config PATH
           [--out DIR] [--format csv|json] [--seed N]

Exit codes: 0 success, 1 configuration or I/O error, 2 validation failure
(a hard check failed or a numerical contract was violated).
"""
from __future__ import annotations

import argparse
import logging
import os
import sys

import numpy as np

from . import __version__
from . import closed_forms as cf
from . import entanglement, oracle
from .closed_forms import FULL, RWA
from .config import ConfigError, RunConfig, load_config
from .errors import ConsistencyError, ContractError, CutoffError, DomainError, PropagationError
from .tables import FigureTable

log = logging.getLogger("ionrwa")

FORMULAS = {
    "energies": "e_int_full = 2 exp(-eta^2/2) sin(2 eta alpha); e_int_rwa = (1/2) exp(-eta^2/2 - 2 alpha^2) [hbar Omega]",
    "regions": "advantage = e_int_full - e_int_rwa; in_gray_region = advantage > 0",
    "prob": "p_full = cos^2[(wA/wL)(k pi + pi/2) exp(-2 alpha^2)]; "
    "p_rwa = cos^2[k pi((wA/wL) exp(-2 alpha^2) - (Omega/wL) exp(-eta^2/2 - 2 alpha^2 (-1)^k))]",
    "concurrence": "c = (1/2)(1 - exp(-4 alpha^2))(1 - cos 4 theta) at the k-th diagonalization time; "
    "c_wootters = Wootters concurrence of the same two-qubit state",
    "evolve": "midpoint exponential propagation of |e, alpha> under the rotated-frame Hamiltonian",
}


def grid(lo: float, hi: float, steps: int) -> list:
    return [float(x) for x in np.linspace(lo, hi, steps)]


def _table(name: str, columns, config: RunConfig) -> FigureTable:
    header = {"tool": f"ionrwa {__version__}", "table": name, "formulas": FORMULAS[name]}
    for key, value in config.items():
        if key not in ("out_dir", "format"):
            header[f"config.{key}"] = value
    return FigureTable(name, tuple(columns), header=header)


def cmd_energies(config: RunConfig) -> list:
    table = _table("energies", ("eta", "alpha", "e_int_full", "e_int_rwa"), config)
    for eta in grid(config.eta_min, config.eta_max, config.eta_steps):
        for alpha in grid(config.alpha_min, config.alpha_max, config.alpha_steps):
            p = config.params(eta=eta, alpha=alpha)
            table.append([eta, alpha, cf.interaction_energy(FULL, p), cf.interaction_energy(RWA, p)])
    return [table]


def cmd_regions(config: RunConfig) -> list:
    table = _table("regions", ("eta", "alpha", "advantage", "in_gray_region"), config)
    for eta in grid(config.eta_min, config.eta_max, config.eta_steps):
        for alpha in grid(config.alpha_min, config.alpha_max, config.alpha_steps):
            adv = cf.cooling_advantage(config.params(eta=eta, alpha=alpha))
            table.append([eta, alpha, adv, int(adv > 0)])
    return [table]


def cmd_prob(config: RunConfig) -> list:
    table = _table("prob", ("k", "alpha", "p_full", "p_rwa"), config)
    for k in config.k_list:
        for alpha in grid(config.alpha_min, config.alpha_max, config.curve_alpha_steps):
            p = config.params(alpha=alpha)
            table.append([k, alpha, cf.ground_probability_at_step(FULL, p, k), cf.ground_probability_at_step(RWA, p, k)])
    return [table]


def concurrence_row(config: RunConfig, k: int, alpha: float) -> list:
    p = config.params(alpha=alpha)
    row = [k, alpha]
    closed, woot = [], []
    for kind in (FULL, RWA):
        t = cf.diag_time(kind, k)
        closed.append(cf.concurrence_closed_form(kind, p, t, k))
        theta = cf.angles(kind, p, t, k).theta
        woot.append(entanglement.wootters(entanglement.density_from_state(theta, alpha)))
    return row + closed + woot


def cmd_concurrence(config: RunConfig) -> list:
    table = _table("concurrence", ("k", "alpha", "c_full", "c_rwa", "c_wootters_full", "c_wootters_rwa"), config)
    for k in config.k_list:
        for alpha in grid(config.alpha_min, config.alpha_max, config.curve_alpha_steps):
            table.append(concurrence_row(config, k, alpha))
    return [table]


def cmd_evolve(config: RunConfig) -> list:
    params = config.params()
    params.require_cutoff()
    tables = []
    for kind in config.kinds():
        series = oracle.evolve_and_compare(kind, params, config.periods, config.steps_per_period)
        table = _table("evolve", series.columns, config)
        table.name = f"evolve_{kind.value}"
        table.header["table"] = table.name
        table.header["kind"] = kind.value
        for r in series.rows:
            table.append(r)
        table.footer = {f"footer.{k}": v for k, v in series.footer.items()}
        tables.append(table)
    return tables


def cmd_validate(config: RunConfig) -> oracle.ValidationReport:
    grid_spec = oracle.ValidationGrid(
        base=config.params(),
        etas=tuple(config.validate_etas),
        alphas=tuple(config.validate_alphas),
        k_max=config.validate_k_max,
        control_rabi_ratio=config.control_rabi_ratio,
        periods=config.periods,
        steps_per_period=config.steps_per_period,
    )
    return oracle.run_validation(grid_spec)


COMMANDS = {
    "energies": cmd_energies,
    "regions": cmd_regions,
    "prob": cmd_prob,
    "concurrence": cmd_concurrence,
    "evolve": cmd_evolve,
}


def write_text(path: str, text: str) -> None:
    try:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ionrwa",
        description="Full vs rotating-wave treatment of a laser-driven trapped ion: figure data and numerical validation.",
    )
    parser.add_argument("command", choices=sorted(list(COMMANDS) + ["validate"]))
    parser.add_argument("--config", required=True, help="key = value configuration file")
    parser.add_argument("--out", default=None, help="output directory (default: config out_dir, ./out)")
    parser.add_argument("--format", choices=("csv", "json"), default=None)
    parser.add_argument("--seed", type=int, default=None, help="reserved; all computation is deterministic")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        config = load_config(args.config)
        overrides = {}
        if args.out is not None:
            overrides["out_dir"] = args.out
        if args.format is not None:
            overrides["format"] = args.format
        config = config.replace(**overrides)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    try:
        if args.command == "validate":
            report = cmd_validate(config)
            path = os.path.join(config.out_dir, "validation.json")
            write_text(path, report.to_json())
            print(report.exit_line())
            return 0 if not report.hard_failures else 2
        for table in COMMANDS[args.command](config):
            path = os.path.join(config.out_dir, f"{table.name}.{config.format}")
            write_text(path, table.render(config.format))
            log.info("wrote %s (%d rows)", path, len(table.rows))
        return 0
    except CutoffError as exc:
        print(f"{args.command}: precondition failed: {exc} (minimal N = {exc.minimal})", file=sys.stderr)
        return 2
    except (ContractError, ConsistencyError, PropagationError) as exc:
        print(f"{args.command}: contract failure [{type(exc).__name__}]: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"{args.command}: I/O error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
