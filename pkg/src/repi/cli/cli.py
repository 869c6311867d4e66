"""Command-line driver.

Subcommands:
    entropy     h_r and N_r of densities over a grid of orders
    constants   closed-form constants over (r, m, α)
    check       a verification suite, one report per comparison

Exit codes: 0 all pass, 1 an inequality failed, 2 usage error, 3 numeric error.
"""

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from typing import Any

from pydantic import ValidationError

from repi import __version__
from repi.cli.config import SINGLE_RUN_SUITES, RunConfig
from repi.cli.report import render_csv, render_json, write_text
from repi.core import REPI
from repi.core.dto.epi_dto import EpiReport
from repi.core.epi.constants import (
    alpha_bm,
    alpha_li,
    c_bobkov_chistyakov,
    c_new_repi,
    c_ram_sason,
    logconcave_constants,
)
from repi.core.exceptions import (
    DomainError,
    HypothesisError,
    OrderError,
    ParameterError,
    RepiError,
    SimplexError,
)
from repi.core.measures.measures import entropy_power, renyi_entropy
from repi.core.sherlock.suites import BUILTIN_SUITES

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

USAGE_ERRORS = (HypothesisError, SimplexError, DomainError, ParameterError, OrderError)


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from e


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


# =============================================================================
# COMMANDS
# =============================================================================


def cmd_entropy(config: RunConfig, app: REPI) -> tuple[list[dict[str, Any]], int]:
    """Rows (density, r, h_r, N_r) for every density and order."""
    rows = []
    for spec in config.density_specs:
        f = app.density(spec)
        for r in config.order_grid:
            h = renyi_entropy(f, r)
            rows.append({"density": spec, "r": r, "h": h, "N": entropy_power(f, r)})
    return rows, EXIT_OK


def _constant(fn: Callable[[], Any], name: str, notes: dict[str, str]) -> Any:
    try:
        return fn()
    except DomainError as e:
        notes[name] = f"not applicable: {e.detail}"
        return None


def cmd_constants(config: RunConfig, app: REPI) -> tuple[list[dict[str, Any]], int]:
    """One row per (r, m, α) with every closed form, wrong-branch entries noted."""
    rows = []
    for r in config.order_grid:
        for m in config.m_values:
            for alpha in config.alpha_values:
                notes: dict[str, str] = {}
                lc = _constant(lambda r=r, m=m, a=alpha: logconcave_constants(r, m, a), "logconcave", notes)
                row = {
                    "r": r,
                    "m": m,
                    "alpha": alpha,
                    "c_ram_sason": _constant(lambda r=r, m=m: c_ram_sason(r, m), "c_ram_sason", notes),
                    "c_bc": _constant(lambda r=r: c_bobkov_chistyakov(r), "c_bc", notes),
                    "alpha_li": _constant(lambda r=r: alpha_li(r), "alpha_li", notes),
                    "alpha_bm": _constant(lambda r=r: alpha_bm(r), "alpha_bm", notes),
                    "c_new": _constant(
                        lambda r=r, m=m, a=alpha: c_new_repi(r, m, a), "c_new", notes
                    ),
                    "logconcave_c": lc.c if lc else None,
                    "logconcave_alpha": lc.alpha if lc else None,
                    "logconcave_c_alpha": lc.c_alpha if lc else None,
                }
                if r == 1:
                    notes = {"all": "not applicable: the constants exclude r = 1"}
                row["notes"] = notes
                rows.append(row)
    return rows, EXIT_OK


def cmd_check(config: RunConfig, app: REPI) -> tuple[list[EpiReport], int]:
    """Run one suite, once per order of the grid; exit 1 iff some report ran and failed.

    Profile suites take the whole grid in a single run.
    """
    densities = [app.density(spec) for spec in config.density_specs]
    grid = config.order_grid
    if config.suite in SINGLE_RUN_SUITES or len(grid) <= 1:
        orders = [grid[0] if len(grid) == 1 else 1.0]
    else:
        orders = grid
    fields: dict[str, Any] = {
        "labels": list(config.density_specs),
        "r_grid": grid if len(grid) > 1 else None,
        "suborders": config.suborders,
        "lam": config.lam,
        "c": config.constants_override.c,
        "alpha": config.constants_override.alpha,
        "transport": config.transport,
        "samples": config.samples,
        "seed": config.seed,
    }
    reports: list[EpiReport] = []
    for r in orders:
        reports.extend(app.check(config.suite, densities, r=r, **fields))
    failed = [report for report in reports if report.failed]
    for report in failed:
        logger.warning(
            "%s %s failed: gap %.6g < -%.3g",
            report.inequality_id,
            report.label,
            report.gap,
            report.tol,
        )
    return reports, EXIT_FAILED if failed else EXIT_OK


COMMANDS = {"entropy": cmd_entropy, "constants": cmd_constants, "check": cmd_check}


# =============================================================================
# PARSER
# =============================================================================


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", nargs="+", default=[], metavar="SPEC", help="Analytic density, e.g. gaussian:1")
    common.add_argument("--csv", nargs="+", default=[], metavar="PATH", help="Density CSV file (x,f)")
    common.add_argument("--grid-len", type=int, default=None, help="Points per analytic grid")
    common.add_argument("--output", "-o", default=None, help="Report file (default: stdout)")
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--config", default=None, help="JSON configuration file")
    common.add_argument(
        "--log-level", default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR"]
    )

    parser = argparse.ArgumentParser(
        prog="repi", description="Rényi entropy power inequalities on grid densities"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", parents=[common], help="Rényi entropies and entropy powers")
    p.add_argument("--orders", type=_floats, required=True, help="Comma-separated orders")

    p = sub.add_parser("constants", parents=[common], help="Closed-form constants")
    p.add_argument("--orders", type=_floats, required=True, help="Comma-separated orders")
    p.add_argument("--m", type=_ints, default=[2], help="Comma-separated summand counts")
    p.add_argument("--alphas", type=_floats, default=[0.5], help="Comma-separated exponents")

    p = sub.add_parser("check", parents=[common], help="Run a verification suite")
    p.add_argument("suite", choices=sorted(BUILTIN_SUITES))
    group = p.add_mutually_exclusive_group()
    group.add_argument("--order", type=float, default=None, help="Rényi order r")
    group.add_argument("--orders", type=_floats, default=None, help="Order grid: swept by concavity, one run per order otherwise")
    p.add_argument("--suborders", type=_floats, default=None, help="Per-density orders (dct)")
    p.add_argument("--lambda", dest="lam", type=_floats, default=None, help="Simplex weights")
    p.add_argument("--c", type=float, default=None, help="Override the constant c")
    p.add_argument("--alpha", type=float, default=None, help="Override the exponent α")
    p.add_argument("--tol", type=float, default=None, help="Absolute tolerance")
    p.add_argument(
        "--transport",
        default="identity",
        help="identity | cubic | linear:a | quantile:<family> (preservation)",
    )
    p.add_argument("--samples", type=int, default=None, help="Sample pairs (rotation)")
    p.add_argument("--seed", type=int, default=None, help="Random seed (rotation)")
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    orders = getattr(args, "orders", None)
    if getattr(args, "order", None) is not None:
        orders = [args.order]
    data: dict[str, Any] = {
        "command": args.command,
        "suite": getattr(args, "suite", None),
        "density_specs": [*args.family, *args.csv],
        "order_grid": orders or [],
        "output": args.output,
        "format": args.format,
        "grid_len": args.grid_len,
        "config_path": args.config,
    }
    if args.command == "constants":
        data.update(m_values=args.m, alpha_values=args.alphas)
    if args.command == "check":
        data.update(
            lam=args.lam,
            suborders=args.suborders,
            constants_override={"c": args.c, "alpha": args.alpha},
            tol=args.tol,
            transport=args.transport,
            samples=args.samples,
            seed=args.seed,
        )
    return RunConfig.model_validate(data)


def _rows(reports: Sequence[Any]) -> list[dict[str, Any]]:
    rows = []
    for r in reports:
        if not isinstance(r, EpiReport):
            rows.append(r)
            continue
        k = r.constants
        rows.append(
            {
                "inequality_id": r.inequality_id,
                "label": r.label,
                "status": r.status,
                "code": r.detail.code if r.detail else "",
                "lhs": r.lhs,
                "rhs": r.rhs,
                "gap": r.gap,
                "tol": r.tol,
                "pass": r.passed,
                "near_equality": r.near_equality,
                "source": k.source,
                "r": k.r,
                "m": k.m,
                "c": k.c,
                "alpha": k.alpha,
            }
        )
    return rows


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=args.log_level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = _run_config(args)
        app = REPI.create(config_path=config.config_path)
        if config.grid_len is not None:
            app.spock.set_repi_config("grid_len", config.grid_len)
        if config.tol is not None:
            app.spock.set_repi_config("tol_abs", config.tol)
        reports, code = COMMANDS[config.command](config, app)
    except ValidationError as e:
        print(f"repi: invalid arguments: {e}", file=sys.stderr)
        return EXIT_USAGE
    except USAGE_ERRORS as e:
        print(f"repi: {e}", file=sys.stderr)
        return EXIT_USAGE
    except RepiError as e:
        logger.error("Numeric failure: %s (context=%s)", e, e.context)
        print(f"repi: numeric error: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except (OSError, ValueError) as e:
        print(f"repi: {e}", file=sys.stderr)
        return EXIT_USAGE

    if config.format == "csv":
        text = render_csv(_rows(reports))
    else:
        meta = {
            "version": __version__,
            "config_hash": config.config_hash(app.spock.get_all_config()),
        }
        text = render_json(meta, reports)
    write_text(text, config.output, sys.stdout)
    return code


__all__ = ["main", "build_parser", "cmd_entropy", "cmd_constants", "cmd_check"]
