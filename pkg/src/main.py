"""
Command line interface for the periodic box-ball toolkit
Evolution, spacetime traces, scattering data, periods, counting and verification
"""

import argparse
import sys
from math import comb
from typing import List, Optional, Sequence

from src.api.models.schemas import AngleRepModel, RiggedConfigurationModel
from src.bethe.periods import generic_period, period_report
from src.bethe.string_system import omega_count
from src.dynamics.evolution import evolve, iterate, omega_path, parse_path, weight
from src.oracle.suites import SUITES, run_suite
from src.scattering.kkr import (
    ActionVariable,
    kkr_inverse,
    kkr_map,
    partitions_in_range,
    render_diagram,
)
from src.scattering.transform import action, direct, fast_evolve, inverse
from src.utils.config_loader import get_config
from src.utils.errors import PBBSError
from src.utils.logger import get_logger, setup_logging

logger = get_logger("cli")


def _path(text: str) -> str:
    try:
        return parse_path(text)
    except PBBSError as e:
        raise argparse.ArgumentTypeError(str(e))


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pbbs", description="Periodic box-ball system: dynamics, inverse scattering and periods"
    )
    parser.add_argument("--log-level", default=None, help="Logging level for stderr records")
    commands = parser.add_subparsers(dest="command", required=True)

    evolve_cmd = commands.add_parser("evolve", help="Apply T_l^t to a path")
    evolve_cmd.add_argument("--path", type=_path, required=True)
    evolve_cmd.add_argument("--l", type=_positive, required=True)
    evolve_cmd.add_argument("--steps", type=int, default=1)
    evolve_cmd.add_argument("--fast", action="store_true", help="Use the linearized flow")
    evolve_cmd.add_argument("--reduce", action="store_true",
                            help="Reduce the steps modulo the generic period (with --fast)")

    trace_cmd = commands.add_parser("trace", help="Print the spacetime diagram")
    trace_cmd.add_argument("--path", type=_path, required=True)
    trace_cmd.add_argument("--l", type=_positive, required=True)
    trace_cmd.add_argument("--steps", type=int, default=1)

    scatter_cmd = commands.add_parser("scatter", help="Angle representative of a path")
    scatter_cmd.add_argument("--path", type=_path, required=True)
    scatter_cmd.add_argument("--allow-omega", action="store_true",
                             help="Apply omega to paths of negative weight")
    scatter_cmd.add_argument("--pretty", action="store_true", help="Print the offset and diagram")
    scatter_cmd.add_argument("--rc", action="store_true",
                             help="Rigged configuration JSON of a highest path")

    unscatter_cmd = commands.add_parser("unscatter", help="Path of an angle representative")
    unscatter_cmd.add_argument("--json", default=None, help="AngleRep JSON; read from stdin when absent")
    unscatter_cmd.add_argument("--rc", action="store_true",
                               help="Input is rigged configuration JSON; prints its highest path")

    period_cmd = commands.add_parser("period", help="Generic or fundamental period under T_l")
    period_cmd.add_argument("--path", type=_path, required=True)
    period_cmd.add_argument("--l", type=_positive, required=True)
    period_cmd.add_argument("--fundamental", action="store_true")
    period_cmd.add_argument("--explain", action="store_true")

    count_cmd = commands.add_parser("count", help="Omega(m) table and completeness sum")
    count_cmd.add_argument("--L", type=_positive, required=True)
    count_cmd.add_argument("--M", type=int, default=None)

    verify_cmd = commands.add_parser("verify", help="Run oracle comparisons")
    verify_cmd.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    verify_cmd.add_argument("--L", type=_positive, default=6)
    verify_cmd.add_argument("--seed", type=int, default=0)
    return parser


def cmd_evolve(args: argparse.Namespace) -> List[str]:
    if args.fast:
        period = generic_period(action(args.path), args.l) if args.reduce else None
        return [fast_evolve(args.path, args.l, args.steps, period)]
    return [iterate(args.path, args.l, args.steps)]


def cmd_trace(args: argparse.Namespace) -> List[str]:
    if args.steps < 0:
        raise PBBSError("trace needs a nonnegative number of steps")
    lines = []
    p = args.path
    for t in range(args.steps + 1):
        lines.append(f"t={t}: " + " ".join(p))
        p = evolve(p, args.l).next
    return lines


def cmd_scatter(args: argparse.Namespace) -> List[str]:
    p = args.path
    if args.rc:
        return [RiggedConfigurationModel.from_domain(kkr_map(p)).dump()]
    flipped = weight(p) < 0 and args.allow_omega
    a = direct(omega_path(p) if flipped else p)
    if args.pretty:
        header = f"{a.d} +" + (" (omega)" if flipped else "")
        return [header, render_diagram(a.to_rigged_configuration())]
    return [AngleRepModel.from_domain(a, omega=flipped).dump()]


def cmd_unscatter(args: argparse.Namespace) -> List[str]:
    text = args.json if args.json is not None else sys.stdin.read()
    if args.rc:
        return [kkr_inverse(RiggedConfigurationModel.model_validate_json(text).to_domain())]
    model = AngleRepModel.model_validate_json(text)
    p = inverse(model.to_domain())
    return [omega_path(p) if model.omega else p]


def cmd_period(args: argparse.Namespace) -> List[str]:
    report = period_report(args.path, args.l)
    if args.explain:
        return report.lines()
    return [str(report.fundamental if args.fundamental else report.generic)]


def _padded(m: ActionVariable, width: int) -> str:
    values = list(m.as_tuple()) + [0] * (width - len(m.as_tuple()))
    return "(" + ",".join(str(v) for v in values) + ")"


def cmd_count(args: argparse.Namespace) -> List[str]:
    L = args.L
    totals = [args.M] if args.M is not None else list(range(L // 2 + 1))
    lines = []
    for M in totals:
        if M < 0 or 2 * M > L:
            raise PBBSError(f"M={M} must satisfy 0 <= 2M <= L={L}")
        width = max(M, 1)
        rows = sorted(partitions_in_range(L, M), key=lambda m: _padded(m, width), reverse=True)
        total = 0
        for m in rows:
            omega = omega_count(m)
            total += omega
            lines.append(f"L={L} M={M} m={_padded(m, width)} Omega={omega}")
        lines.append(f"L={L} M={M} sum={total} binom={comb(L, M)}")
    return lines


def cmd_verify(args: argparse.Namespace) -> List[str]:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        results.extend((f"{name}: {description}", ok) for description, ok in run_suite(name, args.L, args.seed))
    lines = [f"1..{len(results)}"]
    for number, (description, ok) in enumerate(results, start=1):
        lines.append(f"{'ok' if ok else 'not ok'} {number} - {description}")
    if not all(ok for _, ok in results):
        args.failed = True
    return lines


COMMANDS = {
    "evolve": cmd_evolve,
    "trace": cmd_trace,
    "scatter": cmd_scatter,
    "unscatter": cmd_unscatter,
    "period": cmd_period,
    "count": cmd_count,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand.

    Returns:
        0 on success, 2 on rejected input, 1 on a failed internal check
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        setup_logging(args.log_level or get_config().log_level)
    except ValueError as e:
        parser.error(str(e))
    args.failed = False
    try:
        lines = COMMANDS[args.command](args)
    except (PBBSError, ValueError) as e:
        logger.error("Command failed", command=args.command, error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return 2
    except AssertionError as e:
        logger.error("Internal check failed", command=args.command, error=str(e))
        print(f"internal error: {e}", file=sys.stderr)
        return 1
    for line in lines:
        print(line)
    return 1 if args.failed else 0


if __name__ == "__main__":
    sys.exit(main())
