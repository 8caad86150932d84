"""Command-line front end.

Every subcommand prints one record on stdout (table, CSV or JSON) and logs to
stderr. Numbers accept "num/den", integers and decimal literals; percentages
are written as fractions, so "+-5 points at 95% confidence" is
``plan --eps 1/20 --delta 1/20``.

Exit codes: 0 success, 2 invalid arguments, 3 resource limit,
4 indistinguishable maxima.
"""

import argparse
import logging
import sys
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from . import argmax, chebyshev, moments
from .config import get_settings
from .errors import BinomomentError, InvalidArgumentError
from .formatting import RENDERERS, build_record
from .models import OutputRecord, PlanQuery
from .montecarlo import mc_tail
from .rational import HALF, parse_rational

logger = logging.getLogger(__name__)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except InvalidArgumentError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer seed: {text!r}") from exc
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must lie in [0, 2^64)")
    return value


def _rows(items: Sequence[Any]) -> list[dict[str, Any]]:
    return [item.model_dump() for item in items]


def cmd_moment(args: argparse.Namespace) -> OutputRecord:
    value = moments.moment(args.n, args.m, args.p, args.method)
    inputs = {"n": args.n, "m": args.m, "p": args.p, "method": args.method}
    return build_record("moment", inputs, {"value": value.value, "method": value.method}, args.digits)


def cmd_bound(args: argparse.Namespace) -> OutputRecord:
    bound = chebyshev.cheb_bound(args.n, args.eps, args.m)
    inputs = {"n": args.n, "epsilon": args.eps, "m": args.m}
    return build_record("bound", inputs, {"bound": bound}, args.digits)


def cmd_profile(args: argparse.Namespace) -> OutputRecord:
    m_cap = args.m_cap or get_settings().m_cap
    profile = chebyshev.bound_profile(
        args.n, args.eps, m_cap, strict=not args.no_strict, validity_cap=args.validity_cap
    )
    inputs = {"n": args.n, "epsilon": args.eps, "m_cap": m_cap, "strict": not args.no_strict}
    results = {
        "best_m": profile.best_m,
        "best_bound": profile.best_bound,
        "validity_cap": profile.validity_cap,
        "validity_source": profile.validity_source,
        "asymptotic_m_star": profile.asymptotic_m_star,
        "rows": _rows(profile.rows),
    }
    return build_record("profile", inputs, results, args.digits)


def cmd_plan(args: argparse.Namespace) -> OutputRecord:
    if args.delta is None and not args.coupled:
        raise InvalidArgumentError("plan needs --delta, or --coupled to use epsilon as the risk")
    try:
        query = PlanQuery(
            epsilon=args.eps,
            delta=args.delta,
            m=args.m,
            m_cap=args.m_cap or get_settings().m_cap,
            strict=args.strict,
            coupled=args.coupled,
        )
    except ValueError as exc:
        raise InvalidArgumentError(str(exc)) from exc
    plan = chebyshev.best_plan(query)
    inputs = {
        "epsilon": query.epsilon,
        "delta": query.effective_delta,
        "m": query.m,
        "m_cap": None if query.m is not None else query.m_cap,
        "strict": query.strict,
    }
    results = {
        "n_star": plan.n_star,
        "m_used": plan.m_used,
        "achieved_bound": plan.achieved_bound,
        "effective_sample_size": plan.effective_sample_size,
        "validity_source": plan.validity_source,
    }
    return build_record("plan", inputs, results, args.digits)


def cmd_argmax(args: argparse.Namespace) -> OutputRecord:
    report = argmax.argmax_report(args.n, args.m, args.width)
    inputs = {"n": args.n, "m": args.m, "width": args.width}
    results = {
        "is_half_argmax": report.is_half_argmax,
        "value_at_half": report.value_at_half,
        "max_value_bounds": report.max_value_bounds,
        "notes": list(report.notes),
        "maximizers": _rows(report.maximizers),
        "critical_points": _rows(report.critical_points),
    }
    return build_record("argmax", inputs, results, args.digits)


def cmd_mn_table(args: argparse.Namespace) -> OutputRecord:
    table = argmax.mn_table(args.n_min, args.n_max, args.m_cap, workers=args.workers)
    inputs = {"n_min": args.n_min, "n_max": args.n_max, "m_cap": args.m_cap}
    return build_record("mn-table", inputs, {"rows": _rows(table.rows)}, args.digits)


def cmd_tail(args: argparse.Namespace) -> OutputRecord:
    inputs: dict[str, Any] = {"n": args.n, "p": args.p, "epsilon": args.eps}
    if args.mc:
        if args.seed is None:
            raise InvalidArgumentError("--mc requires an explicit --seed")
        result = mc_tail(args.n, args.p, args.eps, args.samples, args.seed)
        inputs.update(samples=args.samples, seed=args.seed)
        results = {"estimate": result.estimate, "stderr": result.stderr, "hits": result.hits}
        return build_record("tail", inputs, results, args.digits)
    return build_record("tail", inputs, {"tail": chebyshev.exact_tail(args.n, args.p, args.eps)}, args.digits)


def cmd_asymptotic(args: argparse.Namespace) -> OutputRecord:
    m_cap = args.m_cap or get_settings().m_cap
    profile = chebyshev.asymptotic_profile(args.ntilde, m_cap)
    inputs = {"ntilde": args.ntilde, "m_cap": m_cap}
    results = {
        "m_star": profile.m_star,
        "rule_of_thumb_order": chebyshev.rule_of_thumb_order(args.ntilde),
        "decreasing_through": profile.decreasing_through,
        "b": _rows(profile.b),
    }
    return build_record("asymptotic", inputs, results, args.digits)


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=sorted(RENDERERS), default="table")
    common.add_argument("--digits", type=int, default=settings.digits, help="decimal places for decimal renderings")
    common.add_argument("-v", "--verbose", action="count", default=0, help="log progress to stderr (-vv for debug)")

    parser = argparse.ArgumentParser(
        prog="binomoment",
        description="Exact binomial central moments and moment-optimised Chebyshev planning.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moment", parents=[common], help="E S_n^(2m)(p) by a chosen route")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--p", type=_rational, default=HALF)
    p.add_argument("--method", choices=["composition", "binomsum", "recurrence", "bruteforce", "general"], default="binomsum")
    p.set_defaults(handler=cmd_moment)

    p = sub.add_parser("bound", parents=[common], help="single-order Chebyshev bound")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--eps", type=_rational, required=True)
    p.add_argument("--m", type=_positive_int, required=True)
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("profile", parents=[common], help="bounds for m = 1..m_cap and the best order")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--eps", type=_rational, required=True)
    p.add_argument("--m-cap", type=_positive_int)
    p.add_argument("--no-strict", action="store_true", help="do not cap selectable orders at m_n")
    p.add_argument("--validity-cap", type=_positive_int, help="use this cap instead of computing m_n")
    p.set_defaults(handler=cmd_profile)

    p = sub.add_parser("plan", parents=[common], help="minimal sample size for tolerance eps and risk delta")
    p.add_argument("--eps", type=_rational, required=True)
    p.add_argument("--delta", type=_rational)
    orders = p.add_mutually_exclusive_group()
    orders.add_argument("--m", type=_positive_int)
    orders.add_argument("--m-cap", type=_positive_int)
    p.add_argument("--strict", action="store_true", help="discard orders above m_n at the planned n")
    p.add_argument("--coupled", action="store_true", help="use eps as the risk level as well")
    p.set_defaults(handler=cmd_plan)

    p = sub.add_parser("argmax", parents=[common], help="maximizers of E S_n^(2m)(p) over p")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--width", type=_rational, default=argmax.DEFAULT_WIDTH)
    p.set_defaults(handler=cmd_argmax)

    p = sub.add_parser("mn-table", parents=[common], help="m_n for a range of n")
    p.add_argument("--n-min", type=_positive_int, required=True)
    p.add_argument("--n-max", type=_positive_int, required=True)
    p.add_argument("--m-cap", type=_positive_int, default=15)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(handler=cmd_mn_table)

    p = sub.add_parser("tail", parents=[common], help="exact or Monte Carlo tail probability")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--p", type=_rational, required=True)
    p.add_argument("--eps", type=_rational, required=True)
    p.add_argument("--mc", action="store_true")
    p.add_argument("--samples", type=_positive_int, default=10_000)
    p.add_argument("--seed", type=_seed)
    p.set_defaults(handler=cmd_tail)

    p = sub.add_parser("asymptotic", parents=[common], help="large-n bounds B_m and the rule-of-thumb order")
    p.add_argument("--ntilde", type=_rational, required=True)
    p.add_argument("--m-cap", type=_positive_int)
    p.set_defaults(handler=cmd_asymptotic)
    return parser


def _configure_logging(verbosity: int) -> None:
    levels = {0: get_settings().log_level, 1: "INFO"}
    logging.basicConfig(
        level=levels.get(verbosity, "DEBUG"),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run one subcommand, print its record; return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    _configure_logging(args.verbose)
    if args.digits < 0:
        print("error: --digits must be nonnegative", file=sys.stderr)
        return InvalidArgumentError.exit_code
    handler: Callable[[argparse.Namespace], OutputRecord] = args.handler
    try:
        record = handler(args)
    except BinomomentError as exc:
        logger.debug("command failed", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    sys.stdout.write(RENDERERS[args.format](record))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
