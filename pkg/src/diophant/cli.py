"""Command-line surface: psi, minima, mahler, solve, scan-primitive, verify, oracle.

Every run prints (and optionally writes) a JSON report containing the
input hash, the parameters, and the result; --csv flattens record tables.
Exit codes: 0 all good, 1 failed check / no solution, 2 usage,
3 degeneracy, 4 budget.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import __version__
from .core import rational_str
from .errors import (
    BudgetExceededError,
    CapExceededError,
    DegeneracyError,
    DiophantError,
    NoSolutionError,
    UsageError,
)
from .jsonio import (
    load_problem,
    make_report,
    parse_rational_arg,
    parse_vector_arg,
    write_csv,
    write_report,
)
from .minima import (
    GaugeKind,
    GaugeSpec,
    dual_gauge,
    mahler_check,
    minima_report,
    minkowski_dual_check,
    primal_gauge,
)
from .oracles import OracleQuantity, oracle_report
from .psi import psi, psi_records
from .solvers import (
    primitive_record_scan,
    solve_bounded,
    solve_kronecker,
    solve_primitive,
    solve_sharpened,
)
from .suite import run_suite

_SOLVE_METHODS = ("satz1", "kronecker", "satz3", "satz7")


def _add_common(p: argparse.ArgumentParser, problem=True):
    if problem:
        p.add_argument("-i", "--input", required=True, help="problem file (JSON)")
    p.add_argument("--budget", type=int, default=None, help="enumeration point budget")
    p.add_argument("--json", dest="json_path", default=None, help="write the report here")
    p.add_argument("--csv", dest="csv_path", default=None, help="flatten tables here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diophant",
        description="Exact inhomogeneous Diophantine approximation toolkit",
    )
    parser.add_argument("--version", action="version", version=f"diophant {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("psi", help="irrationality-measure value or record table")
    _add_common(p)
    p.add_argument("-t", "--t", dest="t", default=None, help="single scale (rational)")
    p.add_argument("--t-max", type=int, default=None, help="record table up to here")

    p = sub.add_parser("minima", help="successive minima of both parallelepipeds")
    _add_common(p)
    p.add_argument("-t", "--t", dest="t", required=True)
    p.add_argument("--radius", type=int, default=None)

    p = sub.add_parser("mahler", help="pairing products and the dual volume bound")
    _add_common(p)
    p.add_argument("-t", "--t", dest="t", required=True)
    p.add_argument("--radius", type=int, default=None)

    p = sub.add_parser("solve", help="inhomogeneous solvers")
    p.add_argument("method", choices=_SOLVE_METHODS, help="solver variant")
    _add_common(p)
    p.add_argument("--epsilon", default=None, help="target bound (C for satz1)")
    p.add_argument("--x-max", default=None, help="X range (satz1)")
    p.add_argument("--count", type=int, default=1, help="points to produce (satz7)")
    p.add_argument("--t-cap", type=int, default=10**6)
    p.add_argument("--minimal", action="store_true", help="satz1: return the best residual in range")

    p = sub.add_parser("scan-primitive", help="primitive best-approximation records")
    _add_common(p)
    p.add_argument("--x-max", type=int, required=True)

    p = sub.add_parser("verify", help="run the seeded property suite")
    _add_common(p, problem=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, default=20)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("oracle", help="independent brute-force reference runs")
    _add_common(p)
    p.add_argument(
        "--quantity",
        required=True,
        choices=[q.value for q in OracleQuantity],
    )
    p.add_argument("-t", "--t", dest="t", default=None)
    p.add_argument("--radius", type=int, default=None)
    p.add_argument("--x-max", type=int, default=None)
    p.add_argument("--shift", default=None, help="comma-separated rationals")
    p.add_argument("--kind", choices=["primal", "dual"], default="primal")
    return parser


def _cmd_psi(args) -> int:
    problem, _ = load_problem(args.input)
    if (args.t is None) == (args.t_max is None):
        raise UsageError("psi needs exactly one of -t or --t-max")
    if args.t is not None:
        t = parse_rational_arg(args.t)
        value = psi(problem, t, args.budget)
        report = make_report(
            "psi", problem, {"t": t},
            {"value": value.value, "witness": list(value.witness), "degenerate": value.degenerate},
        )
        write_report(report, args.json_path)
        return 3 if value.degenerate else 0
    table = psi_records(problem, args.t_max, args.budget)
    report = make_report("psi", problem, {"t_max": args.t_max}, table)
    write_report(report, args.json_path)
    if args.csv_path:
        rows = [
            {"t": r.t, "psi": rational_str(r.psi), "witness": " ".join(map(str, r.witness))}
            for r in table.records
        ]
        write_csv(rows, args.csv_path)
    return 0


def _minima(args):
    problem, _ = load_problem(args.input)
    t = parse_rational_arg(args.t)
    return problem, minima_report(problem, t, args.radius, args.budget)


def _cmd_minima(args) -> int:
    problem, report = _minima(args)
    doc = make_report("minima", problem, {"t": parse_rational_arg(args.t), "radius": args.radius}, report)
    write_report(doc, args.json_path)
    if args.csv_path:
        rows = [
            {
                "nu": nu + 1,
                "lambda": rational_str(report.lambdas[nu]),
                "mu": rational_str(report.mus[nu]),
            }
            for nu in range(report.d)
        ]
        write_csv(rows, args.csv_path)
    return 0


def _cmd_mahler(args) -> int:
    problem, report = _minima(args)
    rows = mahler_check(report)
    mink = minkowski_dual_check(report)
    ok = all(r.ok for r in rows) and mink.ok
    doc = make_report(
        "mahler",
        problem,
        {"t": parse_rational_arg(args.t), "radius": args.radius},
        {"products": rows, "minkowski": mink, "all_pass": ok},
    )
    write_report(doc, args.json_path)
    if args.csv_path:
        write_csv(
            [
                {
                    "nu": r.nu,
                    "product": rational_str(r.product),
                    "lower": rational_str(r.lower),
                    "upper": rational_str(r.upper),
                    "pass": int(r.ok),
                }
                for r in rows
            ],
            args.csv_path,
        )
    return 0 if ok else 1


def _cmd_solve(args) -> int:
    problem, _ = load_problem(args.input)
    params: dict = {"method": args.method}
    if args.method == "satz1":
        if args.epsilon is None or args.x_max is None:
            raise UsageError("solve satz1 needs --epsilon (C) and --x-max (X)")
        c_bound = parse_rational_arg(args.epsilon)
        x_bound = parse_rational_arg(args.x_max)
        result = solve_bounded(
            problem, c_bound, x_bound, minimal=args.minimal, budget=args.budget
        )
        params.update({"C": c_bound, "X": x_bound, "minimal": args.minimal})
    elif args.method == "kronecker":
        if args.epsilon is None:
            raise UsageError("solve kronecker needs --epsilon")
        eps = parse_rational_arg(args.epsilon)
        result = solve_kronecker(problem, eps, args.budget)
        params.update({"epsilon": eps})
    elif args.method == "satz3":
        if args.epsilon is None:
            raise UsageError("solve satz3 needs --epsilon")
        eps = parse_rational_arg(args.epsilon)
        result = solve_sharpened(problem, eps, args.t_cap, args.budget)
        params.update({"epsilon": eps, "t_cap": args.t_cap})
    else:
        if args.epsilon is None:
            raise UsageError("solve satz7 needs --epsilon")
        eps = parse_rational_arg(args.epsilon)
        result = solve_primitive(
            problem, eps, count=args.count, t_cap=args.t_cap, budget=args.budget
        )
        params.update({"epsilon": eps, "count": args.count, "t_cap": args.t_cap})
    doc = make_report("solve", problem, params, result)
    write_report(doc, args.json_path)
    return 0


def _cmd_scan(args) -> int:
    problem, _ = load_problem(args.input)
    if problem.m != 1 or problem.n != 1:
        raise UsageError("scan-primitive expects a scalar problem (m = n = 1)")
    report = primitive_record_scan(problem.theta[0][0], problem.alpha[0], args.x_max)
    doc = make_report("scan-primitive", problem, {"x_max": args.x_max}, report)
    write_report(doc, args.json_path)
    if args.csv_path:
        rows = []
        for r in report.records:
            rows.append(
                {
                    "x": r.x,
                    "y": r.y,
                    "residual": rational_str(r.residual),
                    "stat_upper_lo": rational_str(r.stat_upper[0]) if r.stat_upper else "",
                    "stat_upper_hi": rational_str(r.stat_upper[1]) if r.stat_upper else "",
                    "stat_lower_lo": rational_str(r.stat_lower[0]) if r.stat_lower else "",
                    "stat_lower_hi": rational_str(r.stat_lower[1]) if r.stat_lower else "",
                }
            )
        write_csv(rows, args.csv_path)
    return 0


def _cmd_verify(args) -> int:
    result = run_suite(args.seed, args.instances, args.jobs, args.budget)
    doc = make_report(
        "verify",
        None,
        {"seed": args.seed, "instances": args.instances},
        result,
    )
    write_report(doc, args.json_path)
    if args.csv_path:
        write_csv(
            [
                {
                    "check": c.name,
                    "passed": c.passed,
                    "failed": c.failed,
                    "skipped": c.skipped,
                }
                for c in result["checks"]
            ],
            args.csv_path,
        )
    return 0 if result["all_pass"] else 1


def _cmd_oracle(args) -> int:
    problem, _ = load_problem(args.input)
    quantity = OracleQuantity(args.quantity)
    kwargs: dict = {"problem": problem, "budget": args.budget}
    if quantity is OracleQuantity.PSI:
        if args.t is None:
            raise UsageError("oracle psi needs -t")
        kwargs["t"] = parse_rational_arg(args.t)
    elif quantity is OracleQuantity.MINIMA:
        if args.t is None or args.radius is None:
            raise UsageError("oracle minima needs -t and --radius")
        maker = primal_gauge if args.kind == "primal" else dual_gauge
        kwargs = {
            "gauge": maker(problem, parse_rational_arg(args.t), budget=args.budget),
            "radius": args.radius,
            "budget": args.budget,
        }
    elif quantity in (OracleQuantity.BEST_INHOM, OracleQuantity.BEST_PRIMITIVE):
        if args.x_max is None:
            raise UsageError("oracle best-inhom needs --x-max")
        kwargs["x_max"] = args.x_max
    else:
        if args.t is None or args.radius is None or args.shift is None:
            raise UsageError("oracle cover needs -t, --radius and --shift")
        kwargs = {
            "gauge": primal_gauge(problem, parse_rational_arg(args.t), budget=args.budget),
            "shift": parse_vector_arg(args.shift),
            "radius": args.radius,
            "budget": args.budget,
        }
    result = oracle_report(quantity, **kwargs)
    doc = make_report("oracle", problem, {"quantity": args.quantity}, result)
    write_report(doc, args.json_path)
    return 0


_HANDLERS = {
    "psi": _cmd_psi,
    "minima": _cmd_minima,
    "mahler": _cmd_mahler,
    "solve": _cmd_solve,
    "scan-primitive": _cmd_scan,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DegeneracyError as exc:
        print(f"degeneracy: {exc}", file=sys.stderr)
        return 3
    except BudgetExceededError as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return 4
    except (NoSolutionError, CapExceededError) as exc:
        print(f"search failed: {exc}", file=sys.stderr)
        return 1
    except DiophantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
