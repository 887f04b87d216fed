"""Seeded randomized property suite behind `diophant verify`.

Instances are drawn up front from one RNG, so a fixed seed fixes the
whole run; worker processes (--jobs) only ever see fully-specified
instances, keeping parallel output identical to serial output.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import ApproximationProblem
from .errors import DegeneracyError, DiophantError
from .minima import (
    CoverFrame,
    GaugeKind,
    GaugeSpec,
    basis_extend,
    fundamental_cover_find,
    gauge_value,
    mahler_check,
    minima_report,
    minkowski_dual_check,
    successive_minima,
)
from .oracles import brute_best_inhomogeneous, brute_minima, brute_psi
from .psi import psi, psi_records
from .solvers import solve_bounded

_DIMS = [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2), (1, 3)]
_T_BY_N = {1: 8, 2: 5, 3: 3}


def random_problem(
    rng: random.Random, m: int, n: int, den_max: int = 50
) -> ApproximationProblem:
    def entry() -> Fraction:
        q = rng.randint(2, den_max)
        return Fraction(rng.randrange(1, q), q)

    theta = tuple(tuple(entry() for _ in range(m)) for _ in range(n))
    alpha = tuple(entry() for _ in range(n))
    return ApproximationProblem(theta, alpha)


def _draw_instance(rng: random.Random, index: int) -> dict:
    m, n = _DIMS[rng.randrange(len(_DIMS))]
    t = rng.randint(1, _T_BY_N[n])
    return {
        "index": index,
        "problem": random_problem(rng, m, n),
        "t": t,
        "shift_seed": rng.randrange(2**30),
        "cover_shifts": 3,
    }


@dataclass
class CheckResult:
    name: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def record(self, ok: bool, label: str):
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(label)


def _random_shift(rng: random.Random, d: int, span: int = 8) -> tuple[Fraction, ...]:
    return tuple(
        Fraction(rng.randint(-span * 100, span * 100), rng.randint(1, 100))
        for _ in range(d)
    )


def check_instance(inst: dict) -> dict:
    """All per-instance checks; returns {check_name: (ok, label) ...} entries."""
    problem: ApproximationProblem = inst["problem"]
    t = inst["t"]
    label = f"#{inst['index']} m={problem.m} n={problem.n} t={t}"
    out: dict[str, tuple[Optional[bool], str]] = {}

    pv = psi(problem, t)
    bv, bw = brute_psi(problem, t)
    ok = pv.value == bv
    table = psi_records(problem, t)
    ok = ok and all(
        table.value_at(s) == brute_psi(problem, s)[0] for s in range(1, t + 1)
    )
    # monotone non-increasing along t
    vals = [psi(problem, s).value for s in range(1, t + 1)]
    ok = ok and all(a >= b for a, b in zip(vals, vals[1:]))
    out["psi_oracle"] = (ok, label)

    if pv.degenerate:
        out["minima"] = (None, label + " (degenerate, skipped)")
        return out

    report = minima_report(problem, t)
    checks = [report.mus[0] == 1]
    checks.append(all(row.ok for row in mahler_check(report)))
    checks.append(minkowski_dual_check(report).ok)
    gp = GaugeSpec(problem, report.t, report.psi_t, GaugeKind.PRIMAL)
    gd = GaugeSpec(problem, report.t, report.psi_t, GaugeKind.DUAL)
    checks.append(
        all(
            gauge_value(gp, z) == lam and z.is_primitive
            for lam, z in zip(report.lambdas, report.points_primal)
        )
    )
    checks.append(
        all(
            gauge_value(gd, z) == mu and z.is_primitive
            for mu, z in zip(report.mus, report.points_dual)
        )
    )
    out["minima"] = (all(checks), label)

    basis = basis_extend(report.points_primal, gp)
    dfact = math.factorial(problem.d)
    ok = basis[0] == report.points_primal[0]
    ok = ok and all(gauge_value(gp, b) <= dfact for b in basis)
    out["basis"] = (ok, label)

    rng = random.Random(inst["shift_seed"])
    frame = CoverFrame(gp, report.points_primal, basis)
    ok = True
    for _ in range(inst["cover_shifts"]):
        shift = _random_shift(rng, problem.d)
        z = fundamental_cover_find(gp, shift, frame)
        diff = tuple(a - b for a, b in zip(z.z, shift))
        ok = ok and gauge_value(gp, diff) <= dfact
    out["cover"] = (ok, label)

    # brute-force cross-checks stay tiny: d <= 3 and a shared explicit radius
    if problem.d <= 3 and t <= 2:
        radius = 8 if problem.d == 3 else 20
        lam_main = successive_minima(gp, radius=radius)
        lam_brute, _ = brute_minima(gp, radius)
        mu_main = successive_minima(gd, radius=radius)
        mu_brute, _ = brute_minima(gd, radius)
        out["minima_oracle"] = (
            lam_main.values == lam_brute and mu_main.values == mu_brute,
            label,
        )

    if problem.d <= 3:
        x_max = 12
        cert = solve_bounded(problem, Fraction(1, 2), x_max, minimal=True)
        resid, _, _ = brute_best_inhomogeneous(problem, x_max)
        out["bounded_solver_oracle"] = (
            cert.residual_norm == resid and cert.revalidate(problem), label
        )
    return out


def _safe_check(inst: dict) -> dict:
    try:
        return check_instance(inst)
    except DegeneracyError:
        return {"minima": (None, f"#{inst['index']} degenerate")}
    except DiophantError as exc:
        return {"error": (False, f"#{inst['index']}: {exc}")}


def run_suite(
    seed: int, instances: int = 20, jobs: int = 1, budget: int | None = None
) -> dict:
    rng = random.Random(seed)
    drawn = [_draw_instance(rng, i) for i in range(instances)]
    results: dict[str, CheckResult] = {}

    def absorb(per_instance: dict):
        for name, (ok, label) in per_instance.items():
            res = results.setdefault(name, CheckResult(name))
            if ok is None:
                res.skipped += 1
            else:
                res.record(ok, label)

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for per_instance in pool.map(_safe_check, drawn):
                absorb(per_instance)
    else:
        for inst in drawn:
            absorb(_safe_check(inst))

    ordered = [results[k] for k in sorted(results)]
    return {
        "seed": seed,
        "instances": instances,
        "checks": ordered,
        "all_pass": all(c.ok for c in ordered),
    }
