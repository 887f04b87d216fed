"""Constructive inhomogeneous solvers and primitive-point machinery.

Four solver entry points, ordered by strength of the conclusion:

  solve_bounded     — find x with ||theta x - alpha|| <= C, |x| <= X
                      (the transference theorem's conclusion, searched
                      directly; its hypothesis checker lives alongside)
  solve_kronecker   — ||theta x - alpha|| < eps for any eps, deriving
                      (C, X) from the record table of psi
  solve_sharpened   — n = 1: ||theta . x - alpha|| < eps / |x|, via the
                      record-derived parameter search
  solve_primitive   — infinitely many *primitive* z with small residual,
                      executed as: cover the shift (0, -alpha) by d! times
                      the primal body, decompose over an extended basis,
                      and repair the leading coefficient with a gcd shift

Every certificate stores exact rationals and revalidates from scratch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .core import (
    ApproximationProblem,
    LatticePoint,
    box_enumerate,
    common_denominator,
    effective_budget,
    nearest_int_distance,
    nearest_int_vector,
    sup_norm,
)
from .errors import (
    BudgetExceededError,
    CapExceededError,
    DegeneracyError,
    NoSolutionError,
    UsageError,
)
from .intlin import solve_columns
from .minima import (
    GaugeKind,
    GaugeSpec,
    build_cover_frame,
    fundamental_cover_find,
    successive_minima,
)
from .psi import (
    PsiRecordTable,
    _first_qualifying,
    psi,
    psi_records,
    transference_constant,
)
from .roots import (
    Interval,
    interval_div_pos,
    interval_mul,
    ln_interval,
    rational_power_ceil,
    rational_power_floor,
    sqrt_interval,
)

__all__ = [
    "HypothesisCheck",
    "SolutionCertificate",
    "ScanRecord",
    "ScanReport",
    "transference_constant",
    "khintchine_hypothesis_check",
    "solve_bounded",
    "solve_kronecker",
    "solve_sharpened",
    "gcd_shift",
    "solve_primitive",
    "primitive_record_scan",
]


@dataclass(frozen=True)
class SolutionCertificate:
    """A lattice point together with everything needed to re-check it."""

    point: LatticePoint
    residual_norm: Fraction
    x_norm: Fraction
    bound_required: Fraction
    primitive: bool
    norm_kind: str  # "nearest-int" or "sup"
    parameters: dict = field(default_factory=dict)

    def revalidate(self, problem: ApproximationProblem) -> bool:
        """Recompute the stored quantities from the point; True iff all match."""
        if self.norm_kind == "nearest-int":
            resid = nearest_int_distance(
                tuple(
                    a - b
                    for a, b in zip(problem.theta_apply(self.point.x), problem.alpha)
                )
            )
        else:
            resid = sup_norm(problem.residual(self.point))
        x_norm = (
            max(abs(c) for c in self.point.x) if self.point.x else Fraction(0)
        )
        return (
            resid == self.residual_norm
            and x_norm == self.x_norm
            and self.residual_norm <= self.bound_required
            and self.primitive == self.point.is_primitive
        )


@dataclass(frozen=True)
class HypothesisCheck:
    """Bounded verification of the transference hypothesis.

    holds refers to the range actually checked; when cutoff_reached is
    True the hypothesis extends to all of Z^n for free (beyond the cutoff
    the C-term alone exceeds 1/2).
    """

    holds: bool
    worst_u: Optional[tuple[int, ...]]
    max_excess: Optional[Fraction]
    cutoff: Fraction
    cutoff_reached: bool
    checked_bound: int


def khintchine_hypothesis_check(
    problem: ApproximationProblem,
    c_bound,
    x_bound,
    u_bound: int,
    budget: int | None = None,
) -> HypothesisCheck:
    """Check ||alpha . u|| <= K max(X ||theta^T u||, C |u|) for 0 < |u| <= u_bound."""
    c_bound = Fraction(c_bound)
    x_bound = Fraction(x_bound)
    if c_bound <= 0 or x_bound <= 0:
        raise UsageError("C and X must be positive")
    if u_bound < 0:
        raise UsageError("u_bound must be nonnegative")
    k_const = transference_constant(problem.m, problem.n)
    cutoff = 1 / (2 * k_const * c_bound)
    worst_u = None
    worst_excess: Optional[Fraction] = None
    if u_bound > 0:
        for u in box_enumerate([u_bound] * problem.n, budget):
            if all(c == 0 for c in u):
                continue
            lhs = nearest_int_distance(
                [sum(a * c for a, c in zip(problem.alpha, u))]
            )
            rhs = k_const * max(
                x_bound * nearest_int_distance(problem.theta_t_apply(u)),
                c_bound * sup_norm(u),
            )
            if lhs > rhs:
                excess = lhs - rhs
                if worst_excess is None or excess > worst_excess:
                    worst_excess = excess
                    worst_u = u
    return HypothesisCheck(
        holds=worst_u is None,
        worst_u=worst_u,
        max_excess=worst_excess,
        cutoff=cutoff,
        cutoff_reached=Fraction(u_bound) >= cutoff,
        checked_bound=u_bound,
    )


def _shell_points(m: int, s: int) -> Iterator[tuple[int, ...]]:
    """Integer vectors with sup norm exactly s, ascending lexicographic."""
    if s == 0:
        yield (0,) * m
        return

    def rec(prefix: tuple[int, ...], hit: bool):
        i = len(prefix)
        if i == m - 1:
            values = range(-s, s + 1) if hit else (-s, s)
            for v in values:
                yield prefix + (v,)
            return
        for v in range(-s, s + 1):
            yield from rec(prefix + (v,), hit or abs(v) == s)

    yield from rec((), False)


def _problem_units(problem: ApproximationProblem):
    """(Q, P rows, A) with theta[i][j] = P[i][j]/Q and alpha[i] = A[i]/Q."""
    flat = [c for row in problem.theta for c in row] + list(problem.alpha)
    q, nums = common_denominator(flat)
    m = problem.m
    rows = [nums[i * m : (i + 1) * m] for i in range(problem.n)]
    a_units = nums[problem.n * m :]
    return q, rows, a_units


def solve_bounded(
    problem: ApproximationProblem,
    c_bound,
    x_bound,
    minimal: bool = False,
    include_origin: Optional[bool] = None,
    strict: bool = False,
    hypothesis_verified: bool = False,
    budget: int | None = None,
) -> SolutionCertificate:
    """Search |x| <= X for ||theta x - alpha|| <= C (or the global minimum).

    Shells of |x| are scanned in ascending order, lexicographically inside
    each shell. In satisfy mode the first point meeting the bound is
    returned; minimal mode scans everything and returns the smallest
    residual (matching the brute oracle's value exactly; its witness is
    the first achiever in shell/lex order).

    include_origin defaults to True in satisfy mode (the underlying
    theorem admits x = 0) and False in minimal mode (the oracle's domain
    is 0 < |x| <= X).
    """
    c_bound = Fraction(c_bound)
    x_bound = Fraction(x_bound)
    if c_bound <= 0 or x_bound <= 0:
        raise UsageError("C and X must be positive")
    if include_origin is None:
        include_origin = not minimal
    x_hi = math.floor(x_bound)
    limit = effective_budget(budget)
    q, rows, a_units = _problem_units(problem)
    cq = c_bound * q
    # du <= C*q in units; strict mode wants du < C*q
    thr = math.floor(cq) if not strict else math.ceil(cq) - 1

    best: Optional[tuple[int, tuple[int, ...]]] = None
    scanned = 0
    start = 0 if include_origin else 1
    for s in range(start, x_hi + 1):
        for x in _shell_points(problem.m, s):
            scanned += 1
            if scanned > limit:
                raise BudgetExceededError(scanned, limit)
            du = 0
            for i in range(problem.n):
                w = sum(rows[i][j] * x[j] for j in range(problem.m)) - a_units[i]
                r = w % q
                di = r if r <= q - r else q - r
                if di > du:
                    du = di
            if best is None or du < best[0]:
                best = (du, x)
                if not minimal and du <= thr:
                    return _bounded_certificate(problem, x, du, q, c_bound, x_bound)
        if minimal and best is not None and best[0] == 0:
            break
    if minimal:
        if best is None:
            raise NoSolutionError("empty search range")
        du, x = best
        return _bounded_certificate(problem, x, du, q, c_bound, x_bound, minimal=True)
    if hypothesis_verified:
        raise AssertionError(
            "the transference hypothesis was verified at its cutoff yet no "
            "solution exists in range — this indicates a defect, not bad input"
        )
    raise NoSolutionError(
        f"no |x| <= {x_hi} with residual {'<' if strict else '<='} {c_bound}",
        best=None if best is None else (Fraction(best[0], q), best[1]),
    )


def _bounded_certificate(
    problem, x, du, q, c_bound, x_bound, minimal=False
) -> SolutionCertificate:
    resid_vec = tuple(
        a - b for a, b in zip(problem.theta_apply(x), problem.alpha)
    )
    y = nearest_int_vector(resid_vec)
    point = LatticePoint(tuple(x), y)
    resid = Fraction(du, q)
    x_norm = Fraction(max(abs(c) for c in x)) if x else Fraction(0)
    return SolutionCertificate(
        point=point,
        residual_norm=resid,
        # minimal mode reports the optimum it achieved, not a requested bound
        bound_required=resid if minimal else c_bound,
        x_norm=x_norm,
        primitive=point.is_primitive,
        norm_kind="nearest-int",
        parameters={"C": c_bound, "X": x_bound, "mode": "minimal" if minimal else "satisfy"},
    )


def solve_kronecker(
    problem: ApproximationProblem, epsilon, budget: int | None = None
) -> SolutionCertificate:
    """||theta x - alpha|| < eps via the derived (C, X) pair.

    C = eps; X is the smallest value with psi(1/(2KC)) >= 1/(2KX), read
    off one exact psi evaluation. A zero psi on the way is precisely the
    failure of the hypothesis (y theta integral) and raises
    DegeneracyError naming the witness.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise UsageError("epsilon must be positive")
    k_const = transference_constant(problem.m, problem.n)
    c_bound = epsilon
    s = max(1 / (2 * k_const * c_bound), Fraction(1))
    pv = psi(problem, s, budget)
    if pv.degenerate:
        raise DegeneracyError(
            f"y theta is integral at y = {pv.witness}; the hypothesis fails "
            f"and no (C, X) derivation exists at this precision",
            witness=pv.witness,
        )
    x_bound = 1 / (2 * k_const * pv.value)
    params = {
        "epsilon": epsilon,
        "K": k_const,
        "C": c_bound,
        "X": x_bound,
        "s": s,
        "psi_s": pv.value,
    }
    for attempt in range(3):
        try:
            cert = solve_bounded(
                problem,
                c_bound,
                x_bound * 2**attempt,
                strict=True,
                hypothesis_verified=False,
                budget=budget,
            )
        except NoSolutionError:
            continue
        if cert.residual_norm < epsilon:
            merged = dict(params)
            merged["X_used"] = x_bound * 2**attempt
            return SolutionCertificate(
                point=cert.point,
                residual_norm=cert.residual_norm,
                x_norm=cert.x_norm,
                bound_required=epsilon,
                primitive=cert.primitive,
                norm_kind="nearest-int",
                parameters=merged,
            )
    raise NoSolutionError(
        f"no strict solution below eps = {epsilon} found up to 4X; "
        f"at rational precision this can only happen on boundary ties"
    )


def _jarnik_pick(
    table: PsiRecordTable, k_const: Fraction, epsilon: Fraction, m_target: Fraction, t_cap
):
    a = 2 * k_const * epsilon
    return _first_qualifying(table, a, m_target, Fraction(t_cap))


def solve_sharpened(
    problem: ApproximationProblem,
    epsilon,
    t_cap: int = 10**6,
    budget: int | None = None,
) -> SolutionCertificate:
    """n = 1, m >= 2: find z = (x, y) with ||theta . x - alpha|| < eps/|x|.

    Parameters follow the transference route: a record-derived t with
    t * psi(t/(2K eps)) >= 1/K makes X = 1/(K psi) <= t, and C = eps/t
    then forces residual * |x| <= eps. The final strict inequality is
    checked exactly; on a boundary tie the target doubles and the search
    repeats (still below t_cap).
    """
    if problem.n != 1 or problem.m < 2:
        raise UsageError("solve_sharpened requires n = 1 and m >= 2")
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise UsageError("epsilon must be positive")
    k_const = transference_constant(problem.m, problem.n)
    a = 2 * k_const * epsilon
    s_cap = math.floor(Fraction(t_cap) / a)
    if s_cap < 1:
        raise CapExceededError(f"t_cap = {t_cap} below the first grid point {a}")
    table = psi_records(problem, s_cap, budget)
    m_target = 1 / k_const
    while True:
        t, psi_val = _jarnik_pick(table, k_const, epsilon, m_target, t_cap)
        if t is None:
            if table.degenerate:
                raise DegeneracyError(
                    f"psi degenerates at {table.degenerate_at} before the target",
                    witness=table.degenerate_witness,
                )
            raise CapExceededError(
                f"no t <= {t_cap} with t*psi(t/(2K*eps)) >= {m_target}"
            )
        c_bound = epsilon / t
        x_bound = 1 / (k_const * psi_val)
        try:
            cert = solve_bounded(
                problem, c_bound, x_bound, include_origin=False, budget=budget
            )
        except NoSolutionError:
            m_target *= 2
            continue
        x_norm = cert.x_norm
        if x_norm >= 1 and cert.residual_norm * x_norm < epsilon:
            params = dict(cert.parameters)
            params.update(
                {
                    "epsilon": epsilon,
                    "K": k_const,
                    "M": m_target,
                    "t": t,
                    "s": t / a,
                    "psi_s": psi_val,
                }
            )
            return SolutionCertificate(
                point=cert.point,
                residual_norm=cert.residual_norm,
                x_norm=x_norm,
                bound_required=epsilon / x_norm,
                primitive=cert.primitive,
                norm_kind="nearest-int",
                parameters=params,
            )
        m_target *= 2


def gcd_shift(u1: int, u2: int) -> int:
    """Smallest v >= 0 with gcd(u1 + v, u2) = 1."""
    if u2 == 0:
        raise UsageError("u2 must be nonzero")
    v = 0
    while math.gcd(u1 + v, u2) != 1:
        v += 1
    return v


def _next_pair_coprime(u1: int, u2: int, after: int) -> int:
    v = after + 1
    while math.gcd(u1 + v, u2) != 1:
        v += 1
    return v


def solve_primitive(
    problem: ApproximationProblem,
    epsilon,
    count: int = 1,
    t_start: int = 16,
    t_cap: int = 10**7,
    budget: int | None = None,
) -> list[SolutionCertificate]:
    """Primitive points z with small inhomogeneous residual, `count` of them.

    Case (a), n >= 2: |theta_bar z - alpha| < eps in sup norm.
    Case (b), n = 1 and m >= 2: the sharpened bound eps / |x|.

    One construction serves both: at scale t, cover the shift (0, -alpha)
    by d! times the primal body, write the covering point over the
    extended minima basis, force a usable second coefficient if needed,
    and add v copies of the first basis vector with v the minimal gcd
    shift — coefficient coprimality transfers to coordinate primitivity
    through the unimodular basis. The scale doubles between accepted
    points, which keeps the collected points distinct with nondecreasing
    |x|; each certificate is checked exactly before acceptance.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise UsageError("epsilon must be positive")
    if count < 1:
        raise UsageError("count must be >= 1")
    if problem.n >= 2:
        case = "a"
    elif problem.n == 1 and problem.m >= 2:
        case = "b"
    else:
        raise UsageError("need n >= 2 (sup-norm case) or n = 1, m >= 2 (sharpened case)")

    certs: list[SolutionCertificate] = []
    seen: set[tuple[int, ...]] = set()
    last_x_norm = Fraction(0)
    t = int(t_start)
    repairs = 0
    while len(certs) < count:
        if t > t_cap:
            raise CapExceededError(
                f"collected {len(certs)}/{count} primitive certificates below t_cap = {t_cap}"
            )
        cert = _primitive_attempt(problem, epsilon, case, t, budget)
        t *= 2
        if cert is None:
            continue
        if cert.point.z in seen or cert.x_norm < last_x_norm:
            continue
        seen.add(cert.point.z)
        last_x_norm = cert.x_norm
        repairs += cert.parameters.get("repairs", 0)
        certs.append(cert)
    return certs


def _primitive_attempt(
    problem: ApproximationProblem, epsilon: Fraction, case: str, t: int, budget
) -> Optional[SolutionCertificate]:
    pv = psi(problem, t, budget)
    if pv.degenerate:
        raise DegeneracyError(
            f"psi({t}) = 0 at y = {pv.witness}: no nondegenerate scales remain",
            witness=pv.witness,
        )
    g = GaugeSpec(problem, Fraction(t), pv.value, GaugeKind.PRIMAL)
    frame = build_cover_frame(g, budget=budget)
    basis = frame.basis
    shift = tuple([Fraction(0)] * problem.m) + tuple(-a for a in problem.alpha)
    z = fundamental_cover_find(g, shift, frame)
    coeff = solve_columns([b.z for b in basis], z.z)
    if any(c.denominator != 1 for c in coeff):
        raise AssertionError("basis decomposition must be integral")
    u = [int(c) for c in coeff]
    if all(c == 0 for c in u[1:]):
        z = z + basis[1]
        u[1] += 1
    j = next(k for k in range(1, len(u)) if u[k] != 0)
    v = gcd_shift(u[0], u[j])
    z_star = z + basis[0].scaled(v)
    repairs = 0
    while not z_star.is_primitive:
        # coefficient coprimality should already force this; kept as a guard
        repairs += 1
        v = _next_pair_coprime(u[0], u[j], v)
        z_star = z + basis[0].scaled(v)

    resid_vec = problem.residual(z_star)
    resid = sup_norm(resid_vec)
    x_norm = Fraction(max(abs(c) for c in z_star.x)) if z_star.x else Fraction(0)
    if case == "a":
        delta = Fraction(problem.m, problem.d**2)
        bound = epsilon
        ok = resid < epsilon
    else:
        if x_norm < 1:
            return None
        delta = Fraction(problem.m - 1, (problem.m + 1) * (problem.m + 3))
        bound = epsilon / x_norm
        ok = resid * x_norm < epsilon
    if not ok:
        return None

    big_t = 1 / pv.value
    params = {
        "case": case,
        "epsilon": epsilon,
        "t": Fraction(t),
        "T": big_t,
        "psi_t": pv.value,
        "v": v,
        "u_j": u[j],
        "repairs": repairs,
        "delta": delta,
    }
    env, _ = rational_power_ceil(Fraction(abs(u[j])), delta.numerator, delta.denominator)
    params["v_envelope"] = env
    if case == "b":
        # dual-gap threshold selection, reported for the accepted point only
        params["M"] = Fraction(t) * pv.value
        gd = GaugeSpec(problem, Fraction(t), pv.value, GaugeKind.DUAL)
        mu_top = successive_minima(gd, budget=budget).values[-1]
        w, w_exact = rational_power_floor(big_t, problem.m - 1, problem.m + 3)
        params["mu_top"] = mu_top
        params["W"] = w
        params["W_exact"] = w_exact
        params["T1"] = big_t if mu_top >= w else big_t * w
    return SolutionCertificate(
        point=z_star,
        residual_norm=resid,
        x_norm=x_norm,
        bound_required=bound,
        primitive=True,
        norm_kind="sup",
        parameters=params,
    )


@dataclass(frozen=True)
class ScanRecord:
    x: int
    y: int
    residual: Fraction
    stat_upper: Optional[Interval]  # x*r / (ln x / ln ln x)^2
    stat_lower: Optional[Interval]  # x*r * ln ln x / sqrt(ln x)


@dataclass(frozen=True)
class ScanReport:
    theta: Fraction
    alpha: Fraction
    x_max: int
    records: tuple[ScanRecord, ...]
    exact_hit: bool  # a record reached residual zero


def _record_stats(x: int, resid: Fraction) -> tuple[Optional[Interval], Optional[Interval]]:
    if x < 3:
        # ln ln x <= 0 for x <= e; the normalizations only make sense past that
        return None, None
    xr = x * resid
    ln_x = ln_interval(Fraction(x))
    ln_ln = (ln_interval(ln_x[0])[0], ln_interval(ln_x[1])[1])
    upper = interval_div_pos(
        interval_mul((xr, xr), interval_mul(ln_ln, ln_ln)),
        interval_mul(ln_x, ln_x),
    )
    sqrt_ln = (sqrt_interval(ln_x[0])[0], sqrt_interval(ln_x[1])[1])
    lower = interval_div_pos(interval_mul((xr, xr), ln_ln), sqrt_ln)
    return upper, lower


def primitive_record_scan(theta, alpha, x_max: int) -> ScanReport:
    """Records of |x theta - alpha - y| over primitive pairs, x = 1..x_max.

    For each x the best y with gcd(x, y) = 1 is taken (the nearest integer
    when coprime, else stepping outward — the step always terminates).
    A record is a strict new minimum of the residual. Each record carries
    the two log-normalized statistics as certified rational intervals.
    """
    theta = Fraction(theta)
    alpha = Fraction(alpha)
    x_max = int(x_max)
    if x_max < 1:
        raise UsageError("x_max must be >= 1")
    q, nums = common_denominator([theta, alpha])
    p_units, a_units = nums
    best: Optional[Fraction] = None
    records: list[ScanRecord] = []
    exact_hit = False
    for x in range(1, x_max + 1):
        w = x * p_units - a_units  # numerator of x*theta - alpha over q
        y0 = (2 * w + q) // (2 * q)  # nearest integer (halves round up)
        k = 0
        cands: list[tuple[Fraction, int]] = []
        while not cands:
            for y in ((y0,) if k == 0 else (y0 - k, y0 + k)):
                if math.gcd(x, abs(y)) == 1:
                    cands.append((abs(Fraction(w - y * q, q)), y))
            k += 1
        resid, y = min(cands)
        if best is None or resid < best:
            best = resid
            up, low = _record_stats(x, resid)
            records.append(ScanRecord(x, y, resid, up, low))
            if resid == 0:
                exact_hit = True
                break
    return ScanReport(theta, alpha, x_max, tuple(records), exact_hit)
