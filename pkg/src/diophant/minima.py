"""Parallelepiped gauges, successive minima, duality checks, basis extension.

Two symmetric convex parallelepipeds are attached to a problem at scale t
(with p = psi(t) > 0):

    primal body:  |theta x - y| <= 1/t,      |x| <= 1/p
    dual body:    |theta^T y - x| <= p,      |y| <= t

Membership at scale s is gauge <= s, with

    F(z) = max(t * |theta x - y|, p * |x|)          (primal)
    G(z) = max(|theta^T y - x| / p, |y| / t)        (dual)

lambda_1 <= ... <= lambda_d are the primal successive minima, mu_nu the
dual ones (the dual body is the one pinned down by mu_1 = 1 and the
Minkowski volume bound; both bodies are explicit products of slabs here).
All minima come with realizing primitive, linearly independent lattice
points, found by exact greedy search over a box that provably contains
every candidate: Mahler's pairing gives lambda_nu <= (d-1)! and Minkowski
gives mu_d <= 1/(t^n p^m), so the slab structure bounds each coordinate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence, Union

from .core import (
    ApproximationProblem,
    LatticePoint,
    common_denominator,
    effective_budget,
    sup_norm,
)
from .errors import (
    BudgetExceededError,
    DegeneracyError,
    RadiusInsufficientError,
    UsageError,
)
from .intlin import (
    IndependenceTracker,
    adjugate_columns,
    det_int,
    hnf_upper_columns,
    solve_columns,
)
from .psi import psi
from .roots import rational_power_ceil, rational_power_floor


class GaugeKind(Enum):
    PRIMAL = "primal"
    DUAL = "dual"


@dataclass(frozen=True)
class GaugeSpec:
    """A problem frozen at scale t with its cached positive psi(t)."""

    problem: ApproximationProblem
    t: Fraction
    psi_t: Fraction
    kind: GaugeKind

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))
        object.__setattr__(self, "psi_t", Fraction(self.psi_t))
        if self.t < 1:
            raise UsageError("gauge scale t must be >= 1")
        if self.psi_t <= 0:
            raise DegeneracyError("degenerate gauge: psi(t) must be positive")

    @property
    def d(self) -> int:
        return self.problem.d


def _make_gauge(problem, t, kind, psi_t=None, budget=None) -> GaugeSpec:
    t = Fraction(t)
    if psi_t is None:
        pv = psi(problem, t, budget)
        if pv.degenerate:
            raise DegeneracyError(
                f"psi({t}) = 0: theta^T y is integral at y = {pv.witness}",
                witness=pv.witness,
            )
        psi_t = pv.value
    return GaugeSpec(problem, t, Fraction(psi_t), kind)


def primal_gauge(problem: ApproximationProblem, t, psi_t=None, budget=None) -> GaugeSpec:
    return _make_gauge(problem, t, GaugeKind.PRIMAL, psi_t, budget)


def dual_gauge(problem: ApproximationProblem, t, psi_t=None, budget=None) -> GaugeSpec:
    return _make_gauge(problem, t, GaugeKind.DUAL, psi_t, budget)


def gauge_value(g: GaugeSpec, z: Union[LatticePoint, Sequence[Fraction]]) -> Fraction:
    """Exact gauge of a lattice point or any rational d-vector."""
    if isinstance(z, LatticePoint):
        xs, ys = z.x, z.y
    else:
        if len(z) != g.d:
            raise UsageError(f"vector has length {len(z)}, expected d = {g.d}")
        xs, ys = z[: g.problem.m], z[g.problem.m :]
    xs = tuple(Fraction(c) for c in xs)
    ys = tuple(Fraction(c) for c in ys)
    if g.kind is GaugeKind.PRIMAL:
        tx = g.problem.theta_apply(xs)
        resid = tuple(a - b for a, b in zip(tx, ys))
        parts = []
        if resid:
            parts.append(g.t * sup_norm(resid))
        if xs:
            parts.append(g.psi_t * max(abs(c) for c in xs))
        return max(parts) if any(c != 0 for c in xs + ys) else Fraction(0)
    ty = g.problem.theta_t_apply(ys)
    resid = tuple(a - b for a, b in zip(ty, xs))
    parts = []
    if resid:
        parts.append(sup_norm(resid) / g.psi_t)
    if ys:
        parts.append(max(abs(c) for c in ys) / g.t)
    return max(parts) if any(c != 0 for c in xs + ys) else Fraction(0)


def candidate_bound(g: GaugeSpec) -> Fraction:
    """Gauge level below which all minima points provably live.

    Primal: lambda_nu <= (d-1)!/mu_{d+1-nu} <= (d-1)! since mu_1 = 1.
    Dual: mu_1 * ... * mu_d * Vol <= 2^d with Vol = 2^d t^n p^m and mu_1 = 1
    force mu_d <= 1/(t^n p^m).
    """
    d = g.d
    if g.kind is GaugeKind.PRIMAL:
        return Fraction(math.factorial(d - 1))
    n, m = g.problem.n, g.problem.m
    return 1 / (g.t**n * g.psi_t**m)


def _coordinate_bounds(g: GaugeSpec, bound: Fraction | None = None) -> tuple[list[int], list[int]]:
    """Per-coordinate (free box, slab widths) covering {gauge <= bound}.

    Returns (driver bounds, follower bounds): for the primal gauge the
    driver is x (|x_j| <= bound/p) and each y_i is pinned to a slab around
    (theta x)_i of half-width bound/t, and dually with roles swapped.
    """
    problem = g.problem
    if bound is None:
        bound = candidate_bound(g)
    if g.kind is GaugeKind.PRIMAL:
        bx = math.floor(bound / g.psi_t)
        half = bound / g.t
        by = [
            math.floor(sum(abs(c) for c in row) * bx + half) for row in problem.theta
        ]
        return [bx] * problem.m, by
    by = math.floor(bound * g.t)
    half = bound * g.psi_t
    bx = [
        math.floor(
            sum(abs(problem.theta[i][j]) for i in range(problem.n)) * by + half
        )
        for j in range(problem.m)
    ]
    return [by] * problem.n, bx


def required_radius(g: GaugeSpec, bound: Fraction | None = None) -> int:
    """Smallest uniform box radius whose box contains {gauge <= bound}."""
    driver, follower = _coordinate_bounds(g, bound)
    return max(driver + follower) if driver + follower else 0


def default_radius(g: GaugeSpec) -> int:
    """Certified radius with a safety factor of 2."""
    return 2 * required_radius(g)


_SCALAR_FAST_MIN = 20_000


def _scalar_driver_candidates(g: GaugeSpec, bound: Fraction, clip: int, budget: int | None):
    """Fast path for a one-dimensional driver (primal m=1 or dual n=1).

    With slab half-width below 1/2 each follower coordinate admits at most
    its nearest integer, so membership reduces to per-coordinate residue
    threshold tests that vectorize exactly in int64 (same overflow guards
    as the psi scan). Survivors are rare; their gauges are rebuilt as
    exact Fractions.
    """
    problem = g.problem
    primal = g.kind is GaugeKind.PRIMAL
    if primal:
        coords = [problem.theta[i][0] for i in range(problem.n)]
        slab = bound / g.t
        drv_max = min(math.floor(bound / g.psi_t), clip)
    else:
        coords = [problem.theta[0][j] for j in range(problem.m)]
        slab = bound * g.psi_t
        drv_max = min(math.floor(bound * g.t), clip)
    limit = effective_budget(budget)
    if 2 * drv_max + 1 > limit:
        raise BudgetExceededError(2 * drv_max + 1, limit)
    if drv_max < 1:
        return [], None

    import numpy as np

    mask = np.ones(drv_max, dtype=bool)
    sn, sd = slab.numerator, slab.denominator
    xs = np.arange(1, drv_max + 1, dtype=np.int64)
    for c in coords:
        p, q = c.numerator % c.denominator, c.denominator
        if q >= (1 << 43) or drv_max * (q >> 20) >= (1 << 62) or drv_max * sd >= (1 << 62):
            return None  # guards failed; caller falls back to the generic path
        p_hi, p_lo = p >> 20, p & ((1 << 20) - 1)
        r = ((xs * p_hi % q) << 20) % q
        r = (r + xs * p_lo % q) % q
        dist = np.minimum(r, q - r)
        mask &= dist * sd <= q * sn
    out = []
    for x in xs[mask]:
        x = int(x)
        for sx in (-x, x):
            fol = []
            dist_max = Fraction(0)
            for c in coords:
                w = sx * c.numerator
                y = (2 * w + c.denominator) // (2 * c.denominator)
                fol.append(y)
                dist_max = max(dist_max, abs(Fraction(w - y * c.denominator, c.denominator)))
            if primal:
                gauge = max(g.t * dist_max, g.psi_t * x)
                z = (sx,) + tuple(fol)
            else:
                gauge = max(dist_max / g.psi_t, Fraction(x) / g.t)
                z = tuple(fol) + (sx,)
            if max(abs(c) for c in z) <= clip:
                out.append((gauge, z))
    return out, None


def _region_candidates(g: GaugeSpec, bound: Fraction, clip: int, budget: int | None):
    """All lattice points with gauge <= bound and |z| <= clip.

    Yields (gauge_units, z) pairs with gauge = gauge_units / denom; the
    integer keys make the sort exact and cheap. Driver coordinates are
    enumerated over their box; follower coordinates only over the few
    integers inside their slab.
    """
    problem = g.problem
    m, n = problem.m, problem.n
    scalar_driver = (g.kind is GaugeKind.PRIMAL and m == 1) or (
        g.kind is GaugeKind.DUAL and n == 1
    )
    if scalar_driver:
        slab = bound / g.t if g.kind is GaugeKind.PRIMAL else bound * g.psi_t
        span = (
            math.floor(bound / g.psi_t)
            if g.kind is GaugeKind.PRIMAL
            else math.floor(bound * g.t)
        )
        if slab < Fraction(1, 2) and min(span, clip) >= _SCALAR_FAST_MIN:
            fast = _scalar_driver_candidates(g, bound, clip, budget)
            if fast is not None:
                return fast
    q, nums = common_denominator([c for row in problem.theta for c in row])
    p_rows = [nums[i * m : (i + 1) * m] for i in range(n)]
    tn, td = g.t.numerator, g.t.denominator
    pn, pd = g.psi_t.numerator, g.psi_t.denominator
    bn, bd = bound.numerator, bound.denominator

    primal = g.kind is GaugeKind.PRIMAL
    driver_bounds, _ = _coordinate_bounds(g, bound)
    driver_bounds = [min(b, clip) for b in driver_bounds]

    if primal:
        # slab half-width bound/t; y_i in [(w_i - Q*bound/t)/Q, (w_i + Q*bound/t)/Q]
        slab_num, slab_den = bn * td, bd * tn
        denom = td * q * pd
        coef_resid = tn * pd
        coef_drv = pn * td * q
        n_follow = n
    else:
        slab_num, slab_den = bn * pn, bd * pd
        denom = q * pn * tn
        coef_resid = pd * tn
        coef_drv = td * q * pn
        n_follow = m

    total = 1
    for b in driver_bounds:
        total *= 2 * b + 1
    total *= (2 * (slab_num // slab_den) + 2) ** n_follow
    limit = effective_budget(budget)
    if total > limit:
        raise BudgetExceededError(total, limit)

    import itertools

    follow_cols = (
        [[p_rows[i][j] for j in range(m)] for i in range(n)]
        if primal
        else [[p_rows[i][j] for i in range(n)] for j in range(m)]
    )
    out = []
    for drv in itertools.product(*(range(-b, b + 1) for b in driver_bounds)):
        drv_abs = max(abs(c) for c in drv) if drv else 0
        w = [sum(col[k] * drv[k] for k in range(len(drv))) for col in follow_cols]
        ranges = []
        ok = True
        for wi in w:
            num_lo = wi * slab_den - q * slab_num
            num_hi = wi * slab_den + q * slab_num
            den = q * slab_den
            lo = -((-num_lo) // den)
            hi = num_hi // den
            lo = max(lo, -clip)
            hi = min(hi, clip)
            if lo > hi:
                ok = False
                break
            ranges.append(range(lo, hi + 1))
        if not ok:
            continue
        for fol in itertools.product(*ranges):
            if drv_abs == 0 and all(c == 0 for c in fol):
                continue
            resid_units = max(abs(wi - q * fi) for wi, fi in zip(w, fol)) if w else 0
            units = max(coef_resid * resid_units, coef_drv * drv_abs)
            z = drv + fol if primal else fol + drv
            out.append((units, z))
    return out, denom


@dataclass(frozen=True)
class SideMinima:
    """One body's minima: values, realizing primitive independent points."""

    kind: GaugeKind
    values: tuple[Fraction, ...]
    points: tuple[LatticePoint, ...]
    search_radius: int
    certified: bool


def successive_minima(
    g: GaugeSpec,
    radius: int | None = None,
    budget: int | None = None,
    bound_cap: Fraction | None = None,
) -> SideMinima:
    """Greedy exact successive minima of one body, restricted to |z| <= radius.

    The search enumerates the region {gauge <= b} for b = 1, 2, 4, ...
    capped by the provable candidate bound (or a caller-supplied sharper
    cap, e.g. (d-1)!/lambda_1 for the dual side): as soon as the region
    holds d independent points the greedy values there are exact, because
    every point of smaller gauge was enumerated too. With no explicit
    radius the box always covers the region and the result is certified;
    a user radius clips the region, yielding the box-restricted minima
    (uncertified when the box is too small to cover it) or
    RadiusInsufficientError when even the cap-level region in the box
    lacks d independent points.
    """
    theory = candidate_bound(g)
    cap = min(theory, Fraction(bound_cap)) if bound_cap is not None else theory
    d = g.d
    m = g.problem.m

    bounds_ladder: list[Fraction] = []
    b = Fraction(1)
    while b < cap:
        bounds_ladder.append(b)
        b *= 2
    bounds_ladder.append(cap)

    achieved: tuple[Fraction, ...] = ()
    for bound in bounds_ladder:
        clip = radius if radius is not None else required_radius(g, bound)
        cands, denom = _region_candidates(g, bound, int(clip), budget)
        if len(cands) < d:
            continue
        cands.sort()
        tracker = IndependenceTracker(d)
        values: list[Fraction] = []
        points: list[LatticePoint] = []
        for units, z in cands:
            if tracker.add(z):
                pt = LatticePoint.from_z(z, m)
                assert pt.is_primitive, "greedy must pick primitive representatives"
                values.append(units if denom is None else Fraction(units, denom))
                points.append(pt)
                if len(points) == d:
                    break
        if len(points) == d:
            search_radius = int(clip)
            certified = radius is None or radius >= required_radius(g, bound)
            return SideMinima(g.kind, tuple(values), tuple(points), search_radius, certified)
        achieved = tuple(values)
    raise RadiusInsufficientError(
        f"fewer than d = {d} independent points with gauge <= {cap} inside "
        f"|z| <= {radius if radius is not None else required_radius(g, cap)}",
        achieved=achieved,
    )


@dataclass(frozen=True)
class MinimaReport:
    """Both bodies' minima at a common scale t."""

    t: Fraction
    psi_t: Fraction
    m: int
    n: int
    lambdas: tuple[Fraction, ...]
    mus: tuple[Fraction, ...]
    points_primal: tuple[LatticePoint, ...]
    points_dual: tuple[LatticePoint, ...]
    search_radius: int
    certified: bool

    @property
    def d(self) -> int:
        return self.m + self.n


def minima_report(
    problem: ApproximationProblem,
    t,
    radius: int | None = None,
    budget: int | None = None,
) -> MinimaReport:
    gp = primal_gauge(problem, t, budget=budget)
    gd = GaugeSpec(problem, gp.t, gp.psi_t, GaugeKind.DUAL)
    prim = successive_minima(gp, radius, budget)
    # Mahler caps the dual search: mu_d <= (d-1)!/lambda_1
    dual_cap = Fraction(math.factorial(problem.d - 1)) / prim.values[0]
    dual = successive_minima(gd, radius, budget, bound_cap=dual_cap)
    return MinimaReport(
        t=gp.t,
        psi_t=gp.psi_t,
        m=problem.m,
        n=problem.n,
        lambdas=prim.values,
        mus=dual.values,
        points_primal=prim.points,
        points_dual=dual.points,
        search_radius=max(prim.search_radius, dual.search_radius),
        certified=prim.certified and dual.certified,
    )


@dataclass(frozen=True)
class MahlerRow:
    nu: int
    product: Fraction
    lower: Fraction
    upper: Fraction
    ok: bool


def mahler_check(report: MinimaReport) -> list[MahlerRow]:
    """Exact pairing check: 1/d <= lambda_nu * mu_{d+1-nu} <= (d-1)! for each nu."""
    d = report.d
    lower = Fraction(1, d)
    upper = Fraction(math.factorial(d - 1))
    rows = []
    for nu in range(1, d + 1):
        prod = report.lambdas[nu - 1] * report.mus[d - nu]
        rows.append(MahlerRow(nu, prod, lower, upper, lower <= prod <= upper))
    return rows


@dataclass(frozen=True)
class MinkowskiCheck:
    lhs: Fraction
    lower: Fraction
    volume: Fraction
    volume_ok: bool
    ok: bool


def minkowski_dual_check(report: MinimaReport) -> MinkowskiCheck:
    """(mu_d)^d * t^n * psi^m >= 1/d!, plus the dual volume identity."""
    d = report.d
    mu_top = report.mus[-1]
    lhs = mu_top**d * report.t**report.n * report.psi_t**report.m
    lower = Fraction(1, math.factorial(d))
    # the dual body is n slabs of width 2t and m slabs of width 2*psi
    volume = (2 * report.t) ** report.n * (2 * report.psi_t) ** report.m
    volume_ok = volume == Fraction(2) ** d * report.t**report.n * report.psi_t**report.m
    return MinkowskiCheck(lhs, lower, volume, volume_ok, lhs >= lower and volume_ok)


def basis_extend(
    points: Sequence[LatticePoint], g: GaugeSpec
) -> tuple[LatticePoint, ...]:
    """Extend d independent points to a Z^d basis keeping the first point.

    Replaces the points by lattice vectors inside the half-open
    parallelepiped they span (triangular HNF of the coefficient lattice),
    so each output is a [0,1]-combination of the inputs: determinant +-1,
    first vector preserved, and gauges at most d * max input gauge — in
    the intended situation (inputs of gauge <= (d-1)!) at most d!.
    """
    d = g.d
    m = g.problem.m
    if len(points) != d:
        raise UsageError(f"need exactly d = {d} points")
    if not points[0].is_primitive:
        raise UsageError("first point must be primitive")
    cols = [list(pt.z) for pt in points]
    det = det_int(cols)
    if det == 0:
        raise UsageError("points are linearly dependent")
    det_a, adj = adjugate_columns(cols)
    h = hnf_upper_columns(adj)
    big_d = abs(det_a)
    out = []
    for col in h:
        coords = [
            sum(cols[k][i] * col[k] for k in range(d)) for i in range(d)
        ]
        if any(c % big_d for c in coords):
            raise AssertionError("basis vector must be integral")
        out.append(LatticePoint.from_z([c // big_d for c in coords], m))
    assert abs(det_int([pt.z for pt in out])) == 1
    assert out[0] == points[0]
    return tuple(out)


@dataclass(frozen=True)
class CoverFrame:
    """Minima points and extended basis reused across covering queries."""

    gauge: GaugeSpec
    points: tuple[LatticePoint, ...]
    basis: tuple[LatticePoint, ...]


def build_cover_frame(
    g: GaugeSpec, radius: int | None = None, budget: int | None = None
) -> CoverFrame:
    if g.kind is not GaugeKind.PRIMAL:
        raise UsageError("covering frames are built from the primal body")
    side = successive_minima(g, radius, budget)
    basis = basis_extend(side.points, g)
    return CoverFrame(g, side.points, basis)


def fundamental_cover_find(
    g: GaugeSpec,
    shift: Sequence[Fraction],
    frame: Optional[CoverFrame] = None,
    budget: int | None = None,
) -> LatticePoint:
    """A lattice point z with gauge(z - shift) <= d!.

    Every translate of d! times the primal body contains a lattice point:
    the parallelepiped of the minima points holds a fundamental domain.
    Construction: round the shift's coefficients over the extended basis
    (so exact lattice shifts come back exactly), then floor-correct the
    remainder over the minima points, whose coefficient fractional parts
    cost at most sum lambda_nu < d * (d-1)! = d! in gauge.
    """
    if len(shift) != g.d:
        raise UsageError(f"shift must have length d = {g.d}")
    shift = tuple(Fraction(c) for c in shift)
    if frame is None:
        frame = build_cover_frame(g, budget=budget)
    m = g.problem.m
    basis_cols = [pt.z for pt in frame.basis]
    coeff = solve_columns(basis_cols, shift)
    rounded = [math.floor(c + Fraction(1, 2)) for c in coeff]
    z0 = [sum(basis_cols[k][i] * rounded[k] for k in range(g.d)) for i in range(g.d)]
    rem = [s - z for s, z in zip(shift, z0)]
    point_cols = [pt.z for pt in frame.points]
    coeff2 = solve_columns(point_cols, rem)
    floored = [math.floor(c) for c in coeff2]
    z1 = [sum(point_cols[k][i] * floored[k] for k in range(g.d)) for i in range(g.d)]
    z = [a + b for a, b in zip(z0, z1)]
    result = LatticePoint.from_z(z, m)
    assert gauge_value(g, [a - b for a, b in zip(z, shift)]) <= math.factorial(g.d)
    return result


@dataclass(frozen=True)
class MinimaNormBounds:
    """Certified bounds on the minima points in terms of T = 1/psi(t)."""

    t_inv_psi: Fraction  # T
    x_bound: Fraction  # max_nu |x(nu)|
    resid_first_upper: Fraction  # |theta_bar z(1)|, certified upper enclosure
    resid_rest: Fraction  # max_{nu >= 2} |theta_bar z(nu)|


def minima_norm_bounds(g: GaugeSpec) -> MinimaNormBounds:
    """Point-norm and residual bounds for the primal minima points.

    The first point's residual bound involves (d!)^(1/d) / (T t)^(m/d);
    both roots are replaced by certified rational enclosures so the
    returned bound is still a true upper bound.
    """
    if g.kind is not GaugeKind.PRIMAL:
        raise UsageError("norm bounds describe the primal minima points")
    d, m = g.d, g.problem.m
    big_t = 1 / g.psi_t
    fact = Fraction(math.factorial(d - 1))
    root_up, _ = rational_power_ceil(Fraction(math.factorial(d)), 1, d)
    denom_lo, _ = rational_power_floor(big_t * g.t, m, d)
    if denom_lo <= 0:
        raise UsageError("T*t too small for a positive certified root")
    return MinimaNormBounds(
        t_inv_psi=big_t,
        x_bound=fact * big_t,
        resid_first_upper=fact * root_up / denom_lo,
        resid_rest=fact / g.t,
    )


@dataclass(frozen=True)
class CaseBounds:
    """Bound set from the dual-gap case split at threshold W."""

    case: str  # "a" if mu_top >= W else "b"
    w_threshold: Fraction
    m_lower: Fraction
    mu_top: Fraction
    x_first: Fraction
    x_rest: Fraction
    resid_first: Fraction
    resid_rest: Fraction


def dual_gap_case_bounds(
    g: GaugeSpec,
    w_threshold,
    m_lower,
    mu_top: Fraction | None = None,
    radius: int | None = None,
    budget: int | None = None,
) -> CaseBounds:
    """Case analysis on mu_{m+1}(t) >= W for n = 1 systems.

    Requires t * psi(t) >= m_lower >= 1. Case (a) trades the first point's
    norm for a W-fold better residual; case (b) keeps uniform norms with
    the weaker residual m! (m+1)! W^(m+1) / T^m.
    """
    problem = g.problem
    if problem.n != 1:
        raise UsageError("the case split requires n = 1")
    w = Fraction(w_threshold)
    m_low = Fraction(m_lower)
    if m_low < 1:
        raise UsageError("need M >= 1")
    if g.t * g.psi_t < m_low:
        raise UsageError(f"t*psi(t) = {g.t * g.psi_t} < M = {m_low}")
    m = problem.m
    big_t = 1 / g.psi_t
    if mu_top is None:
        gd = GaugeSpec(problem, g.t, g.psi_t, GaugeKind.DUAL)
        mu_top = successive_minima(gd, radius, budget).values[-1]
    mfact = Fraction(math.factorial(m))
    if mu_top >= w:
        return CaseBounds(
            case="a",
            w_threshold=w,
            m_lower=m_low,
            mu_top=mu_top,
            x_first=mfact * big_t / w,
            x_rest=mfact * big_t,
            resid_first=mfact / (big_t * w),
            resid_rest=mfact / (big_t * m_low),
        )
    resid = mfact * math.factorial(m + 1) * w ** (m + 1) / big_t**m
    return CaseBounds(
        case="b",
        w_threshold=w,
        m_lower=m_low,
        mu_top=mu_top,
        x_first=mfact * big_t,
        x_rest=mfact * big_t,
        resid_first=resid,
        resid_rest=resid,
    )


@dataclass(frozen=True)
class ScaledBounds:
    """Threshold selection W = T^((m-1)/(m+3)) with the T1 case split."""

    w_threshold: Fraction
    w_exact: bool
    t_one: Fraction
    case: str
    x_first: Fraction
    x_rest: Fraction
    resid_first: Fraction
    resid_rest: Fraction


def select_scaled_bounds(big_t, m: int, m_lower, mu_top) -> ScaledBounds:
    """Unified bounds with W = T^((m-1)/(m+3)), requiring W >= M >= 1.

    T1 = T in the wide-dual-gap case, T1 = T*W otherwise; either way
    |x(1)| <= m! T1 / W, |x(nu)| <= m! T1 and the residuals obey
    m!(m+1)!/(T1 W) and m!(m+1)!/(T1 M). W is the exact rational root
    when one exists, else a certified rational lower bound (which keeps
    every displayed bound valid).
    """
    big_t = Fraction(big_t)
    m_low = Fraction(m_lower)
    mu_top = Fraction(mu_top)
    if m < 2:
        raise UsageError("need m >= 2")
    if m_low < 1:
        raise UsageError("need M >= 1")
    w, exact = rational_power_floor(big_t, m - 1, m + 3)
    if w < m_low:
        raise UsageError(f"W = {w} < M = {m_low}: T too small for this selection")
    if mu_top >= w:
        case, t_one = "a", big_t
    else:
        case, t_one = "b", big_t * w
    mfact = Fraction(math.factorial(m))
    m1fact = Fraction(math.factorial(m + 1))
    return ScaledBounds(
        w_threshold=w,
        w_exact=exact,
        t_one=t_one,
        case=case,
        x_first=mfact * t_one / w,
        x_rest=mfact * t_one,
        resid_first=mfact * m1fact / (t_one * w),
        resid_rest=mfact * m1fact / (t_one * m_low),
    )
