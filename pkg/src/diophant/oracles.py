"""Brute-force reference implementations, independent of the main paths.

Everything here enumerates full boxes with plain Fraction arithmetic and
no shortcuts: no shells, no slabs, no residue tricks, no numpy. That
independence is the point — the main modules are tested against these on
small instances, and the fixture values frozen into the test suite were
produced by these functions. Keep them naive.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .core import (
    ApproximationProblem,
    LatticePoint,
    effective_budget,
    nearest_int_distance,
    sup_norm,
    vector_content,
)
from .errors import BudgetExceededError, UsageError
from .minima import GaugeSpec, gauge_value


class OracleQuantity(Enum):
    PSI = "psi"
    MINIMA = "minima"
    BEST_INHOM = "best-inhom"
    BEST_PRIMITIVE = "best-primitive"
    COVER = "cover"


@dataclass(frozen=True)
class OracleReport:
    quantity: OracleQuantity
    instance: dict
    values: tuple
    witnesses: tuple
    search_box: tuple[int, ...]


def _full_box(bounds: Sequence[int], budget):
    total = 1
    for b in bounds:
        total *= 2 * b + 1
    limit = effective_budget(budget)
    if total > limit:
        raise BudgetExceededError(total, limit)
    return itertools.product(*(range(-b, b + 1) for b in bounds))


def brute_psi(
    problem: ApproximationProblem, t, budget: int | None = None
) -> tuple[Fraction, tuple[int, ...]]:
    """min ||theta^T y|| over 0 < |y| <= t by full enumeration."""
    t_hi = math.floor(Fraction(t))
    if t_hi < 1:
        raise UsageError("t must be >= 1")
    best: Optional[Fraction] = None
    witness: Optional[tuple[int, ...]] = None
    for y in _full_box([t_hi] * problem.n, budget):
        if all(c == 0 for c in y):
            continue
        d = nearest_int_distance(problem.theta_t_apply(y))
        if best is None or d < best:
            best = d
            witness = y
    assert best is not None and witness is not None
    return best, witness


def brute_minima(
    g: GaugeSpec, radius: int, budget: int | None = None
) -> tuple[tuple[Fraction, ...], tuple[LatticePoint, ...]]:
    """Greedy successive minima over the full box |z| <= radius.

    Exponential in d; intended for d <= 4 and small radii only.
    """
    d = g.d
    m = g.problem.m
    pts = []
    for z in _full_box([radius] * d, budget):
        if all(c == 0 for c in z):
            continue
        pts.append((gauge_value(g, LatticePoint.from_z(z, m)), z))
    pts.sort(key=lambda p: (p[0], p[1]))
    values: list[Fraction] = []
    chosen: list[tuple[int, ...]] = []
    for gv, z in pts:
        if _independent(chosen + [z]):
            chosen.append(z)
            values.append(gv)
            if len(chosen) == d:
                break
    if len(chosen) < d:
        raise UsageError(f"box |z| <= {radius} holds fewer than d independent points")
    return tuple(values), tuple(LatticePoint.from_z(z, m) for z in chosen)


def _independent(vectors: list) -> bool:
    rows = [[Fraction(c) for c in v] for v in vectors]
    rank = 0
    ncols = len(rows[0])
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank == len(vectors)


def brute_best_inhomogeneous(
    problem: ApproximationProblem,
    x_max: int,
    primitive_only: bool = False,
    budget: int | None = None,
) -> tuple[Fraction, tuple[int, ...], tuple[int, ...]]:
    """Exact minimum of ||theta x - alpha|| over 0 < |x| <= x_max.

    Returns (residual, x, y); without the primitivity constraint y is the
    nearest integer vector, with it the exact best y among coprime pairs
    (the window widens with a stopping rule, so the optimum is certain).
    """
    x_max = int(x_max)
    if x_max < 1:
        raise UsageError("x_max must be >= 1")
    best = None
    for x in _full_box([x_max] * problem.m, budget):
        if all(c == 0 for c in x):
            continue
        w = tuple(a - b for a, b in zip(problem.theta_apply(x), problem.alpha))
        if primitive_only:
            d, y = _best_coprime_pair(x, w)
        else:
            y = tuple(math.floor(c + Fraction(1, 2)) for c in w)
            d = max(abs(a - b) for a, b in zip(w, y))
        if best is None or d < best[0]:
            best = (d, x, y)
    if best is None:
        raise UsageError("no admissible x in range")
    return best


def _best_coprime_pair(x, w):
    """Exact min of max_i |w_i - y_i| over y with gcd(x, y) = 1.

    Widens the window around the rounded y until the best found beats
    everything outside (points outside window k have residual > k).
    """
    base = [math.floor(c + Fraction(1, 2)) for c in w]
    best = None
    k = 0
    while True:
        for y in itertools.product(*(range(b - k, b + k + 1) for b in base)):
            if vector_content(tuple(x) + tuple(y)) == 1:
                r = max(abs(a - b) for a, b in zip(w, y))
                if best is None or (r, y) < best:
                    best = (r, y)
        if best is not None and best[0] <= k:
            return best
        k += 1


def brute_cover_search(
    g: GaugeSpec, shift: Sequence[Fraction], radius: int, budget: int | None = None
) -> tuple[Fraction, tuple[int, ...]]:
    """Smallest gauge(z - shift) over lattice z in |z| <= radius, with argmin."""
    shift = tuple(Fraction(c) for c in shift)
    best = None
    for z in _full_box([radius] * g.d, budget):
        gv = gauge_value(g, tuple(a - b for a, b in zip(z, shift)))
        if best is None or gv < best[0]:
            best = (gv, z)
    assert best is not None
    return best


def oracle_report(quantity: OracleQuantity, **kwargs) -> OracleReport:
    """Run one oracle and wrap the result for serialization."""
    if quantity is OracleQuantity.PSI:
        problem, t = kwargs["problem"], kwargs["t"]
        value, witness = brute_psi(problem, t, kwargs.get("budget"))
        return OracleReport(
            quantity,
            {"t": Fraction(t)},
            (value,),
            (witness,),
            (math.floor(Fraction(t)),) * problem.n,
        )
    if quantity is OracleQuantity.MINIMA:
        g, radius = kwargs["gauge"], kwargs["radius"]
        values, points = brute_minima(g, radius, kwargs.get("budget"))
        return OracleReport(
            quantity,
            {"t": g.t, "kind": g.kind.value, "radius": radius},
            values,
            tuple(p.z for p in points),
            (radius,) * g.d,
        )
    if quantity in (OracleQuantity.BEST_INHOM, OracleQuantity.BEST_PRIMITIVE):
        problem, x_max = kwargs["problem"], kwargs["x_max"]
        resid, x, y = brute_best_inhomogeneous(
            problem, x_max, quantity is OracleQuantity.BEST_PRIMITIVE, kwargs.get("budget")
        )
        return OracleReport(
            quantity, {"x_max": x_max}, (resid,), (x, y), (x_max,) * problem.m
        )
    if quantity is OracleQuantity.COVER:
        g, shift, radius = kwargs["gauge"], kwargs["shift"], kwargs["radius"]
        value, z = brute_cover_search(g, shift, radius, kwargs.get("budget"))
        return OracleReport(
            quantity,
            {"t": g.t, "radius": radius, "shift": tuple(Fraction(c) for c in shift)},
            (value,),
            (z,),
            (radius,) * g.d,
        )
    raise UsageError(f"unknown oracle quantity: {quantity}")
