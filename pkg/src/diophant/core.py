"""Exact rational core: norms, problem/lattice-point types, box enumeration.

Everything is built on `fractions.Fraction`; nothing in the library ever
rounds. Real inputs (sqrt 2, golden ratio, ...) enter as rational
truncations chosen by the caller, and every inequality downstream is an
exact comparison of rationals.

Convention: theta is stored with n rows and m columns, so `theta @ x`
maps integer vectors x in Z^m to R^n. The extended matrix theta_bar is
[theta | -I_n], acting on z = (x, y) in Z^(m+n) as theta x - y.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from .errors import BudgetExceededError, UsageError

Rational = Fraction
RationalLike = Union[Fraction, int, str]

DEFAULT_BUDGET = 10**8
_BUDGET_ENV = "DIOPHANT_BUDGET"


def effective_budget(budget: int | None = None) -> int:
    """Enumeration point budget: explicit arg, else DIOPHANT_BUDGET, else 10^8."""
    if budget is not None:
        return budget
    env = os.environ.get(_BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or 'p/q' string to an exact Fraction.

    Floats are rejected: accepting them would smuggle binary rounding into
    a library whose whole point is exactness.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise UsageError(f"not an exact rational: {value!r} (floats are not accepted)")


def rational_str(value: Fraction) -> str:
    """Canonical 'p/q' (or 'p' when q=1) rendering used in all JSON output."""
    return str(Fraction(value))


def as_vector(values: Iterable[RationalLike]) -> tuple[Fraction, ...]:
    return tuple(as_rational(v) for v in values)


def as_matrix(rows: Iterable[Iterable[RationalLike]]) -> tuple[tuple[Fraction, ...], ...]:
    mat = tuple(as_vector(row) for row in rows)
    if mat and any(len(row) != len(mat[0]) for row in mat):
        raise UsageError("ragged matrix")
    return mat


def sup_norm(w: Sequence[Fraction]) -> Fraction:
    """max_j |w_j|, exact."""
    if len(w) == 0:
        raise UsageError("sup_norm of empty vector")
    return max(abs(Fraction(c)) for c in w)


def nearest_int_distance(w: Sequence[Fraction]) -> Fraction:
    """max_j min_{a in Z} |w_j - a|: distance to the integer lattice, in [0, 1/2]."""
    if len(w) == 0:
        raise UsageError("nearest_int_distance of empty vector")
    worst = Fraction(0)
    for c in w:
        c = Fraction(c)
        frac = c - math.floor(c)
        worst = max(worst, min(frac, 1 - frac))
    return worst


def nearest_int_vector(w: Sequence[Fraction]) -> tuple[int, ...]:
    """Per-coordinate nearest integer (halves round up: floor(c + 1/2))."""
    return tuple(math.floor(Fraction(c) + Fraction(1, 2)) for c in w)


def common_denominator(values: Iterable[Fraction]) -> tuple[int, list[int]]:
    """(Q, numerators) with values[i] == numerators[i]/Q; Q = lcm of denominators."""
    vals = [Fraction(v) for v in values]
    q = 1
    for v in vals:
        q = q * v.denominator // math.gcd(q, v.denominator)
    return q, [v.numerator * (q // v.denominator) for v in vals]


def vector_content(v: Sequence[int]) -> int:
    """gcd of the coordinates (0 for the zero vector)."""
    g = 0
    for c in v:
        g = math.gcd(g, abs(c))
    return g


@dataclass(frozen=True)
class LatticePoint:
    """z = (x, y) in Z^(m+n); x is the approximating part, y the integer part."""

    x: tuple[int, ...]
    y: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(int(c) for c in self.x))
        object.__setattr__(self, "y", tuple(int(c) for c in self.y))

    @property
    def z(self) -> tuple[int, ...]:
        return self.x + self.y

    @property
    def d(self) -> int:
        return len(self.x) + len(self.y)

    def content(self) -> int:
        return vector_content(self.z)

    @property
    def is_primitive(self) -> bool:
        return self.content() == 1

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.z)

    @classmethod
    def from_z(cls, z: Sequence[int], m: int) -> "LatticePoint":
        z = tuple(int(c) for c in z)
        return cls(z[:m], z[m:])

    def __add__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(
            tuple(a + b for a, b in zip(self.x, other.x)),
            tuple(a + b for a, b in zip(self.y, other.y)),
        )

    def __sub__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(
            tuple(a - b for a, b in zip(self.x, other.x)),
            tuple(a - b for a, b in zip(self.y, other.y)),
        )

    def scaled(self, k: int) -> "LatticePoint":
        return LatticePoint(tuple(k * c for c in self.x), tuple(k * c for c in self.y))


@dataclass(frozen=True)
class ApproximationProblem:
    """An n x m rational matrix theta together with the target alpha in Q^n."""

    theta: tuple[tuple[Fraction, ...], ...]
    alpha: tuple[Fraction, ...]

    def __post_init__(self):
        theta = as_matrix(self.theta)
        alpha = as_vector(self.alpha)
        if not theta or not theta[0]:
            raise UsageError("theta must be a nonempty matrix")
        if len(alpha) != len(theta):
            raise UsageError(
                f"alpha has length {len(alpha)}, expected n = {len(theta)} rows of theta"
            )
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "alpha", alpha)

    @property
    def n(self) -> int:
        return len(self.theta)

    @property
    def m(self) -> int:
        return len(self.theta[0])

    @property
    def d(self) -> int:
        return self.m + self.n

    def theta_bar(self) -> tuple[tuple[Fraction, ...], ...]:
        """[theta | -I_n], n rows and d columns."""
        n = self.n
        return tuple(
            row + tuple(Fraction(-1) if i == j else Fraction(0) for j in range(n))
            for i, row in enumerate(self.theta)
        )

    def theta_apply(self, x: Sequence[RationalLike]) -> tuple[Fraction, ...]:
        if len(x) != self.m:
            raise UsageError(f"x has length {len(x)}, expected m = {self.m}")
        xs = [as_rational(c) for c in x]
        return tuple(sum((r * c for r, c in zip(row, xs)), Fraction(0)) for row in self.theta)

    def theta_t_apply(self, y: Sequence[RationalLike]) -> tuple[Fraction, ...]:
        if len(y) != self.n:
            raise UsageError(f"y has length {len(y)}, expected n = {self.n}")
        ys = [as_rational(c) for c in y]
        return tuple(
            sum((self.theta[i][j] * ys[i] for i in range(self.n)), Fraction(0))
            for j in range(self.m)
        )

    def theta_bar_apply(self, z: Union[LatticePoint, Sequence[RationalLike]]) -> tuple[Fraction, ...]:
        """theta_bar @ z = theta x - y; z may be a LatticePoint or any rational d-vector."""
        if isinstance(z, LatticePoint):
            xs: Sequence[RationalLike] = z.x
            ys: Sequence[RationalLike] = z.y
        else:
            if len(z) != self.d:
                raise UsageError(f"z has length {len(z)}, expected d = {self.d}")
            xs, ys = z[: self.m], z[self.m :]
        tx = self.theta_apply(xs)
        return tuple(a - as_rational(b) for a, b in zip(tx, ys))

    def residual(self, z: Union[LatticePoint, Sequence[RationalLike]]) -> tuple[Fraction, ...]:
        """theta_bar @ z - alpha."""
        return tuple(a - b for a, b in zip(self.theta_bar_apply(z), self.alpha))

    @classmethod
    def from_strings(
        cls, theta: Iterable[Iterable[RationalLike]], alpha: Iterable[RationalLike]
    ) -> "ApproximationProblem":
        return cls(as_matrix(theta), as_vector(alpha))


def apply_theta_bar(problem: ApproximationProblem, z: LatticePoint) -> tuple[Fraction, ...]:
    """theta x - y for z = (x, y), exact."""
    return problem.theta_bar_apply(z)


def box_count(bounds: Sequence[int]) -> int:
    c = 1
    for b in bounds:
        c *= 2 * int(b) + 1
    return c


def box_enumerate(
    bounds: Sequence[int], budget: int | None = None
) -> Iterator[tuple[int, ...]]:
    """All integer vectors v with |v_j| <= bounds[j], in ascending lexicographic order.

    Yields exactly prod(2*b_j + 1) points. The order is fixed (first
    coordinate most significant) so argmin tie-breaking downstream is
    deterministic. Raises BudgetExceededError up front, never truncates.
    """
    bounds = [int(b) for b in bounds]
    if any(b < 0 for b in bounds):
        raise UsageError("box bounds must be nonnegative")
    total = box_count(bounds)
    limit = effective_budget(budget)
    if total > limit:
        raise BudgetExceededError(total, limit)
    return itertools.product(*(range(-b, b + 1) for b in bounds))
