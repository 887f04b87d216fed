"""Small exact linear algebra over Z and Q for d <= 6 sized problems.

Matrices are given column-wise (tuples of column vectors) because every
caller thinks of them as ordered families of lattice points.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import UsageError

IntVec = tuple[int, ...]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, u, v) with u*a + v*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def det_int(cols: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(cols)
    if any(len(c) != n for c in cols):
        raise UsageError("determinant of a non-square matrix")
    # work row-major on a copy
    a = [[int(cols[j][i]) for j in range(n)] for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_columns(cols: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Solve sum_j c_j * cols[j] = rhs exactly (square, invertible)."""
    n = len(cols)
    if len(rhs) != n or any(len(c) != n for c in cols):
        raise UsageError("solve_columns needs a square system")
    aug = [[Fraction(cols[j][i]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for k in range(n):
        pivot = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if pivot is None:
            raise UsageError("singular matrix")
        aug[k], aug[pivot] = aug[pivot], aug[k]
        pk = aug[k][k]
        aug[k] = [v / pk for v in aug[k]]
        for i in range(n):
            if i != k and aug[i][k] != 0:
                f = aug[i][k]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[k])]
    return tuple(aug[i][n] for i in range(n))


def adjugate_columns(cols: Sequence[Sequence[int]]) -> tuple[int, list[list[int]]]:
    """(det, det * inverse) of an integer matrix, both exact; det must be nonzero."""
    n = len(cols)
    det = det_int(cols)
    if det == 0:
        raise UsageError("matrix is singular")
    adj_cols: list[list[int]] = []
    for i in range(n):
        e = [Fraction(1) if r == i else Fraction(0) for r in range(n)]
        c = solve_columns(cols, e)
        scaled = [v * det for v in c]
        if any(v.denominator != 1 for v in scaled):
            raise AssertionError("adjugate must be integral")
        adj_cols.append([int(v) for v in scaled])
    return det, adj_cols


class IndependenceTracker:
    """Incremental exact rank tracking for greedy minima selection."""

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: list[list[Fraction]] = []
        self._pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce(self, vec: Sequence[int]) -> list[Fraction]:
        v = [Fraction(c) for c in vec]
        for piv, row in zip(self._pivots, self._rows):
            if v[piv] != 0:
                f = v[piv] / row[piv]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def would_increase(self, vec: Sequence[int]) -> bool:
        return any(c != 0 for c in self._reduce(vec))

    def add(self, vec: Sequence[int]) -> bool:
        v = self._reduce(vec)
        piv = next((i for i, c in enumerate(v) if c != 0), None)
        if piv is None:
            return False
        self._rows.append(v)
        self._pivots.append(piv)
        return True


def hnf_upper_columns(cols: Sequence[Sequence[int]]) -> list[list[int]]:
    """Column HNF of a nonsingular integer matrix, upper-triangular shape.

    Returns columns h_0..h_{n-1} generating the same column lattice, with
    h_j supported on rows 0..j, positive diagonal, and entries above each
    pivot reduced into [0, pivot).
    """
    n = len(cols)
    work = [list(map(int, c)) for c in cols]
    placed: list[list[int] | None] = [None] * n
    active = list(range(len(work)))
    for r in range(n - 1, -1, -1):
        nz = [ci for ci in active if work[ci][r] != 0]
        if not nz:
            raise UsageError("column lattice is not full rank")
        # fold all row-r entries into one column by unimodular pair moves
        lead = nz[0]
        for other in nz[1:]:
            a, b = work[lead][r], work[other][r]
            g, u, v = xgcd(a, b)
            ca, cb = work[lead], work[other]
            new_lead = [u * x + v * y for x, y in zip(ca, cb)]
            new_other = [(-b // g) * x + (a // g) * y for x, y in zip(ca, cb)]
            work[lead], work[other] = new_lead, new_other
        if work[lead][r] < 0:
            work[lead] = [-x for x in work[lead]]
        placed[r] = work[lead]
        active = [ci for ci in active if ci != lead]
    h = [list(placed[j]) for j in range(n)]  # type: ignore[arg-type]
    # normalize entries above each diagonal into [0, diag)
    for j in range(n):
        for i in range(j - 1, -1, -1):
            q = h[j][i] // h[i][i]
            if q:
                h[j] = [a - q * b for a, b in zip(h[j], h[i])]
    return h
