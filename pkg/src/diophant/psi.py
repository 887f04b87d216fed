"""Irrationality-measure function of the transposed system.

psi(t) is the smallest nearest-integer distance of theta^T y over integer
vectors 0 < |y| <= t. As t grows it can only shrink, and it shrinks at
finitely many integer thresholds — the record table. At rational input
precision psi eventually hits 0 exactly (some y pushes theta^T y into
Z^m); that degeneracy is a first-class flagged state here, not an
exception, because every rational truncation of irrational data does this
once |y| reaches the denominator scale.

The n = 1 scan is the workhorse for the sharpened solvers and may cover
ranges into the 10^7s, so it runs on int64 vectors (numpy) whenever the
proven overflow guards allow, with a pure-Python fallback. Values are
exact integer residues either way; no floats are involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .core import (
    ApproximationProblem,
    box_count,
    box_enumerate,
    common_denominator,
    effective_budget,
)
from .errors import BudgetExceededError, CapExceededError, DegeneracyError, UsageError

_NUMPY_MIN_RANGE = 20_000
_CHUNK = 4_000_000


@dataclass(frozen=True)
class PsiValue:
    """Exact minimum with a witnessing y (lexicographically smallest minimizer)."""

    value: Fraction
    witness: tuple[int, ...]

    @property
    def degenerate(self) -> bool:
        return self.value == 0


@dataclass(frozen=True)
class PsiRecord:
    t: int
    psi: Fraction
    witness: tuple[int, ...]


@dataclass(frozen=True)
class PsiRecordTable:
    """Step-function form of t -> psi(t) on [1, t_max].

    records[k] says: from t_k on (until the next threshold) the minimum is
    psi_k, attained by witness y_k with |y_k| = t_k. Thresholds increase,
    values strictly decrease. If the scan hit an exact zero, the table
    stops there: degenerate_at is the first integer t with psi(t) = 0 and
    records only cover [1, degenerate_at).
    """

    records: tuple[PsiRecord, ...]
    t_max: int
    degenerate: bool = False
    degenerate_at: Optional[int] = None
    degenerate_witness: Optional[tuple[int, ...]] = None

    def value_at(self, t) -> Fraction:
        """psi(t) as implied by the table; t rational with 1 <= floor(t) <= t_max."""
        tf = math.floor(Fraction(t))
        if tf < 1:
            raise UsageError("psi is defined for t >= 1")
        if tf > self.t_max:
            raise UsageError(f"t = {t} outside the covered range [1, {self.t_max}]")
        if self.degenerate and tf >= self.degenerate_at:
            return Fraction(0)
        value = None
        for rec in self.records:
            if rec.t <= tf:
                value = rec.psi
            else:
                break
        if value is None:
            raise UsageError("empty record table")
        return value


def _transpose_units(problem: ApproximationProblem) -> tuple[int, list[list[int]]]:
    """(Q, P) with theta[i][j] = P[i][j]/Q; used to evaluate theta^T y in integers."""
    flat = [c for row in problem.theta for c in row]
    q, nums = common_denominator(flat)
    m = problem.m
    return q, [nums[i * m : (i + 1) * m] for i in range(problem.n)]


def _scan_line(
    p_units: Sequence[int], q: int, t_hi: int, stop_at_zero: bool
) -> tuple[list[tuple[int, int]], int, int]:
    """Scan y = 1..t_hi for the n = 1 system.

    Returns (records as (y, dist_units), global min units, largest
    achiever of the global min). Dist units are max_j of the residue
    distance of y * p_j to multiples of q.
    """
    use_np = t_hi >= _NUMPY_MIN_RANGE and q < (1 << 43) and t_hi * (q >> 20) < (1 << 62)
    if use_np:
        try:
            return _scan_line_numpy(p_units, q, t_hi, stop_at_zero)
        except ImportError:  # pragma: no cover - numpy is a hard dependency
            pass
    return _scan_line_python(p_units, q, t_hi, stop_at_zero)


def _scan_line_python(p_units, q, t_hi, stop_at_zero):
    residues = [0] * len(p_units)
    best = q  # dist units are < q/2 for any y
    records: list[tuple[int, int]] = []
    last_arg = 0
    for y in range(1, t_hi + 1):
        du = 0
        for j, p in enumerate(p_units):
            r = (residues[j] + p) % q
            residues[j] = r
            dj = r if r <= q - r else q - r
            if dj > du:
                du = dj
        if du < best:
            best = du
            records.append((y, du))
            last_arg = y
            if du == 0 and stop_at_zero:
                break
        elif du == best:
            last_arg = y
    return records, best, last_arg


def _scan_line_numpy(p_units, q, t_hi, stop_at_zero):
    import numpy as np

    records: list[tuple[int, int]] = []
    best = q
    last_arg = 0
    lo = 1
    mask_lo = (1 << 20) - 1
    while lo <= t_hi:
        hi = min(lo + _CHUNK - 1, t_hi)
        y = np.arange(lo, hi + 1, dtype=np.int64)
        du = np.zeros(len(y), dtype=np.int64)
        for p in p_units:
            p_hi, p_lo = p >> 20, p & mask_lo
            r = ((y * p_hi % q) << 20) % q
            r = (r + y * p_lo % q) % q
            np.maximum(du, np.minimum(r, q - r), out=du)
        acc = np.minimum.accumulate(np.concatenate(([best], du)))
        drop = du < acc[:-1]
        for yy, dd in zip(y[drop], du[drop]):
            records.append((int(yy), int(dd)))
            if dd == 0 and stop_at_zero:
                return records, 0, int(yy)
        chunk_best = int(acc[-1])
        ties = np.nonzero(du == chunk_best)[0]
        if chunk_best < best:
            best = chunk_best
            last_arg = int(y[ties[-1]])
        elif chunk_best == best and len(ties):
            last_arg = int(y[ties[-1]])
        lo = hi + 1
    return records, best, last_arg


def _scan_box(problem: ApproximationProblem, t_hi: int, budget):
    """Full-box scan for n >= 2: per-shell minima plus the global lex tracking.

    Returns (q, shell_best, global_best) where shell_best[s] = (units, y)
    is the smallest distance on the shell |y| = s with its first-in-lex
    achiever, and global_best = (units, y) is first-in-lex over the box.
    """
    q, p_rows = _transpose_units(problem)
    n, m = problem.n, problem.m
    cols = [[p_rows[i][j] for i in range(n)] for j in range(m)]
    shell_best: dict[int, tuple[int, tuple[int, ...]]] = {}
    global_best: tuple[int, tuple[int, ...]] | None = None
    for y in box_enumerate([t_hi] * n, budget):
        s = max(abs(c) for c in y) if y else 0
        if s == 0:
            continue
        du = 0
        for col in cols:
            r = sum(col[i] * y[i] for i in range(n)) % q
            dj = r if r <= q - r else q - r
            if dj > du:
                du = dj
        cur = shell_best.get(s)
        if cur is None or du < cur[0]:
            shell_best[s] = (du, y)
        if global_best is None or du < global_best[0]:
            global_best = (du, y)
    return q, shell_best, global_best


def psi(problem: ApproximationProblem, t, budget: int | None = None) -> PsiValue:
    """min of ||theta^T y|| over integer y with 0 < |y| <= t, exactly.

    The witness is the lexicographically smallest minimizer. A zero value
    is a legal, flagged outcome (theta^T y landed in Z^m).
    """
    t = Fraction(t)
    if t < 1:
        raise UsageError("psi requires t >= 1")
    t_hi = math.floor(t)
    count = box_count([t_hi] * problem.n)
    limit = effective_budget(budget)
    if count > limit:
        raise BudgetExceededError(count, limit)
    if problem.n == 1:
        q, p_rows = _transpose_units(problem)
        p_units = [p % q for p in p_rows[0]]
        _, best, last_arg = _scan_line(p_units, q, t_hi, stop_at_zero=False)
        # minimizers come in +-y pairs; the lex-smallest is minus the largest achiever
        return PsiValue(Fraction(best, q), (-last_arg,))
    q, _, global_best = _scan_box(problem, t_hi, budget)
    assert global_best is not None
    return PsiValue(Fraction(global_best[0], q), global_best[1])


def psi_records(
    problem: ApproximationProblem, t_max: int, budget: int | None = None
) -> PsiRecordTable:
    """Complete record table of psi on [1, t_max], consistent with psi() pointwise."""
    t_max = int(t_max)
    if t_max < 1:
        raise UsageError("t_max must be >= 1")
    count = box_count([t_max] * problem.n)
    limit = effective_budget(budget)
    if count > limit:
        raise BudgetExceededError(count, limit)

    raw: list[tuple[int, int, tuple[int, ...]]] = []
    if problem.n == 1:
        q, p_rows = _transpose_units(problem)
        p_units = [p % q for p in p_rows[0]]
        recs, _, _ = _scan_line(p_units, q, t_max, stop_at_zero=True)
        raw = [(y, du, (-y,)) for y, du in recs]
    else:
        q, shell_best, _ = _scan_box(problem, t_max, budget)
        best = None
        for s in range(1, t_max + 1):
            entry = shell_best.get(s)
            if entry is None:
                continue
            du, y = entry
            if best is None or du < best:
                best = du
                raw.append((s, du, y))
                if du == 0:
                    break

    records = []
    degenerate_at = None
    degenerate_witness = None
    for s, du, y in raw:
        if du == 0:
            degenerate_at = s
            degenerate_witness = y
            break
        records.append(PsiRecord(s, Fraction(du, q), y))
    return PsiRecordTable(
        records=tuple(records),
        t_max=t_max,
        degenerate=degenerate_at is not None,
        degenerate_at=degenerate_at,
        degenerate_witness=degenerate_witness,
    )


def transference_constant(m: int, n: int) -> Fraction:
    """K = 2^(n-1) / (d!)^2 with d = m + n."""
    if m < 1 or n < 1:
        raise UsageError("need m, n >= 1")
    return Fraction(2 ** (n - 1), math.factorial(m + n) ** 2)


def jarnik_search(
    problem: ApproximationProblem,
    epsilon,
    m_target,
    t_cap: int,
    budget: int | None = None,
) -> Fraction:
    """Smallest record-derived t <= t_cap with t * psi(t / (2 K epsilon)) >= m_target.

    Between record thresholds psi(t/(2K eps)) is constant, so t*psi is
    piecewise linear increasing; the smallest qualifying t in a record
    interval is max(interval start, m_target/psi_k). Existence below any
    finite cap is not guaranteed — capped failure raises CapExceededError,
    and a zero psi (rational degeneracy) before qualification raises
    DegeneracyError.
    """
    if problem.n != 1 or problem.m < 2:
        raise UsageError("jarnik_search requires n = 1 and m >= 2")
    epsilon = Fraction(epsilon)
    m_target = Fraction(m_target)
    if epsilon <= 0:
        raise UsageError("epsilon must be positive")
    if m_target < 0:
        raise UsageError("m_target must be nonnegative")
    k_const = transference_constant(problem.m, problem.n)
    a = 2 * k_const * epsilon  # t = a * s on the psi argument grid
    s_cap = math.floor(Fraction(t_cap) / a)
    if s_cap < 1:
        raise CapExceededError(f"t_cap = {t_cap} is below the first grid point {a}")
    table = psi_records(problem, s_cap, budget)
    t, _ = _first_qualifying(table, a, m_target, Fraction(t_cap))
    if t is not None:
        return t
    if table.degenerate:
        raise DegeneracyError(
            f"psi degenerates at t = {table.degenerate_at} before the target is reached",
            witness=table.degenerate_witness,
        )
    raise CapExceededError(
        f"no t <= {t_cap} with t*psi(t/(2K*eps)) >= {m_target}"
    )


def _first_qualifying(
    table: PsiRecordTable, a: Fraction, m_target: Fraction, t_cap: Fraction
) -> tuple[Optional[Fraction], Optional[Fraction]]:
    """(t, psi_value) for the first record interval admitting the target, else Nones."""
    recs = table.records
    end = table.degenerate_at if table.degenerate else table.t_max + 1
    for k, rec in enumerate(recs):
        t_lo = a * rec.t
        nxt = recs[k + 1].t if k + 1 < len(recs) else end
        t_hi = a * nxt
        t_need = t_lo if m_target == 0 else max(t_lo, m_target / rec.psi)
        if t_need < t_hi and t_need <= t_cap:
            return t_need, rec.psi
    return None, None
