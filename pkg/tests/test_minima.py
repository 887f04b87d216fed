import math
import random
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diophant import (
    ApproximationProblem,
    DegeneracyError,
    GaugeKind,
    GaugeSpec,
    UsageError,
    basis_extend,
    dual_gauge,
    fundamental_cover_find,
    gauge_value,
    mahler_check,
    minima_report,
    minkowski_dual_check,
    primal_gauge,
    successive_minima,
)
from diophant.core import LatticePoint
from diophant.errors import RadiusInsufficientError
from diophant.intlin import det_int
from diophant.minima import (
    dual_gap_case_bounds,
    minima_norm_bounds,
    select_scaled_bounds,
)
from diophant.oracles import brute_cover_search, brute_minima
from diophant.suite import random_problem
from tests.conftest import PHI_HAT

# frozen by the brute oracle: phi-hat, m = n = 1, t = 5
GOLDEN_T5 = {
    "psi": Fraction(5717, 64281),
    "lambdas": (Fraction(28585, 64281), Fraction(45736, 64281)),
    "points_primal": ((-5, -8), (-8, -13)),
    "mus": (Fraction(1), Fraction(8, 5)),
    "points_dual": ((-8, -5), (-13, -8)),
}


@pytest.fixture
def golden_gauge(phihat_scalar):
    return primal_gauge(phihat_scalar, 5)


def test_gauge_rejects_degenerate():
    p = ApproximationProblem(((Fraction(0),),), (Fraction(0),))
    with pytest.raises(DegeneracyError):
        primal_gauge(p, 2)


def test_gauge_value_examples(golden_gauge):
    assert gauge_value(golden_gauge, LatticePoint((0,), (0,))) == 0
    # boundary: theta x = y exactly and |x| = 1/psi(t)
    g = golden_gauge
    x = Fraction(1) / g.psi_t
    z = (x, x * PHI_HAT)
    assert gauge_value(g, z) == 1


@given(st.integers(min_value=-8, max_value=8), st.integers(min_value=-8, max_value=8),
       st.integers(min_value=-5, max_value=5))
@settings(max_examples=50, deadline=None)
def test_gauge_homogeneity(x, y, k):
    p = ApproximationProblem(((PHI_HAT,),), (Fraction(0),))
    g = primal_gauge(p, 3)
    z = LatticePoint((x,), (y,))
    assert gauge_value(g, z.scaled(k)) == abs(k) * gauge_value(g, z)
    gd = dual_gauge(p, 3)
    assert gauge_value(gd, z.scaled(k)) == abs(k) * gauge_value(gd, z)


def test_minima_golden_fixture(phihat_scalar):
    rep = minima_report(phihat_scalar, 5)
    assert rep.psi_t == GOLDEN_T5["psi"]
    assert rep.lambdas == GOLDEN_T5["lambdas"]
    assert tuple(p.z for p in rep.points_primal) == GOLDEN_T5["points_primal"]
    assert rep.mus == GOLDEN_T5["mus"]
    assert tuple(p.z for p in rep.points_dual) == GOLDEN_T5["points_dual"]
    assert rep.certified
    # realizing points are primitive and match their stated gauges exactly
    gp = primal_gauge(phihat_scalar, 5)
    gd = dual_gauge(phihat_scalar, 5)
    for lam, pt in zip(rep.lambdas, rep.points_primal):
        assert pt.is_primitive and gauge_value(gp, pt) == lam
    for mu, pt in zip(rep.mus, rep.points_dual):
        assert pt.is_primitive and gauge_value(gd, pt) == mu


def test_dual_first_minimum_is_one():
    rng = random.Random(5)
    found = 0
    while found < 10:
        p = random_problem(rng, rng.randint(1, 3), rng.randint(1, 2), den_max=30)
        t = rng.randint(1, 4)
        try:
            rep = minima_report(p, t)
        except DegeneracyError:
            continue
        assert rep.mus[0] == 1
        found += 1


def test_mahler_bounds_instantiation(phihat_scalar):
    rep = minima_report(phihat_scalar, 5)
    rows = mahler_check(rep)
    # d = 2: lower 1/2, upper (2-1)! = 1
    assert all(r.lower == Fraction(1, 2) and r.upper == 1 for r in rows)
    assert all(r.ok for r in rows)
    assert rows[0].product == rep.lambdas[0] * rep.mus[1]


def test_mahler_bounds_d3():
    p = ApproximationProblem(((Fraction(5, 7), Fraction(2, 9)),), (Fraction(0),))
    rep = minima_report(p, 2)
    rows = mahler_check(rep)
    assert all(r.lower == Fraction(1, 3) and r.upper == 2 for r in rows)
    assert all(r.ok for r in rows)


def test_minkowski_dual_check_and_negative_control(phihat_scalar):
    rep = minima_report(phihat_scalar, 5)
    chk = minkowski_dual_check(rep)
    assert chk.ok and chk.volume_ok
    assert chk.lhs == rep.mus[-1] ** 2 * 5 * rep.psi_t
    # synthetic violation: shrink mu_d by hand, the check must fail
    bad = replace(rep, mus=(rep.mus[0], Fraction(1, 1000)))
    assert not minkowski_dual_check(bad).ok
    bad_rows = mahler_check(bad)
    assert not all(r.ok for r in bad_rows)


def test_successive_minima_matches_brute():
    rng = random.Random(7)
    cases = 0
    while cases < 8:
        d_pick = rng.choice([(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (1, 3)])
        m, n = d_pick
        p = random_problem(rng, m, n, den_max=12)
        t = rng.randint(1, 2)
        radius = {2: 20, 3: 8, 4: 5}[m + n]
        try:
            gp = primal_gauge(p, t)
        except DegeneracyError:
            continue
        gd = dual_gauge(p, t, psi_t=gp.psi_t)
        for g in (gp, gd):
            mine = successive_minima(g, radius=radius)
            brute_vals, brute_pts = brute_minima(g, radius)
            assert mine.values == brute_vals
            # witnesses may differ only within the same gauge tie-class
            for val, pt in zip(mine.values, mine.points):
                assert gauge_value(g, pt) == val
        cases += 1


def test_scalar_fast_path_agrees_with_generic(sqrt_pair):
    from diophant.minima import _region_candidates, candidate_bound

    g = dual_gauge(sqrt_pair, 40)
    bound = Fraction(2)
    clip = 10**6
    fast = _region_candidates(g, bound, clip, None)
    # force the generic path by lowering the fast-path threshold
    import diophant.minima as M

    old = M._SCALAR_FAST_MIN
    M._SCALAR_FAST_MIN = 10**18
    try:
        slow = _region_candidates(g, bound, clip, None)
    finally:
        M._SCALAR_FAST_MIN = old
    fast_set = {(u if d is None else Fraction(u, d), z) for (u, z), d in
                ((c, fast[1]) for c in fast[0])}
    slow_set = {(u if d is None else Fraction(u, d), z) for (u, z), d in
                ((c, slow[1]) for c in slow[0])}
    assert fast_set == slow_set and len(fast_set) > 0


def test_radius_insufficient():
    p = ApproximationProblem(((PHI_HAT,),), (Fraction(0),))
    g = primal_gauge(p, 5)
    with pytest.raises(RadiusInsufficientError):
        successive_minima(g, radius=1)


def test_uncertified_box_restricted_minima(phihat_scalar):
    g = primal_gauge(phihat_scalar, 5)
    side = successive_minima(g, radius=9)
    # box too small for the true minima (they live at |z| up to 13)
    assert not side.certified
    assert side.values[0] >= GOLDEN_T5["lambdas"][0]


def test_basis_extend_identity_case(golden_gauge, phihat_scalar):
    rep = minima_report(phihat_scalar, 5)
    basis = basis_extend(rep.points_primal, golden_gauge)
    # the minima points already form a basis here (det = +-1)
    assert tuple(b.z for b in basis) == GOLDEN_T5["points_primal"]
    assert all(gauge_value(golden_gauge, b) <= 2 for b in basis)  # d! = 2


def test_basis_extend_hnf_example(golden_gauge):
    pts = (LatticePoint((1,), (0,)), LatticePoint((1,), (2,)))
    basis = basis_extend(pts, golden_gauge)
    assert [b.z for b in basis] == [(1, 0), (1, 1)]
    assert abs(det_int([b.z for b in basis])) == 1


def test_basis_extend_errors(golden_gauge):
    dep = (LatticePoint((1,), (1,)), LatticePoint((2,), (2,)))
    with pytest.raises(UsageError):
        basis_extend(dep, golden_gauge)
    imprim = (LatticePoint((2,), (0,)), LatticePoint((0,), (1,)))
    with pytest.raises(UsageError):
        basis_extend(imprim, golden_gauge)


def test_basis_extend_random_unimodular():
    rng = random.Random(31)
    for _ in range(10):
        p = random_problem(rng, rng.randint(1, 2), rng.randint(1, 2), den_max=20)
        t = rng.randint(1, 3)
        try:
            rep = minima_report(p, t)
        except DegeneracyError:
            continue
        g = primal_gauge(p, t, psi_t=rep.psi_t)
        basis = basis_extend(rep.points_primal, g)
        assert abs(det_int([b.z for b in basis])) == 1
        assert basis[0] == rep.points_primal[0]
        dfact = math.factorial(p.d)
        assert all(gauge_value(g, b) <= dfact for b in basis)


def test_cover_find_examples(golden_gauge):
    d = golden_gauge.d
    z = fundamental_cover_find(golden_gauge, (Fraction(0), Fraction(0)))
    assert z.z == (0, 0)
    z = fundamental_cover_find(golden_gauge, (Fraction(3), Fraction(-4)))
    assert z.z == (3, -4)
    # shift with theta_bar(shift) = alpha: x part 0, y part -alpha
    shift = (Fraction(0), Fraction(-1, 2))
    z = fundamental_cover_find(golden_gauge, shift)
    diff = tuple(a - b for a, b in zip(z.z, shift))
    assert gauge_value(golden_gauge, diff) <= math.factorial(d)
    # the brute box oracle confirms a lattice point of gauge <= d! exists
    best_gauge, _ = brute_cover_search(golden_gauge, shift, radius=30)
    assert best_gauge <= math.factorial(d)


def test_cover_find_random_shifts(golden_gauge):
    rng = random.Random(3)
    for _ in range(40):
        shift = tuple(
            Fraction(rng.randint(-800, 800), rng.randint(1, 100)) for _ in range(2)
        )
        z = fundamental_cover_find(golden_gauge, shift)
        diff = tuple(a - b for a, b in zip(z.z, shift))
        assert gauge_value(golden_gauge, diff) <= 2


def test_cover_requires_primal(phihat_scalar):
    g = dual_gauge(phihat_scalar, 5)
    with pytest.raises(UsageError):
        fundamental_cover_find(g, (Fraction(1), Fraction(1)))


def test_minima_norm_bounds_hold(phihat_scalar):
    rep = minima_report(phihat_scalar, 5)
    g = primal_gauge(phihat_scalar, 5, psi_t=rep.psi_t)
    nb = minima_norm_bounds(g)
    assert nb.t_inv_psi == 1 / rep.psi_t
    for idx, pt in enumerate(rep.points_primal):
        assert max(abs(c) for c in pt.x) <= nb.x_bound
        resid = abs(PHI_HAT * pt.x[0] - pt.y[0])
        if idx == 0:
            assert resid <= nb.resid_first_upper
        else:
            assert resid <= nb.resid_rest


def test_dual_gap_case_bounds(sqrt_pair):
    g = primal_gauge(sqrt_pair, 36)
    m_lower = g.t * g.psi_t  # largest admissible M
    assert m_lower >= 1
    cb = dual_gap_case_bounds(g, Fraction(1), m_lower)
    assert cb.case == "a"  # mu_top >= 1 always
    assert cb.x_first == math.factorial(2) / g.psi_t / cb.w_threshold
    big = dual_gap_case_bounds(g, Fraction(10**6), m_lower)
    assert big.case == "b"
    with pytest.raises(UsageError):
        dual_gap_case_bounds(g, Fraction(1), Fraction(10**9))


def test_select_scaled_bounds_instantiation():
    # W-exponent (m-1)/(m+3) = 1/5 at m = 2; T = 1024 = 4^5 is an exact root
    sb = select_scaled_bounds(Fraction(1024), 2, Fraction(3), Fraction(10))
    assert sb.w_threshold == 4 and sb.w_exact
    assert sb.case == "a" and sb.t_one == 1024
    sb_b = select_scaled_bounds(Fraction(1024), 2, Fraction(3), Fraction(1))
    assert sb_b.case == "b" and sb_b.t_one == 4096
    # case (b) identity: W^(m+1)/T^m = 1/(T W^2) = 1/(T1 W)
    w, t = Fraction(4), Fraction(1024)
    assert w**3 / t**2 == 1 / (t * w**2) == 1 / (sb_b.t_one * w)
    with pytest.raises(UsageError):
        select_scaled_bounds(Fraction(2), 2, Fraction(100), Fraction(1))
