import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diophant import (
    ApproximationProblem,
    CapExceededError,
    DegeneracyError,
    NoSolutionError,
    UsageError,
    gcd_shift,
    khintchine_hypothesis_check,
    nearest_int_distance,
    primitive_record_scan,
    solve_bounded,
    solve_kronecker,
    solve_primitive,
    solve_sharpened,
)
from diophant.oracles import brute_best_inhomogeneous
from diophant.suite import random_problem
from tests.conftest import PHI_HAT, SQRT2, SQRT3


def test_hypothesis_check_vacuous_and_zero_alpha(phihat_scalar):
    chk = khintchine_hypothesis_check(phihat_scalar, Fraction(1, 10), Fraction(10), 0)
    assert chk.holds and not chk.cutoff_reached
    p0 = ApproximationProblem(((PHI_HAT,),), (Fraction(0),))
    chk = khintchine_hypothesis_check(p0, Fraction(1, 10), Fraction(10), 30)
    assert chk.holds  # lhs is 0 for every u when alpha = 0


def test_hypothesis_check_cutoff(phihat_scalar):
    # K = 1/4 at m = n = 1; cutoff = 1/(2KC)
    chk = khintchine_hypothesis_check(phihat_scalar, Fraction(1, 100), Fraction(1000), 200)
    assert chk.cutoff == 200 and chk.cutoff_reached


def test_solve_bounded_exact_hit():
    p = ApproximationProblem(((PHI_HAT,),), (PHI_HAT * 7 - 11,))
    cert = solve_bounded(p, Fraction(1, 10**6), 10)
    assert cert.residual_norm == 0
    assert cert.revalidate(p)


def test_solve_bounded_minimal_matches_frozen_oracle(phihat_scalar):
    cert = solve_bounded(phihat_scalar, Fraction(1, 100), 100, minimal=True)
    assert cert.residual_norm == Fraction(307, 128562)
    assert cert.point.x == (-17,)
    assert cert.revalidate(phihat_scalar)


def test_solve_bounded_half_is_always_solvable():
    rng = random.Random(2)
    for _ in range(5):
        p = random_problem(rng, rng.randint(1, 2), rng.randint(1, 2), den_max=30)
        cert = solve_bounded(p, Fraction(1, 2), 3)
        assert cert.residual_norm <= Fraction(1, 2)


def test_solve_bounded_origin_semantics():
    # alpha almost integral: x = 0 is the only point meeting a tiny bound
    p = ApproximationProblem(((PHI_HAT,),), (Fraction(1, 10**9),))
    cert = solve_bounded(p, Fraction(1, 10**8), 3)
    assert cert.point.x == (0,)
    with pytest.raises(NoSolutionError):
        solve_bounded(p, Fraction(1, 10**8), 3, include_origin=False)


def test_solve_bounded_minimal_matches_brute():
    rng = random.Random(17)
    done = 0
    while done < 8:
        p = random_problem(rng, rng.randint(1, 2), rng.randint(1, 2), den_max=50)
        x_max = rng.randint(4, 15)
        cert = solve_bounded(p, Fraction(1, 2), x_max, minimal=True)
        resid, _, _ = brute_best_inhomogeneous(p, x_max)
        assert cert.residual_norm == resid
        done += 1


def test_solve_kronecker_frozen_fixture():
    p = ApproximationProblem(((PHI_HAT,),), (Fraction(1, 3),))
    cert = solve_kronecker(p, Fraction(1, 100))
    assert cert.residual_norm < Fraction(1, 100)
    assert cert.parameters["X"] == Fraction(64281, 83)
    assert cert.parameters["psi_s"] == Fraction(166, 64281)
    assert cert.point.x == (7,) and cert.residual_norm == Fraction(27, 3061)
    assert cert.revalidate(p)


def test_solve_kronecker_trivial_epsilon():
    p = ApproximationProblem(((PHI_HAT,),), (Fraction(1, 3),))
    cert = solve_kronecker(p, Fraction(1, 2))
    assert cert.residual_norm < Fraction(1, 2)


def test_solve_kronecker_degenerate_names_witness():
    p = ApproximationProblem(((Fraction(1, 2),),), (Fraction(1, 4),))
    with pytest.raises(DegeneracyError) as exc:
        solve_kronecker(p, Fraction(1, 100))
    assert exc.value.witness is not None
    y = exc.value.witness
    assert nearest_int_distance(p.theta_t_apply(y)) == 0


def test_solve_sharpened_requires_shape(sqrt_pair, phihat_scalar):
    with pytest.raises(UsageError):
        solve_sharpened(phihat_scalar, Fraction(1, 2))


def test_solve_sharpened_huge_epsilon(sqrt_pair):
    # the X <= t condition is epsilon-independent, so even a huge target
    # routes through the record search; the conclusion is then immediate
    cert = solve_sharpened(sqrt_pair, Fraction(10), t_cap=300_000)
    assert cert.residual_norm * cert.x_norm < 10
    assert cert.x_norm >= 1


def test_solve_sharpened_zero_alpha_nontrivial():
    p = ApproximationProblem(((SQRT2, SQRT3),), (Fraction(0),))
    cert = solve_sharpened(p, Fraction(1, 2), t_cap=400_000)
    assert cert.x_norm >= 1
    assert cert.residual_norm * cert.x_norm < Fraction(1, 2)
    assert cert.revalidate(p)


def test_gcd_shift_examples():
    assert gcd_shift(3, 5) == 0
    assert gcd_shift(4, 2) == 1
    assert gcd_shift(0, 30) == 1
    with pytest.raises(UsageError):
        gcd_shift(1, 0)


@given(st.integers(min_value=-40, max_value=40), st.integers(min_value=-40, max_value=40))
@settings(max_examples=80, deadline=None)
def test_gcd_shift_minimality(u1, u2):
    if u2 == 0:
        return
    v = gcd_shift(u1, u2)
    assert math.gcd(u1 + v, u2) == 1
    for smaller in range(v):
        assert math.gcd(u1 + smaller, u2) != 1


def test_solve_primitive_zero_alpha():
    p = ApproximationProblem(((PHI_HAT,), (SQRT2,)), (Fraction(0), Fraction(0)))
    certs = solve_primitive(p, Fraction(1, 2), count=3)
    assert len({c.point.z for c in certs}) == 3
    for c in certs:
        assert c.point.is_primitive
        assert c.residual_norm < Fraction(1, 2)
        assert c.parameters["repairs"] == 0
        assert c.revalidate(p)


def test_solve_primitive_rejects_scalar(phihat_scalar):
    with pytest.raises(UsageError):
        solve_primitive(phihat_scalar, Fraction(1, 2))


def test_solve_primitive_monotone_x(column_pair):
    certs = solve_primitive(column_pair, Fraction(1, 4), count=2)
    assert certs[0].x_norm <= certs[1].x_norm
    assert certs[0].point.z != certs[1].point.z


def test_primitive_record_scan_frozen(phihat_for_scan=Fraction(103993, 64281)):
    rep = primitive_record_scan(phihat_for_scan, Fraction(0), 10**4)
    assert [r.x for r in rep.records] == [
        1, 2, 3, 5, 8, 13, 21, 34, 191, 225, 416, 2305, 2721, 5026, 7747,
    ]
    assert not rep.exact_hit
    # statistics are present exactly for records with x >= 3
    for r in rep.records:
        assert (r.stat_upper is None) == (r.x < 3)
        if r.stat_upper is not None:
            lo, hi = r.stat_upper
            assert 0 <= lo <= hi
    # witnesses re-validate: coprime and residual correct
    for r in rep.records:
        assert math.gcd(r.x, abs(r.y)) == 1
        assert abs(phihat_for_scan * r.x - r.y) == r.residual


def test_primitive_record_scan_alpha_equals_theta():
    rep = primitive_record_scan(PHI_HAT, PHI_HAT, 100)
    assert rep.records[0].x == 1 and rep.records[0].residual == 0
    assert rep.exact_hit


def test_primitive_record_scan_minimum_size():
    rep = primitive_record_scan(PHI_HAT, Fraction(1, 7), 100)
    assert len(rep.records) >= 1


def test_certificate_revalidation_catches_mutation(phihat_scalar):
    from dataclasses import replace

    cert = solve_bounded(phihat_scalar, Fraction(1, 2), 5)
    assert cert.revalidate(phihat_scalar)
    bad = replace(cert, residual_norm=cert.residual_norm + 1)
    assert not bad.revalidate(phihat_scalar)
