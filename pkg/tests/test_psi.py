import random
from fractions import Fraction

import pytest

from diophant import (
    ApproximationProblem,
    BudgetExceededError,
    CapExceededError,
    DegeneracyError,
    UsageError,
    jarnik_search,
    nearest_int_distance,
    psi,
    psi_records,
    transference_constant,
)
from diophant.oracles import brute_psi
from diophant.suite import random_problem
from tests.conftest import GOLDEN6, PHI_HAT, SQRT2, SQRT3

# frozen by the brute-force oracle before the main build
GOLDEN_RECORDS = [
    (1, Fraction(190983, 500000)),
    (2, Fraction(59017, 250000)),
    (3, Fraction(72949, 500000)),
    (5, Fraction(9017, 100000)),
    (8, Fraction(3483, 62500)),
    (13, Fraction(17221, 500000)),
    (21, Fraction(10643, 500000)),
    (34, Fraction(3289, 250000)),
    (55, Fraction(813, 100000)),
]


def test_psi_rational_degeneracy_flagged():
    p = ApproximationProblem(((Fraction(1, 3),),), (Fraction(0),))
    v = psi(p, 3)
    assert v.value == 0 and v.degenerate
    assert v.witness == (-3,)


def test_psi_golden_convergent_small_t():
    p = ApproximationProblem(((PHI_HAT,),), (Fraction(0),))
    v = psi(p, 2)
    assert v.value == Fraction(15143, 64281)  # = ||2 * 103993/64281||
    assert v.witness == (-2,)
    assert not v.degenerate


def test_psi_single_candidate():
    p = ApproximationProblem(((Fraction(7, 10),),), (Fraction(0),))
    assert psi(p, 1).value == Fraction(3, 10)


def test_psi_monotone_nonincreasing():
    p = ApproximationProblem(((PHI_HAT,),), (Fraction(0),))
    vals = [psi(p, t).value for t in range(1, 15)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_psi_rational_t_uses_floor():
    p = ApproximationProblem(((PHI_HAT,),), (Fraction(0),))
    assert psi(p, Fraction(7, 2)).value == psi(p, 3).value
    with pytest.raises(UsageError):
        psi(p, Fraction(1, 2))


def test_psi_records_golden_fixture(golden_scalar):
    table = psi_records(golden_scalar, 60)
    assert [(r.t, r.psi) for r in table.records] == GOLDEN_RECORDS
    assert [r.witness for r in table.records] == [(-t,) for t, _ in GOLDEN_RECORDS]
    assert not table.degenerate
    # step-function lookup agrees with direct evaluation everywhere
    for t in range(1, 61):
        assert table.value_at(t) == psi(golden_scalar, t).value


def test_psi_records_degenerate_truncation():
    p = ApproximationProblem(((Fraction(1, 2),),), (Fraction(0),))
    table = psi_records(p, 5)
    assert [(r.t, r.psi) for r in table.records] == [(1, Fraction(1, 2))]
    assert table.degenerate and table.degenerate_at == 2
    assert table.degenerate_witness == (-2,)
    assert table.value_at(1) == Fraction(1, 2)
    assert table.value_at(4) == 0


def test_psi_records_trivial_t_max():
    p = ApproximationProblem(((PHI_HAT,),), (Fraction(0),))
    table = psi_records(p, 1)
    assert len(table.records) == 1 and table.records[0].t == 1


def test_psi_witness_validity_random():
    rng = random.Random(11)
    for _ in range(25):
        p = random_problem(rng, rng.randint(1, 3), rng.randint(1, 2), den_max=40)
        t = rng.randint(1, 6)
        v = psi(p, t)
        assert nearest_int_distance(p.theta_t_apply(v.witness)) == v.value
        assert 0 < max(abs(c) for c in v.witness) <= t


def test_psi_matches_brute_on_2d_systems():
    rng = random.Random(23)
    for _ in range(12):
        p = random_problem(rng, rng.randint(1, 2), 2, den_max=30)
        t = rng.randint(1, 4)
        assert psi(p, t).value == brute_psi(p, t)[0]


def test_psi_budget():
    p = ApproximationProblem(((Fraction(1, 3), Fraction(1, 5)),), (Fraction(0),))
    with pytest.raises(BudgetExceededError):
        psi(p, 10**9, budget=100)


def test_line_scan_paths_agree(golden_scalar):
    # numpy fast path vs pure python on the same range
    from diophant.psi import _scan_line_numpy, _scan_line_python

    q = 10**6
    p_units = [618034 % q]
    a = _scan_line_python(p_units, q, 25000, True)
    b = _scan_line_numpy(p_units, q, 25000, True)
    assert a == b


def test_transference_constant():
    assert transference_constant(1, 1) == Fraction(1, 4)
    assert transference_constant(2, 1) == Fraction(1, 36)
    assert transference_constant(1, 2) == Fraction(2, 36)


def test_jarnik_search_trivial_target():
    p = ApproximationProblem(((SQRT2, SQRT3),), (Fraction(0),))
    k = transference_constant(2, 1)
    eps = Fraction(1, 10)
    t = jarnik_search(p, eps, 0, 1000)
    assert t == 2 * k * eps  # the first grid point qualifies at target zero


def test_jarnik_search_fixture():
    # frozen by the oracle run: first record interval reaching t*psi >= 10
    p = ApproximationProblem(((SQRT2, SQRT3),), (Fraction(0),))
    t = jarnik_search(p, Fraction(1, 10), 10, 10**5)
    assert t == Fraction(78125000000, 846179)


def test_jarnik_degenerate_rejection():
    p = ApproximationProblem(((Fraction(1, 2), Fraction(1, 3)),), (Fraction(0),))
    with pytest.raises(DegeneracyError):
        jarnik_search(p, Fraction(1, 10), 10**6, 10**4)


def test_jarnik_cap():
    p = ApproximationProblem(((SQRT2, SQRT3),), (Fraction(0),))
    with pytest.raises(CapExceededError):
        jarnik_search(p, Fraction(1, 10), 10**9, 50)
    with pytest.raises(UsageError):
        jarnik_search(ApproximationProblem(((SQRT2,),), (Fraction(0),)), 1, 1, 100)
