from fractions import Fraction

import pytest

from diophant import ApproximationProblem

# rational truncations used throughout: value = floor(real * 10^12) / 10^12
SQRT2 = Fraction(1414213562373, 10**12)
SQRT3 = Fraction(1732050807568, 10**12)
GOLDEN6 = Fraction(1618034, 1000000)
PHI_HAT = Fraction(103993, 64281)


@pytest.fixture
def golden_scalar():
    """m = n = 1 with the 10^-6 golden truncation."""
    return ApproximationProblem(((GOLDEN6,),), (Fraction(0),))


@pytest.fixture
def phihat_scalar():
    return ApproximationProblem(((PHI_HAT,),), (Fraction(1, 2),))


@pytest.fixture
def sqrt_pair():
    """n = 1, m = 2 with the sqrt(2), sqrt(3) truncations."""
    return ApproximationProblem(((SQRT2, SQRT3),), (Fraction(1, 3),))


@pytest.fixture
def column_pair():
    """m = 1, n = 2 column system."""
    return ApproximationProblem(((PHI_HAT,), (SQRT2,)), (Fraction(1, 3), Fraction(1, 7)))
