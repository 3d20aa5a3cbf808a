# tests/test_q_coeff.py

from fractions import Fraction
from math import factorial

import pytest
import sympy

from modules.core.errors import ParameterError
from modules.mu_family.q_coeff import q_coeff, q_coeff_recursive


@pytest.mark.parametrize(
    "m, k, expected",
    [
        (0, 1, Fraction(1)),
        (0, 5, Fraction(1, 2)),
        (1, 1, Fraction(1)),
        (1, 4, Fraction(5, 2)),
        (2, 1, Fraction(1)),
        (2, 2, Fraction(5, 2)),
        (2, 3, Fraction(9, 2)),
        (3, 2, Fraction(7, 2)),
    ],
)
def test_examples(m, k, expected):
    assert q_coeff(m, k) == expected


@pytest.mark.parametrize("m", range(0, 13))
def test_closed_form_matches_recursion(m):
    for k in range(1, 13):
        assert q_coeff(m, k) == q_coeff_recursive(m, k)


@pytest.mark.parametrize("m", range(2, 9))
def test_closed_form_matches_rising_factorial(m):
    for k in range(1, 10):
        value = sympy.rf(k, m - 1) * (k + 2 * m - 1) / (2 * sympy.Integer(factorial(m)))
        assert q_coeff(m, k) == Fraction(int(value.p), int(value.q))


@pytest.mark.parametrize("m, k", [(-1, 1), (0, 0), (2, -3)])
def test_out_of_range(m, k):
    with pytest.raises(ParameterError):
        q_coeff(m, k)
    with pytest.raises(ParameterError):
        q_coeff_recursive(m, k)
