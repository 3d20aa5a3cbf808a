# modules/mu_family/q_coeff.py

from fractions import Fraction
from functools import lru_cache
from math import factorial

from modules.core.errors import ParameterError


def _check(m: int, k: int) -> None:
    if not (isinstance(m, int) and isinstance(k, int)) or m < 0 or k < 1:
        raise ParameterError(f"Q coefficients need m >= 0 and k >= 1, got ({m!r}, {k!r})")


@lru_cache(maxsize=None)
def q_coeff(m: int, k: int) -> Fraction:
    """
    Closed form of Q_{m,k}.

    Q_{0,1} = 1, Q_{0,k} = 1/2 for k >= 2, Q_{1,k} = (k+1)/2 and, for m >= 2,
    Q_{m,k} = k(k+1)...(k+m-2)(k+2m-1) / (2 m!).
    """
    _check(m, k)
    if m == 0:
        return Fraction(1) if k == 1 else Fraction(1, 2)
    if m == 1:
        return Fraction(k + 1, 2)
    rising = 1
    for step in range(m - 1):
        rising *= k + step
    return Fraction(rising * (k + 2 * m - 1), 2 * factorial(m))


@lru_cache(maxsize=None)
def q_coeff_recursive(m: int, k: int) -> Fraction:
    """Q_{m,k} from Q_{m,1} = 1 and Q_{m,k} = Q_{m,k-1} + Q_{m-1,k}."""
    _check(m, k)
    if m == 0:
        return Fraction(1) if k == 1 else Fraction(1, 2)
    if k == 1:
        return Fraction(1)
    return q_coeff_recursive(m, k - 1) + q_coeff_recursive(m - 1, k)
