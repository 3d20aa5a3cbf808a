# tests/strategies.py

import random
from fractions import Fraction

from hypothesis import strategies as st


def small_fractions(max_abs: int = 6):
    """Exact rationals with small numerators and denominators."""
    return st.fractions(min_value=-max_abs, max_value=max_abs, max_denominator=4)


def nonzero_fractions(max_abs: int = 6):
    return small_fractions(max_abs).filter(lambda x: x != 0)


# zero shows up often so that both branches of every case split get exercised
_MU_VALUES = [Fraction(0)] * 4 + [Fraction(v) for v in (1, -1, 2, -3)] + [Fraction(1, 2), Fraction(-2, 3), Fraction(5, 4)]


def random_mu_values(rng: random.Random):
    return [rng.choice(_MU_VALUES) for _ in range(8)]


def mu_values():
    return st.lists(st.sampled_from(_MU_VALUES), min_size=8, max_size=8)


def transforms():
    """Entries (P1, M2, M3, M4, T4) with P1, M2, T4 nonzero."""
    nz = nonzero_fractions(3)
    return st.tuples(nz, nz, small_fractions(3), small_fractions(3), nz)
