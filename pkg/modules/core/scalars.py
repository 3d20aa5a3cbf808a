# modules/core/scalars.py

"""
Exact scalars.

Every coefficient in leibniz_lab is a ``fractions.Fraction``. This module
parses and prints them in the interchange form (``"p/q"`` or ``"p"``) and
provides the power-class helpers the normalizer needs when a branch would
require a root that does not exist over the rationals.
"""

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, List, Tuple, Union

from sympy import factorint, integer_nthroot

from modules.core.errors import ParameterError

Scalar = Fraction
ScalarLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)

_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_scalar(text: str) -> Fraction:
    """
    Parse an exact fraction string.

    Args:
        text: ``"p/q"`` or ``"p"`` with integer p and positive integer q

    Returns:
        The Fraction in lowest terms

    Raises:
        ParameterError: on decimals, floats, empty strings or zero denominators
    """
    match = _FRACTION_RE.match(text)
    if not match:
        raise ParameterError(f"Not an exact fraction: {text!r} (use p/q, no decimals)")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ParameterError(f"Zero denominator in {text!r}")
    return Fraction(numerator, denominator)


def as_scalar(value: ScalarLike) -> Fraction:
    """Coerce an int, Fraction or fraction string; floats are refused."""
    if isinstance(value, bool):
        raise ParameterError("Booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_scalar(value)
    raise ParameterError(f"Inexact or unsupported scalar {value!r} of type {type(value).__name__}")


def format_scalar(value: Fraction) -> str:
    """Canonical string of a scalar: ``"p"`` for integers, ``"p/q"`` otherwise."""
    return str(Fraction(value))


def parse_scalar_list(text: str) -> List[Fraction]:
    """Parse a comma-separated list such as ``"1,0,1/2,-3"``."""
    parts = [part for part in text.split(",")]
    if not text.strip() or any(not part.strip() for part in parts):
        raise ParameterError(f"Empty entry in scalar list {text!r}")
    return [parse_scalar(part) for part in parts]


def rational_root(value: Fraction, degree: int) -> Union[Fraction, None]:
    """
    Exact ``degree``-th root of a rational, or None when it is irrational.

    For odd degrees the real root of a negative value is returned; for even
    degrees the positive root.
    """
    if degree < 1:
        raise ParameterError(f"Root degree must be positive, got {degree}")
    value = Fraction(value)
    if value == 0:
        return ZERO
    negative = value < 0
    if negative and degree % 2 == 0:
        return None
    num_root, num_exact = integer_nthroot(abs(value.numerator), degree)
    den_root, den_exact = integer_nthroot(value.denominator, degree)
    if not (num_exact and den_exact):
        return None
    root = Fraction(num_root, den_root)
    return -root if negative else root


def power_class(value: Fraction, degree: int) -> Tuple[Fraction, Fraction]:
    """
    Split a nonzero rational as ``value = representative * root**degree``.

    The representative is the canonical member of the class of ``value``
    modulo nonzero ``degree``-th powers: an integer free of ``degree``-th
    power factors, carrying the sign when ``degree`` is even.

    Returns:
        (representative, root) with both exact
    """
    value = Fraction(value)
    if value == 0:
        raise ParameterError("Power classes are defined for nonzero values only")
    sign = -1 if value < 0 else 1
    # value = N/D = N * D^(degree-1) / D^degree
    integer = abs(value.numerator) * value.denominator ** (degree - 1)
    representative = 1
    extracted = 1
    for prime, exponent in factorint(integer).items():
        representative *= prime ** (exponent % degree)
        extracted *= prime ** (exponent // degree)
    root = Fraction(extracted, value.denominator)
    if sign < 0:
        if degree % 2 == 1:
            root = -root
        else:
            representative = -representative
    rep = Fraction(representative)
    assert rep * root ** degree == value
    return rep, root


def is_zero_vector(coords: Iterable[Fraction]) -> bool:
    return all(c == 0 for c in coords)
