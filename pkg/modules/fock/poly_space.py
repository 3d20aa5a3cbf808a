# modules/fock/poly_space.py

from dataclasses import dataclass, field
from math import comb
from typing import Dict, Tuple

from modules.core.errors import ParameterError, TruncationOverflowError

Exponents = Tuple[int, ...]


def _monomial_order(exponents: Exponents):
    # total degree first, then lexicographic with x_1 as the most significant variable
    return (sum(exponents), tuple(-e for e in exponents))


def _all_exponents(s: int, degree: int):
    if s == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in _all_exponents(s - 1, degree - first):
            yield (first,) + rest


@dataclass(frozen=True)
class TruncatedPolySpace:
    """
    Monomials x_1^t_1 ... x_s^t_s of total degree at most ``max_degree``.

    The count is binomial(D + s, s); the order is by total degree, then
    lexicographic, and never changes.
    """

    vars: int
    max_degree: int
    monomials: Tuple[Exponents, ...] = field(init=False)
    _index: Dict[Exponents, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.vars < 1 or self.max_degree < 0:
            raise ParameterError(f"Bad polynomial space: {self.vars} vars, degree {self.max_degree}")
        monomials = sorted(
            (e for d in range(self.max_degree + 1) for e in _all_exponents(self.vars, d)),
            key=_monomial_order,
        )
        object.__setattr__(self, "monomials", tuple(monomials))
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(monomials, start=1)})
        assert len(monomials) == comb(self.max_degree + self.vars, self.vars)

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def index(self, exponents: Exponents) -> int:
        """
        1-based position of a monomial.

        Raises:
            TruncationOverflowError: if its degree exceeds the window
        """
        if len(exponents) != self.vars or any(e < 0 for e in exponents):
            raise ParameterError(f"Exponent tuple {exponents} does not fit {self.vars} variables")
        if sum(exponents) > self.max_degree:
            raise TruncationOverflowError(
                f"Monomial of degree {sum(exponents)} exceeds the truncation degree {self.max_degree}"
            )
        return self._index[tuple(exponents)]

    def exponents(self, index: int) -> Exponents:
        return self.monomials[index - 1]

    def degree(self, index: int) -> int:
        return sum(self.monomials[index - 1])

    def label(self, index: int) -> str:
        exponents = self.monomials[index - 1]
        if self.vars == 1:
            return f"x^{exponents[0]}"
        factors = [f"x{v}^{e}" for v, e in enumerate(exponents, start=1) if e]
        return "*".join(factors) if factors else "1"

    def labels(self) -> Tuple[str, ...]:
        return tuple(self.label(i) for i in range(1, self.dim + 1))
