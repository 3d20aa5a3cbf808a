# modules/mu_family/general.py

"""
The 2n-dimensional Leibniz algebras whose quotient by the squares ideal is
n_{n,1} and whose squares ideal is the minimal faithful module.

Basis x_1..x_n, e_1..e_n. [e_m, x_a] is the minimal faithful action,
[x_i, x_1] = -[x_1, x_i] = x_{i+1} + (e-part), and every other product of
x's lies in span(e_1..e_n). Writing w(i, j) for the e-part of [x_i, x_j]:

* the boundary values w(1, *), w(*, 1), w(*, n) depend on alpha_1..alpha_5;
* w(2, 2) = sum beta_k e_k and w(i+1, i) = sum gamma_{i,k} e_k;
* w(a, b) = w(b+1, a-1) whenever a >= 3, b >= 2;
* everything else follows from
  w(i, j+1) + w(i+1, j) = phi(w(i, j)) - [i = 2] alpha_3 e_{n+1-j},
  phi being e_k -> e_{k-1} on 2 <= k <= n-1 and zero on e_1, e_n.

general_table is assembled from closed forms: the boundary values, the
Q-coefficient sums below weight n+2 (inner_bracket_closed_form) and the
binomial-weighted sums from weight n+2 on (high_bracket_closed_form).
The restrictions are the coefficient equations obtained by computing
[x_a, x_a] = 1/2 [[x_a, x_{a-1}], x_1] both ways; constraint_report lists
them system by system.

_ProductTable runs the relation itself, weight by weight, and keeps the
even-weight collisions. It is the independent cross-check of both the
closed forms and the restriction systems.

The printed closed forms carry (n-5) alpha_3 where the relation gives
(n-1) alpha_3, and add a beta_{n-2} e_1 term to [x_i, x_{n+2-i}] that phi
removes. ``verbatim=True`` reproduces the printed coefficients.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, Iterator, List, Sequence, Tuple

from modules.constructions.representations import minimal_faithful_action
from modules.core import linalg
from modules.core.algebra import leibniz_residuals
from modules.core.errors import ParameterError, SchemaError
from modules.core.scalars import as_scalar, format_scalar
from modules.core.types import StructureTensor, Vector
from modules.mu_family.q_coeff import q_coeff
from modules.utils.logger import CustomLogger

logger = CustomLogger("general")

MAX_ORACLE_N = 10
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class GeneralParams:
    """
    Parameters of the general table.

    Attributes:
        n: size of the filiform quotient, n >= 4
        alpha: alpha_1..alpha_5
        beta: beta_1..beta_{n-2} (beta_{n-1} is normalized away)
        gamma: (i, k) -> gamma_{i,k} for 2 <= i <= n // 2, 1 <= k <= n-1; missing keys are 0
    """

    n: int
    alpha: Tuple[Fraction, ...]
    beta: Tuple[Fraction, ...]
    gamma: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        n = self.n
        if not isinstance(n, int) or n < 4:
            raise ParameterError(f"General table needs n >= 4, got {n!r}")
        if len(self.alpha) != 5:
            raise ParameterError(f"Expected 5 alphas, got {len(self.alpha)}")
        if len(self.beta) != n - 2:
            raise ParameterError(f"Expected {n - 2} betas for n = {n}, got {len(self.beta)}")
        for (i, k) in self.gamma:
            if not (2 <= i <= n // 2 and 1 <= k <= n - 1):
                raise ParameterError(f"gamma index ({i},{k}) outside 2..{n // 2} x 1..{n - 1}")
        object.__setattr__(self, "alpha", tuple(as_scalar(a) for a in self.alpha))
        object.__setattr__(self, "beta", tuple(as_scalar(b) for b in self.beta))
        object.__setattr__(
            self, "gamma", {key: as_scalar(v) for key, v in sorted(self.gamma.items()) if as_scalar(v)}
        )

    @classmethod
    def zero(cls, n: int) -> "GeneralParams":
        return cls(n, (Fraction(0),) * 5, (Fraction(0),) * (n - 2), {})

    def gamma_vector(self, i: int) -> Vector:
        return Vector.from_terms(self.n, [(k, c) for (g, k), c in self.gamma.items() if g == i])

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "alpha": [format_scalar(a) for a in self.alpha],
            "beta": [format_scalar(b) for b in self.beta],
            "gamma": {f"{i},{k}": format_scalar(c) for (i, k), c in self.gamma.items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GeneralParams":
        """
        Read ``{"n", "alpha", "beta", "gamma": {"i,k": "p/q"}}``; omitted
        alphas, betas and gammas default to zero.
        """
        if not isinstance(data, dict) or "n" not in data:
            raise SchemaError("Parameter document needs at least 'n'")
        n = data["n"]
        if not isinstance(n, int):
            raise SchemaError("'n' must be an integer")
        alpha = [as_scalar(str(a)) for a in data.get("alpha", [])]
        beta = [as_scalar(str(b)) for b in data.get("beta", [])]
        alpha += [Fraction(0)] * (5 - len(alpha))
        beta += [Fraction(0)] * (n - 2 - len(beta))
        gamma = {}
        for key, value in (data.get("gamma") or {}).items():
            try:
                i, k = (int(part) for part in str(key).split(","))
            except ValueError:
                raise SchemaError(f"gamma key {key!r} is not of the form \"i,k\"")
            gamma[(i, k)] = as_scalar(str(value))
        return cls(n, tuple(alpha), tuple(beta), gamma)


def gamma_keys(n: int) -> List[Tuple[int, int]]:
    return [(i, k) for i in range(2, n // 2 + 1) for k in range(1, n)]


def parameter_count(n: int) -> int:
    return 5 + (n - 2) + len(gamma_keys(n))


def param_vector(p: GeneralParams) -> List[Fraction]:
    """alpha_1..alpha_5, beta_1..beta_{n-2}, then gamma_{i,k} in (i, k) order."""
    return list(p.alpha) + list(p.beta) + [p.gamma.get(key, Fraction(0)) for key in gamma_keys(p.n)]


def params_from_vector(n: int, values: Sequence[Fraction]) -> GeneralParams:
    if len(values) != parameter_count(n):
        raise ParameterError(f"Expected {parameter_count(n)} values for n = {n}, got {len(values)}")
    values = list(values)
    gamma = dict(zip(gamma_keys(n), values[n + 3:]))
    return GeneralParams(n, tuple(values[:5]), tuple(values[5:n + 3]), gamma)



# ---------------------------------------------------------------------------
# Products of the x's
# ---------------------------------------------------------------------------

def _e(n: int, k: int, coeff) -> Vector:
    return Vector.from_terms(n, [(k, coeff)])


def _phi(v: Vector) -> Vector:
    n = v.dim
    return Vector.from_terms(n, [(k - 1, c) for k, c in v.terms() if 2 <= k <= n - 1])


def _phi_power(v: Vector, power: int) -> Vector:
    for _ in range(power):
        v = _phi(v)
    return v


def _alpha3_coefficient(n: int, verbatim: bool) -> int:
    return n - 5 if verbatim else n - 1


def boundary_product(p: GeneralParams, a: int, b: int) -> Vector:
    """w(a, b) when a = 1, b = 1 or b = n."""
    n = p.n
    a1, a2, a3, a4, a5 = p.alpha
    zero = Vector.zero(n)
    if (a, b) == (1, 1):
        return _e(n, n - 1, a1) + _e(n, n, a2)
    if (a, b) == (1, n):
        return _e(n, 1, a4) + _e(n, 2, a2)
    if (a, b) == (n, 1):
        return _e(n, 1, -a4) + _e(n, 2, -2 * a2)
    if a == 1:
        return zero
    if (a, b) == (2, 1):
        return _e(n, n, a3)
    if b == 1:
        return _e(n, n + 2 - a, -a2)
    if (a, b) == (2, n):
        return _e(n, 1, a5) + _e(n, 2, a3)
    return zero  # w(i, n) for i >= 3


class _ProductTable:
    """e-parts w(a, b) generated by the weight recursion."""

    def __init__(self, p: GeneralParams):
        self.p = p
        self.n = p.n
        self.canonical: Dict[Tuple[int, int], Vector] = {}
        self.collisions: List[Tuple[int, Vector]] = []
        self._generate()

    def get(self, a: int, b: int) -> Vector:
        n = self.n
        if a > n or b > n:
            return Vector.zero(n)
        if a == 1 or b == 1 or b == n:
            return boundary_product(self.p, a, b)
        if a <= b + 1:
            return self.canonical[(a, b)]
        return self.canonical[(b + 1, a - 1)]

    def _alpha3_term(self, i: int, j: int) -> Vector:
        # contribution of (w(2,1), x_j) = alpha_3 e_{n+1-j}
        if i != 2:
            return Vector.zero(self.n)
        return _e(self.n, self.n + 1 - j, self.p.alpha[2])

    def _generate(self) -> None:
        n = self.n
        beta = Vector.from_terms(n, list(enumerate(self.p.beta, start=1)))
        for s in range(4, 2 * n + 1):
            a_top = (s + 1) // 2
            if s <= n + 1:
                if s == 4:
                    self.canonical[(2, 2)] = beta
                elif s % 2:
                    self.canonical[(a_top, a_top - 1)] = self.p.gamma_vector(a_top - 1)
                else:
                    self.canonical[(a_top, a_top)] = _phi(self.get(a_top, a_top - 1)).scale(HALF)
                for a in range(a_top - 1, 1, -1):
                    b = s - a
                    self.canonical[(a, b)] = (
                        _phi(self.get(a, b - 1)) - self._alpha3_term(a, b - 1) - self.get(a + 1, b - 1)
                    )
                continue
            for i in range(s - n, a_top):
                j = s - i - 1
                self.canonical[(i + 1, j)] = (
                    _phi(self.get(i, j)) - self._alpha3_term(i, j) - self.get(i, j + 1)
                )
            if s % 2 == 0:
                a = s // 2
                residual = self.get(a, a).scale(2) - _phi(self.get(a, a - 1))
                self.collisions.append((s, residual))


def inner_bracket_closed_form(p: GeneralParams, i: int, j: int) -> Vector:
    """
    e-part of [x_i, x_j] from the Q-coefficient sums, for i >= 2,
    i-1 <= j and i + j <= n + 1.

    For i >= 3 and d = j - i:
        sum_s (-1)^s Q_{s, d+2-2s} phi^{d+1-2s} gamma_{i+s-1}
    For i = 2:
        -(j-2) alpha_3 e_{n+2-j} + phi^{j-2} beta
        + sum_{s>=2} (-1)^(s+1) Q_{s-1, j+2-2s} phi^{j+1-2s} gamma_s
    with s running while the first Q index is >= 1.
    """
    n = p.n
    if i < 2 or j < i - 1 or i + j > n + 1 or (i == 2 and j < 2):
        raise ParameterError(f"({i},{j}) is outside the inner region for n = {n}")
    total = Vector.zero(n)
    if i >= 3:
        d = j - i
        s = 0
        while d + 2 - 2 * s >= 1:
            term = _phi_power(p.gamma_vector(i + s - 1), d + 1 - 2 * s)
            total = total + term.scale((-1) ** s * q_coeff(s, d + 2 - 2 * s))
            s += 1
        return total
    beta = Vector.from_terms(n, list(enumerate(p.beta, start=1)))
    total = _phi_power(beta, j - 2)
    if j > 2:
        total = total - _e(n, n + 2 - j, (j - 2) * p.alpha[2])
    s = 2
    while j + 2 - 2 * s >= 1:
        term = _phi_power(p.gamma_vector(s), j + 1 - 2 * s)
        total = total + term.scale((-1) ** (s + 1) * q_coeff(s - 1, j + 2 - 2 * s))
        s += 1
    return total


def inner_region(n: int) -> List[Tuple[int, int]]:
    return [
        (i, j)
        for i in range(2, n + 1)
        for j in range(max(i - 1, 2), n + 2 - i)
    ]


def high_bracket_closed_form(p: GeneralParams, i: int, j: int, verbatim: bool = False) -> Vector:
    """
    e-part of [x_i, x_j] for i + j = n + r with r >= 2, r + 1 <= i and
    j >= i - 1.

    With A_s = phi^{n+1-2s} gamma_s and m = n // 2:

    r = 2:  (-1)^i alpha_5 e_1 + (-1)^i (n-1) alpha_3 e_2
            + sum_{s=2}^{m} (-1)^(s+i) sum_{t=1}^{min(s, i-2)} Q_{s-t, n+1-2s} A_s
    r = 3:  (-1)^(i+1) (i-3)(n-1) alpha_3 e_1
            + sum_s (-1)^(s+i+1) sum_{t=1}^{min(s, i-3)} (i-2-t) Q_{s-t, n+1-2s} phi A_s
    r >= 4: sum_s (-1)^(s+i+r) sum_{t=1}^{min(s, i-r)} C(i-2-t, r-2) Q_{s-t, n+1-2s} phi^{r-2} A_s

    ``verbatim=True`` uses (n-5) for (n-1) and adds (-1)^(i+1) beta_{n-2} e_1
    when r = 2.
    """
    n = p.n
    r = i + j - n
    if r < 2 or i < r + 1 or j < i - 1:
        raise ParameterError(f"({i},{j}) is outside the high region for n = {n}")
    c = _alpha3_coefficient(n, verbatim)
    a3, a5 = p.alpha[2], p.alpha[4]
    total = Vector.zero(n)
    if r == 2:
        total = _e(n, 1, (-1) ** i * a5) + _e(n, 2, (-1) ** i * c * a3)
        if verbatim:
            total = total + _e(n, 1, (-1) ** (i + 1) * p.beta[n - 3])
    elif r == 3:
        total = _e(n, 1, (-1) ** (i + 1) * (i - 3) * c * a3)
    for s in range(2, n // 2 + 1):
        weight = sum(
            comb(i - 2 - t, r - 2) * q_coeff(s - t, n + 1 - 2 * s) for t in range(1, min(s, i - r) + 1)
        )
        if weight:
            term = _phi_power(p.gamma_vector(s), n + r - 1 - 2 * s)
            total = total + term.scale((-1) ** (s + i + r) * weight)
    return total


def closed_form_product(p: GeneralParams, a: int, b: int, verbatim: bool = False) -> Vector:
    """w(a, b) for any 1 <= a, b <= n, folding a > b + 1 onto w(b+1, a-1)."""
    n = p.n
    if not (1 <= a <= n and 1 <= b <= n):
        raise ParameterError(f"({a},{b}) is not a pair of x indices for n = {n}")
    if a == 1 or b == 1 or b == n:
        return boundary_product(p, a, b)
    if a > b + 1:
        a, b = b + 1, a - 1
    if a + b <= n + 1:
        return inner_bracket_closed_form(p, a, b)
    return high_bracket_closed_form(p, a, b, verbatim)


def _assemble(p: GeneralParams, verbatim: bool = False) -> StructureTensor:
    n = p.n
    brackets: Dict[Tuple[int, int], list] = {}
    for (m, a), terms in minimal_faithful_action(n).entries.items():
        brackets[(n + m, a)] = [(n + k, c) for k, c in terms]
    for i in range(2, n):
        brackets.setdefault((i, 1), []).append((i + 1, 1))
        brackets.setdefault((1, i), []).append((i + 1, -1))
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            w = closed_form_product(p, a, b, verbatim)
            if not w.is_zero():
                brackets.setdefault((a, b), []).extend((n + k, c) for k, c in w.terms())
    labels = [f"x{i}" for i in range(1, n + 1)] + [f"e{k}" for k in range(1, n + 1)]
    return StructureTensor.build(2 * n, brackets, labels)


def general_table(p: GeneralParams, verbatim: bool = False) -> StructureTensor:
    """
    The 2n-dimensional table for parameters p.

    Raises:
        ParameterError: for n = 4, which has its own eight-parameter table (mu4_table)
    """
    if p.n < 5:
        logger.error("general_table: n = 4 is handled by mu4_table")
        raise ParameterError("general_table needs n >= 5; use mu4_table for n = 4")
    T = _assemble(p, verbatim)
    logger.debug(
        f"Assembled {'printed' if verbatim else 'general'} table for n = {p.n} "
        f"with {len(T.entries)} nonzero products"
    )
    return T


def _derived_products(p: GeneralParams) -> StructureTensor:
    """Same assembly without the n >= 5 guard; the n = 4 case feeds the mu4 cross-check."""
    return _assemble(p)


# ---------------------------------------------------------------------------
# Restrictions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConstraintResidual:
    """
    One coefficient equation of a restriction system.

    Attributes:
        system: "even-n system" or "odd-n system"
        level: l in [x_{m+l}, x_{m+l}] with m = n // 2
        weight: i + j of the products compared
        index: the e_k coordinate compared
        value: left-hand side of the equation; zero when it holds
    """

    system: str
    level: int
    weight: int
    index: int
    value: Fraction

    @property
    def label(self) -> str:
        return f"{self.system}, level {self.level}: e{self.index} at weight {self.weight}"


def _gamma(p: GeneralParams, s: int, k: int) -> Fraction:
    return p.gamma.get((s, k), Fraction(0))


def _even_first_level(p: GeneralParams, verbatim: bool) -> Iterator[Tuple[int, Fraction]]:
    n, m = p.n, p.n // 2
    for k in range(1, n - 1):
        value = Fraction(0)
        for s in range(max(2, (k + 3) // 2), m + 1):
            weight = sum(q_coeff(s - t, n + 1 - 2 * s) for t in range(1, s + 1))
            value += (-1) ** s * _gamma(p, s, n + 1 - 2 * s + k) * weight
        value -= (-1) ** m * HALF * _gamma(p, m, k + 1)
        if k == 1:
            value += p.alpha[4]
            if verbatim:
                value -= p.beta[n - 3]
        if k == 2:
            value += _alpha3_coefficient(n, verbatim) * p.alpha[2]
        yield k, value


def _even_higher_level(p: GeneralParams, l: int) -> Iterator[Tuple[int, Fraction]]:
    n, m = p.n, p.n // 2
    for k in range(1, n - 2 * l + 1):
        low = (k + 1) // 2 + l
        value = Fraction(0)
        for s in range(low, m + 1):
            g = (-1) ** s * _gamma(p, s, n + 2 * l - 1 - 2 * s + k)
            weight = sum(
                (comb(m + l - 2 - t, 2 * l - 2) + HALF * comb(m + l - 2 - t, 2 * l - 3))
                * q_coeff(s - t, n + 1 - 2 * s)
                for t in range(1, min(s, m - l) + 1)
            )
            value += g * weight
            if s >= m - l + 1:
                value += HALF * g * q_coeff(s - m + l - 1, n + 1 - 2 * s)
        yield k, value


def _odd_first_level(p: GeneralParams, verbatim: bool) -> Iterator[Tuple[int, Fraction]]:
    n, m = p.n, p.n // 2
    for k in range(1, n - 3):
        value = Fraction(0)
        for s in range((k + 4) // 2, m + 1):
            weight = sum((m - t + HALF) * q_coeff(s - t, n + 1 - 2 * s) for t in range(1, s + 1))
            value += (-1) ** s * _gamma(p, s, n + 2 - 2 * s + k) * weight
        if k == 1:
            value += (m - HALF) * _alpha3_coefficient(n, verbatim) * p.alpha[2]
        yield k, value


def _odd_higher_level(p: GeneralParams, l: int) -> Iterator[Tuple[int, Fraction]]:
    n, m = p.n, p.n // 2
    for k in range(1, n - 2 * l + 1):
        low = k // 2 + l
        value = Fraction(0)
        for s in range(low, m + 1):
            g = (-1) ** s * _gamma(p, s, n + 2 * l - 2 - 2 * s + k)
            weight = sum(
                (comb(m + l - 2 - t, 2 * l - 3) + HALF * comb(m + l - 2 - t, 2 * l - 4))
                * q_coeff(s - t, n + 1 - 2 * s)
                for t in range(1, min(s, m - l + 1) + 1)
            )
            value += g * weight
            if s >= m - l + 2:
                value += HALF * g * q_coeff(s - m + l - 2, n + 1 - 2 * s)
        yield k, value


def constraint_report(p: GeneralParams, verbatim: bool = False) -> List[ConstraintResidual]:
    """
    Every equation of the restriction system for p.n, zero or not.

    Even n: level 1 at weight n+2 (e_1..e_{n-2}), then level l at weight
    n+2l (e_1..e_{n-2l}) for 2 <= l <= n/2 - 1.
    Odd n: level 2 at weight n+3 (e_1..e_{n-4}), then level l at weight
    n+2l-1 (e_1..e_{n-2l}) for 3 <= l <= n // 2.

    Each equation is a fixed nonzero multiple of the matching coordinate of
    2 [x_a, x_a] - [[x_a, x_{a-1}], x_1] with a = n // 2 + l, so the list is
    all zero iff the table satisfies the Leibniz identity. ``verbatim=True``
    uses the printed alpha_3 and beta_{n-2} coefficients of the first level.
    """
    n, m = p.n, p.n // 2
    report = []
    if n % 2 == 0:
        system = "even-n system"
        levels = [(1, _even_first_level(p, verbatim))]
        levels += [(l, _even_higher_level(p, l)) for l in range(2, m)]
    else:
        system = "odd-n system"
        levels = [(2, _odd_first_level(p, verbatim))]
        levels += [(l, _odd_higher_level(p, l)) for l in range(3, m + 1)]
    for l, rows in levels:
        for k, value in rows:
            report.append(ConstraintResidual(system, l, n + 2 * l - n % 2, k, value))
    return report


def constraint_residuals(p: GeneralParams, verbatim: bool = False) -> List[Fraction]:
    """Values of the restrictions; all zero iff the table satisfies the Leibniz identity."""
    return [r.value for r in constraint_report(p, verbatim)]


def constraints_satisfied(p: GeneralParams) -> bool:
    return not any(constraint_residuals(p))


def bruteforce_constraint_oracle(n: int, p: GeneralParams, verbatim: bool = False) -> List[Fraction]:
    """
    Nonzero residual coordinates of a full Leibniz scan of the assembled
    table (the printed one with ``verbatim=True``), in triple order.
    """
    if not 4 <= n <= MAX_ORACLE_N:
        raise ParameterError(f"Oracle runs for 4 <= n <= {MAX_ORACLE_N}, got {n}")
    if p.n != n:
        raise ParameterError(f"Parameters are for n = {p.n}, not {n}")
    values = []
    for _, residual in leibniz_residuals(_assemble(p, verbatim)):
        values.extend(c for _, c in residual.terms())
    return values


def constraint_matrix(n: int):
    """
    Matrix of the (linear) restrictions on the parameter vector of param_vector.
    Row r is coordinate r of constraint_residuals.
    """
    count = parameter_count(n)
    columns = []
    for position in range(count):
        unit = [Fraction(0)] * count
        unit[position] = Fraction(1)
        columns.append(constraint_residuals(params_from_vector(n, unit)))
    rows = [[columns[c][r] for c in range(count)] for r in range(len(columns[0]))]
    return linalg.fraction_matrix(rows, count)


def random_params(n: int, rng: random.Random, bound: int = 5) -> GeneralParams:
    """Uniformly random small rationals for every parameter."""

    def draw():
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    return params_from_vector(n, [draw() for _ in range(parameter_count(n))])


def sample_constrained_params(n: int, rng: random.Random, bound: int = 5) -> GeneralParams:
    """A random rational combination of a basis of the solution space of the restrictions."""
    basis = linalg.nullspace(constraint_matrix(n))
    values = [Fraction(0)] * parameter_count(n)
    for vector in basis:
        weight = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        values = [v + weight * x for v, x in zip(values, vector)]
    return params_from_vector(n, values)
