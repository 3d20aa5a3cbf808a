# modules/mu_family/mu4.py

"""
The eight-parameter family mu(alpha_1, alpha_2, alpha_3, alpha_4, beta_1,
beta_2, gamma_1, gamma_2) of 8-dimensional Leibniz algebras on the basis
x_1..x_4, e_1..e_4, and the substitutions (P_1, M_2, M_3, M_4, T_4)
acting on it.

The printed table has [x_2, x_4] = -3/2 gamma_2 e_1 - alpha_3 e_2; that
sign breaks the Leibniz identity at (x_2, x_1, x_3) and (x_2, x_1, x_4)
whenever alpha_3 != 0.
mu4_table uses +alpha_3 e_2; ``verbatim=True`` gives the printed one.
"""

from dataclasses import astuple, dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from modules.core import linalg
from modules.core.algebra import apply_basis_change, bracket, leibniz_residuals
from modules.core.errors import ParameterError, SingularBasisChangeError
from modules.core.scalars import as_scalar, format_scalar, parse_scalar_list
from modules.core.types import BasisChange, StructureTensor, Vector
from modules.mu_family.general import GeneralParams
from modules.utils.logger import CustomLogger

logger = CustomLogger("mu4")

PARAMETER_NAMES = ("alpha1", "alpha2", "alpha3", "alpha4", "beta1", "beta2", "gamma1", "gamma2")
LABELS = ("x1", "x2", "x3", "x4", "e1", "e2", "e3", "e4")


@dataclass(frozen=True)
class MuParams:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    b1: Fraction
    b2: Fraction
    g1: Fraction
    g2: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "b1", "b2", "g1", "g2"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))

    @classmethod
    def of(cls, values: Sequence) -> "MuParams":
        if len(values) != 8:
            raise ParameterError(f"mu needs 8 parameters, got {len(values)}")
        return cls(*values)

    @classmethod
    def parse(cls, text: str) -> "MuParams":
        """From ``"a1,a2,a3,a4,b1,b2,g1,g2"`` with exact fraction entries."""
        return cls.of(parse_scalar_list(text))

    @classmethod
    def zero(cls) -> "MuParams":
        return cls(*([0] * 8))

    def as_tuple(self) -> Tuple[Fraction, ...]:
        return astuple(self)

    def to_list(self) -> List[str]:
        return [format_scalar(v) for v in self.as_tuple()]

    def __str__(self) -> str:
        return ",".join(self.to_list())


@dataclass(frozen=True)
class MuTransform:
    """
    x_1' = P_1 x_1 + ..., x_2' = M_2 x_2 + M_3 x_3 + M_4 x_4 + ..., e_4' = T_4 e_4.

    Raises:
        SingularBasisChangeError: if T_4 P_1 M_2 = 0
    """

    P1: Fraction
    M2: Fraction
    M3: Fraction
    M4: Fraction
    T4: Fraction

    def __post_init__(self):
        for name in ("P1", "M2", "M3", "M4", "T4"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if self.T4 * self.P1 * self.M2 == 0:
            raise SingularBasisChangeError(f"T4 P1 M2 must be nonzero, got {self.to_list()}")

    @classmethod
    def identity(cls) -> "MuTransform":
        return cls(1, 1, 0, 0, 1)

    @classmethod
    def scaling(cls, a=1, m=1, t=1, u=0) -> "MuTransform":
        """
        P_1 = a, M_2 = m, T_4 = t, M_3 = 0 and M_4 chosen so that the
        translation (M_3^2 - 2 M_2 M_4) / M_2^2 equals u.
        """
        m = as_scalar(m)
        return cls(a, m, 0, -as_scalar(u) * m / 2, t)

    @classmethod
    def of(cls, values: Sequence) -> "MuTransform":
        if len(values) != 5:
            raise ParameterError(f"A transform has 5 entries, got {len(values)}")
        return cls(*values)

    @property
    def translation(self) -> Fraction:
        return (self.M3 ** 2 - 2 * self.M2 * self.M4) / self.M2 ** 2

    def as_tuple(self) -> Tuple[Fraction, ...]:
        return astuple(self)

    def to_list(self) -> List[str]:
        return [format_scalar(v) for v in self.as_tuple()]


# ---------------------------------------------------------------------------
# Table
# ---------------------------------------------------------------------------

X1, X2, X3, X4, E1, E2, E3, E4 = range(1, 9)


def mu4_table(p: MuParams, verbatim: bool = False) -> StructureTensor:
    a1, a2, a3, a4, b1, b2, g1, g2 = p.as_tuple()
    half = Fraction(1, 2)
    brackets: Dict[Tuple[int, int], list] = {
        # module
        (E2, X1): [(E1, 1)],
        (E3, X1): [(E2, 1)],
        (E4, X2): [(E3, 1)],
        (E4, X3): [(E2, 1)],
        (E4, X4): [(E1, 1)],
        # x_1 column and row
        (X1, X1): [(E3, a1), (E4, a2)],
        (X2, X1): [(X3, 1), (E4, a3)],
        (X3, X1): [(X4, 1), (E3, -a2)],
        (X4, X1): [(E1, -a4), (E2, -2 * a2)],
        (X1, X2): [(X3, -1)],
        (X1, X3): [(X4, -1)],
        (X1, X4): [(E1, a4), (E2, a2)],
        # inner products
        (X2, X2): [(E1, b1), (E2, b2)],
        (X3, X2): [(E1, g1), (E2, g2), (E3, -2 * a3)],
        (X2, X3): [(E1, b2 - g1), (E2, -g2), (E3, a3)],
        (X3, X3): [(E1, half * g2), (E2, -a3)],
        (X4, X2): [(E1, half * g2), (E2, -a3)],
        (X4, X3): [(E1, -a3)],
        (X2, X4): [(E1, Fraction(-3, 2) * g2), (E2, -a3 if verbatim else a3)],
    }
    return StructureTensor.build(8, brackets, LABELS)


def mu4_display_residuals(p: MuParams):
    """Leibniz residuals of the table exactly as printed."""
    return leibniz_residuals(mu4_table(p, verbatim=True))


def mu4_as_general(p: MuParams) -> GeneralParams:
    """
    The same algebra as a point of the general family at n = 4, where the
    restrictions force alpha_5 = -3/2 gamma_2 and gamma_{2,3} = -2 alpha_3.
    """
    a1, a2, a3, a4, b1, b2, g1, g2 = p.as_tuple()
    return GeneralParams(
        4,
        (a1, a2, a3, a4, Fraction(-3, 2) * g2),
        (b1, b2),
        {(2, 1): g1, (2, 2): g2, (2, 3): -2 * a3},
    )


# ---------------------------------------------------------------------------
# Substitutions
# ---------------------------------------------------------------------------

def mu4_transform_action(p: MuParams, g: MuTransform) -> MuParams:
    """Parameters of mu(p) in the basis produced by g."""
    a1, a2, a3, a4, b1, b2, g1, g2 = p.as_tuple()
    P1, M2, M3, M4, T4 = g.as_tuple()
    return MuParams(
        a1 * P1 ** 2 / (T4 * M2),
        a2 * P1 ** 2 / T4,
        a3 * P1 * M2 / T4,
        a4 * P1 / T4,
        (2 * b1 * M2 ** 2 + g2 * M3 ** 2 - 2 * g2 * M2 * M4) / (2 * T4 * P1 ** 2 * M2),
        b2 * M2 / (T4 * P1),
        (g1 * M2 ** 2 - a3 * M3 ** 2 + 2 * a3 * M2 * M4) / (T4 * P1 * M2),
        g2 * M2 / T4,
    )


def mu4_compose(g: MuTransform, h: MuTransform) -> MuTransform:
    """The substitution equal to applying g first and then h."""
    return MuTransform(
        g.P1 * h.P1,
        g.M2 * h.M2,
        h.M2 * g.M3 + h.M3 * g.P1 * g.M2,
        h.M2 * g.M4 + h.M3 * g.P1 * g.M3 + h.M4 * g.P1 ** 2 * g.M2,
        g.T4 * h.T4,
    )


def mu4_inverse(g: MuTransform) -> MuTransform:
    return MuTransform(
        1 / g.P1,
        1 / g.M2,
        -g.M3 / (g.P1 * g.M2 ** 2),
        (g.M3 ** 2 - g.M2 * g.M4) / (g.P1 ** 2 * g.M2 ** 3),
        1 / g.T4,
    )


def _basis_columns(T: StructureTensor, g: MuTransform, target: MuParams, free: Sequence[Fraction]):
    # free = (Q_1..Q_4, N_1..N_4): e-parts of x_1' and x_2'
    x1 = Vector.from_terms(8, [(X1, g.P1)] + [(E1 + k, free[k]) for k in range(4)])
    x2 = Vector.from_terms(
        8, [(X2, g.M2), (X3, g.M3), (X4, g.M4)] + [(E1 + k, free[4 + k]) for k in range(4)]
    )
    e4 = Vector.basis(8, E4).scale(g.T4)
    e3 = bracket(T, e4, x2)
    e2 = bracket(T, e3, x1)
    e1 = bracket(T, e2, x1)
    x3 = bracket(T, x2, x1) - e4.scale(target.a3)
    x4 = bracket(T, x3, x1) + e3.scale(target.a2)
    return [x1, x2, x3, x4, e1, e2, e3, e4]


def _table_defect(T: StructureTensor, columns, expected: StructureTensor) -> List[Fraction]:
    transformed = apply_basis_change(T, BasisChange.from_columns(columns))
    defect = []
    for i in range(1, 9):
        for j in range(1, 9):
            got = dict(transformed.product(i, j))
            want = dict(expected.product(i, j))
            defect.extend(got.get(k, Fraction(0)) - want.get(k, Fraction(0)) for k in range(1, 9))
    return defect


def mu4_induced_basis_change(p: MuParams, g: MuTransform) -> Tuple[BasisChange, MuParams]:
    """
    The full 8x8 basis change realizing g on mu(p).

    x_1', x_2' and e_4' come from g plus e-parts Q_k, N_k; the rest is
    generated by brackets. The table in the new basis is affine in (Q, N),
    so the e-parts are found from nine evaluations and one exact solve.

    Returns:
        (basis change, transformed parameters) with
        apply_basis_change(mu4_table(p), B) == mu4_table(transformed)

    Raises:
        SingularBasisChangeError: if no choice of e-parts matches the target table
    """
    T = mu4_table(p)
    target = mu4_transform_action(p, g)
    expected = mu4_table(target)
    zero = [Fraction(0)] * 8
    base = _table_defect(T, _basis_columns(T, g, target, zero), expected)
    jacobian_columns = []
    for k in range(8):
        unit = list(zero)
        unit[k] = Fraction(1)
        shifted = _table_defect(T, _basis_columns(T, g, target, unit), expected)
        jacobian_columns.append([s - b for s, b in zip(shifted, base)])
    matrix = linalg.fraction_matrix(
        [[jacobian_columns[c][r] for c in range(8)] for r in range(len(base))], 8
    )
    solution = linalg.solve(matrix, [-b for b in base])
    if solution is None:
        logger.error(f"No e-parts realize transform {g.to_list()} on mu({p})")
        raise SingularBasisChangeError("Transform has no induced basis change")
    columns = _basis_columns(T, g, target, solution)
    if any(_table_defect(T, columns, expected)):
        logger.error(f"Solved e-parts do not reproduce mu({target})")
        raise SingularBasisChangeError("Induced basis change does not reproduce the transformed table")
    return BasisChange.from_columns(columns), target
