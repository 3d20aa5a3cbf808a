# modules/fock/fock_module.py

"""
Truncated Fock modules of n_{n,1} and the FR(...) Leibniz algebras built
on them.

The combined basis of an FR algebra is the finite part first (per block:
1bar, xbar^1 .. xbar^{n-2}, dbar) followed by the monomials of a
TruncatedPolySpace. A product that would leave the degree window is
recorded as undefined and raises TruncationOverflowError when asked for.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple, Union

from tqdm import tqdm

from modules.constructions.builders import check_size
from modules.core import config
from modules.core.algebra import add_terms, right_annihilator
from modules.core.errors import ParameterError, TruncationOverflowError
from modules.core.types import (
    BasisChange,
    ModuleAction,
    SparseTerms,
    StructureTensor,
    Subspace,
    Vector,
)
from modules.fock.poly_space import TruncatedPolySpace
from modules.utils.logger import CustomLogger

logger = CustomLogger("fock")

Residual = Tuple[Tuple[int, int, int], Vector]


@dataclass(frozen=True)
class FockAlgebra:
    """
    Finite part plus a truncated polynomial module.

    Attributes:
        finite_part: brackets among 1bar_i, xbar_i^j, dbar_i
        module_part: the monomials
        mixed_action: (monomial, finite generator) -> polynomial
        safe_degree: largest monomial degree used as an operand by the windowed check
        block_dims: n_i of each n_{n_i,1} block
    """

    finite_part: StructureTensor
    module_part: TruncatedPolySpace
    mixed_action: ModuleAction
    safe_degree: int
    block_dims: Tuple[int, ...]

    @property
    def finite_dim(self) -> int:
        return self.finite_part.dim

    @property
    def dim(self) -> int:
        return self.finite_part.dim + self.module_part.dim

    def labels(self) -> Tuple[str, ...]:
        return tuple(self.finite_part.basis_labels) + self.module_part.labels()

    def is_monomial(self, index: int) -> bool:
        return index > self.finite_dim

    def monomial_index(self, exponents: Sequence[int]) -> int:
        """Combined 1-based index of a monomial."""
        return self.finite_dim + self.module_part.index(tuple(exponents))

    def product(self, i: int, j: int) -> SparseTerms:
        """
        Terms of [b_i, b_j] in the combined basis.

        Raises:
            TruncationOverflowError: if the product leaves the degree window
        """
        f = self.finite_dim
        if j > f:
            return ()
        if i <= f:
            return self.finite_part.product(i, j)
        return tuple((f + k, c) for k, c in self.mixed_action.act_basis(i - f, j))

    def window_tensor(self) -> Tuple[StructureTensor, List[Tuple[int, int]]]:
        """
        Every representable product as one StructureTensor, plus the
        combined-index pairs whose product overflowed.
        """
        f = self.finite_dim
        brackets = dict(self.finite_part.entries)
        for (m, a), terms in self.mixed_action.entries.items():
            brackets[(f + m, a)] = [(f + k, c) for k, c in terms]
        overflow = sorted((f + m, a) for m, a in self.mixed_action.undefined)
        return StructureTensor.build(self.dim, brackets, self.labels()), overflow


@dataclass(frozen=True)
class IdealDefect:
    kind: str
    basis: Tuple[int, ...]


@dataclass(frozen=True)
class WindowedReport:
    residuals: List[Residual]
    window_size: int
    triples_checked: int
    triples_skipped: int


def _validate_degree(D: int, dims: Sequence[int]) -> None:
    if not isinstance(D, int) or D < max(dims):
        logger.error(f"Truncation degree {D!r} is below max(n_i) = {max(dims)}")
        raise ParameterError(f"Truncation degree must be at least {max(dims)}, got {D!r}")


def _finite_labels(n: int, suffix: str = "", var: str = "x") -> List[str]:
    labels = [f"1bar{suffix}"]
    labels += [f"{var}bar^{i}" for i in range(1, n - 1)]
    labels.append(f"dbar{suffix}")
    return labels


def _block_products(n: int, offset: int) -> Dict[Tuple[int, int], list]:
    # block basis: 1bar at offset+1, xbar^i at offset+1+i, dbar at offset+n
    dbar = offset + n
    brackets = {}
    for i in range(1, n - 1):
        brackets[(offset + 1 + i, dbar)] = [(offset + i, i)]
        brackets[(dbar, offset + 1 + i)] = [(offset + i, -i)]
    return brackets


def fock_action(n: int, D: int) -> ModuleAction:
    """
    Action of n_{n,1} on polynomials of degree <= D:
    (x^t, x_1) = t x^(t-1) and (x^t, x_i) = x^(t+n-i) / (n-i)! for i >= 2.
    Products above degree D are marked undefined.
    """
    check_size("fock_action", n)
    _validate_degree(D, [n])
    space = TruncatedPolySpace(1, D)
    entries = {}
    undefined = set()
    for t in range(D + 1):
        m = t + 1
        if t:
            entries[(m, 1)] = ((t, Fraction(t)),)
        for i in range(2, n + 1):
            raise_by = n - i
            if t + raise_by > D:
                undefined.add((m, i))
                continue
            entries[(m, i)] = ((m + raise_by, Fraction(1, factorial(raise_by))),)
    return ModuleAction(
        space.dim, n, entries, frozenset(undefined), space.labels(),
        tuple(f"x{i}" for i in range(1, n + 1)),
    )


def _assemble(dims: Sequence[int], D: int) -> FockAlgebra:
    s = len(dims)
    space = TruncatedPolySpace(s, D)
    brackets: Dict[Tuple[int, int], list] = {}
    labels: List[str] = []
    offsets = []
    offset = 0
    for p, n in enumerate(dims, start=1):
        offsets.append(offset)
        brackets.update(_block_products(n, offset))
        if s == 1:
            labels += _finite_labels(n)
        else:
            labels += _finite_labels(n, suffix=f"_{p}", var=f"x{p}")
        offset += n
    finite = StructureTensor.build(offset, brackets, labels)

    entries: Dict[Tuple[int, int], tuple] = {}
    undefined = set()
    for m, exponents in enumerate(space.monomials, start=1):
        degree = sum(exponents)
        for p, (n, base) in enumerate(zip(dims, offsets)):
            # [p, 1bar_i] = p
            entries[(m, base + 1)] = ((m, Fraction(1)),)
            # [p, xbar_i^j] = x_i^j p
            for j in range(1, n - 1):
                if degree + j > D:
                    undefined.add((m, base + 1 + j))
                    continue
                raised = list(exponents)
                raised[p] += j
                entries[(m, base + 1 + j)] = ((space.index(tuple(raised)), Fraction(1)),)
            # [p, dbar_i] = d p / d x_i
            if exponents[p]:
                lowered = list(exponents)
                lowered[p] -= 1
                entries[(m, base + n)] = ((space.index(tuple(lowered)), Fraction(exponents[p])),)
    action = ModuleAction(
        space.dim, finite.dim, entries, frozenset(undefined), space.labels(), finite.basis_labels
    )
    safe_degree = D - (max(dims) - 2)
    return FockAlgebra(finite, space, action, safe_degree, tuple(dims))


def build_FR(n: int, D: int) -> FockAlgebra:
    """
    FR(n_{n,1}) truncated at degree D.

    Finite part: [xbar^i, dbar] = i xbar^(i-1) = -[dbar, xbar^i].
    Mixed part: [x^t, 1bar] = x^t, [x^t, xbar^i] = x^(t+i), [x^t, dbar] = t x^(t-1).
    """
    check_size("build_FR", n)
    _validate_degree(D, [n])
    F = _assemble([n], D)
    logger.debug(f"Built FR({n}) at degree {D}: {F.finite_dim} + {F.module_part.dim} basis vectors")
    return F


def build_FR_direct_sum(dims: Sequence[int], D: int) -> FockAlgebra:
    """
    FR of n_{n_1,1} + ... + n_{n_s,1} acting on polynomials in s variables.

    Each block acts on its own variable; products between different blocks
    of the finite part are zero.
    """
    dims = list(dims)
    if not dims:
        raise ParameterError("build_FR_direct_sum needs at least one block")
    for n in dims:
        check_size("build_FR_direct_sum", n)
    _validate_degree(D, dims)
    F = _assemble(dims, D)
    logger.debug(f"Built FR{tuple(dims)} at degree {D}: {F.dim} basis vectors")
    return F


# ---------------------------------------------------------------------------
# Windowed identity check
# ---------------------------------------------------------------------------

def _window(F: FockAlgebra) -> List[int]:
    f = F.finite_dim
    monomials = [
        f + m for m in range(1, F.module_part.dim + 1) if F.module_part.degree(m) <= F.safe_degree
    ]
    return list(range(1, f + 1)) + monomials


def _residuals_for_first(F: FockAlgebra, i: int, window: Sequence[int]) -> Tuple[List[Residual], int, int]:
    found: List[Residual] = []
    checked = skipped = 0
    for j in window:
        for k in window:
            try:
                out: Dict[int, Fraction] = {}
                for l, c in F.product(i, j):
                    add_terms(out, F.product(l, k), c)
                for l, c in F.product(i, k):
                    add_terms(out, F.product(l, j), -c)
                for l, c in F.product(j, k):
                    add_terms(out, F.product(i, l), -c)
            except TruncationOverflowError:
                skipped += 1
                continue
            checked += 1
            if out:
                found.append(((i, j, k), Vector.from_terms(F.dim, out.items())))
    return found, checked, skipped


def windowed_leibniz_report(
    F: FockAlgebra, workers: Optional[int] = None, progress: bool = False
) -> WindowedReport:
    """
    Leibniz identity over the safe window.

    Operands are finite generators and monomials of degree <= safe_degree;
    triples whose evaluation would leave the truncation are counted as
    skipped, never as passing.
    """
    window = _window(F)
    workers = workers or config.max_workers
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(
                tqdm(pool.map(lambda i: _residuals_for_first(F, i, window), window),
                     total=len(window), disable=not progress, desc="fock window")
            )
    else:
        chunks = [
            _residuals_for_first(F, i, window)
            for i in tqdm(window, disable=not progress, desc="fock window")
        ]
    residuals = sorted((r for found, _, _ in chunks for r in found), key=lambda item: item[0])
    checked = sum(c for _, c, _ in chunks)
    skipped = sum(s for _, _, s in chunks)
    logger.info(
        f"Windowed Leibniz scan: {len(window)} operands, {checked} triples checked, "
        f"{skipped} skipped, {len(residuals)} residuals"
    )
    return WindowedReport(residuals, len(window), checked, skipped)


def check_leibniz_windowed(F: FockAlgebra, workers: Optional[int] = None) -> List[Residual]:
    return windowed_leibniz_report(F, workers).residuals


# ---------------------------------------------------------------------------
# Structure of the monomial part
# ---------------------------------------------------------------------------

def monomial_ideal(F: FockAlgebra) -> Subspace:
    """Span of the monomials inside the window tensor's space."""
    return Subspace.span(
        F.dim, [Vector.basis(F.dim, F.finite_dim + m) for m in range(1, F.module_part.dim + 1)]
    )


def monomial_ideal_defects(F: FockAlgebra) -> List[IdealDefect]:
    """
    Compare the monomial span with the right annihilator of the window
    tensor; they must coincide and the monomials must absorb [monomial, b].

    Defect kinds:
        "not annihilated": (a, m) with [b_a, monomial m] != 0
        "finite annihilator": (k,) where an annihilator vector has a finite
            component, k being its first finite index
        "leaves ideal": (m, a) with [monomial m, b_a] outside the monomials

    Overflowing products are absent from the window tensor and so not judged.
    """
    tensor, _ = F.window_tensor()
    f = F.finite_dim
    annihilator = right_annihilator(tensor)
    ideal = monomial_ideal(F)
    defects = []
    for m in range(f + 1, F.dim + 1):
        if not annihilator.contains(Vector.basis(F.dim, m)):
            a = next(a for a in range(1, F.dim + 1) if tensor.product(a, m))
            defects.append(IdealDefect("not annihilated", (a, m)))
    for v in annihilator.reduced_basis:
        if not ideal.contains(v):
            k = next(k for k, _ in v.terms() if k <= f)
            defects.append(IdealDefect("finite annihilator", (k,)))
    for m in range(f + 1, F.dim + 1):
        for a in range(1, F.dim + 1):
            if any(k <= f for k, _ in tensor.product(m, a)):
                defects.append(IdealDefect("leaves ideal", (m, a)))
    if defects:
        logger.warning(f"Monomial ideal check: {len(defects)} defects, first {defects[0]}")
    return defects


def fock_to_n_n1_basis_change(dims: Union[int, Sequence[int]]) -> BasisChange:
    """
    Columns express x_1 = dbar and x_i = xbar^(n-i) / (n-i)! in each block,
    so that the finite part becomes n_{n,1} (or the direct sum of them).
    """
    dims = [dims] if isinstance(dims, int) else list(dims)
    total = sum(dims)
    columns: List[Vector] = []
    offset = 0
    for n in dims:
        columns.append(Vector.basis(total, offset + n))
        for i in range(2, n + 1):
            power = n - i
            columns.append(Vector.from_terms(total, [(offset + 1 + power, Fraction(1, factorial(power)))]))
        offset += n
    return BasisChange.from_columns(columns)
