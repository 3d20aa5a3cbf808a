# modules/core/algebra.py

"""
Operations on structure-constant algebras: brackets, the Leibniz identity
scan, lower central and derived series, natural gradation, the ideal
generated by squares, quotients, induced module actions and basis changes.

Conventions: brackets are bilinear extensions of the sparse table; the
Leibniz identity checked is the right one,
[[x, y], z] = [[x, z], y] + [x, [y, z]].
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from modules.core import config, linalg
from modules.core.errors import (
    DimensionMismatchError,
    NotAnIdealError,
    NotNilpotentError,
    ParameterError,
)
from modules.core.types import (
    BasisChange,
    GradedAlgebra,
    ModuleAction,
    StructureTensor,
    Subspace,
    Vector,
)
from modules.utils.logger import CustomLogger

logger = CustomLogger("algebra")

Sparse = Dict[int, Fraction]
Residual = Tuple[Tuple[int, int, int], Vector]


# ---------------------------------------------------------------------------
# Sparse helpers
# ---------------------------------------------------------------------------

def add_terms(target: Sparse, terms: Iterable[Tuple[int, Fraction]], factor: Fraction) -> None:
    for k, c in terms:
        value = target.get(k, Fraction(0)) + factor * c
        if value:
            target[k] = value
        else:
            target.pop(k, None)


def _bracket_sparse(T: StructureTensor, u: Sparse, v: Sparse) -> Sparse:
    out: Sparse = {}
    for i, ui in u.items():
        for j, vj in v.items():
            terms = T.entries.get((i, j))
            if terms:
                add_terms(out, terms, ui * vj)
    return out


def _to_vector(dim: int, sparse: Sparse) -> Vector:
    coords = [Fraction(0)] * dim
    for k, c in sparse.items():
        coords[k - 1] = c
    return Vector(dim, tuple(coords))


def _to_sparse(v: Vector) -> Sparse:
    return {k: c for k, c in v.terms()}


# ---------------------------------------------------------------------------
# Brackets and identities
# ---------------------------------------------------------------------------

def bracket(T: StructureTensor, u: Vector, v: Vector) -> Vector:
    """
    Bilinear extension of the table: sum u_i v_j c_ij^k b_k.

    Raises:
        DimensionMismatchError: if u or v does not live in T's space
    """
    if u.dim != T.dim or v.dim != T.dim:
        logger.error(f"bracket: operands of dims {u.dim}, {v.dim} for a tensor of dim {T.dim}")
        raise DimensionMismatchError(f"Operands must have dim {T.dim}")
    return _to_vector(T.dim, _bracket_sparse(T, _to_sparse(u), _to_sparse(v)))


def _residuals_for_first(T: StructureTensor, i: int) -> List[Residual]:
    n = T.dim
    found: List[Residual] = []
    for j in range(1, n + 1):
        ij = dict(T.entries.get((i, j), ()))
        for k in range(1, n + 1):
            # [[b_i,b_j],b_k] - [[b_i,b_k],b_j] - [b_i,[b_j,b_k]]
            out: Sparse = {}
            for l, c in ij.items():
                add_terms(out, T.entries.get((l, k), ()), c)
            for l, c in T.entries.get((i, k), ()):
                add_terms(out, T.entries.get((l, j), ()), -c)
            for l, c in T.entries.get((j, k), ()):
                add_terms(out, T.entries.get((i, l), ()), -c)
            if out:
                found.append(((i, j, k), _to_vector(n, out)))
    return found


def leibniz_residuals(
    T: StructureTensor, workers: Optional[int] = None, progress: bool = False
) -> List[Residual]:
    """
    Evaluate the Leibniz identity on every basis triple.

    Args:
        T: the algebra
        workers: thread count for the scan (defaults to config.max_workers)
        progress: show a tqdm bar over the first index

    Returns:
        Nonzero residuals sorted by triple; empty iff T is a Leibniz algebra
    """
    workers = workers or config.max_workers
    firsts = range(1, T.dim + 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(
                tqdm(pool.map(lambda i: _residuals_for_first(T, i), firsts),
                     total=T.dim, disable=not progress, desc="leibniz")
            )
    else:
        chunks = [
            _residuals_for_first(T, i)
            for i in tqdm(firsts, disable=not progress, desc="leibniz")
        ]
    residuals = sorted((r for chunk in chunks for r in chunk), key=lambda item: item[0])
    logger.debug(f"Leibniz scan over {T.dim ** 3} triples: {len(residuals)} nonzero residuals")
    return residuals


def antisymmetry_violations(T: StructureTensor) -> List[Tuple[Tuple[int, int], Vector]]:
    """Pairs (i, j), i <= j, with [b_i, b_j] + [b_j, b_i] != 0."""
    violations = []
    for i in range(1, T.dim + 1):
        for j in range(i, T.dim + 1):
            total: Sparse = {}
            add_terms(total, T.product(i, j), Fraction(1))
            add_terms(total, T.product(j, i), Fraction(1))
            if total:
                violations.append(((i, j), _to_vector(T.dim, total)))
    return violations


def is_antisymmetric(T: StructureTensor) -> bool:
    return not antisymmetry_violations(T)


def is_lie(T: StructureTensor) -> bool:
    """Antisymmetric and free of Leibniz residuals (the Jacobi identity then follows)."""
    return is_antisymmetric(T) and not leibniz_residuals(T)


# ---------------------------------------------------------------------------
# Series
# ---------------------------------------------------------------------------

def _basis_vectors(dim: int) -> List[Vector]:
    return [Vector.basis(dim, i) for i in range(1, dim + 1)]


def lower_central_series(T: StructureTensor) -> List[Subspace]:
    """
    L^1 = L, L^(k+1) = [L^k, L^1], listed until the chain stabilizes.

    A terminal zero subspace is included; a nonzero stable term appears once.
    """
    n = T.dim
    basis = [_to_sparse(v) for v in _basis_vectors(n)]
    series = [Subspace.full(n)]
    while series[-1].dim > 0:
        products = [
            _to_vector(n, _bracket_sparse(T, _to_sparse(u), b))
            for u in series[-1].reduced_basis
            for b in basis
        ]
        following = Subspace.span(n, [p for p in products if not p.is_zero()])
        if following.dim == series[-1].dim:
            break
        series.append(following)
    return series


def derived_series(T: StructureTensor) -> List[Subspace]:
    """L^(1) = L, L^(k+1) = [L^(k), L^(k)] until stable."""
    n = T.dim
    series = [Subspace.full(n)]
    while series[-1].dim > 0:
        rows = [_to_sparse(u) for u in series[-1].reduced_basis]
        products = [_to_vector(n, _bracket_sparse(T, u, v)) for u in rows for v in rows]
        following = Subspace.span(n, [p for p in products if not p.is_zero()])
        if following.dim == series[-1].dim:
            break
        series.append(following)
    return series


def series_dims(series: Sequence[Subspace]) -> Tuple[int, ...]:
    return tuple(s.dim for s in series)


def is_nilpotent(T: StructureTensor) -> bool:
    return lower_central_series(T)[-1].dim == 0


def is_filiform(T: StructureTensor) -> bool:
    """dim L^i = n - i for 2 <= i <= n."""
    n = T.dim
    dims = series_dims(lower_central_series(T))
    for i in range(2, n + 1):
        dim_i = dims[i - 1] if i <= len(dims) else dims[-1]
        if dim_i != n - i:
            return False
    return True


# ---------------------------------------------------------------------------
# Gradation
# ---------------------------------------------------------------------------

def _section_label(T: StructureTensor, v: Vector, layer: int, position: int) -> str:
    support = v.terms()
    if len(support) == 1 and support[0][1] == 1:
        return T.basis_labels[support[0][0] - 1]
    return f"g{layer}_{position}"


def natural_gradation(T: StructureTensor) -> GradedAlgebra:
    """
    Build Gr(L) with layers L_k = L^k / L^(k+1).

    Each layer is represented by the rows of the echelon basis of L^k whose
    pivots are not pivots of L^(k+1). The induced bracket of a layer-p and a
    layer-q vector keeps the layer-(p+q) part of their product.

    Raises:
        NotNilpotentError: if the lower central series does not reach zero
    """
    series = lower_central_series(T)
    if series[-1].dim != 0:
        logger.error(f"natural_gradation: series stabilizes at dim {series[-1].dim}")
        raise NotNilpotentError("Natural gradation needs a nilpotent algebra")

    n = T.dim
    adapted: List[Vector] = []
    layer_of: List[int] = []
    labels: List[str] = []
    layers: List[Subspace] = []
    for k in range(len(series) - 1):
        upper, lower = series[k], series[k + 1]
        section = [row for row, p in zip(upper.reduced_basis, upper.pivots) if p not in lower.pivots]
        layers.append(Subspace.span(n, section))
        for position, v in enumerate(section, start=1):
            adapted.append(v)
            layer_of.append(k + 1)
            labels.append(_section_label(T, v, k + 1, position))

    change = BasisChange.from_columns(adapted)
    inverse = change.inverse().matrix
    brackets: Dict[Tuple[int, int], List[Tuple[int, Fraction]]] = {}
    for a, u in enumerate(adapted, start=1):
        for b, v in enumerate(adapted, start=1):
            w = bracket(T, u, v)
            if w.is_zero():
                continue
            coords = inverse.dot(np.array(w.coords, dtype=object))
            target = layer_of[a - 1] + layer_of[b - 1]
            terms = [(c + 1, coords[c]) for c in range(n) if layer_of[c] == target and coords[c] != 0]
            if terms:
                brackets[(a, b)] = terms
    induced = StructureTensor.build(n, brackets, labels)
    logger.debug(f"Natural gradation layer dims {tuple(l.dim for l in layers)}")
    return GradedAlgebra(tuple(layers), induced, tuple(adapted), tuple(layer_of))


def _affine_bracket(T_y: StructureTensor, affine: np.ndarray, j: int, left: bool) -> np.ndarray:
    """
    Bracket of an affine vector (columns: constant, then one per unknown)
    with the basis vector b_j, on the left ([A, b_j]) or the right ([b_j, A]).
    """
    n = T_y.dim
    out = linalg.zeros(n, affine.shape[1])
    for i in range(1, n + 1):
        row = affine[i - 1, :]
        if not any(x != 0 for x in row):
            continue
        terms = T_y.product(i, j) if left else T_y.product(j, i)
        for k, c in terms:
            out[k - 1, :] = out[k - 1, :] + c * row
    return out


def is_naturally_graded_iso(T: StructureTensor) -> bool:
    """
    Decide whether a filiform Lie algebra is isomorphic to its Gr(L).

    L is naturally graded exactly when it has a derivation acting as k on
    the k-th layer modulo L^(k+1). Pick a characteristic generator y1
    (ad y1 of rank n-2), a second generator y2, and put
    y_(k+1) = [y_k, y1]. A derivation is fixed by D(y1) and D(y2), which
    leaves 2(n-2) unknowns in L^2; the derivation identities on all pairs are
    linear in them and solvable iff L is naturally graded.

    Raises:
        ParameterError: if T is not a filiform Lie algebra
    """
    if not is_lie(T) or not is_filiform(T):
        logger.error("is_naturally_graded_iso: input is not a filiform Lie algebra")
        raise ParameterError("Natural-grading test is defined for filiform Lie algebras")
    n = T.dim
    if n <= 3:
        return True

    graded = natural_gradation(T)
    u, v = graded.adapted_basis[0], graded.adapted_basis[1]

    def ad_rank(y: Vector) -> int:
        columns = [bracket(T, Vector.basis(n, i), y).coords for i in range(1, n + 1)]
        return linalg.rank(linalg.fraction_matrix(columns, n))

    candidates = [(u + v.scale(k), v) for k in range(0, n + 2)] + [(v, u)]
    y1, y2 = next(((a, b) for a, b in candidates if ad_rank(a) == n - 2), (None, None))
    if y1 is None:
        raise ParameterError("No characteristic generator found")

    chain = [y1, y2]
    while len(chain) < n:
        chain.append(bracket(T, chain[-1], y1))
    change = BasisChange.from_columns(chain)
    T_y = apply_basis_change(T, change)

    unknowns = 2 * (n - 2)
    images: List[np.ndarray] = []
    for generator in (1, 2):
        image = linalg.zeros(n, unknowns + 1)
        image[generator - 1, 0] = Fraction(1)
        for slot in range(3, n + 1):
            image[slot - 1, 1 + (generator - 1) * (n - 2) + (slot - 3)] = Fraction(1)
        images.append(image)
    # D(y_(k+1)) = [D y_k, y1] + [y_k, D y1]
    for k in range(2, n):
        images.append(_affine_bracket(T_y, images[k - 1], 1, left=True)
                      + _affine_bracket(T_y, images[0], k, left=False))

    rows: List[List[Fraction]] = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            lhs = linalg.zeros(n, unknowns + 1)
            for k, c in T_y.product(i, j):
                lhs = lhs + c * images[k - 1]
            defect = lhs - _affine_bracket(T_y, images[i - 1], j, left=True) \
                - _affine_bracket(T_y, images[j - 1], i, left=False)
            for r in range(n):
                row = list(defect[r, :])
                if any(x != 0 for x in row):
                    rows.append(row)
    if not rows:
        return True
    system = linalg.fraction_matrix([row[1:] for row in rows], unknowns)
    rhs = [-row[0] for row in rows]
    graded_ok = linalg.solve(system, rhs) is not None
    logger.debug(f"Natural-grading derivation system: {len(rows)} equations, solvable={graded_ok}")
    return graded_ok


def centralizer(T: StructureTensor, W: Subspace) -> Subspace:
    """{x : [x, w] = 0 for every w in W}."""
    n = T.dim
    rows = []
    for w in W.reduced_basis:
        # column i of the map x -> [x, w] is [b_i, w]
        columns = [bracket(T, Vector.basis(n, i), w).coords for i in range(1, n + 1)]
        for r in range(n):
            rows.append([columns[i][r] for i in range(n)])
    if not rows:
        return Subspace.full(n)
    kernel = linalg.nullspace(linalg.fraction_matrix(rows, n))
    return Subspace.span(n, [Vector(n, tuple(k)) for k in kernel])


def right_annihilator(T: StructureTensor) -> Subspace:
    """{v : [x, v] = 0 for every x}."""
    n = T.dim
    rows = []
    for i in range(1, n + 1):
        columns = [bracket(T, Vector.basis(n, i), Vector.basis(n, j)).coords for j in range(1, n + 1)]
        for r in range(n):
            row = [columns[j][r] for j in range(n)]
            if any(row):
                rows.append(row)
    if not rows:
        return Subspace.full(n)
    kernel = linalg.nullspace(linalg.fraction_matrix(rows, n))
    return Subspace.span(n, [Vector(n, tuple(k)) for k in kernel])


def graded_normal_form(T: StructureTensor) -> str:
    """
    Name the naturally graded filiform Lie algebra that Gr(T) matches:
    ``"n_n1"`` when Gr has an abelian ideal of codimension one, ``"Q2n"``
    otherwise (only possible in even dimension).
    """
    graded = natural_gradation(T).induced
    n = graded.dim
    if n <= 3:
        return "n_n1"
    square = lower_central_series(graded)[1]
    cent = centralizer(graded, square)
    if cent.dim == n - 1 and all(
        bracket(graded, a, b).is_zero() for a in cent.reduced_basis for b in cent.reduced_basis
    ):
        return "n_n1"
    return "Q2n" if n % 2 == 0 else "other"


# ---------------------------------------------------------------------------
# Ideals, quotients, modules
# ---------------------------------------------------------------------------

def _two_sided_products(T: StructureTensor, v: Vector) -> List[Vector]:
    n = T.dim
    out = []
    for j in range(1, n + 1):
        b = Vector.basis(n, j)
        out.append(bracket(T, v, b))
        out.append(bracket(T, b, v))
    return out


def is_ideal(T: StructureTensor, I: Subspace) -> bool:
    return all(I.contains(w) for v in I.reduced_basis for w in _two_sided_products(T, v))


def squares_ideal(T: StructureTensor) -> Subspace:
    """
    Smallest two-sided ideal containing every square [v, v].

    Generated by [b_i, b_i] and the polarizations [b_i, b_j] + [b_j, b_i],
    then closed under bracketing with L on both sides.
    """
    n = T.dim
    generators = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            b_i, b_j = Vector.basis(n, i), Vector.basis(n, j)
            w = bracket(T, b_i, b_j) + bracket(T, b_j, b_i) if i != j else bracket(T, b_i, b_i)
            if not w.is_zero():
                generators.append(w)
    ideal = Subspace.span(n, generators)
    while True:
        extra = [w for v in ideal.reduced_basis for w in _two_sided_products(T, v) if not ideal.contains(w)]
        if not extra:
            return ideal
        ideal = Subspace.span(n, list(ideal.reduced_basis) + extra)


@dataclass(frozen=True)
class QuotientMap:
    """Coordinate projection L -> L/I onto the complement of I's pivot columns."""

    ideal: Subspace
    complement: Tuple[int, ...]  # 1-based indices of the kept basis vectors

    def project(self, v: Vector) -> Vector:
        residue = self.ideal.residue(v)
        return Vector(len(self.complement), tuple(residue.coord(c) for c in self.complement))


def quotient(T: StructureTensor, I: Subspace) -> Tuple[StructureTensor, QuotientMap]:
    """
    Induced algebra on L/I, on the basis vectors outside I's pivot columns.

    Raises:
        NotAnIdealError: if I is not a two-sided ideal of T
    """
    if I.ambient_dim != T.dim:
        raise DimensionMismatchError("Ideal and tensor live in different spaces")
    if not is_ideal(T, I):
        logger.error("quotient: subspace is not a two-sided ideal")
        raise NotAnIdealError("Quotient needs a two-sided ideal")
    complement = tuple(c for c in range(1, T.dim + 1) if c not in I.pivots)
    projection = QuotientMap(I, complement)
    if not complement:
        raise NotAnIdealError("Quotient by the whole algebra has no basis")
    brackets = {}
    for a, ca in enumerate(complement, start=1):
        for b, cb in enumerate(complement, start=1):
            image = projection.project(bracket(T, Vector.basis(T.dim, ca), Vector.basis(T.dim, cb)))
            if not image.is_zero():
                brackets[(a, b)] = list(image.terms())
    labels = [T.basis_labels[c - 1] for c in complement]
    return StructureTensor.build(len(complement), brackets, labels), projection


def induced_module_action(T: StructureTensor, I: Subspace) -> ModuleAction:
    """
    Right action of L/I on I given by (i, x + I) -> [i, x].

    Raises:
        NotAnIdealError: if I is not an ideal or [L, I] != 0
    """
    n = T.dim
    if not is_ideal(T, I):
        logger.error("induced_module_action: subspace is not an ideal")
        raise NotAnIdealError("Induced action needs an ideal")
    for v in I.reduced_basis:
        for j in range(1, n + 1):
            if not bracket(T, Vector.basis(n, j), v).is_zero():
                logger.error(f"induced_module_action: [b_{j}, I] != 0")
                raise NotAnIdealError("Induced action needs [L, I] = 0")
    complement = tuple(c for c in range(1, n + 1) if c not in I.pivots)
    entries = {}
    for m, v in enumerate(I.reduced_basis, start=1):
        for a, c in enumerate(complement, start=1):
            image = bracket(T, v, Vector.basis(n, c))
            coords = I.coordinates(image)
            terms = [(k + 1, x) for k, x in enumerate(coords) if x != 0]
            if terms:
                entries[(m, a)] = tuple(terms)
    module_labels = tuple(_section_label(T, v, 0, m) for m, v in enumerate(I.reduced_basis, start=1))
    algebra_labels = tuple(T.basis_labels[c - 1] for c in complement)
    return ModuleAction(I.dim, len(complement), entries, frozenset(), module_labels, algebra_labels)


# ---------------------------------------------------------------------------
# Basis changes
# ---------------------------------------------------------------------------

def apply_basis_change(
    T: StructureTensor, P: BasisChange, labels: Optional[Sequence[str]] = None
) -> StructureTensor:
    """
    The table of T in the basis whose vectors are the columns of P.

    [b'_i, b'_j] = P^-1 [P e_i, P e_j]; applying P and then P^-1 restores T.
    """
    if P.dim != T.dim:
        raise DimensionMismatchError(f"Basis change of dim {P.dim} for tensor of dim {T.dim}")
    n = T.dim
    inverse = P.inverse().matrix
    columns = [_to_sparse(P.column(i)) for i in range(1, n + 1)]
    brackets = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            w = _bracket_sparse(T, columns[i - 1], columns[j - 1])
            if not w:
                continue
            coords = [Fraction(0)] * n
            for k, c in w.items():
                column = inverse[:, k - 1]
                for r in range(n):
                    if column[r] != 0:
                        coords[r] += column[r] * c
            terms = [(r + 1, x) for r, x in enumerate(coords) if x != 0]
            if terms:
                brackets[(i, j)] = terms
    return StructureTensor.build(n, brackets, labels if labels is not None else T.basis_labels)
