# modules/core/types.py

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from modules.core import linalg
from modules.core.errors import (
    DimensionMismatchError,
    SingularBasisChangeError,
    TruncationOverflowError,
)
from modules.core.scalars import ScalarLike, as_scalar

# (k, c) pairs with 1-based k, no zero c, sorted by k
SparseTerms = Tuple[Tuple[int, Fraction], ...]
BracketMap = Dict[Tuple[int, int], SparseTerms]


def normalize_terms(terms: Iterable[Tuple[int, ScalarLike]], dim: int) -> SparseTerms:
    """Merge repeated indices, drop zeros, sort by index and check the range."""
    merged: Dict[int, Fraction] = {}
    for k, c in terms:
        if not 1 <= k <= dim:
            raise DimensionMismatchError(f"Basis index {k} outside 1..{dim}")
        merged[k] = merged.get(k, Fraction(0)) + as_scalar(c)
    return tuple((k, merged[k]) for k in sorted(merged) if merged[k] != 0)


@dataclass(frozen=True)
class Vector:
    """An element of an algebra or module, in coordinates of an ordered basis."""

    dim: int
    coords: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.dim:
            raise DimensionMismatchError(f"Vector of dim {self.dim} got {len(self.coords)} coordinates")

    @classmethod
    def of(cls, coords: Sequence[ScalarLike]) -> "Vector":
        return cls(len(coords), tuple(as_scalar(c) for c in coords))

    @classmethod
    def zero(cls, dim: int) -> "Vector":
        return cls(dim, (Fraction(0),) * dim)

    @classmethod
    def basis(cls, dim: int, index: int) -> "Vector":
        """The 1-based basis vector b_index."""
        if not 1 <= index <= dim:
            raise DimensionMismatchError(f"Basis index {index} outside 1..{dim}")
        coords = [Fraction(0)] * dim
        coords[index - 1] = Fraction(1)
        return cls(dim, tuple(coords))

    @classmethod
    def from_terms(cls, dim: int, terms: Iterable[Tuple[int, ScalarLike]]) -> "Vector":
        coords = [Fraction(0)] * dim
        for k, c in normalize_terms(terms, dim):
            coords[k - 1] = c
        return cls(dim, tuple(coords))

    def _check(self, other: "Vector") -> None:
        if other.dim != self.dim:
            raise DimensionMismatchError(f"Dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(self.dim, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(self.dim, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Vector":
        return Vector(self.dim, tuple(-a for a in self.coords))

    def scale(self, factor: ScalarLike) -> "Vector":
        factor = as_scalar(factor)
        return Vector(self.dim, tuple(factor * a for a in self.coords))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def terms(self) -> SparseTerms:
        return tuple((k + 1, c) for k, c in enumerate(self.coords) if c != 0)

    def coord(self, index: int) -> Fraction:
        """1-based coordinate access."""
        return self.coords[index - 1]


@dataclass(frozen=True)
class StructureTensor:
    """
    Bracket table of a finite-dimensional algebra on an ordered basis.

    ``entries[(i, j)]`` lists the nonzero coefficients of [b_i, b_j]; pairs
    that are absent bracket to zero.
    """

    dim: int
    basis_labels: Tuple[str, ...]
    entries: Mapping[Tuple[int, int], SparseTerms]

    def __post_init__(self):
        if self.dim < 1:
            raise DimensionMismatchError("Algebras have positive dimension")
        if len(self.basis_labels) != self.dim:
            raise DimensionMismatchError(
                f"{len(self.basis_labels)} labels for a tensor of dim {self.dim}"
            )
        cleaned: BracketMap = {}
        for (i, j), terms in self.entries.items():
            if not (1 <= i <= self.dim and 1 <= j <= self.dim):
                raise DimensionMismatchError(f"Bracket index ({i},{j}) outside 1..{self.dim}")
            normalized = normalize_terms(terms, self.dim)
            if normalized:
                cleaned[(i, j)] = normalized
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))
        object.__setattr__(self, "entries", dict(sorted(cleaned.items())))

    @classmethod
    def build(
        cls,
        dim: int,
        brackets: Mapping[Tuple[int, int], Iterable[Tuple[int, ScalarLike]]],
        labels: Optional[Sequence[str]] = None,
    ) -> "StructureTensor":
        labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(1, dim + 1))
        return cls(dim, labels, {key: tuple(terms) for key, terms in brackets.items()})

    def product(self, i: int, j: int) -> SparseTerms:
        """Sparse terms of [b_i, b_j]."""
        return self.entries.get((i, j), ())

    def relabel(self, labels: Sequence[str]) -> "StructureTensor":
        return StructureTensor(self.dim, tuple(labels), self.entries)

    def same_brackets(self, other: "StructureTensor") -> bool:
        """Table equality ignoring basis labels."""
        return self.dim == other.dim and self.entries == other.entries


@dataclass(frozen=True)
class ModuleAction:
    """
    Right action V x L -> V as a sparse table.

    ``entries[(m, a)]`` holds the coordinates of (e_m, x_a) in V. Pairs in
    ``undefined`` have no representable value (e.g. they leave a truncation
    window); asking for them raises instead of returning zero.
    """

    module_dim: int
    algebra_dim: int
    entries: Mapping[Tuple[int, int], SparseTerms]
    undefined: FrozenSet[Tuple[int, int]] = field(default_factory=frozenset)
    module_labels: Tuple[str, ...] = ()
    algebra_labels: Tuple[str, ...] = ()

    def __post_init__(self):
        cleaned: BracketMap = {}
        for (m, a), terms in self.entries.items():
            if not (1 <= m <= self.module_dim and 1 <= a <= self.algebra_dim):
                raise DimensionMismatchError(f"Action index ({m},{a}) out of range")
            normalized = normalize_terms(terms, self.module_dim)
            if normalized:
                cleaned[(m, a)] = normalized
        object.__setattr__(self, "entries", dict(sorted(cleaned.items())))
        object.__setattr__(self, "undefined", frozenset(self.undefined))
        if not self.module_labels:
            object.__setattr__(
                self, "module_labels", tuple(f"e{i}" for i in range(1, self.module_dim + 1))
            )
        if not self.algebra_labels:
            object.__setattr__(
                self, "algebra_labels", tuple(f"x{i}" for i in range(1, self.algebra_dim + 1))
            )

    def is_defined(self, m: int, a: int) -> bool:
        return (m, a) not in self.undefined

    def act_basis(self, m: int, a: int) -> SparseTerms:
        """Terms of (e_m, x_a)."""
        if (m, a) in self.undefined:
            raise TruncationOverflowError(f"Action ({m},{a}) leaves the representable window")
        return self.entries.get((m, a), ())

    def act(self, v: Vector, x: Vector) -> Vector:
        """Bilinear extension: (v, x) = sum v_m x_a (e_m, x_a)."""
        if v.dim != self.module_dim or x.dim != self.algebra_dim:
            raise DimensionMismatchError("Action operands have the wrong dimensions")
        out = [Fraction(0)] * self.module_dim
        for m, vm in v.terms():
            for a, xa in x.terms():
                for k, c in self.act_basis(m, a):
                    out[k - 1] += vm * xa * c
        return Vector(self.module_dim, tuple(out))

    def matrix(self, a: int) -> np.ndarray:
        """
        Matrix of phi(x_a) acting on column coordinates: column m holds (e_m, x_a).
        Undefined entries raise.
        """
        mat = linalg.zeros(self.module_dim, self.module_dim)
        for m in range(1, self.module_dim + 1):
            for k, c in self.act_basis(m, a):
                mat[k - 1, m - 1] = c
        return mat


@dataclass(frozen=True)
class Subspace:
    """A subspace given by generators and its reduced row-echelon basis."""

    ambient_dim: int
    generators: Tuple[Vector, ...]
    reduced_basis: Tuple[Vector, ...]
    pivots: Tuple[int, ...]  # 1-based pivot column of each reduced row

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Vector]) -> "Subspace":
        generators = tuple(vectors)
        for v in generators:
            if v.dim != ambient_dim:
                raise DimensionMismatchError(f"Generator of dim {v.dim} in ambient dim {ambient_dim}")
        if not generators:
            return cls(ambient_dim, (), (), ())
        reduced, pivots = linalg.rref(linalg.fraction_matrix([v.coords for v in generators], ambient_dim))
        rows = tuple(Vector(ambient_dim, tuple(reduced[r, :])) for r in range(reduced.shape[0]))
        return cls(ambient_dim, generators, rows, tuple(p + 1 for p in pivots))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(ambient_dim, [Vector.basis(ambient_dim, i) for i in range(1, ambient_dim + 1)])

    @property
    def dim(self) -> int:
        return len(self.reduced_basis)

    def residue(self, v: Vector) -> Vector:
        """Reduce v against the echelon basis; zero iff v lies in the subspace."""
        coords = list(v.coords)
        for row, p in zip(self.reduced_basis, self.pivots):
            factor = coords[p - 1]
            if factor != 0:
                coords = [a - factor * b for a, b in zip(coords, row.coords)]
        return Vector(self.ambient_dim, tuple(coords))

    def contains(self, v: Vector) -> bool:
        return self.residue(v).is_zero()

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.reduced_basis)

    def coordinates(self, v: Vector) -> Tuple[Fraction, ...]:
        """Coordinates of a member v in the reduced basis (the values at the pivots)."""
        if not self.contains(v):
            raise DimensionMismatchError("Vector is not in the subspace")
        return tuple(v.coord(p) for p in self.pivots)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.reduced_basis == other.reduced_basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.reduced_basis))


@dataclass(frozen=True)
class GradedAlgebra:
    """Layers L_k = L^k / L^(k+1) with a section basis and the induced graded bracket."""

    layers: Tuple[Subspace, ...]
    induced: StructureTensor
    adapted_basis: Tuple[Vector, ...]
    layer_of: Tuple[int, ...]  # layer (1-based) of each adapted basis vector

    @property
    def layer_dims(self) -> Tuple[int, ...]:
        return tuple(layer.dim for layer in self.layers)


@dataclass(frozen=True, eq=False)
class BasisChange:
    """
    Invertible change of basis. Column i of ``matrix`` holds the old
    coordinates of the i-th new basis vector.
    """

    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.matrix.shape != (self.dim, self.dim):
            raise DimensionMismatchError(f"Basis change of dim {self.dim} has shape {self.matrix.shape}")
        if linalg.determinant(self.matrix) == 0:
            raise SingularBasisChangeError("Basis change matrix is singular")

    @classmethod
    def from_columns(cls, columns: Sequence[Vector]) -> "BasisChange":
        dim = len(columns)
        matrix = linalg.zeros(dim, dim)
        for c, column in enumerate(columns):
            if column.dim != dim:
                raise DimensionMismatchError("Basis change columns must have the matrix dimension")
            for r, value in enumerate(column.coords):
                matrix[r, c] = value
        return cls(dim, matrix)

    @classmethod
    def identity(cls, dim: int) -> "BasisChange":
        return cls(dim, linalg.identity(dim))

    @classmethod
    def diagonal(cls, factors: Sequence[ScalarLike]) -> "BasisChange":
        dim = len(factors)
        matrix = linalg.zeros(dim, dim)
        for i, f in enumerate(factors):
            matrix[i, i] = as_scalar(f)
        return cls(dim, matrix)

    @classmethod
    def permutation(cls, order: Sequence[int]) -> "BasisChange":
        """New basis vector i is old basis vector order[i] (1-based)."""
        return cls.from_columns([Vector.basis(len(order), k) for k in order])

    def inverse(self) -> "BasisChange":
        return BasisChange(self.dim, linalg.inverse(self.matrix))

    def column(self, i: int) -> Vector:
        return Vector(self.dim, tuple(self.matrix[:, i - 1]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BasisChange):
            return NotImplemented
        return self.dim == other.dim and bool(np.all(self.matrix == other.matrix))

    __hash__ = None
