# tests/test_algebra.py

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modules.constructions.builders import direct_sum, make_heisenberg_h1, make_n_n1, make_Q2n
from modules.core.algebra import (
    apply_basis_change,
    bracket,
    derived_series,
    graded_normal_form,
    induced_module_action,
    is_antisymmetric,
    is_filiform,
    is_ideal,
    is_lie,
    is_naturally_graded_iso,
    is_nilpotent,
    leibniz_residuals,
    lower_central_series,
    natural_gradation,
    quotient,
    right_annihilator,
    series_dims,
    squares_ideal,
)
from modules.core.errors import DimensionMismatchError, NotAnIdealError, NotNilpotentError, ParameterError
from modules.core.types import BasisChange, StructureTensor, Subspace, Vector
from tests.strategies import small_fractions


def _with(T: StructureTensor, extra) -> StructureTensor:
    brackets = dict(T.entries)
    brackets.update(extra)
    return StructureTensor.build(T.dim, brackets, T.basis_labels)


def _vectors(dim):
    return st.lists(small_fractions(), min_size=dim, max_size=dim).map(Vector.of)


@settings(max_examples=50)
@given(_vectors(5), _vectors(5), _vectors(5), small_fractions())
def test_bracket_is_bilinear(u, v, w, a):
    T = make_n_n1(5)
    assert bracket(T, u.scale(a) + v, w) == bracket(T, u, w).scale(a) + bracket(T, v, w)
    assert bracket(T, w, u.scale(a) + v) == bracket(T, w, u).scale(a) + bracket(T, w, v)


def test_bracket_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        bracket(make_n_n1(4), Vector.zero(3), Vector.zero(4))


@pytest.mark.parametrize("n", range(3, 21))
def test_model_filiform_is_leibniz(n):
    assert leibniz_residuals(make_n_n1(n)) == []


@pytest.mark.parametrize("n", range(3, 11))
def test_even_filiform_is_lie(n):
    T = make_Q2n(n)
    assert T.dim == 2 * n
    assert is_lie(T)


def test_heisenberg_and_direct_sum():
    H = make_heisenberg_h1()
    assert H.basis_labels == ("one", "xbar", "dbar")
    assert is_lie(H)
    S = direct_sum([make_n_n1(4), H, make_Q2n(3)])
    assert S.dim == 13
    assert S.basis_labels[0] == "x1_1"
    assert leibniz_residuals(S, workers=4) == []


def test_threaded_scan_matches_serial():
    T = _with(make_n_n1(6), {(3, 2): [(6, 1)], (2, 2): [(5, 1)]})
    assert leibniz_residuals(T, workers=1) == leibniz_residuals(T, workers=3)


def test_mutation_leaves_a_residual():
    T = _with(make_n_n1(4), {(3, 2): [(4, 1)]})
    residuals = dict(leibniz_residuals(T))
    assert residuals[(2, 1, 2)] == Vector.basis(4, 4)
    assert not is_lie(T)
    assert not is_antisymmetric(T)


def test_symmetric_product_is_leibniz_but_not_lie():
    T = StructureTensor.build(3, {(1, 2): [(3, 1)], (2, 1): [(3, 1)]})
    assert leibniz_residuals(T) == []
    assert not is_lie(T)


@pytest.mark.parametrize("n", [3, 4, 7, 12])
def test_series_of_model_filiform(n):
    T = make_n_n1(n)
    assert series_dims(lower_central_series(T)) == (n,) + tuple(range(n - 2, -1, -1))
    assert series_dims(derived_series(T)) == (n, n - 2, 0)
    assert is_nilpotent(T)
    assert is_filiform(T)


def test_heisenberg_is_filiform():
    assert series_dims(lower_central_series(make_heisenberg_h1())) == (3, 1, 0)
    assert is_filiform(make_heisenberg_h1())


def test_direct_sum_is_not_filiform():
    S = direct_sum([make_n_n1(4), make_n_n1(3)])
    assert is_nilpotent(S)
    assert not is_filiform(S)


def test_non_nilpotent_series_stabilizes():
    # [b2, b1] = b2 is solvable but not nilpotent
    T = StructureTensor.build(2, {(2, 1): [(2, 1)], (1, 2): [(2, -1)]})
    assert series_dims(lower_central_series(T)) == (2, 1)
    assert not is_nilpotent(T)
    with pytest.raises(NotNilpotentError):
        natural_gradation(T)


@pytest.mark.parametrize("n", range(3, 9))
def test_gradation_of_model_filiform_is_itself(n):
    T = make_n_n1(n)
    graded = natural_gradation(T)
    assert graded.layer_dims == (2,) + (1,) * (n - 2)
    assert graded.induced.same_brackets(T)
    assert graded.induced.basis_labels == T.basis_labels
    assert graded_normal_form(T) == "n_n1"
    assert is_naturally_graded_iso(T)


@pytest.mark.parametrize("n", range(3, 7))
def test_gradation_of_even_filiform_is_itself(n):
    T = make_Q2n(n)
    assert natural_gradation(T).induced.same_brackets(T)
    assert graded_normal_form(T) == "Q2n"
    assert is_naturally_graded_iso(T)


def test_filiform_deformation_is_not_naturally_graded():
    T = _with(make_n_n1(5), {(2, 3): [(5, 1)], (3, 2): [(5, -1)]})
    assert is_lie(T) and is_filiform(T)
    assert natural_gradation(T).induced.same_brackets(make_n_n1(5))
    assert graded_normal_form(T) == "n_n1"
    assert not is_naturally_graded_iso(T)


def test_natural_grading_test_needs_filiform_lie():
    with pytest.raises(ParameterError):
        is_naturally_graded_iso(direct_sum([make_n_n1(3), make_n_n1(3)]))


def test_quotient_by_center():
    T = make_n_n1(5)
    center = Subspace.span(5, [Vector.basis(5, 5)])
    assert right_annihilator(T) == center
    reduced, projection = quotient(T, center)
    assert projection.complement == (1, 2, 3, 4)
    assert reduced.same_brackets(make_n_n1(4))
    assert reduced.basis_labels == ("x1", "x2", "x3", "x4")


def test_quotient_needs_an_ideal():
    T = make_n_n1(5)
    line = Subspace.span(5, [Vector.basis(5, 2)])
    assert not is_ideal(T, line)
    with pytest.raises(NotAnIdealError):
        quotient(T, line)


def test_squares_ideal_of_symmetric_product():
    T = StructureTensor.build(3, {(1, 2): [(3, 1)], (2, 1): [(3, 1)]}, ["x1", "x2", "x3"])
    I = squares_ideal(T)
    assert I == Subspace.span(3, [Vector.basis(3, 3)])
    reduced, _ = quotient(T, I)
    assert reduced.entries == {}
    action = induced_module_action(T, I)
    assert action.module_dim == 1 and action.algebra_dim == 2
    assert action.entries == {}


def test_squares_ideal_of_lie_algebra_is_zero():
    assert squares_ideal(make_Q2n(3)).dim == 0


def test_induced_action_needs_left_annihilation():
    T = make_n_n1(4)
    with pytest.raises(NotAnIdealError):
        induced_module_action(T, Subspace.span(4, [Vector.basis(4, 3), Vector.basis(4, 4)]))


@settings(max_examples=25)
@given(st.lists(small_fractions(3), min_size=6, max_size=6))
def test_basis_change_round_trip(upper):
    # unit upper triangular, so always invertible
    n = 4
    columns = []
    it = iter(upper)
    for c in range(1, n + 1):
        terms = [(c, 1)] + [(r, next(it)) for r in range(1, c)]
        columns.append(Vector.from_terms(n, terms))
    P = BasisChange.from_columns(columns)
    T = _with(make_n_n1(4), {(2, 2): [(4, 1)]})
    there = apply_basis_change(T, P)
    assert leibniz_residuals(there) == []
    assert apply_basis_change(there, P.inverse()).same_brackets(T)


def test_permutation_basis_change():
    T = make_n_n1(3)
    P = BasisChange.permutation([2, 1, 3])
    swapped = apply_basis_change(T, P)
    assert swapped.product(1, 2) == ((3, Fraction(1)),)
    assert swapped.product(2, 1) == ((3, Fraction(-1)),)
