# tests/test_constructions.py

import pytest

from modules.constructions.builders import direct_sum, make_n_n1, semidirect_tensor
from modules.constructions.representations import (
    is_faithful,
    is_representation,
    minimal_faithful_action,
    representation_defects,
)
from modules.core.algebra import is_lie, leibniz_residuals
from modules.core.errors import DimensionMismatchError, ParameterError
from modules.core.types import ModuleAction


@pytest.mark.parametrize("n", range(3, 11))
def test_minimal_action_is_a_faithful_representation(n):
    action = minimal_faithful_action(n)
    assert action.module_dim == n
    assert is_representation(action, make_n_n1(n))
    assert is_faithful(action)


@pytest.mark.parametrize("n", range(3, 9))
def test_semidirect_product_is_leibniz(n):
    T = semidirect_tensor(make_n_n1(n), minimal_faithful_action(n))
    assert T.dim == 2 * n
    assert T.basis_labels[n] == "e1"
    assert leibniz_residuals(T) == []
    assert not is_lie(T)


def test_wrong_sign_is_not_a_representation():
    good = minimal_faithful_action(3)
    entries = dict(good.entries)
    entries[(3, 3)] = ((1, -1),)
    bad = ModuleAction(3, 3, entries)
    defects = dict(representation_defects(bad, make_n_n1(3)))
    assert (3, 2, 1) in defects
    assert defects[(3, 2, 1)].coord(1) == -2
    assert not is_representation(bad, make_n_n1(3))


def test_identity_action_is_not_faithful():
    zero = ModuleAction(2, 3, {})
    assert is_representation(zero, make_n_n1(3))
    assert not is_faithful(zero)


def test_action_and_algebra_must_agree():
    with pytest.raises(DimensionMismatchError):
        representation_defects(minimal_faithful_action(3), make_n_n1(4))
    with pytest.raises(ParameterError):
        semidirect_tensor(make_n_n1(4), minimal_faithful_action(3))


@pytest.mark.parametrize("n", [2, 0, -1])
def test_sizes_below_three_are_rejected(n):
    with pytest.raises(ParameterError):
        make_n_n1(n)
    with pytest.raises(ParameterError):
        minimal_faithful_action(n)


def test_direct_sum_of_one_part_is_the_part():
    T = make_n_n1(4)
    assert direct_sum([T]) is T
    with pytest.raises(ParameterError):
        direct_sum([])
