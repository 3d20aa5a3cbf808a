# tests/test_general.py

from fractions import Fraction

import pytest

from modules.core import config
from modules.core.algebra import leibniz_residuals
from modules.core.errors import ParameterError, SchemaError
from modules.core.types import Vector
from modules.mu_family.general import (
    GeneralParams,
    _derived_products,
    _ProductTable,
    bruteforce_constraint_oracle,
    closed_form_product,
    constraint_matrix,
    constraint_report,
    constraint_residuals,
    constraints_satisfied,
    gamma_keys,
    general_table,
    high_bracket_closed_form,
    inner_bracket_closed_form,
    inner_region,
    param_vector,
    parameter_count,
    params_from_vector,
    random_params,
    sample_constrained_params,
)
from modules.mu_family.mu4 import MuParams, mu4_as_general, mu4_table
from tests.strategies import random_mu_values


def _e_part(T, n, i, j) -> Vector:
    return Vector.from_terms(n, [(k - n, c) for k, c in T.product(i, j) if k > n])


def test_parameter_layout():
    assert gamma_keys(6) == [(i, k) for i in (2, 3) for k in range(1, 6)]
    assert parameter_count(6) == 5 + 4 + 10
    values = [Fraction(v) for v in range(parameter_count(6))]
    p = params_from_vector(6, values)
    assert p.alpha == tuple(values[:5])
    assert p.beta == tuple(values[5:9])
    assert p.gamma[(2, 1)] == values[9]
    assert param_vector(p) == values
    with pytest.raises(ParameterError):
        params_from_vector(6, values[:-1])


@pytest.mark.parametrize(
    "args",
    [
        (3, (0,) * 5, (0,), {}),
        (5, (0,) * 4, (0,) * 3, {}),
        (5, (0,) * 5, (0,) * 2, {}),
        (6, (0,) * 5, (0,) * 4, {(4, 1): 1}),
        (6, (0,) * 5, (0,) * 4, {(2, 6): 1}),
    ],
)
def test_params_validation(args):
    with pytest.raises(ParameterError):
        GeneralParams(*args)


def test_params_documents():
    p = GeneralParams.from_dict({"n": 5, "alpha": ["1"], "gamma": {"2,1": "1/2", "2,3": "0"}})
    assert p.alpha == (1, 0, 0, 0, 0)
    assert p.beta == (0, 0, 0)
    assert p.gamma == {(2, 1): Fraction(1, 2)}
    assert GeneralParams.from_dict(p.to_dict()) == p
    for bad in [{"alpha": []}, {"n": "5"}, {"n": 5, "gamma": {"2;1": "1"}}]:
        with pytest.raises(SchemaError):
            GeneralParams.from_dict(bad)
    with pytest.raises(ParameterError):
        GeneralParams.from_dict({"n": 5, "beta": ["0.5"]})


def test_general_table_starts_at_five():
    with pytest.raises(ParameterError):
        general_table(GeneralParams.zero(4))
    T = general_table(GeneralParams.zero(5))
    assert T.dim == 10
    assert T.basis_labels[:2] == ("x1", "x2") and T.basis_labels[5] == "e1"


@pytest.mark.parametrize("n", range(5, 11))
def test_closed_form_on_inner_region(n, rng):
    for _ in range(3):
        p = random_params(n, rng)
        T = general_table(p)
        for i, j in inner_region(n):
            assert inner_bracket_closed_form(p, i, j) == _e_part(T, n, i, j), (i, j)


def test_closed_form_rejects_outer_pairs():
    p = GeneralParams.zero(6)
    for i, j in [(1, 3), (3, 1), (4, 4), (2, 1)]:
        with pytest.raises(ParameterError):
            inner_bracket_closed_form(p, i, j)
    for i, j in [(2, 6), (3, 3), (4, 6), (6, 4)]:
        with pytest.raises(ParameterError):
            high_bracket_closed_form(p, i, j)


@pytest.mark.parametrize("n", range(5, 11))
def test_closed_forms_match_recursion(n, rng):
    for _ in range(3):
        p = random_params(n, rng)
        recursion = _ProductTable(p)
        T = general_table(p)
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                assert closed_form_product(p, a, b) == recursion.get(a, b), (a, b)
                assert _e_part(T, n, a, b) == recursion.get(a, b), (a, b)


def _collision_pairs(n):
    return {(a, a - 1) for a in range(2, n) if 2 * a >= n + 2}


@pytest.mark.parametrize("n", range(5, 11))
def test_high_products_satisfy_identity_off_the_collisions(n, rng):
    # the (i, j, x_1) triples carry the relation that defines every product;
    # only the squares [x_a, x_a] of even weight >= n+2 may disagree
    p = random_params(n, rng)
    found = {triple for triple, _ in leibniz_residuals(general_table(p))}
    for i in range(2, n):
        for j in range(2, n):
            if (i, j) not in _collision_pairs(n):
                assert (i, j, 1) not in found, (i, j)


def _scale(n: int, level: int) -> Fraction:
    return Fraction(1, 2) * (-1) ** (n // 2 + level + n % 2)


@pytest.mark.parametrize("n", range(5, 11))
def test_each_restriction_matches_full_scan(n, rng):
    p = random_params(n, rng)
    found = dict(leibniz_residuals(general_table(p)))
    for r in constraint_report(p):
        a = n // 2 + r.level
        scan = found.get((a, a - 1, 1), Vector.zero(2 * n))
        assert r.value == -_scale(n, r.level) * scan.coord(n + r.index), r.label


@pytest.mark.parametrize("n", range(4, 11))
def test_each_restriction_matches_recursion_collision(n, rng):
    p = random_params(n, rng)
    report = constraint_report(p)
    covered = {(r.weight, r.index) for r in report}
    collisions = dict(_ProductTable(p).collisions)
    for r in report:
        assert r.value == _scale(n, r.level) * collisions[r.weight].coord(r.index), r.label
    for weight, residual in collisions.items():
        for k, c in residual.terms():
            assert (weight, k) in covered, (weight, k, c)


@pytest.mark.parametrize("n", range(5, 11))
def test_report_layout(n):
    report = constraint_report(GeneralParams.zero(n))
    m = n // 2
    if n % 2 == 0:
        expected = {1: n - 2, **{l: n - 2 * l for l in range(2, m)}}
        weight = {l: n + 2 * l for l in expected}
        assert report[0].system == "even-n system"
    else:
        expected = {2: n - 4, **{l: n - 2 * l for l in range(3, m + 1)}}
        weight = {l: n + 2 * l - 1 for l in expected}
        assert report[0].system == "odd-n system"
    counts = {}
    for r in report:
        counts[r.level] = counts.get(r.level, 0) + 1
        assert r.weight == weight[r.level]
        assert r.value == 0
    assert counts == expected
    assert report[0].label == f"{report[0].system}, level {report[0].level}: e1 at weight {report[0].weight}"


def test_five_has_a_single_restriction(rng):
    p = random_params(5, rng)
    (only,) = constraint_report(p)
    assert (only.level, only.weight, only.index) == (2, 8, 1)
    assert only.value == 6 * p.alpha[2] + Fraction(5, 2) * p.gamma.get((2, 4), 0)


def test_seven_first_odd_line(rng):
    p = random_params(7, rng)
    a3 = p.alpha[2]
    g26 = p.gamma.get((2, 6), Fraction(0))
    g34 = p.gamma.get((3, 4), Fraction(0))
    # (m - 1/2)(n - 1) a3 = 5/2 * 6 a3
    # s = 2: (5/2 Q_{1,4} + 3/2 Q_{0,4}) = 25/4 + 3/4 = 7
    # s = 3: -(5/2 Q_{2,2} + 3/2 Q_{1,2} + 1/2 Q_{0,2}) = -(25/4 + 9/4 + 1/4) = -35/4
    expected = 15 * a3 + 7 * g26 - Fraction(35, 4) * g34
    first = constraint_report(p)[0]
    assert (first.level, first.weight, first.index) == (2, 10, 1)
    assert first.value == expected
    printed = constraint_report(p, verbatim=True)[0]
    assert printed.value == 5 * a3 + 7 * g26 - Fraction(35, 4) * g34
    collisions = dict(_ProductTable(p).collisions)
    assert collisions[10].coord(1) == 2 * expected


@pytest.mark.parametrize("n", range(5, 11))
def test_alpha_terms_above_weight_n_plus_one(n):
    p = GeneralParams(n, (0, 0, 1, 0, 2), (0,) * (n - 3) + (3,), {})
    for i in range(3, (n + 3) // 2 + 1):
        sign = (-1) ** i
        corrected = high_bracket_closed_form(p, i, n + 2 - i)
        printed = high_bracket_closed_form(p, i, n + 2 - i, verbatim=True)
        assert corrected == Vector.from_terms(n, [(1, 2 * sign), (2, (n - 1) * sign)])
        assert printed == Vector.from_terms(n, [(1, 2 * sign - 3 * sign), (2, (n - 5) * sign)])
    for i in range(4, (n + 4) // 2 + 1):
        sign = (-1) ** (i + 1)
        assert high_bracket_closed_form(p, i, n + 3 - i) == Vector.from_terms(n, [(1, sign * (i - 3) * (n - 1))])


@pytest.mark.parametrize("n", [6, 8, 10])
def test_printed_even_first_level(n, rng):
    p = random_params(n, rng)
    corrected = constraint_residuals(p)
    printed = constraint_residuals(p, verbatim=True)
    assert printed[0] - corrected[0] == -p.beta[n - 3]
    assert printed[1] - corrected[1] == -4 * p.alpha[2]
    assert printed[2:] == corrected[2:]


@pytest.mark.parametrize("n", [5, 7, 9])
def test_printed_odd_first_level(n, rng):
    p = random_params(n, rng)
    corrected = constraint_residuals(p)
    printed = constraint_residuals(p, verbatim=True)
    assert printed[0] - corrected[0] == -4 * (n // 2 - Fraction(1, 2)) * p.alpha[2]
    assert printed[1:] == corrected[1:]


@pytest.mark.parametrize("n", range(5, 9))
def test_printed_table_breaks_the_first_upper_relation(n):
    alpha3 = GeneralParams(n, (0, 0, 1, 0, 0), (0,) * (n - 2), {})
    printed = dict(leibniz_residuals(general_table(alpha3, verbatim=True)))
    assert printed[(2, n - 1, 1)].terms() == ((n + 2, Fraction(-4)),)
    assert (2, n - 1, 1) not in dict(leibniz_residuals(general_table(alpha3)))

    beta = GeneralParams(n, (0,) * 5, (0,) * (n - 3) + (1,), {})
    printed = dict(leibniz_residuals(general_table(beta, verbatim=True)))
    assert printed[(2, n - 1, 1)].terms() == ((n + 1, Fraction(-1)),)
    assert leibniz_residuals(general_table(beta)) == []


@pytest.mark.parametrize("n", range(5, 11))
def test_constrained_samples_pass_both_checks(n, rng):
    for _ in range(2):
        p = sample_constrained_params(n, rng)
        assert constraints_satisfied(p)
        assert bruteforce_constraint_oracle(n, p) == []


@pytest.mark.parametrize("n", range(5, 11))
def test_restrictions_agree_with_full_scan(n, rng):
    for sample in range(config.property_samples):
        p = sample_constrained_params(n, rng) if sample % 2 else random_params(n, rng)
        assert constraints_satisfied(p) == (bruteforce_constraint_oracle(n, p) == [])


@pytest.mark.parametrize("n", range(5, 11))
def test_perturbed_samples_fail_both_checks(n, rng):
    matrix = constraint_matrix(n)
    active = [c for c in range(matrix.shape[1]) if any(matrix[r, c] != 0 for r in range(matrix.shape[0]))]
    p = sample_constrained_params(n, rng)
    if not active:
        assert constraints_satisfied(random_params(n, rng))
        return
    values = param_vector(p)
    values[active[0]] += 1
    perturbed = params_from_vector(n, values)
    assert not constraints_satisfied(perturbed)
    assert bruteforce_constraint_oracle(n, perturbed) != []


@pytest.mark.parametrize("n", [5, 8])
def test_restrictions_are_linear(n, rng):
    p, q = random_params(n, rng), random_params(n, rng)
    summed = params_from_vector(n, [a + b for a, b in zip(param_vector(p), param_vector(q))])
    expected = [a + b for a, b in zip(constraint_residuals(p), constraint_residuals(q))]
    assert constraint_residuals(summed) == expected


def test_oracle_range():
    with pytest.raises(ParameterError):
        bruteforce_constraint_oracle(11, GeneralParams.zero(11))
    with pytest.raises(ParameterError):
        bruteforce_constraint_oracle(6, GeneralParams.zero(5))


def test_eight_parameter_family_embeds(rng):
    for _ in range(20):
        p = MuParams.of(random_mu_values(rng))
        embedded = mu4_as_general(p)
        assert _derived_products(embedded).same_brackets(mu4_table(p))
        assert constraints_satisfied(embedded)

