# tests/test_validator.py

from modules.constructions.builders import direct_sum, make_heisenberg_h1, make_n_n1
from modules.constructions.representations import minimal_faithful_action
from modules.core.types import ModuleAction
from modules.mu_family.general import GeneralParams
from modules.mu_family.mu4 import MuParams, MuTransform
from modules.validation.validator import AlgebraValidator, CheckResult


def test_checks_are_collected_in_order():
    validator = AlgebraValidator()
    results = validator.validate_tensor(make_heisenberg_h1())
    assert [r.name for r in results] == ["leibniz", "antisymmetry", "lie", "nilpotent", "filiform"]
    assert validator.results == results
    assert validator.all_passed
    validator.reset()
    assert validator.results == []


def test_non_filiform_sum():
    validator = AlgebraValidator()
    result = validator.check_filiform(direct_sum([make_n_n1(3), make_n_n1(3)]))
    assert not result.passed
    assert "[6, 2, 0]" in result.detail
    assert not validator.all_passed


def test_representation_counterexample():
    entries = dict(minimal_faithful_action(3).entries)
    entries[(3, 3)] = ((1, -1),)
    result = AlgebraValidator().check_representation(ModuleAction(3, 3, entries), make_n_n1(3))
    assert not result.passed
    assert len(result.counterexample["triple"]) == 3
    assert result.counterexample["labels"][0].startswith("e")


def test_constraint_checks_on_zero_parameters():
    validator = AlgebraValidator()
    assert validator.check_constraints(GeneralParams.zero(6)).passed
    assert validator.check_oracle(GeneralParams.zero(6)).passed


def test_witness_that_misses_its_target():
    p = MuParams.parse("1,0,0,0,0,0,0,0")
    result = AlgebraValidator().check_witness(p, MuTransform.identity(), MuParams.zero())
    assert not result.passed
    assert result.counterexample["expected"] == ["0"] * 8


def test_result_documents():
    assert CheckResult("x", True, "ok").to_dict() == {"name": "x", "passed": True, "detail": "ok"}
    failed = CheckResult("x", False, "bad", {"pair": [1, 2]}).to_dict()
    assert failed["counterexample"] == {"pair": [1, 2]}
