# tests/test_classification.py

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings

from modules.core import config
from modules.core.errors import SchemaError
from modules.mu_family.classification import (
    PUBLISHED_COUNT,
    SUPERSEDED,
    catalogue_differences,
    load_published_catalogue,
    mu4_catalogue,
    mu4_is_isomorphic,
    mu4_normalize,
    mu4_signature,
)
from modules.mu_family.mu4 import MuParams, MuTransform, mu4_transform_action
from modules.validation.validator import AlgebraValidator
from tests.strategies import mu_values, random_mu_values, transforms

_ASSIGNMENTS = [
    {symbol: Fraction(v) for symbol in ("a1", "a2", "b1", "b2", "g1")} for v in (2, 3, 5)
] + [{"a1": Fraction(2), "a2": Fraction(3), "b1": Fraction(5), "b2": Fraction(2), "g1": Fraction(3)}]


def _representatives():
    seen = []
    for family in mu4_catalogue():
        for values in _ASSIGNMENTS:
            p = family.instantiate(values)
            if p not in seen:
                seen.append(p)
                yield family, p


def test_catalogue_size():
    families = mu4_catalogue()
    assert len(families) == PUBLISHED_COUNT
    assert len({f.key for f in families}) == PUBLISHED_COUNT
    assert sum(not f.listed_in_published_table for f in families) == 4


def test_published_table_and_differences():
    published = load_published_catalogue()
    assert len(published) == PUBLISHED_COUNT
    differences = catalogue_differences(published)
    assert sorted(differences["superseded"]) == sorted(SUPERSEDED)
    assert sorted(differences["added"]) == ["0,0,1,0,b1,b2,0,1", "1,0,1,0,0,0,0,0"]
    assert differences["merged"] == ["0,0,0,1,0,1,g1,0", "1,0,0,0,0,1,g1,0"]


def test_published_table_schema(tmp_path):
    short = tmp_path / "short.json"
    short.write_text(json.dumps({"expected_count": 69, "representatives": ["0,0,0,0,0,0,0,0"]}))
    with pytest.raises(SchemaError):
        load_published_catalogue(str(short))
    rows = ["0,0,0,0,0,0,0,0"] * 68 + ["0,0,0"]
    ragged = tmp_path / "ragged.json"
    ragged.write_text(json.dumps({"expected_count": 69, "representatives": rows}))
    with pytest.raises(SchemaError):
        load_published_catalogue(str(ragged))
    with pytest.raises(FileNotFoundError):
        load_published_catalogue(str(tmp_path / "absent.json"))


def test_representatives_are_fixed_points():
    for family, p in _representatives():
        form = mu4_normalize(p)
        assert form.representative == p, family.key
        assert form.family == family
        assert family.matches(p)


def test_distinct_representatives_are_not_isomorphic():
    reps = [p for _, p in _representatives()]
    for i, p in enumerate(reps):
        for q in reps[i + 1:]:
            assert mu4_is_isomorphic(p, q) is None, (str(p), str(q))


def test_scaling_example():
    p, q = MuParams.parse("2,0,0,0,0,0,0,0"), MuParams.parse("1,0,0,0,0,0,0,0")
    witness = mu4_is_isomorphic(p, q)
    assert witness is not None
    assert mu4_transform_action(p, witness) == q


def test_square_classes_stay_apart():
    eight = MuParams.parse("8,0,1,0,0,0,0,1")
    two = MuParams.parse("2,0,1,0,0,0,0,1")
    one = MuParams.parse("1,0,1,0,0,0,0,1")
    form = mu4_normalize(eight)
    assert form.representative == two
    assert (form.root_slot, form.root_degree) == ("alpha1", 2)
    assert mu4_is_isomorphic(eight, two) is not None
    assert mu4_is_isomorphic(eight, one) is None


def test_unlisted_families_are_flagged():
    form = mu4_normalize(MuParams.parse("0,0,5,0,1,1,0,7"))
    assert form.family.key == "0,0,1,0,b1,b2,0,1"
    assert not form.listed_in_published_table
    assert form.family_index == 4


@settings(max_examples=150, deadline=None)
@given(mu_values(), transforms())
def test_normal_form_is_an_orbit_invariant(values, entries):
    p = MuParams.of(values)
    q = mu4_transform_action(p, MuTransform.of(entries))
    assert mu4_signature(p) == mu4_signature(q)
    assert mu4_normalize(p).representative == mu4_normalize(q).representative


def test_witnesses_lift_to_basis_changes(rng):
    validator = AlgebraValidator(workers=1)
    for _ in range(10):
        p = MuParams.of(random_mu_values(rng))
        form = mu4_normalize(p)
        assert validator.check_witness(p, form.witness, form.representative).passed, str(p)


def test_random_orbit_points_share_a_normal_form(rng):
    for _ in range(config.normalize_samples):
        p = MuParams.of(random_mu_values(rng))
        g = MuTransform(
            rng.choice([1, -1, 2, Fraction(1, 3)]),
            rng.choice([1, -2, 3]),
            rng.choice([0, 1, Fraction(-1, 2)]),
            rng.choice([0, 2, -1]),
            rng.choice([1, -1, 5]),
        )
        q = mu4_transform_action(p, g)
        witness = mu4_is_isomorphic(p, q)
        assert witness is not None, (str(p), g.to_list())
        assert mu4_transform_action(p, witness) == q
