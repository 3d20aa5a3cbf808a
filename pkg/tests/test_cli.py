# tests/test_cli.py

import json
import sys

import pytest
import yaml

from modules.cli.main import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, main, run
from modules.constructions.builders import make_n_n1, make_Q2n
from modules.core import config
from modules.core.algebra import leibniz_residuals
from modules.core.types import StructureTensor
from modules.mu_family.general import sample_constrained_params


@pytest.fixture(autouse=True)
def restore_config():
    saved = config.get_config()
    yield
    config.update_config(saved)


@pytest.fixture
def cli(tmp_path, capsys):
    """Run the CLI without a config file and return (code, parsed stdout)."""

    def invoke(*argv):
        code, _ = run(["--config", str(tmp_path / "no-config.json"), *argv])
        out = capsys.readouterr().out
        return code, (json.loads(out) if out.strip() else None)

    return invoke


def _check(report, name):
    return next(check for check in report["checks"] if check["name"] == name)


def test_construct_then_verify(cli, tmp_path):
    path = str(tmp_path / "n5.json")
    code, report = cli("construct", "--family", "n_n1", "--n", "5", "--out", path)
    assert code == EXIT_OK
    assert report["command"] == "construct"
    assert report["artifacts"] == [path]
    assert report["result"]["dim"] == 5
    assert report["inputs"]["family"] == "n_n1"

    code, report = cli("verify", "--in", path)
    assert code == EXIT_OK
    assert [c["name"] for c in report["checks"]] == ["leibniz", "antisymmetry", "lie", "nilpotent", "filiform"]
    assert all(c["passed"] for c in report["checks"])
    assert report["result"]["lower_central_series"] == [5, 3, 2, 1, 0]


def test_broken_table_fails_with_a_counterexample(cli, tensor_file):
    entries = dict(make_n_n1(4).entries)
    entries[(3, 2)] = ((4, 1),)
    broken = StructureTensor.build(4, entries, ["x1", "x2", "x3", "x4"])
    path = tensor_file(broken)
    code, report = cli("verify", "--in", path)
    assert code == EXIT_CHECK_FAILED
    leibniz = _check(report, "leibniz")
    assert not leibniz["passed"]
    first_triple, _ = leibniz_residuals(broken)[0]
    assert leibniz["counterexample"]["triple"] == list(first_triple)
    assert len(leibniz["counterexample"]["labels"]) == 3
    assert not _check(report, "antisymmetry")["passed"]


def test_series_and_gradation(cli, tensor_file, tmp_path):
    path = tensor_file(make_Q2n(3), "q6.json")
    code, report = cli("series", "--in", path)
    assert code == EXIT_OK
    assert report["result"]["filiform"] and report["result"]["lie"]
    assert report["result"]["derived_series"][0] == 6

    out = str(tmp_path / "graded.json")
    code, report = cli("gradation", "--in", path, "--out", out)
    assert code == EXIT_OK
    assert report["result"]["same_table"]
    assert report["result"]["normal_form"] == "Q2n"
    assert report["result"]["naturally_graded"]
    assert report["artifacts"] == [out]


def test_mu4_verify(cli):
    code, report = cli("mu4", "verify", "--params", "1,1,1,1,0,0,0,0")
    assert code == EXIT_OK
    assert report["command"] == "mu4 verify"
    assert report["result"]["signature"]["pattern"] == "111100"

    code, report = cli("mu4", "verify", "--params", "0,0,1,0,0,0,0,0", "--verbatim")
    assert code == EXIT_CHECK_FAILED
    check = _check(report, "leibniz_verbatim")
    assert check["counterexample"]["triple"] == [2, 1, 3]
    assert check["counterexample"]["residual"] == [[6, "-2"]]


def test_mu4_table_is_exact(cli):
    code, report = cli("mu4", "table", "--params", "0,0,0,0,0,0,0,1/3")
    assert code == EXIT_OK
    assert report["result"]["brackets"]["2,4"] == [[5, "-1/2"]]


def test_mu4_normalize_and_iso(cli):
    code, report = cli("mu4", "normalize", "--params", "0,0,5,0,1,1,0,7")
    assert code == EXIT_OK
    assert report["result"]["family"] == "0,0,1,0,b1,b2,0,1"
    assert report["result"]["listed_in_published_table"] is False
    assert _check(report, "induced_basis_change")["passed"]

    code, report = cli("mu4", "iso", "--left", "2,0,0,0,0,0,0,0", "--right", "1,0,0,0,0,0,0,0")
    assert code == EXIT_OK
    assert report["result"]["isomorphic"] is True
    assert len(report["result"]["witness"]) == 5

    code, report = cli("mu4", "iso", "--left", "1,0,0,0,0,0,0,0", "--right", "0,1,0,0,0,0,0,0")
    assert report["result"] == {
        "left": ["1", "0", "0", "0", "0", "0", "0", "0"],
        "right": ["0", "1", "0", "0", "0", "0", "0", "0"],
        "isomorphic": False,
        "witness": None,
    }


def test_mu4_catalogue(cli):
    code, report = cli("mu4", "catalogue")
    assert code == EXIT_OK
    result = report["result"]
    assert result["published_count"] == 69
    assert len(result["families"]) == 69
    assert len(result["differences"]["superseded"]) == 4
    assert result["families"][2]["root_slot"] == "alpha1"


def test_general_from_yaml(cli, tmp_path, rng):
    p = sample_constrained_params(6, rng)
    path = tmp_path / "params.yaml"
    path.write_text(yaml.safe_dump(p.to_dict()))
    code, report = cli("general", "--params-file", str(path), "--check-constraints", "--oracle")
    assert code == EXIT_OK
    assert [c["name"] for c in report["checks"]] == ["constraints", "oracle"]
    assert report["result"]["params"] == p.to_dict()

    code, report = cli("general", "--params-file", str(path), "--n", "7")
    assert code == EXIT_USAGE
    assert report["result"]["error_type"] == "ParameterError"


def test_general_sampling_is_seeded(cli):
    first = cli("--seed", "7", "general", "--n", "5", "--sample", "constrained", "--check-constraints")
    second = cli("--seed", "7", "general", "--n", "5", "--sample", "constrained", "--check-constraints")
    assert first[0] == EXIT_OK
    assert first[1]["result"] == second[1]["result"]
    assert first[1]["inputs"]["seed"] == 7


def test_general_printed_coefficients(cli, tmp_path):
    path = tmp_path / "beta.json"
    path.write_text(json.dumps({"n": 6, "beta": ["0", "0", "0", "1"]}))
    code, _ = cli("general", "--params-file", str(path), "--check-constraints", "--oracle")
    assert code == EXIT_OK

    code, report = cli("general", "--params-file", str(path), "--check-constraints", "--oracle", "--verbatim")
    assert code == EXIT_CHECK_FAILED
    check = _check(report, "constraints")
    assert check["counterexample"] == {"restriction": "even-n system, level 1: e1 at weight 8", "value": "-1"}
    assert not _check(report, "oracle")["passed"]


def test_fock_verify_and_out(cli, tmp_path):
    out = str(tmp_path / "fr3.json")
    code, report = cli("fock", "--n", "3", "--verify", "--out", out)
    assert code == EXIT_OK
    assert [c["name"] for c in report["checks"]] == ["fock_window", "fock_ideal", "fock_quotient"]
    assert report["result"]["degree"] == 9
    assert report["result"]["safe_degree"] == 8
    with open(out, encoding="utf-8") as f:
        document = json.load(f)
    assert document["finite_part"]["basis"] == ["1bar", "xbar^1", "dbar"]
    assert document["mixed_action"]["module_dim"] == 10


def test_export_is_byte_stable(cli, tmp_path):
    first, second = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    cli("construct", "--family", "direct-sum", "--parts", "4,3", "--out", first)
    code, _ = cli("export", "--in", first, "--out", second)
    assert code == EXIT_OK
    with open(first, "rb") as a, open(second, "rb") as b:
        assert a.read() == b.read()


@pytest.mark.parametrize(
    "argv",
    [
        ("construct",),
        ("construct", "--family", "octonions"),
        ("mu4", "verify", "--params", "1,2"),
        ("mu4", "verify", "--params", "1,0,0,0,0,0,0,0.5"),
        ("general", "--n", "5"),
        ("--log-level", "LOUD", "mu4", "catalogue"),
    ],
)
def test_usage_errors(cli, argv):
    code, report = cli(*argv)
    assert code == EXIT_USAGE
    assert report is None


def test_input_errors_still_report(cli, tmp_path):
    code, report = cli("verify", "--in", str(tmp_path / "absent.json"))
    assert code == EXIT_USAGE
    assert report["result"]["error_type"] == "FileNotFoundError"

    code, report = cli("construct", "--family", "n_n1", "--n", "2")
    assert code == EXIT_USAGE
    assert report["result"]["error_type"] == "ParameterError"


def test_config_file_sets_the_seed(tmp_path, capsys):
    settings = tmp_path / "settings.json"
    settings.write_text(json.dumps({"default_seed": 11}))
    code, report = run(["--config", str(settings), "general", "--n", "5", "--sample", "random"])
    capsys.readouterr()
    assert code == EXIT_OK
    assert report.inputs["seed"] == 11


@pytest.mark.parametrize("text", ['{"default_seed": 11', "[1, 2]", '{"max_workers": "many"}'])
def test_malformed_config_file_is_a_usage_error(tmp_path, capsys, text):
    settings = tmp_path / "settings.json"
    settings.write_text(text)
    code, report = run(["--config", str(settings), "general", "--n", "5", "--sample", "random"])
    assert code == EXIT_USAGE
    assert report is None
    assert str(settings) in capsys.readouterr().err


def test_main_exits_with_the_code(monkeypatch, tmp_path):
    argv = ["leibniz-lab", "--config", str(tmp_path / "none.json"), "mu4", "verify", "--params", "0,0,0,0,0,0,0,0"]
    monkeypatch.setattr(sys, "argv", argv)
    with pytest.raises(SystemExit) as exit_info:
        main()
    assert exit_info.value.code == EXIT_OK
