"""Tests for the command-line driver."""
import json

import pytest

from simplycolored.main import EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE, run

from conftest import FIXTURES


def run_json(capsys, *argv):
    code = run([*argv, "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def fixture(name: str) -> str:
    return str(FIXTURES / name)


def test_validate_passes(capsys):
    code, report = run_json(capsys, "validate", fixture("matrix_coalgebra_2.json"))
    assert code == EXIT_OK
    assert report["ok"]
    assert report["data"]["dim"] == 4
    assert report["checks"]


def test_text_report(capsys):
    assert run(["validate", fixture("setlike_one.json")]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "validate: setlike_one.json"
    assert "status: ok" in out


def test_not_pointed_exits_one(capsys):
    code, report = run_json(capsys, "pointed", fixture("matrix_coalgebra_2.json"))
    assert code == EXIT_CHECK_FAILED
    assert report["error"] == "not pointed"
    assert report["data"]["setlikes"] == []


def test_conilpotency_index_table(capsys):
    code, report = run_json(capsys, "conilpotency", fixture("path_uvw.json"))
    assert code == EXIT_OK
    assert report["data"]["index"] == {"α": 1, "β": 1, "βα": 2}
    assert report["data"]["bound"] == 2


FIXTURE_COMMANDS = {
    "bad_fraction.json": "validate",
    "coequalizer_pair.json": "coequalizer",
    "cofree_path_uv.json": "cofree",
    "convinv_refused.json": "convinv",
    "convinv_scalar.json": "convinv",
    "divided_power_3.json": "filtration",
    "equalizer_pair.json": "equalizer",
    "group_z3.json": "antipode",
    "loop_cotensor.json": "cotensor",
    "matrix_coalgebra_1.json": "pointed",
    "matrix_coalgebra_2.json": "validate",
    "monoid_idempotent.json": "antipode",
    "path_uv.json": "bigrade",
    "path_uvw.json": "conilpotency",
    "setlike_one.json": "validate",
    "truncated_polynomial_gf3.json": "antipode",
}


def test_every_fixture_has_a_command():
    assert sorted(FIXTURE_COMMANDS) == sorted(p.name for p in FIXTURES.glob("*.json"))


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.json")), ids=lambda p: p.stem)
def test_json_output_is_deterministic(capsys, path):
    argv = [FIXTURE_COMMANDS[path.name], str(path), "--format", "json"]
    first_code = run(argv)
    first = capsys.readouterr().out
    second_code = run(argv)
    second = capsys.readouterr().out
    assert first_code == second_code
    assert first
    assert first == second


def test_definition_error_exits_two(capsys):
    code, report = run_json(capsys, "validate", fixture("bad_fraction.json"))
    assert code == EXIT_USAGE
    assert not report["ok"]
    assert report["data"]["line"] == 5


def test_usage_errors(capsys):
    assert run(["no-such-command"]) == EXIT_USAGE
    assert run(["product", fixture("path_uv.json")]) == EXIT_USAGE
    assert run(["--version"]) == EXIT_OK
    capsys.readouterr()


def test_convolution_inverse(capsys):
    code, report = run_json(capsys, "convinv", fixture("convinv_scalar.json"))
    assert code == EXIT_OK
    assert report["data"]["inverse"] == {"g": "1/2*1", "x": "-1/4*1"}


def test_refusal_names_the_color(capsys):
    code, report = run_json(capsys, "convinv", fixture("convinv_refused.json"))
    assert code == EXIT_CHECK_FAILED
    assert report["data"]["color"] == "g"
    assert report["data"]["exhaustive_search_confirms"] is True


def test_cyclic_antipode(capsys):
    code, report = run_json(capsys, "antipode", "--cyclic", "3")
    assert code == EXIT_OK
    assert report["data"]["antipode"] == {"1": "1", "g": "g2", "g2": "g"}


def test_monoid_antipode_refused(capsys):
    code, report = run_json(capsys, "antipode", fixture("monoid_idempotent.json"))
    assert code == EXIT_CHECK_FAILED
    assert report["data"]["axiom"] == "inverse"
    assert report["witness"] == "z"


@pytest.mark.parametrize(
    "argv",
    [
        ["pathcoalg", fixture("path_uvw.json"), "2"],
        ["cotensor", fixture("loop_cotensor.json")],
        ["cofree", fixture("cofree_path_uv.json")],
        ["equalizer", fixture("equalizer_pair.json")],
        ["coequalizer", fixture("coequalizer_pair.json")],
        ["coproduct", fixture("setlike_one.json"), fixture("divided_power_3.json")],
        ["product", fixture("path_uv.json"), fixture("setlike_one.json"), "--max-words", "2"],
    ],
    ids=["pathcoalg", "cotensor", "cofree", "equalizer", "coequalizer", "coproduct", "product"],
)
def test_constructions_succeed(capsys, argv):
    code, report = run_json(capsys, *argv)
    assert code == EXIT_OK, report
    assert report["ok"]


def test_reports_are_written_to_output_dir(capsys, tmp_path):
    assert run(["validate", fixture("setlike_one.json"), "--output-dir", str(tmp_path)]) == EXIT_OK
    written = tmp_path / "validate-setlike_one.txt"
    assert written.read_text(encoding="utf-8") == capsys.readouterr().out
