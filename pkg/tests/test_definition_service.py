"""Tests for definition file parsing, emission and the builders."""
import json

import pytest

from simplycolored.core.config import settings
from simplycolored.core.exactlin import Field, Matrix
from simplycolored.core.exceptions import DefinitionError
from simplycolored.services import definition_service
from simplycolored.services.coalgebra_service import check_coalgebra, check_morphism
from simplycolored.services.colored_service import is_simply_colored

from conftest import FIXTURES, Q

GOOD_FIXTURES = sorted(p.name for p in FIXTURES.glob("*.json") if p.name != "bad_fraction.json")


@pytest.mark.parametrize("name", GOOD_FIXTURES)
def test_fixtures_parse(name, load):
    loaded = load(name)
    assert loaded.path.name == name


@pytest.mark.parametrize("name", GOOD_FIXTURES)
def test_emit_is_canonical(name, load):
    model = load(name).model
    again = definition_service.parse_text(definition_service.emit(model)).model
    assert again.model_dump() == model.model_dump()


# ── Positioned errors ────────────────────────────────────────────

def test_zero_denominator_is_located(fixtures_dir):
    with pytest.raises(DefinitionError) as exc:
        definition_service.load(fixtures_dir / "bad_fraction.json")
    assert exc.value.line == 5
    assert "zero denominator" in exc.value.reason


def test_json_syntax_error_is_located():
    text = '{\n  "field": "Q"\n  "coalgebra": {}\n}'
    with pytest.raises(DefinitionError) as exc:
        definition_service.parse_text(text)
    assert exc.value.line == 3
    assert str(exc.value).startswith("3:")


def test_unknown_block_is_located():
    text = '{\n  "colagebra": {"basis": ["g"]}\n}'
    with pytest.raises(DefinitionError) as exc:
        definition_service.parse_text(text)
    assert exc.value.line == 2


def test_duplicate_basis_is_located():
    text = "\n".join([
        "{",
        '  "coalgebra": {',
        '    "basis": ["g", "g"],',
        '    "delta": [],',
        '    "counit": {}',
        "  }",
        "}",
    ])
    with pytest.raises(DefinitionError) as exc:
        definition_service.parse_text(text)
    assert exc.value.line == 3
    assert "duplicate" in exc.value.reason


def test_dangling_delta_reference_is_located():
    text = "\n".join([
        "{",
        '  "coalgebra": {',
        '    "basis": ["g"],',
        '    "delta": [["g", "g", "h", 1]],',
        '    "counit": {"g": 1}',
        "  }",
        "}",
    ])
    with pytest.raises(DefinitionError) as exc:
        definition_service.parse_text(text)
    assert exc.value.line == 4
    assert "'h'" in exc.value.reason


def test_missing_file():
    with pytest.raises(DefinitionError):
        definition_service.load(FIXTURES / "no_such_file.json")


# ── Builders ─────────────────────────────────────────────────────

def test_default_field_applies_when_omitted(monkeypatch):
    text = json.dumps({"coalgebra": {"basis": ["g"], "delta": [["g", "g", "g", 1]], "counit": {"g": 1}}})
    monkeypatch.setattr(settings, "DEFAULT_FIELD", "5")
    c = definition_service.build_coalgebra(definition_service.parse_text(text))
    assert c.field == Field.prime(5)

    explicit = json.dumps({"field": "Q", "coalgebra": json.loads(text)["coalgebra"]})
    assert definition_service.build_coalgebra(definition_service.parse_text(explicit)).field == Q


def test_emit_writes_the_resolved_field(monkeypatch):
    text = json.dumps({"coalgebra": {"basis": ["g"], "delta": [["g", "g", "g", 1]], "counit": {"g": 1}}})
    monkeypatch.setattr(settings, "DEFAULT_FIELD", "GF(5)")
    emitted = definition_service.emit(definition_service.parse_text(text).model)
    assert json.loads(emitted)["field"] == {"Fp": 5}

    monkeypatch.setattr(settings, "DEFAULT_FIELD", "Q")
    again = definition_service.parse_text(emitted)
    assert "field" in again.model.model_fields_set
    assert definition_service.build_coalgebra(again).field == Field.prime(5)


def test_emit_keeps_an_explicit_field(monkeypatch):
    text = json.dumps({"field": "Q", "coalgebra": {"basis": ["g"], "counit": {"g": 1}}})
    monkeypatch.setattr(settings, "DEFAULT_FIELD", "7")
    emitted = definition_service.emit(definition_service.parse_text(text).model)
    assert json.loads(emitted)["field"] == "Q"


def test_prime_field_must_be_prime():
    text = json.dumps({"field": {"Fp": 4}, "coalgebra": {"basis": ["g"], "counit": {"g": 1}}})
    with pytest.raises(DefinitionError):
        definition_service.build_coalgebra(definition_service.parse_text(text))


def test_default_retraction_keeps_the_colors(load):
    sc = definition_service.build_colored(load("path_uv.json"))
    assert sc.color_names == ("u", "v")
    assert sc.retraction == Matrix.from_entries(Q, 3, 3, [(0, 0, 1), (1, 1, 1)])
    assert is_simply_colored(sc).passed


def test_combination_color_needs_a_retraction():
    text = json.dumps({
        "coalgebra": {"basis": ["g"], "delta": [["g", "g", "g", 1]], "counit": {"g": 1}},
        "splitting": {"colors": [{"g": 1}]},
    })
    with pytest.raises(DefinitionError) as exc:
        definition_service.build_colored(definition_service.parse_text(text))
    assert "retraction" in exc.value.reason


def test_bialgebra_over_gf3(load):
    b = definition_service.build_bialgebra(load("truncated_polynomial_gf3.json"))
    assert b.coalgebra.field == Field.prime(3)
    assert check_coalgebra(b.coalgebra).passed


def test_morphism_target_resolves_relative_to_the_file(load):
    loaded = load("coequalizer_pair.json")
    f = definition_service.build_morphism(loaded, "p")
    assert f.target.basis_names == ("u", "v", "a")
    assert f.matrix == Matrix.column(Q, [1, 0, 0])
    assert check_morphism(f).passed

    colored = definition_service.build_colored_morphism(loaded, "q")
    assert colored.color_map == {"s": "v"}


def test_missing_morphism(load):
    with pytest.raises(DefinitionError):
        definition_service.build_morphism(load("coequalizer_pair.json"), "r")


def test_cogenerator_map(load):
    loaded = load("cofree_path_uv.json")
    f, phi = definition_service.build_cogenerator_map(loaded, "lift")
    assert f == Matrix.from_entries(Q, 1, 3, [(0, 2, 1)])
    assert phi == {"u": "u", "v": "v"}
    m = definition_service.build_bicomodule(loaded)
    assert m.bidegrees() == [("v", "u")]


def test_conv_map(load):
    h = definition_service.build_conv_map(load("convinv_scalar.json"))
    assert h.matrix == Matrix.from_rows(Q, [[2, 1]])
