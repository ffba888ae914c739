"""Document parsing, canonical emission, and the error taxonomy."""

import json

import pytest

from tanaka.catalog import make_algebra
from tanaka.jsonio import (
    AlgebraInputError,
    emit_algebra,
    emit_g0_generators,
    emit_rational,
    emit_result,
    emit_result_document,
    parse_algebra,
    parse_g0,
    parse_rational,
    parse_result,
)
from tanaka.lie import G0Spec, resolve_g0
from tanaka.prolong import prolong
from fractions import Fraction


def _prolonged(name, preset, depth):
    alg = make_algebra(name)
    return prolong(alg, resolve_g0(G0Spec(preset), alg), max_degree=depth)


def test_rational_forms():
    assert parse_rational(3, "x") == Fraction(3)
    assert parse_rational("-5/10", "x") == Fraction(-1, 2)
    assert parse_rational({"num": 2, "den": 4}, "x") == Fraction(1, 2)
    assert parse_rational({"num": 7}, "x") == Fraction(7)
    for bad in (1.5, True, "1.5", "a", {"num": 1, "den": 0}, {"num": 1, "extra": 2}, [1]):
        with pytest.raises(AlgebraInputError):
            parse_rational(bad, "x")
    assert emit_rational(Fraction(4, 2)) == 2
    assert emit_rational(Fraction(-1, 3)) == "-1/3"


def test_algebra_round_trip_is_canonical():
    for name in ("abelian2", "heisenberg3", "heisenberg5", "free_235"):
        alg = make_algebra(name)
        text = emit_algebra(alg, name)
        loaded = parse_algebra(text)
        assert loaded.name == name
        assert loaded.violations == ()
        assert loaded.algebra.brackets == alg.brackets
        assert emit_algebra(loaded.algebra, name) == text


def test_emitted_brackets_carry_both_orientations():
    doc = json.loads(emit_algebra(make_algebra("heisenberg3")))
    pairs = [(e["left"], e["right"]) for e in doc["brackets"]]
    assert ("e1", "e2") in pairs and ("e2", "e1") in pairs
    fwd = next(e for e in doc["brackets"] if (e["left"], e["right"]) == ("e1", "e2"))
    rev = next(e for e in doc["brackets"] if (e["left"], e["right"]) == ("e2", "e1"))
    assert fwd["value"] == [{"basis": "e3", "num": 1, "den": 1}]
    assert rev["value"] == [{"basis": "e3", "num": -1, "den": 1}]


def test_single_orientation_input_is_accepted():
    doc = {
        "name": "h",
        "degrees": {"-1": ["e1", "e2"], "-2": ["e3"]},
        "brackets": [{"left": "e2", "right": "e1",
                      "value": [{"basis": "e3", "num": -1, "den": 1}]}],
    }
    loaded = parse_algebra(json.dumps(doc))
    assert loaded.violations == ()
    assert loaded.algebra.brackets == make_algebra("heisenberg3").brackets


def test_mirror_corruption_is_a_violation_not_a_parse_error():
    doc = json.loads(emit_algebra(make_algebra("heisenberg3")))
    doc["brackets"][0]["value"][0]["num"] = 5
    loaded = parse_algebra(json.dumps(doc))
    assert any("antisymmetry" in v for v in loaded.violations)


def test_diagonal_entry_is_a_violation():
    doc = {
        "degrees": {"-1": ["a", "b"]},
        "brackets": [{"left": "a", "right": "a",
                      "value": [{"basis": "b", "num": 1, "den": 1}]}],
    }
    loaded = parse_algebra(json.dumps(doc))
    assert any("antisymmetry" in v for v in loaded.violations)


def test_grading_and_jacobi_violations_surface():
    bad_grading = {
        "degrees": {"-1": ["a", "b"], "-2": ["c"]},
        "brackets": [{"left": "a", "right": "c",
                      "value": [{"basis": "b", "num": 1, "den": 1}]}],
    }
    loaded = parse_algebra(json.dumps(bad_grading))
    assert loaded.violations


@pytest.mark.parametrize("text, fragment", [
    ("{", "invalid JSON at line"),
    ("[1]", "expected an object"),
    ('{"degrees": {"-1": ["a"]}, "other": 1}', "unexpected keys"),
    ('{"degrees": {}}', "non-empty"),
    ('{"degrees": {"0": ["a"]}}', "not negative"),
    ('{"degrees": {"x": ["a"]}}', "bad degree key"),
    ('{"degrees": {"-1": ["a", "a"]}}', "duplicate label"),
    ('{"degrees": {"-1": ["a"]}, "brackets": 3}', "expected a list"),
    ('{"degrees": {"-1": ["a"]}, "brackets": [{"left": "a"}]}', "expected keys"),
    ('{"degrees": {"-1": ["a"]}, "brackets": '
     '[{"left": "a", "right": "q", "value": []}]}', "unknown basis label"),
    ('{"degrees": {"-1": ["a", "b"]}, "brackets": '
     '[{"left": "a", "right": "b", "value": [{"basis": "a", "num": 1.5, "den": 1}]}]}',
     "expected an integer"),
    ('{"degrees": {"-1": ["a", "b"]}, "brackets": '
     '[{"left": "a", "right": "b", "value": [{"basis": "a", "num": 1, "den": 0}]}]}',
     "zero denominator"),
    ('{"degrees": {"-1": ["a", "b"]}, "brackets": '
     '[{"left": "a", "right": "b", "value": []}, '
     '{"left": "a", "right": "b", "value": []}]}', "duplicate entry"),
])
def test_malformed_documents_raise(text, fragment):
    with pytest.raises(AlgebraInputError, match=fragment):
        parse_algebra(text)


def test_g0_documents():
    alg = make_algebra("heisenberg3")
    maps = resolve_g0(G0Spec("der0"), alg)
    spec = parse_g0(emit_g0_generators(maps), alg)
    again = resolve_g0(spec, alg)
    assert [m.to_matrix() for m in again] == [m.to_matrix() for m in maps]

    flat = make_algebra("abelian2")
    spec = parse_g0('{"preset": "so", "form": [[2, 0], [0, 1]]}', flat)
    assert spec.preset == "so" and spec.form is not None

    for bad in ('{"preset": 3}', '{"preset": "nope"}', '{"generators": 1}',
                '{"preset": "gl", "generators": []}', '{}',
                '{"generators": [{"5": [[1]]}]}', '{"generators": [{"-1": [[1]]}]}'):
        with pytest.raises(AlgebraInputError):
            parse_g0(bad, alg)


def test_result_round_trip_is_byte_identical():
    for name, preset, depth in (("abelian2", "gl", 3), ("abelian3", "co", 4),
                                ("heisenberg3", "der0", 2)):
        text = emit_result(_prolonged(name, preset, depth))
        assert emit_result_document(parse_result(text)) == text


def test_result_document_fields():
    doc = parse_result(emit_result(_prolonged("abelian3", "co", 4), base_dim=3))
    assert doc["status"] == {"kind": "finite", "order": 1, "max_degree": 4}
    assert doc["dims"] == [3, 0]
    assert doc["dim_g0"] == 4
    assert doc["bound"] == 10
    assert [lv["dim"] for lv in doc["levels"]] == [3, 0]
    truncated = parse_result(emit_result(_prolonged("abelian2", "gl", 2)))
    assert truncated["status"]["kind"] == "truncated"
    assert "bound" not in truncated


def test_result_document_validation():
    text = emit_result(_prolonged("abelian2", "gl", 2))
    doc = json.loads(text)
    doc["status"]["kind"] = "odd"
    with pytest.raises(AlgebraInputError):
        parse_result(json.dumps(doc))
    doc = json.loads(text)
    del doc["dims"]
    with pytest.raises(AlgebraInputError):
        parse_result(json.dumps(doc))
    doc = json.loads(text)
    doc["levels"][0]["dim"] = 99
    with pytest.raises(AlgebraInputError):
        parse_result(json.dumps(doc))
