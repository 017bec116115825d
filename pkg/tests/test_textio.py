import json

import pytest

from burkhardt_core.errors import ParseError, PreconditionError
from burkhardt_core.multipoly import parse_polynomial
from burkhardt_core.textio import (
    io_roundtrip,
    load_model,
    model_from_json,
    model_to_dict,
    model_to_json,
    render,
)
from burkhardt_core.twist_factory import bdoubleprime_model, bprime_model, sextic_from_roots, twist_from_sextic


@pytest.mark.parametrize("builder", [bprime_model, lambda: bdoubleprime_model().model])
def test_model_json_roundtrip(builder):
    model = builder()
    back = model_from_json(model_to_json(model))
    assert back == model
    assert io_roundtrip(model, "model")


def test_twist_model_roundtrip():
    model = twist_from_sextic(sextic_from_roots((0, 1, -1, 2, -2, 3))).model
    data = model_to_dict(model)
    assert data["elimination"] == "x1"
    assert model_from_json(json.dumps(data)) == model


def test_polynomial_and_point_roundtrip():
    p = parse_polynomial("3*s*z0^2 - 1/2*z1*z2 + t", ("z0", "z1", "z2", "s", "t"))
    assert io_roundtrip(p, "polynomial")
    assert io_roundtrip((2, 4, -6), "point")
    assert render((2, 4, -6), "point") == "(1:2:-3)"


def test_unknown_format():
    with pytest.raises(PreconditionError):
        render(bprime_model(), "yaml")


def test_malformed_json_reports_offset():
    with pytest.raises(ParseError) as info:
        model_from_json('{"name": "x",')
    assert info.value.offset > 0


def test_bad_form_offset_is_relative_to_the_document():
    text = '{"name": "x", "coords": ["a"], "forms": ["a + * a"]}'
    with pytest.raises(ParseError) as info:
        model_from_json(text)
    assert info.value.offset == text.index("*")


@pytest.mark.parametrize(
    "text",
    [
        "[1, 2]",
        '{"name": "x", "coords": ["a"], "forms": ["a"], "extra": 1}',
        '{"coords": ["a"], "forms": ["a"]}',
        '{"name": "x", "coords": "a", "forms": ["a"]}',
        '{"name": "x", "coords": ["a"], "forms": []}',
    ],
)
def test_invalid_model_documents(text):
    with pytest.raises(ParseError):
        model_from_json(text)


def test_load_model(tmp_path):
    assert load_model("standard").name == "B1"
    assert load_model("bdoubleprime").params == ("s", "t")
    path = tmp_path / "bprime.json"
    path.write_text(model_to_json(bprime_model()), encoding="utf-8")
    assert load_model(str(path)) == bprime_model()
    with pytest.raises(PreconditionError):
        load_model(str(tmp_path / "missing.json"))
