# burkhardt_core/textio.py

import json
from pathlib import Path

from .errors import ParseError, PreconditionError
from .multipoly import Polynomial, parse_polynomial
from .standard_model import ProjectivePoint, QuarticModel, standard_model
from .twist_factory import bdoubleprime_model, bprime_model

MODEL_KEYS = ("name", "coords", "params", "elimination", "forms")
FORMATS = ("polynomial", "point", "model")


# ------------------------------------------
# MODEL JSON
# ------------------------------------------

def model_to_dict(model: QuarticModel) -> dict:
    return {
        "name": model.name,
        "coords": list(model.coords),
        "params": list(model.params),
        "elimination": model.elimination,
        "forms": [str(f) for f in model.forms],
    }


def model_to_json(model: QuarticModel) -> str:
    return json.dumps(model_to_dict(model), sort_keys=True, ensure_ascii=False)


def _field(data: dict, key: str, text: str, kind):
    if key not in data:
        raise ParseError(f"model JSON lacks '{key}'", 0, text)
    value = data[key]
    if kind is list and not (isinstance(value, list) and all(isinstance(v, str) for v in value)):
        raise ParseError(f"'{key}' must be a list of strings", 0, text)
    if kind is str and not isinstance(value, str):
        raise ParseError(f"'{key}' must be a string", 0, text)
    return value


def model_from_json(text: str) -> QuarticModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.pos, text) from None
    if not isinstance(data, dict):
        raise ParseError("model JSON must be an object", 0, text)
    unknown = sorted(set(data) - set(MODEL_KEYS))
    if unknown:
        raise ParseError(f"unknown model keys {unknown}", 0, text)

    name = _field(data, "name", text, str)
    coords = tuple(_field(data, "coords", text, list))
    params = tuple(data.get("params") or ())
    elimination = data.get("elimination")
    ring = coords + params
    forms = []
    for raw in _field(data, "forms", text, list):
        try:
            forms.append(parse_polynomial(raw, ring))
        except ParseError as e:
            # offsets inside a form are reported relative to the whole document
            base = text.find(json.dumps(raw, ensure_ascii=False)[1:-1])
            raise ParseError(str(e).rsplit(" (at offset", 1)[0], max(base, 0) + e.offset, text) from None
    if len(forms) not in (1, 2):
        raise ParseError("a model has one quartic or a (linear, quartic) pair", 0, text)
    return QuarticModel(name, tuple(forms), coords, params, elimination)


def load_model(source: str) -> QuarticModel:
    """Resolve a CLI model argument: a built-in name or a path to model JSON."""
    builtins = {
        "standard": standard_model,
        "bprime": bprime_model,
        "bdoubleprime": lambda: bdoubleprime_model().model,
    }
    if source in builtins:
        return builtins[source]()
    path = Path(source)
    if not path.is_file():
        raise PreconditionError(
            f"unknown model '{source}'; use one of {sorted(builtins)} or a JSON file"
        )
    return model_from_json(path.read_text(encoding="utf-8"))


# ------------------------------------------
# ROUND TRIP
# ------------------------------------------

def render(obj, fmt: str) -> str:
    if fmt == "polynomial":
        return str(obj)
    if fmt == "point":
        return str(ProjectivePoint.of(obj))
    if fmt == "model":
        return model_to_json(obj)
    raise PreconditionError(f"unknown format '{fmt}'; expected one of {list(FORMATS)}")


def parse_text(text: str, fmt: str, ambient=None):
    if fmt == "polynomial":
        return parse_polynomial(text, ambient)
    if fmt == "point":
        return ProjectivePoint.parse(text)
    if fmt == "model":
        return model_from_json(text)
    raise PreconditionError(f"unknown format '{fmt}'; expected one of {list(FORMATS)}")


def io_roundtrip(obj, fmt: str) -> bool:
    """True when parsing the printed form of `obj` gives `obj` back."""
    ambient = obj.ambient if isinstance(obj, Polynomial) else None
    back = parse_text(render(obj, fmt), fmt, ambient)
    if fmt == "point":
        return back == ProjectivePoint.of(obj)
    return back == obj
