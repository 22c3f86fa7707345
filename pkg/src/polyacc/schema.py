"""JSON schemas for CLI inputs.

Validation failures raise :class:`~polyacc.errors.SchemaError` carrying the
JSON path (``$.layers[0].h.atoms[1].w``) of the offending field.
"""

from __future__ import annotations

from jsonschema import Draft202012Validator
from jsonschema.exceptions import best_match

from .errors import SchemaError
from .polyharmonic import PolyanalyticSpec, PolyharmonicSpec

_NUMBER = {"type": "number"}
_COMPLEX = {
    "oneOf": [
        _NUMBER,
        {"type": "array", "items": _NUMBER, "minItems": 2, "maxItems": 2},
    ]
}

ANALYTIC = {
    "type": "object",
    "properties": {
        "atoms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kind"],
                "properties": {
                    "kind": {"enum": ["monomial", "moebius", "halfplane"]},
                    "n": {"type": "integer", "minimum": 0},
                    "c": _COMPLEX,
                    "w": _COMPLEX,
                },
                "additionalProperties": False,
                "allOf": [
                    {"if": {"properties": {"kind": {"const": "monomial"}}}, "then": {"required": ["n"]}},
                    {"if": {"properties": {"kind": {"const": "moebius"}}}, "then": {"required": ["c"]}},
                ],
            },
        },
        "series": {"type": "array", "items": _COMPLEX},
    },
    "additionalProperties": False,
}

POLYHARMONIC = {
    "type": "object",
    "required": ["p", "layers"],
    "properties": {
        "p": {"type": "integer", "minimum": 1},
        "layers": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "properties": {"h": ANALYTIC, "g": ANALYTIC},
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

POLYANALYTIC = {
    "type": "object",
    "required": ["p", "coeffs"],
    "properties": {
        "p": {"type": "integer", "minimum": 1},
        "coeffs": {"type": "array", "minItems": 1, "items": ANALYTIC},
    },
    "additionalProperties": False,
}

_VALIDATORS = {
    "analytic": Draft202012Validator(ANALYTIC),
    "polyharmonic": Draft202012Validator(POLYHARMONIC),
    "polyanalytic": Draft202012Validator(POLYANALYTIC),
}


def json_path(parts) -> str:
    out = "$"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def validate(data, kind="polyharmonic"):
    """Raise SchemaError at the first violating path, else return ``data``."""
    err = best_match(_VALIDATORS[kind].iter_errors(data))
    if err is not None:
        raise SchemaError(json_path(err.absolute_path), err.message)
    return data


def load_spec(data, polyanalytic=False):
    """Validated PolyharmonicSpec or PolyanalyticSpec from parsed JSON."""
    if polyanalytic:
        validate(data, "polyanalytic")
        return PolyanalyticSpec.from_json(data)
    validate(data, "polyharmonic")
    return PolyharmonicSpec.from_json(data)
