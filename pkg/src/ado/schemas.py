"""JSON schemas for serialized numbers, polynomials, operators and certificates."""

from __future__ import annotations

import jsonschema

RATIONAL_STR = {"type": "string", "pattern": r"^-?\d+/\d+$"}

CYCNUM = {
    "type": "object",
    "required": ["conductor", "coeffs"],
    "properties": {
        "conductor": {"type": "integer", "minimum": 1},
        "coeffs": {"type": "array", "items": RATIONAL_STR},
    },
    "additionalProperties": False,
}

# "num/den" with num and den q-polynomial strings
QFRAC = {"type": "string", "minLength": 3, "pattern": r"/"}

LAURENT_POLY = {
    "type": "object",
    "required": ["vars", "terms"],
    "properties": {
        "vars": {"type": "array", "items": {"type": "string"}},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["exp2", "coeff"],
                "properties": {
                    "exp2": {"type": "array", "items": {"type": "integer"}},
                    "coeff": {"oneOf": [CYCNUM, QFRAC]},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

OPERATOR = {
    "type": "object",
    "required": ["pairs", "terms"],
    "properties": {
        "pairs": {"type": "integer", "minimum": 0},
        "hatted": {"type": "integer", "minimum": 0},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["xexp", "yexp", "coeff"],
                "properties": {
                    "xexp": {"type": "array", "items": {"type": "integer"}},
                    "yexp": {"type": "array", "items": {"type": "integer"}},
                    "coeff": QFRAC,
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

CERTIFICATE = {
    "type": "object",
    "required": ["identity", "range", "status", "sigma", "prefactor", "residual"],
    "properties": {
        "identity": {"type": "string"},
        "range": {"type": "object"},
        "status": {"enum": ["pass", "fail"]},
        "sigma": {"enum": [1, -1, None]},
        "prefactor": {"oneOf": [{"type": "null"}, {"type": "array", "items": {"type": "string"}}]},
        "residual": {},
        "details": {"type": "object"},
    },
}

ADO_RESULT = {
    "type": "object",
    "required": ["knot", "r", "denominator_status", "prefactor", "hat"],
    "properties": {
        "knot": {"type": "string"},
        "r": {"type": "integer", "minimum": 2},
        "denominator_status": {"enum": ["fully-cancelled", "residual"]},
        "prefactor": {"type": "object"},
        "hat": {"oneOf": [{"type": "null"}, LAURENT_POLY]},
    },
}

SCHEMAS = {
    "cycnum": CYCNUM,
    "qfrac": QFRAC,
    "polynomial": LAURENT_POLY,
    "operator": OPERATOR,
    "certificate": CERTIFICATE,
    "ado": ADO_RESULT,
}


def validate(obj, kind: str) -> None:
    """Raise jsonschema.ValidationError when obj does not match the schema."""
    jsonschema.validate(obj, SCHEMAS[kind])
