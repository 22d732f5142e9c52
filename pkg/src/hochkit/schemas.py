"""JSON Schemas (draft 2020-12) for every JSON document the package emits."""

RATIONAL_STRING = {"type": "string", "pattern": r"^-?\d+(/[1-9]\d*)?$"}

POLYNOMIAL = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {
            "exps": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            "num": {"type": "string", "pattern": r"^-?\d+$"},
            "den": {"type": "string", "pattern": r"^[1-9]\d*$"},
        },
        "required": ["exps", "num", "den"],
        "additionalProperties": False,
    },
}

OPERATOR = {
    "type": "object",
    "properties": {
        "vars": {"type": "integer", "minimum": 0},
        "arity": {"type": "integer", "minimum": 1},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "coeff": POLYNOMIAL,
                    "slots": {
                        "type": "array",
                        "items": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                    },
                },
                "required": ["coeff", "slots"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["vars", "arity", "terms"],
    "additionalProperties": False,
}

MULTIVECTOR = {
    "type": "object",
    "properties": {
        "vars": {"type": "integer", "minimum": 0},
        "degree": {"type": "integer", "minimum": 0},
        "components": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "indices": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                    "coeff": POLYNOMIAL,
                },
                "required": ["indices", "coeff"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["vars", "degree", "components"],
    "additionalProperties": False,
}

DECOMPOSITION = {
    "type": "object",
    "properties": {
        "order": {"type": "integer", "minimum": 0},
        "words": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "scalar": RATIONAL_STRING,
                    "factors": {"type": "array", "items": {"type": "array", "items": POLYNOMIAL}},
                },
                "required": ["scalar", "factors"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["order", "words"],
    "additionalProperties": False,
}

_NATS = {"type": "array", "items": {"type": "integer", "minimum": 0}}

COHOMOLOGY_REPORT = {
    "type": "object",
    "properties": {
        "window": {
            "type": "object",
            "properties": {k: {"type": "integer", "minimum": 0} for k in ("m", "n", "r", "d", "slack")},
            "required": ["m", "n", "r", "d", "slack"],
            "additionalProperties": False,
        },
        "dims": _NATS,
        "basis_sizes": _NATS,
        "hkr_prediction": _NATS,
        "match": {"type": "boolean"},
    },
    "required": ["window", "dims", "basis_sizes", "hkr_prediction", "match"],
    "additionalProperties": False,
}

SPLIT = {
    "type": "object",
    "properties": {
        "E": {"oneOf": [OPERATOR, {"type": "object", "properties": {"zero_cochain": POLYNOMIAL},
                                   "required": ["zero_cochain"], "additionalProperties": False}]},
        "eta": MULTIVECTOR,
    },
    "required": ["E", "eta"],
    "additionalProperties": False,
}

SELFTEST = {
    "type": "object",
    "properties": {
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "name": {"type": "string"},
                    "passed": {"type": "integer", "minimum": 0},
                    "failed": {"type": "integer", "minimum": 0},
                },
                "required": ["name", "passed", "failed"],
            },
        },
        "passed": {"type": "integer", "minimum": 0},
        "failed": {"type": "integer", "minimum": 0},
    },
    "required": ["checks", "passed", "failed"],
}

ERROR = {
    "type": "object",
    "properties": {
        "error": {
            "type": "object",
            "properties": {
                "kind": {"type": "string"},
                "message": {"type": "string"},
                "line": {"type": "integer"},
                "col": {"type": "integer"},
                "expected": {"type": "array", "items": {"type": "string"}},
            },
            "required": ["kind", "message"],
        }
    },
    "required": ["error"],
}
