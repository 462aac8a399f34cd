"""JSON documents for series, orders, echelons and division results.

Every document read from disk is validated against a schema first, so a
malformed file is reported with the path of the offending entry.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Sequence, Union

import jsonschema

from .division import DivisionResult
from .echelon import EchelonPresentation, ScopedGenerator
from .orders import MonomialOrder
from .series import DimensionError, Series, series_from_json, series_to_json

RATIONAL = {"type": "string", "pattern": r"^-?[0-9]+(/[0-9]+)?$"}
EXPONENT = {"type": "array", "items": {"type": "integer", "minimum": 0}}

SERIES_SCHEMA = {
    "type": "object",
    "required": ["vars", "prec", "terms"],
    "additionalProperties": False,
    "properties": {
        "vars": {"type": "array", "items": {"type": "string", "minLength": 1}, "uniqueItems": True},
        "prec": {"type": "integer", "minimum": 0},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["e", "c"],
                "additionalProperties": False,
                "properties": {"e": EXPONENT, "c": RATIONAL},
            },
        },
    },
}

ORDER_SCHEMA = {
    "type": "object",
    "required": ["kind"],
    "additionalProperties": False,
    "properties": {
        "kind": {"enum": ["lex", "grlex"]},
        "precedence": {"type": "array", "items": {"type": "string"}, "uniqueItems": True},
    },
}

ECHELON_SCHEMA = {
    "type": "object",
    "required": ["vars", "order", "generators"],
    "additionalProperties": False,
    "properties": {
        "vars": {"type": "array", "items": {"type": "string", "minLength": 1}, "uniqueItems": True},
        "order": ORDER_SCHEMA,
        "prec": {"type": "integer", "minimum": 0},
        "generators": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["series", "scope"],
                "additionalProperties": False,
                "properties": {
                    "series": {
                        "oneOf": [
                            SERIES_SCHEMA,
                            {
                                "type": "object",
                                "required": ["path"],
                                "additionalProperties": False,
                                "properties": {"path": {"type": "string"}},
                            },
                        ]
                    },
                    "scope": {"type": "integer", "minimum": 0},
                },
            },
        },
    },
}


class SchemaError(ValueError):
    """A document does not match its schema; the message names the path."""


def validate(doc, schema, what: str = "document") -> None:
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{what}: invalid at {where}: {exc.message}") from None


def read_json(path: Union[str, Path]):
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: not valid JSON ({exc})") from None


def dumps(doc) -> str:
    """Deterministic JSON text (key order as built, two-space indent)."""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def write_json(doc, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


# --- series ---------------------------------------------------------------


def series_from_doc(doc, what: str = "series"):
    validate(doc, SERIES_SCHEMA, what)
    n = len(doc["vars"])
    for k, t in enumerate(doc["terms"]):
        if len(t["e"]) != n:
            raise SchemaError(f"{what}: invalid at terms/{k}/e: expected {n} exponents")
    try:
        return series_from_json(doc)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{what}: {exc}") from None


def load_series(path: Union[str, Path]):
    return series_from_doc(read_json(path), str(path))


def series_doc(f: Series, names: Sequence[str]) -> dict:
    return series_to_json(f, names)


# --- echelons -------------------------------------------------------------


def echelon_from_doc(doc, base: Optional[Path] = None, what: str = "echelon") -> EchelonPresentation:
    validate(doc, ECHELON_SCHEMA, what)
    names = list(doc["vars"])
    n = len(names)
    try:
        order = MonomialOrder.from_json(doc["order"], names)
    except ValueError as exc:
        raise SchemaError(f"{what}: invalid at order: {exc}") from None
    cap = doc.get("prec")
    gens = []
    for k, item in enumerate(doc["generators"]):
        sdoc = item["series"]
        where = f"{what}: generators/{k}"
        if "path" in sdoc:
            p = Path(sdoc["path"])
            if base is not None and not p.is_absolute():
                p = base / p
            s, snames = load_series(p)
        else:
            s, snames = series_from_doc(sdoc, where)
        if list(snames) != names:
            raise SchemaError(f"{where}: variables {snames} differ from {names}")
        if cap is not None and s.prec > cap:
            s = s.truncate(cap)
        if item["scope"] > n:
            raise SchemaError(f"{where}/scope: scope {item['scope']} exceeds {n} variables")
        if s.is_zero():
            raise SchemaError(f"{where}: generator is zero")
        gens.append(ScopedGenerator(s, item["scope"]))
    return EchelonPresentation(n, tuple(gens), order, tuple(names))


def load_echelon(path: Union[str, Path]) -> EchelonPresentation:
    path = Path(path)
    return echelon_from_doc(read_json(path), path.parent, str(path))


def echelon_doc(p: EchelonPresentation) -> dict:
    names = list(p.names)
    doc = {"vars": names, "order": p.order.to_json(names)}
    if p.generators:
        doc["prec"] = p.prec
    doc["generators"] = [
        {"series": series_to_json(g.series, names), "scope": g.scope} for g in p.generators
    ]
    return doc


# --- division results -----------------------------------------------------


def division_doc(res: DivisionResult, names: Sequence[str]) -> dict:
    return {
        "quotients": [series_to_json(a, names) for a in res.quotients],
        "remainder": series_to_json(res.remainder, names),
        "min_witness": list(res.min_witness) if res.min_witness is not None else None,
        "remainder_scope": res.remainder_scope,
        "prec": res.prec,
    }


def division_from_doc(doc) -> DivisionResult:
    quots = tuple(series_from_doc(q, "quotient")[0] for q in doc["quotients"])
    rem, _ = series_from_doc(doc["remainder"], "remainder")
    w = doc.get("min_witness")
    return DivisionResult(
        quotients=quots,
        remainder=rem,
        min_witness=tuple(w) if w is not None else None,
        remainder_scope=doc.get("remainder_scope"),
        prec=doc["prec"],
    )


def check_compatible(f: Series, names, p: EchelonPresentation) -> None:
    if list(names) != list(p.names):
        raise DimensionError(f"input variables {list(names)} differ from echelon variables {list(p.names)}")
