"""JSON documents for instances, and text forms for ambients.

Instance document::

    {"ambient": "Z/5",
     "A": [0, 1, 2], "B": ["0", "1", "2"],
     "constraint": {"type": "difference", "payload": [0]}}

Constraint types and payloads: ``none`` (no payload), ``distinct`` (no
payload), ``poly`` (polynomial text in x, y), ``linear`` (list of
``[m, n, d]``), ``difference`` (list of elements).
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InvalidInput
from .fields import FieldSpec, format_field_spec, parse_field_spec
from .groups import format_group_spec, parse_group_spec
from .poly import format_poly, parse_poly
from .sumsets import (
    Ambient,
    Constraint,
    DifferenceConstraint,
    Distinct,
    Instance,
    LinearConstraint,
    NoConstraint,
    PolyConstraint,
    element_text,
    is_field,
)


def parse_ambient(text: str) -> Ambient:
    s = text.strip()
    if s.startswith("GF") or s in ("Q", "QQ"):
        return parse_field_spec(s)
    return parse_group_spec(s)


def format_ambient(ambient: Ambient) -> str:
    return format_field_spec(ambient) if isinstance(ambient, FieldSpec) else format_group_spec(ambient)


def constraint_to_dict(constraint: Constraint, ambient: Ambient) -> dict:
    kind = constraint.kind
    if isinstance(constraint, PolyConstraint):
        return {"type": kind, "payload": format_poly(constraint.poly)}
    if isinstance(constraint, LinearConstraint):
        return {"type": kind, "payload": [[m, n, element_text(ambient, d)] for m, n, d in constraint.terms]}
    if isinstance(constraint, DifferenceConstraint):
        return {"type": kind, "payload": [element_text(ambient, s) for s in constraint.S]}
    return {"type": kind}


def constraint_from_dict(doc: dict | None, ambient: Ambient) -> Constraint:
    if doc is None:
        return NoConstraint()
    if not isinstance(doc, dict) or "type" not in doc:
        raise InvalidInput(f"constraint must be an object with a 'type': {doc!r}")
    kind, payload = doc["type"], doc.get("payload")
    if kind == "none":
        return NoConstraint()
    if kind == "distinct":
        return Distinct()
    if kind == "poly":
        if not is_field(ambient):
            raise InvalidInput("a polynomial constraint needs a field ambient")
        if not isinstance(payload, str):
            raise InvalidInput("poly payload must be polynomial text")
        return PolyConstraint(parse_poly(payload, ambient, 2))
    if kind == "linear":
        try:
            terms = tuple((int(m), int(n), ambient.coerce(d)) for m, n, d in payload or [])
        except (TypeError, ValueError) as exc:
            raise InvalidInput(f"bad linear payload {payload!r}") from exc
        return LinearConstraint(terms)
    if kind == "difference":
        return DifferenceConstraint(tuple(ambient.coerce(s) for s in payload or []))
    raise InvalidInput(f"unknown constraint type {kind!r}")


def instance_to_dict(instance: Instance) -> dict:
    amb = instance.ambient
    return {
        "ambient": format_ambient(amb),
        "A": [element_text(amb, a) for a in instance.A],
        "B": [element_text(amb, b) for b in instance.B],
        "constraint": constraint_to_dict(instance.constraint, amb),
    }


def instance_from_dict(doc: dict) -> Instance:
    if not isinstance(doc, dict):
        raise InvalidInput("instance document must be a JSON object")
    missing = {"ambient", "A", "B"} - set(doc)
    if missing:
        raise InvalidInput(f"instance is missing {sorted(missing)}")
    amb = parse_ambient(str(doc["ambient"]))
    constraint = constraint_from_dict(doc.get("constraint"), amb)
    return Instance(amb, tuple(amb.coerce(a) for a in doc["A"]), tuple(amb.coerce(b) for b in doc["B"]), constraint)


def load_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON ({exc})") from exc


def load_instance(path: str | Path) -> Instance:
    return instance_from_dict(load_json(path))

