"""JSON and TSV encodings for measures and reports.

Measure files look like::

    {"group": "real", "atoms": [{"point": "1/4", "coeff": 2}, {"point": 0, "coeff": -2}]}

Rational scalars are written as ``"p/q"`` strings (integers as JSON ints);
JSON integers and ``"p/q"`` strings are read back as exact rationals, JSON
floats as floats. Points are a scalar (``real``), a list (``vec:n``), a pair
``[a, b]`` (``affine``) or a word string such as ``"ab^-1"`` (``free:k``).
"""
from __future__ import annotations

import json

from .errors import DataError, MolconvError
from .groups import Group, GroupElement, element, format_word, parse_group
from .measures import MolecularMeasure
from .scalars import format_scalar, from_json_scalar, to_json_scalar


class MeasureFormatError(DataError):
    """A measure document is not valid JSON or does not follow the schema."""


def point_to_json(g: GroupElement):
    kind = g.group.kind
    if kind == "real":
        return to_json_scalar(g.payload)
    if kind == "free":
        return format_word(g.payload)
    return [to_json_scalar(v) for v in g.payload]


def point_from_json(group: Group, value, where: str = "point") -> GroupElement:
    try:
        if group.kind == "free":
            if not isinstance(value, str):
                raise TypeError("free-group points are word strings")
            return element(group, value)
        if group.kind == "real":
            return element(group, from_json_scalar(value))
        if not isinstance(value, list):
            raise TypeError(f"{group.tag} points are JSON lists")
        return element(group, [from_json_scalar(v) for v in value])
    except (TypeError, ValueError, MolconvError) as exc:
        raise MeasureFormatError(f"{where}: {exc}") from None


def measure_to_dict(m: MolecularMeasure) -> dict:
    return {
        "group": m.group.tag,
        "atoms": [{"point": point_to_json(p), "coeff": to_json_scalar(c)} for p, c in m.atoms],
    }


def measure_to_json(m: MolecularMeasure) -> str:
    return json.dumps(measure_to_dict(m))


def measure_from_dict(doc) -> MolecularMeasure:
    if not isinstance(doc, dict):
        raise MeasureFormatError("top level: expected a JSON object")
    if "group" not in doc:
        raise MeasureFormatError("field 'group' is missing")
    try:
        group = parse_group(str(doc["group"]))
    except MolconvError as exc:
        raise MeasureFormatError(f"field 'group': {exc}") from None
    atoms = doc.get("atoms")
    if not isinstance(atoms, list):
        raise MeasureFormatError("field 'atoms': expected a list")
    parsed = []
    for k, atom in enumerate(atoms):
        where = f"atoms[{k}]"
        if not isinstance(atom, dict) or "point" not in atom or "coeff" not in atom:
            raise MeasureFormatError(f"{where}: expected an object with 'point' and 'coeff'")
        point = point_from_json(group, atom["point"], f"{where}.point")
        try:
            coeff = from_json_scalar(atom["coeff"])
        except (TypeError, ValueError) as exc:
            raise MeasureFormatError(f"{where}.coeff: {exc}") from None
        parsed.append((point, coeff))
    return MolecularMeasure.from_atoms(group, parsed)


def measure_from_json(text: str) -> MolecularMeasure:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MeasureFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return measure_from_dict(doc)


def load_measure(path) -> MolecularMeasure:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return measure_from_json(text)
    except MeasureFormatError as exc:
        raise MeasureFormatError(f"{path}: {exc}") from None


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def record_to_tsv(record: dict) -> str:
    """One header line and one data line; list cells are comma-joined."""
    keys = list(record)
    cells = []
    for k in keys:
        v = record[k]
        if isinstance(v, list):
            cells.append(",".join(format_scalar(x) for x in v))
        elif v is None:
            cells.append("")
        else:
            cells.append(format_scalar(v))
    return "\t".join(keys) + "\n" + "\t".join(cells) + "\n"


def measure_to_tsv(m: MolecularMeasure) -> str:
    lines = [f"# group={m.group.tag}", "point\tcoeff"]
    for p, c in m.atoms:
        pj = point_to_json(p)
        text = ",".join(format_scalar(v) for v in pj) if isinstance(pj, list) else format_scalar(pj)
        lines.append(f"{text}\t{format_scalar(to_json_scalar(c))}")
    return "\n".join(lines) + "\n"
