"""Algebra file I/O.

A bialgebra travels as a JSON document with 1-based indices and exact
rational coefficients written as strings, so fixtures stay human-diffable
and nothing ever passes through a float:

    {"name": ..., "shift_n": n,
     "basis":      [{"name": ..., "degree": d, "weight": [..]?}, ...],
     "brackets":   [[i, j, k, "p/q"], ...],
     "cobrackets": [[k, i, j, "p/q"], ...],
     "form":       [[i, j, "p/q"], ...],       # optional
     "rmatrix":    [[i, j, "p/q"], ...]}       # optional

Entry lists are written in canonical sorted order and parsed back in that
order, so emit-parse-emit is byte stable and structural equality of the
parsed objects coincides with equality of the documents.  The fingerprint
is the sha256 of the canonical compact encoding.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any, Optional

from .algebra import (BasisElement, Bialgebra, BilinearForm, GradedLie,
                      RMatrix)
from .linalg import Scalar, format_scalar, parse_scalar

FORMAT_VERSION = 1


class AlgebraFileError(Exception):
    """The document is not a well-formed algebra file."""


def _sorted_quads(entries) -> list[tuple[int, int, int, Scalar]]:
    acc: dict[tuple[int, int, int], Scalar] = {}
    for a, b, c, coeff in entries:
        key = (a, b, c)
        acc[key] = acc.get(key, 0) + coeff
    return [(a, b, c, coeff)
            for (a, b, c), coeff in sorted(acc.items()) if coeff]


def _sorted_triples(entries) -> list[tuple[int, int, Scalar]]:
    acc: dict[tuple[int, int], Scalar] = {}
    for a, b, coeff in entries:
        acc[(a, b)] = acc.get((a, b), 0) + coeff
    return [(a, b, coeff) for (a, b), coeff in sorted(acc.items()) if coeff]


def bialgebra_to_dict(b: Bialgebra) -> dict[str, Any]:
    """Canonical document for a bialgebra; merges and sorts all entries."""
    g = b.algebra
    basis = []
    for e in g.basis:
        item: dict[str, Any] = {"name": e.name, "degree": e.degree}
        if e.weight is not None:
            item["weight"] = list(e.weight)
        basis.append(item)
    doc: dict[str, Any] = {
        "format": FORMAT_VERSION,
        "name": g.label,
        "shift_n": b.shift,
        "basis": basis,
        "brackets": [[i + 1, j + 1, k + 1, format_scalar(c)]
                     for i, j, k, c in _sorted_quads(g.bracket)],
        "cobrackets": [[k + 1, i + 1, j + 1, format_scalar(c)]
                       for k, i, j, c in _sorted_quads(b.cobracket)],
    }
    if b.form is not None:
        doc["form"] = [[i + 1, j + 1, format_scalar(c)]
                       for i, j, c in _sorted_triples(b.form.entries)]
    if b.rmatrix is not None:
        doc["rmatrix"] = [[i + 1, j + 1, format_scalar(c)]
                          for i, j, c in _sorted_triples(b.rmatrix.entries)]
    return doc


def _want(doc: dict[str, Any], key: str, kind) -> Any:
    if key not in doc:
        raise AlgebraFileError(f"missing field '{key}'")
    value = doc[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise AlgebraFileError(f"field '{key}' has the wrong type")
    return value


def _scalar(text: Any, where: str) -> Scalar:
    if not isinstance(text, str):
        raise AlgebraFileError(f"{where}: coefficient must be a string")
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise AlgebraFileError(f"{where}: bad rational {text!r}: {exc}")


def _index(value: Any, dim: int, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise AlgebraFileError(f"{where}: index must be an integer")
    if not 1 <= value <= dim:
        raise AlgebraFileError(f"{where}: index {value} out of range 1..{dim}")
    return value - 1


def _parse_quads(raw: Any, dim: int, where: str
                 ) -> tuple[tuple[int, int, int, Scalar], ...]:
    if not isinstance(raw, list):
        raise AlgebraFileError(f"field '{where}' must be a list")
    seen: set[tuple[int, int, int]] = set()
    out = []
    for row in raw:
        if not isinstance(row, list) or len(row) != 4:
            raise AlgebraFileError(f"{where}: entries are [i, j, k, coeff]")
        key = tuple(_index(x, dim, where) for x in row[:3])
        if key in seen:
            raise AlgebraFileError(f"{where}: duplicate index triple "
                                   f"{tuple(x + 1 for x in key)}")
        seen.add(key)
        c = _scalar(row[3], where)
        if c:
            out.append((*key, c))
    return tuple(out)


def _parse_triples(raw: Any, dim: int, where: str
                   ) -> tuple[tuple[int, int, Scalar], ...]:
    if not isinstance(raw, list):
        raise AlgebraFileError(f"field '{where}' must be a list")
    seen: set[tuple[int, int]] = set()
    out = []
    for row in raw:
        if not isinstance(row, list) or len(row) != 3:
            raise AlgebraFileError(f"{where}: entries are [i, j, coeff]")
        key = (_index(row[0], dim, where), _index(row[1], dim, where))
        if key in seen:
            raise AlgebraFileError(f"{where}: duplicate index pair "
                                   f"{tuple(x + 1 for x in key)}")
        seen.add(key)
        c = _scalar(row[2], where)
        if c:
            out.append((*key, c))
    return tuple(out)


def bialgebra_from_dict(doc: Any) -> Bialgebra:
    """Parse a document.  Structural checks only: indices in range, exact
    rationals, no duplicate triples.  Mathematical identities are the
    validators' business, so broken fixtures still parse."""
    if not isinstance(doc, dict):
        raise AlgebraFileError("top level must be an object")
    if "format" in doc and doc["format"] != FORMAT_VERSION:
        raise AlgebraFileError(f"unsupported format {doc['format']!r}")
    name = _want(doc, "name", str)
    shift = _want(doc, "shift_n", int)
    raw_basis = _want(doc, "basis", list)
    basis = []
    names: set[str] = set()
    for item in raw_basis:
        if not isinstance(item, dict):
            raise AlgebraFileError("basis entries are objects")
        ename = _want(item, "name", str)
        degree = _want(item, "degree", int)
        if ename in names:
            raise AlgebraFileError(f"duplicate basis name {ename!r}")
        names.add(ename)
        weight: Optional[tuple[int, ...]] = None
        if "weight" in item:
            raw_w = item["weight"]
            if not isinstance(raw_w, list) or any(
                    not isinstance(x, int) or isinstance(x, bool)
                    for x in raw_w):
                raise AlgebraFileError(
                    f"weight of {ename!r} must be an integer array")
            weight = tuple(raw_w)
        basis.append(BasisElement(ename, degree, weight))
    dim = len(basis)

    bracket = _parse_quads(_want(doc, "brackets", list), dim, "brackets")
    cobracket = _parse_quads(_want(doc, "cobrackets", list), dim,
                             "cobrackets")
    form = None
    if doc.get("form") is not None:
        form = BilinearForm(dim, _parse_triples(doc["form"], dim, "form"))
    rmatrix = None
    if doc.get("rmatrix") is not None:
        rmatrix = RMatrix(_parse_triples(doc["rmatrix"], dim, "rmatrix"))

    algebra = GradedLie(name, tuple(basis), bracket)
    return Bialgebra(algebra, shift, cobracket, form=form, rmatrix=rmatrix)


def dumps(b: Bialgebra) -> str:
    """Human-diffable canonical JSON text, newline terminated."""
    return json.dumps(bialgebra_to_dict(b), indent=2) + "\n"


def loads(text: str) -> Bialgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraFileError(f"not valid JSON: {exc}")
    return bialgebra_from_dict(doc)


def save(b: Bialgebra, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(b))


def load(path) -> Bialgebra:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise AlgebraFileError(f"cannot read {path}: {exc}")


def canonical_json(doc: Any) -> str:
    """Compact key-sorted encoding; the hashing normal form."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def fingerprint(b: Bialgebra) -> str:
    """sha256 of the canonical serialization; cache and report key."""
    text = canonical_json(bialgebra_to_dict(b))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
