"""Lossless JSON documents for complexes and a lossy OFF mesh export."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from .complex import CellComplex
from .polytope import ConvexCell, triangulate

SCHEMA_VERSION = 1
_RATIONAL = re.compile(r"^-?\d+/\d+$")


class MalformedDocument(ValueError):
    pass


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if not isinstance(s, str) or not _RATIONAL.match(s):
        raise MalformedDocument(f"expected a rational string 'p/q', got {s!r}")
    num, den = s.split("/")
    if int(den) == 0:
        raise MalformedDocument(f"zero denominator in {s!r}")
    x = Fraction(int(num), int(den))
    if format_rational(x) != s:
        raise MalformedDocument(f"rational {s!r} is not in lowest terms")
    return x


def _enc_point(p) -> list[str]:
    return [format_rational(x) for x in p]


def _enc_cell(c: ConvexCell) -> list[list[str]]:
    return [_enc_point(v) for v in c.vertices]


def _dec_cell(verts, n: int) -> ConvexCell:
    if not isinstance(verts, list) or not verts:
        raise MalformedDocument("a cell needs a nonempty vertex list")
    pts = []
    for v in verts:
        if not isinstance(v, list) or len(v) != n:
            raise MalformedDocument(f"vertex {v!r} does not have {n} coordinates")
        pts.append(tuple(parse_rational(x) for x in v))
    cell = ConvexCell.hull(pts)
    if sorted(set(pts)) != list(cell.vertices):
        raise MalformedDocument(f"listed points are not exactly the vertices of their hull: {verts!r}")
    return cell


@dataclass
class ComplexDocument:
    schema_version: int
    ambient_dim: int
    cells: list = field(default_factory=list)       # {id, dim, vertices[, orbit_key]}
    incidence: list = field(default_factory=list)   # [cell id, facet id]
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"schema_version": self.schema_version, "ambient_dim": self.ambient_dim,
                "cells": self.cells, "incidence": self.incidence, "metadata": self.metadata}


def _incidence(cells: Sequence[ConvexCell], D: CellComplex, ids: dict) -> list[list[int]]:
    out = []
    for c in cells:
        if c.dim == 0:
            continue
        for f in D.within(c):
            if f.dim == c.dim - 1 and f in ids:
                out.append([ids[c], ids[f]])
    return sorted(out)


def document_from_complex(D: CellComplex, metadata: dict | None = None) -> ComplexDocument:
    cells = list(D.cells)
    ids = {c: i for i, c in enumerate(cells)}
    meta = dict(metadata or {})
    if D.space is not None:
        meta["space"] = [_enc_cell(p) for p in D.space_pieces()]
    return ComplexDocument(
        SCHEMA_VERSION, D.ambient_dim,
        [{"id": ids[c], "dim": c.dim, "vertices": _enc_cell(c)} for c in cells],
        _incidence(cells, D, ids), meta)


def document_from_quotient(Dq, metadata: dict | None = None) -> ComplexDocument:
    """Class representatives with their orbit keys; incidence between classes."""
    K = Dq.complex
    keys = sorted(Dq.classes, key=lambda k: (len(k), k))
    ids = {k: i for i, k in enumerate(keys)}
    cells = []
    for k in keys:
        rep = Dq.classes[k].representative
        cells.append({"id": ids[k], "dim": rep.dim, "vertices": _enc_cell(rep),
                      "orbit_key": [_enc_point(v) for v in k]})
    inc = set()
    for k in keys:
        rep = Dq.classes[k].representative
        for f in K.within(rep):
            if f.dim == rep.dim - 1:
                inc.add((ids[k], ids[Dq.class_of[f]]))
    meta = dict(metadata or {})
    meta["quotient"] = True
    meta["lattice"] = [format_rational(a) for a in Dq.group.lattice]
    return ComplexDocument(SCHEMA_VERSION, K.ambient_dim, cells, sorted(list(p) for p in inc), meta)


def complex_from_document(doc: ComplexDocument) -> CellComplex:
    n = doc.ambient_dim
    cells = []
    seen = set()
    for entry in doc.cells:
        if entry["id"] in seen:
            raise MalformedDocument(f"duplicate cell id {entry['id']}")
        seen.add(entry["id"])
        c = _dec_cell(entry["vertices"], n)
        if c.dim != entry["dim"]:
            raise MalformedDocument(f"cell {entry['id']} declares dim {entry['dim']} but has dim {c.dim}")
        cells.append(c)
    space = doc.metadata.get("space")
    if space is not None:
        pieces = tuple(_dec_cell(p, n) for p in space)
        space = pieces[0] if len(pieces) == 1 else pieces
    return CellComplex.of(n, cells, space=space)


def to_json(doc: ComplexDocument) -> str:
    return json.dumps(doc.to_dict(), indent=1, sort_keys=True) + "\n"


def from_json(text: str) -> ComplexDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedDocument(f"not JSON: {e}") from None
    if not isinstance(raw, dict):
        raise MalformedDocument("top level must be an object")
    missing = {"schema_version", "ambient_dim", "cells", "incidence", "metadata"} - raw.keys()
    if missing:
        raise MalformedDocument(f"missing fields: {sorted(missing)}")
    if raw["schema_version"] != SCHEMA_VERSION:
        raise MalformedDocument(f"unsupported schema_version {raw['schema_version']!r}")
    if not isinstance(raw["ambient_dim"], int) or raw["ambient_dim"] < 0:
        raise MalformedDocument("ambient_dim must be a nonnegative integer")
    cells = raw["cells"]
    if not isinstance(cells, list) or any(not isinstance(c, dict) or {"id", "dim", "vertices"} - c.keys()
                                          for c in cells):
        raise MalformedDocument("cells must be objects with id, dim and vertices")
    for c in cells:
        for v in c["vertices"]:
            if not isinstance(v, list):
                raise MalformedDocument(f"vertex {v!r} is not a coordinate list")
            for x in v:
                parse_rational(x)
    inc = raw["incidence"]
    if not isinstance(inc, list) or any(not isinstance(p, list) or len(p) != 2 for p in inc):
        raise MalformedDocument("incidence must be a list of [cell id, face id] pairs")
    if not isinstance(raw["metadata"], dict):
        raise MalformedDocument("metadata must be an object")
    return ComplexDocument(raw["schema_version"], raw["ambient_dim"], cells, inc, raw["metadata"])


def _decimal(x: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = digits + 40
        q = Decimal(x.numerator) / Decimal(x.denominator)
        s = q.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN)
    if s == 0:
        s = abs(s)
    return f"{s:f}"


def to_off(D: CellComplex, precision: int = 12) -> str:
    """OFF mesh: every vertex of the complex, top-dimensional cells as simplices.

    Coordinates are zero padded to three columns; non-simplex top cells are
    triangulated.  The edge count in the header is the number of 1-cells.
    """
    if precision < 0:
        raise ValueError("precision must be nonnegative")
    points = sorted({v for c in D.cells for v in c.vertices})
    index = {p: i for i, p in enumerate(points)}
    top = D.dim
    faces = []
    if top >= 1:
        for c in D.of_dim(top):
            for simplex in triangulate(c):
                faces.append([index[v] for v in simplex])
    edges = len(D.of_dim(1))
    lines = ["OFF", f"{len(points)} {len(faces)} {edges}"]
    for p in points:
        coords = list(p) + [Fraction(0)] * max(0, 3 - len(p))
        lines.append(" ".join(_decimal(x, precision) for x in coords))
    for f in faces:
        lines.append(" ".join(str(x) for x in [len(f)] + f))
    return "\n".join(lines) + "\n"
