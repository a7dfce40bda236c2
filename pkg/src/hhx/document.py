"""The JSON document schema: named objects, sparse tables, string scalars.

A workspace document is a single JSON object with a "field" header and named
tables of algebras, modules, coalgebras, comodules, measurings, comodule
measurings, simplicial sets (built-in references or explicit face/degeneracy
tables), simplicial maps, and optional named computation requests.  All
scalars are strings like "3/2" or "5"; structure constants are sparse index
tuples with a trailing coefficient string.
"""

from __future__ import annotations

import json
import re

from .algebras import (
    FiniteAlgebra,
    FiniteCoalgebra,
    FiniteComodule,
    FiniteModule,
)
from .errors import ParseError, UnknownBasisName, UnresolvedReference
from .fields import field_from_name
from .measurings import ComoduleMeasuring, Measuring
from .simplicial import (
    PointedMap,
    PointedSet,
    PointedSimplicialSet,
    SimplicialMap,
    collapse_map,
    from_name,
)


class Workspace:
    """A parsed document: the field plus named object tables."""

    def __init__(self, field):
        self.field = field
        self.algebras = {}
        self.modules = {}
        self.coalgebras = {}
        self.comodules = {}
        self.measurings = {}
        self.comodule_measurings = {}
        self.simplicial_sets = {}
        self.simplicial_maps = {}
        self.requests = []

    def __eq__(self, other):
        if not isinstance(other, Workspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.algebras == other.algebras
            and self.modules == other.modules
            and self.coalgebras == other.coalgebras
            and self.comodules == other.comodules
            and self.measurings == other.measurings
            and self.comodule_measurings == other.comodule_measurings
            and self.simplicial_sets == other.simplicial_sets
            and {k: (v.source, v.target, v.levels) for k, v in self.simplicial_maps.items()}
            == {k: (v.source, v.target, v.levels) for k, v in other.simplicial_maps.items()}
            and self.requests == other.requests
        )


def load_document(path, field_override=None) -> Workspace:
    """Read and parse a document file."""
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    return parse_document(data, field_override=field_override)


def _require(mapping, key, where, kind=None):
    if key not in mapping:
        raise ParseError(f"{where}: missing required key {key!r}")
    value = mapping[key]
    if kind is not None and not isinstance(value, kind):
        raise ParseError(f"{where}: key {key!r} has the wrong type")
    return value


def _resolve(table, name, kind, where):
    if name not in table:
        raise UnresolvedReference(f"{where}: unknown {kind} {name!r}")
    return table[name]


def parse_document(data, field_override=None) -> Workspace:
    """Build a Workspace from a parsed JSON dict.

    field_override, when given, re-interprets every scalar in another field
    (used to re-run a rational document over a prime field).
    """
    if not isinstance(data, dict):
        raise ParseError("document root must be a JSON object")
    field_name = _require(data, "field", "document", str)
    try:
        field = field_from_name(field_override or field_name)
    except ValueError as exc:
        raise ParseError(f"document: {exc}") from None
    ws = Workspace(field)

    def entries(section, kind=dict):
        block = data.get(section, {})
        if not isinstance(block, dict):
            raise ParseError(f"{section}: must be an object of named entries")
        for name in sorted(block):
            spec = block[name]
            if not isinstance(spec, kind):
                raise ParseError(f"{section}.{name}: wrong entry type")
            yield name, spec

    for name, spec in entries("algebras"):
        where = f"algebras.{name}"
        try:
            ws.algebras[name] = FiniteAlgebra(
                field,
                _require(spec, "basis", where, list),
                _require(spec, "mul", where, list),
                _require(spec, "unit", where, list),
            )
        except (ValueError, TypeError) as exc:
            raise ParseError(f"{where}: {exc}") from None

    for name, spec in entries("modules"):
        where = f"modules.{name}"
        algebra = _resolve(
            ws.algebras, _require(spec, "algebra", where, str), "algebra", where
        )
        try:
            ws.modules[name] = FiniteModule(
                algebra,
                _require(spec, "basis", where, list),
                _require(spec, "action", where, list),
            )
        except (ValueError, TypeError) as exc:
            raise ParseError(f"{where}: {exc}") from None

    for name, spec in entries("coalgebras"):
        where = f"coalgebras.{name}"
        try:
            ws.coalgebras[name] = FiniteCoalgebra(
                field,
                _require(spec, "basis", where, list),
                _require(spec, "comul", where, list),
                _require(spec, "counit", where, list),
            )
        except (ValueError, TypeError) as exc:
            raise ParseError(f"{where}: {exc}") from None

    for name, spec in entries("comodules"):
        where = f"comodules.{name}"
        coalgebra = _resolve(
            ws.coalgebras, _require(spec, "coalgebra", where, str), "coalgebra", where
        )
        try:
            ws.comodules[name] = FiniteComodule(
                coalgebra,
                _require(spec, "basis", where, list),
                _require(spec, "coaction", where, list),
            )
        except (ValueError, TypeError) as exc:
            raise ParseError(f"{where}: {exc}") from None

    for name, spec in entries("measurings"):
        where = f"measurings.{name}"
        coalgebra = _resolve(
            ws.coalgebras, _require(spec, "coalgebra", where, str), "coalgebra", where
        )
        source = _resolve(
            ws.algebras, _require(spec, "source", where, str), "algebra", where
        )
        target = _resolve(
            ws.algebras, _require(spec, "target", where, str), "algebra", where
        )
        try:
            ws.measurings[name] = Measuring.from_table(
                coalgebra, source, target, _require(spec, "table", where, list)
            )
        except (ValueError, TypeError) as exc:
            raise ParseError(f"{where}: {exc}") from None

    for name, spec in entries("comodule_measurings"):
        where = f"comodule_measurings.{name}"
        measuring = _resolve(
            ws.measurings, _require(spec, "measuring", where, str), "measuring", where
        )
        comodule = _resolve(
            ws.comodules, _require(spec, "comodule", where, str), "comodule", where
        )
        source = _resolve(
            ws.modules, _require(spec, "source", where, str), "module", where
        )
        target = _resolve(
            ws.modules, _require(spec, "target", where, str), "module", where
        )
        try:
            ws.comodule_measurings[name] = ComoduleMeasuring.from_table(
                measuring, comodule, source, target,
                _require(spec, "table", where, list),
            )
        except (ValueError, TypeError) as exc:
            raise ParseError(f"{where}: {exc}") from None

    for name, spec in entries("simplicial_sets"):
        where = f"simplicial_sets.{name}"
        try:
            ws.simplicial_sets[name] = _parse_simplicial_set(name, spec, where)
        except (ValueError, TypeError) as exc:
            raise ParseError(f"{where}: {exc}") from None

    for name, spec in entries("simplicial_maps", kind=dict):
        where = f"simplicial_maps.{name}"
        if "collapse" in spec:
            source = _resolve(ws.simplicial_sets, spec["collapse"], "simplicial set", where)
            ws.simplicial_maps[name] = collapse_map(source)
            continue
        source = _resolve(
            ws.simplicial_sets, _require(spec, "source", where, str),
            "simplicial set", where,
        )
        target = _resolve(
            ws.simplicial_sets, _require(spec, "target", where, str),
            "simplicial set", where,
        )
        tables = _require(spec, "levels", where, list)
        if len(tables) != source.truncation + 1:
            raise ParseError(f"{where}: need one level table per degree")
        try:
            levels = tuple(
                PointedMap(source.level(k), target.level(k), tuple(values))
                for k, values in enumerate(tables)
            )
            ws.simplicial_maps[name] = SimplicialMap(source, target, levels)
        except (ValueError, TypeError) as exc:
            raise ParseError(f"{where}: {exc}") from None

    requests = data.get("requests", [])
    if not isinstance(requests, list):
        raise ParseError("requests: must be a list")
    for pos, req in enumerate(requests):
        if not isinstance(req, dict) or "kind" not in req:
            raise ParseError(f"requests[{pos}]: must be an object with a 'kind'")
        ws.requests.append(dict(req))
    return ws


def _parse_simplicial_set(name, spec, where) -> PointedSimplicialSet:
    if "builtin" in spec:
        truncation = _require(spec, "truncation", where, int)
        built = from_name(spec["builtin"], truncation)
        built.name = spec["builtin"]
        return built
    truncation = _require(spec, "truncation", where, int)
    sizes = _require(spec, "levels", where, list)
    if len(sizes) != truncation + 1:
        raise ParseError(f"{where}: need one level size per degree 0..N")
    levels = [PointedSet(s) for s in sizes]
    faces = {}
    for k, i, values in _require(spec, "faces", where, list):
        faces[(k, i)] = PointedMap(levels[k], levels[k - 1], tuple(values))
    degens = {}
    for k, j, values in _require(spec, "degeneracies", where, list):
        degens[(k, j)] = PointedMap(levels[k], levels[k + 1], tuple(values))
    return PointedSimplicialSet(truncation, levels, faces, degens, name=name)


# -- serialization ---------------------------------------------------------------


def _name_of(table, obj, kind):
    for name in sorted(table):
        if table[name] == obj:
            return name
    raise UnresolvedReference(f"object has no name in the {kind} table")


def serialize_document(ws: Workspace) -> dict:
    """Rebuild the JSON document dict from a workspace; parsing the result
    yields an equal workspace."""
    fmt = ws.field.format
    out = {"field": ws.field.name}

    if ws.algebras:
        out["algebras"] = {
            name: {
                "basis": list(a.basis),
                "unit": [[k, fmt(v)] for k, v in sorted(a.unit.items())],
                "mul": [
                    [i, j, k, fmt(v)]
                    for (i, j) in sorted(a.mul)
                    for k, v in sorted(a.mul[(i, j)].items())
                ],
            }
            for name, a in sorted(ws.algebras.items())
        }
    if ws.modules:
        out["modules"] = {
            name: {
                "algebra": _name_of(ws.algebras, m.algebra, "algebra"),
                "basis": list(m.basis),
                "action": [
                    [i, j, l, fmt(v)]
                    for (i, j) in sorted(m.action)
                    for l, v in sorted(m.action[(i, j)].items())
                ],
            }
            for name, m in sorted(ws.modules.items())
        }
    if ws.coalgebras:
        out["coalgebras"] = {
            name: {
                "basis": list(c.basis),
                "counit": [[s, fmt(v)] for s, v in sorted(c.counit.items())],
                "comul": [
                    [s, i, j, fmt(v)]
                    for s in sorted(c.comul)
                    for (i, j), v in sorted(c.comul[s].items())
                ],
            }
            for name, c in sorted(ws.coalgebras.items())
        }
    if ws.comodules:
        out["comodules"] = {
            name: {
                "coalgebra": _name_of(ws.coalgebras, d.coalgebra, "coalgebra"),
                "basis": list(d.basis),
                "coaction": [
                    [t, i, u, fmt(v)]
                    for t in sorted(d.coaction)
                    for (i, u), v in sorted(d.coaction[t].items())
                ],
            }
            for name, d in sorted(ws.comodules.items())
        }
    if ws.measurings:
        out["measurings"] = {
            name: {
                "coalgebra": _name_of(ws.coalgebras, psi.coalgebra, "coalgebra"),
                "source": _name_of(ws.algebras, psi.source, "algebra"),
                "target": _name_of(ws.algebras, psi.target, "algebra"),
                "table": [[s, a, b, fmt(v)] for s, a, b, v in psi.table()],
            }
            for name, psi in sorted(ws.measurings.items())
        }
    if ws.comodule_measurings:
        out["comodule_measurings"] = {
            name: {
                "measuring": _name_of(ws.measurings, phi.measuring, "measuring"),
                "comodule": _name_of(ws.comodules, phi.comodule, "comodule"),
                "source": _name_of(ws.modules, phi.source, "module"),
                "target": _name_of(ws.modules, phi.target, "module"),
                "table": [[t, m, n, fmt(v)] for t, m, n, v in phi.table()],
            }
            for name, phi in sorted(ws.comodule_measurings.items())
        }
    if ws.simplicial_sets:
        out["simplicial_sets"] = {
            name: _serialize_simplicial_set(y)
            for name, y in sorted(ws.simplicial_sets.items())
        }
    if ws.simplicial_maps:
        out["simplicial_maps"] = {
            name: {
                "source": _name_of(ws.simplicial_sets, g.source, "simplicial set"),
                "target": _name_of(ws.simplicial_sets, g.target, "simplicial set"),
                "levels": [list(g.level(k).values) for k in range(g.source.truncation + 1)],
            }
            for name, g in sorted(ws.simplicial_maps.items())
        }
    if ws.requests:
        out["requests"] = [dict(req) for req in ws.requests]
    return out


def _serialize_simplicial_set(y: PointedSimplicialSet) -> dict:
    return {
        "truncation": y.truncation,
        "levels": [level.size for level in y.levels],
        "faces": [
            [k, i, list(y.face(k, i).values)]
            for k in range(1, y.truncation + 1)
            for i in range(k + 1)
        ],
        "degeneracies": [
            [k, j, list(y.degeneracy(k, j).values)]
            for k in range(y.truncation)
            for j in range(k + 1)
        ],
    }


# -- element expressions -----------------------------------------------------------

_TERM_RE = re.compile(
    r"^(?:(?P<coeff>-?\d+(?:/\d+)?)\s*\*\s*)?(?P<name>[A-Za-z_][A-Za-z_0-9]*)$"
)


def parse_element(expr: str, basis, field):
    """Parse a linear combination of basis names: "2*g + d - 1/2*e".

    Returns the coefficient list aligned with the basis order.
    """
    coeffs = [field.zero] * len(basis)
    position = {name: i for i, name in enumerate(basis)}
    text = expr.strip()
    if not text:
        raise ParseError("empty element expression")
    pieces = re.split(r"\s*([+-])\s*", text)
    if pieces[0] == "":
        pieces = pieces[1:]  # expression starts with a sign
    else:
        pieces = ["+"] + pieces
    if len(pieces) % 2 != 0:
        raise ParseError(f"malformed element expression {expr!r}")
    for sign, term in zip(pieces[::2], pieces[1::2]):
        match = _TERM_RE.match(term.strip())
        if not match:
            raise ParseError(f"malformed term {term!r} in element expression")
        name = match.group("name")
        if name not in position:
            raise UnknownBasisName(
                f"unknown basis name {name!r}; expected one of {', '.join(basis)}"
            )
        coeff = field.parse(match.group("coeff") or "1")
        if sign == "-":
            coeff = -coeff
        coeffs[position[name]] = coeffs[position[name]] + coeff
    return coeffs
