"""Reading and writing complexes as JSON documents.

A presented complex with string ids serializes to a plain document:
schema marker, vertices, edges, generators, cells, canonically sorted.
Derived complexes that carry no presentation of their own (products,
sums, substructures, the two oracle-backed reflectors) serialize as a
recipe wrapping the documents of their parts, and parsing a recipe
replays the construction.  All errors carry the JSON field path.
"""
from __future__ import annotations

import json
from collections.abc import Mapping

from .core import (
    ControlledComplex,
    CspaceError,
    FlexiblePart,
    Graph,
    InvalidRouteError,
    PreflexibleHull,
    PresentedComplex,
    Route,
    SquareCell,
    StructureError,
    idkey,
    reflect_fl,
    reflect_pf,
)
from .spaces import (
    ProductComplex,
    RestrictedComplex,
    SumComplex,
    full_substructure,
    opposite,
    product,
    sum_complex,
    symmetrize,
)

__all__ = [
    "DocumentError",
    "parse_complex",
    "serialize_complex",
    "canonical_json",
    "load_complex",
    "save_complex",
    "encode_id",
    "decode_id",
]

_TOP_KEYS = {"schema", "name", "provenance", "vertices", "edges", "generators", "cells", "recipe"}


class DocumentError(CspaceError):
    """Malformed document; the message starts with the offending field path."""

    def __init__(self, path: str, message: str) -> None:
        self.path = path
        super().__init__(f"{path}: {message}")


def encode_id(x) -> object:
    """Ids for recipe fields: strings stay, tuples become JSON arrays."""
    if isinstance(x, tuple):
        return [encode_id(i) for i in x]
    return x


def decode_id(j) -> object:
    if isinstance(j, list):
        return tuple(decode_id(i) for i in j)
    return j


def _need(doc: Mapping, key: str, path: str, kind: type, kindname: str):
    if key not in doc:
        raise DocumentError(path, f"missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise DocumentError(f"{path}.{key}", f"expected {kindname}")
    return value


def _route_from(doc: Mapping, graph: Graph, path: str, dwells_allowed: bool) -> Route:
    if not isinstance(doc, dict):
        raise DocumentError(path, "expected an object")
    start = _need(doc, "start", path, str, "a string vertex id")
    edges = _need(doc, "edges", path, list, "a list of edge ids")
    for i, e in enumerate(edges):
        if not isinstance(e, str):
            raise DocumentError(f"{path}.edges[{i}]", "expected a string edge id")
    dwells = doc.get("dwells", [])
    if not dwells_allowed and dwells:
        raise DocumentError(f"{path}.dwells", "cell sides must be dwell-free")
    if not isinstance(dwells, list):
        raise DocumentError(f"{path}.dwells", "expected a list of positions")
    try:
        return graph.route(start, tuple(edges), frozenset(dwells))
    except InvalidRouteError as err:
        raise DocumentError(path, str(err)) from None


def parse_complex(doc: Mapping) -> ControlledComplex:
    """Build a complex from a parsed JSON document or recipe."""
    if not isinstance(doc, dict):
        raise DocumentError("document", "expected a JSON object")
    for key in doc:
        if key not in _TOP_KEYS:
            raise DocumentError(key, "unknown field")
    if doc.get("schema") != 1:
        raise DocumentError("schema", f"unsupported schema {doc.get('schema')!r}")
    if "recipe" in doc:
        return _parse_recipe(doc["recipe"], "recipe")

    vertices = _need(doc, "vertices", "document", list, "a list")
    seen: set[str] = set()
    for i, v in enumerate(vertices):
        if not isinstance(v, str):
            raise DocumentError(f"vertices[{i}]", "expected a string vertex id")
        if v in seen:
            raise DocumentError(f"vertices[{i}]", f"duplicate vertex {v!r}")
        seen.add(v)

    edges: dict[str, tuple[str, str]] = {}
    for i, entry in enumerate(_need(doc, "edges", "document", list, "a list")):
        path = f"edges[{i}]"
        if not isinstance(entry, dict):
            raise DocumentError(path, "expected an object")
        eid = _need(entry, "id", path, str, "a string edge id")
        src = _need(entry, "src", path, str, "a string vertex id")
        dst = _need(entry, "dst", path, str, "a string vertex id")
        if eid in edges:
            raise DocumentError(f"{path}.id", f"duplicate edge {eid!r}")
        for which, v in (("src", src), ("dst", dst)):
            if v not in seen:
                raise DocumentError(f"{path}.{which}", f"unknown vertex {v!r}")
        edges[eid] = (src, dst)
    graph = Graph(vertices, edges)

    generators = []
    for i, entry in enumerate(_need(doc, "generators", "document", list, "a list")):
        generators.append(_route_from(entry, graph, f"generators[{i}]", True))

    cells = []
    for i, entry in enumerate(doc.get("cells", [])):
        path = f"cells[{i}]"
        if not isinstance(entry, dict):
            raise DocumentError(path, "expected an object")
        start = _need(entry, "start", path, str, "a string vertex id")
        sides = []
        for name in ("left", "right"):
            word = _need(entry, name, path, list, "a list of edge ids")
            sides.append(
                _route_from({"start": start, "edges": word}, graph, f"{path}.{name}", False)
            )
        try:
            cells.append(SquareCell(sides[0], sides[1]))
        except InvalidRouteError as err:
            raise DocumentError(path, str(err)) from None
    return PresentedComplex(graph, generators, cells)


def _parse_recipe(recipe, path: str) -> ControlledComplex:
    if not isinstance(recipe, dict):
        raise DocumentError(path, "expected an object")
    op = _need(recipe, "op", path, str, "an operation name")
    if op in ("product", "sum"):
        args = _need(recipe, "args", path, list, "a list of two documents")
        if len(args) != 2:
            raise DocumentError(f"{path}.args", "expected exactly two documents")
        left = parse_complex(args[0])
        right = parse_complex(args[1])
        return product(left, right) if op == "product" else sum_complex(left, right)
    base = parse_complex(_need(recipe, "base", path, dict, "a document"))
    if op == "op":
        return opposite(base)
    if op == "symmetrize":
        return symmetrize(base)
    if op == "fl":
        return reflect_fl(base)
    if op == "pf":
        return reflect_pf(base)
    if op == "restrict":
        keep = _need(recipe, "keep", path, list, "a list of vertex ids")
        try:
            return full_substructure(base, {decode_id(v) for v in keep})
        except StructureError as err:
            raise DocumentError(f"{path}.keep", str(err)) from None
    raise DocumentError(f"{path}.op", f"unknown operation {op!r}")


def _plain_document(X: ControlledComplex) -> dict:
    gens = X.generators
    ids = set(X.graph.vertices) | set(X.graph.edge_ids)
    if not all(isinstance(i, str) for i in ids):
        raise StructureError(
            "cannot serialize: ids are not strings and no recipe is recorded"
        )
    return {
        "schema": 1,
        "vertices": sorted(X.graph.vertices, key=idkey),
        "edges": [
            {"id": e, "src": X.graph.src(e), "dst": X.graph.dst(e)}
            for e in sorted(X.graph.edge_ids, key=idkey)
        ],
        "generators": [
            {"start": g.start, "edges": list(g.edges), "dwells": sorted(g.dwells)}
            for g in sorted(gens, key=Route.sort_key)
        ],
        "cells": [
            {"start": c.left.start, "left": list(c.left.edges), "right": list(c.right.edges)}
            for c in X.cells
        ],
    }


def serialize_complex(X: ControlledComplex) -> dict:
    """Canonical document for a presented complex, or a recipe for a
    derived one."""
    if isinstance(X, ProductComplex):
        return {
            "schema": 1,
            "recipe": {
                "op": "product",
                "args": [serialize_complex(X.left), serialize_complex(X.right)],
            },
        }
    if isinstance(X, SumComplex):
        return {
            "schema": 1,
            "recipe": {
                "op": "sum",
                "args": [serialize_complex(X.left), serialize_complex(X.right)],
            },
        }
    if isinstance(X, RestrictedComplex):
        return {
            "schema": 1,
            "recipe": {
                "op": "restrict",
                "base": serialize_complex(X.base),
                "keep": [encode_id(v) for v in sorted(X.keep, key=idkey)],
            },
        }
    if isinstance(X, FlexiblePart):
        return {"schema": 1, "recipe": {"op": "fl", "base": serialize_complex(X.base)}}
    if isinstance(X, PreflexibleHull):
        return {"schema": 1, "recipe": {"op": "pf", "base": serialize_complex(X.base)}}
    if X.generators is None:
        raise StructureError("cannot serialize an oracle-backed complex of this shape")
    try:
        return _plain_document(X)
    except StructureError:
        recipe = getattr(X, "recipe", None)
        if recipe is not None:
            op, base = recipe
            return {"schema": 1, "recipe": {"op": op, "base": serialize_complex(base)}}
        raise


def canonical_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_complex(path: str) -> ControlledComplex:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as err:
            raise DocumentError(path, f"not valid JSON: {err}") from None
    return parse_complex(doc)


def save_complex(X: ControlledComplex, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_json(serialize_complex(X)))
