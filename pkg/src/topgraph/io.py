"""JSON file formats and DOT export.

Graph::

    {"vertices": ["v", "w"], "edges": [{"id": "e", "dom": "v", "ran": "w", "mult": 1}]}

``mult`` is a positive integer or ``"omega"``.

Factor map::

    {"source": <graph or path>, "target": <graph or path>,
     "vertex_map": {"v": "v", "x": "infinity"}, "edge_map": {...}}

Bratteli data::

    {"levels": [[1], [2]], "multiplicities": [[[2]]]}

System::

    {"graphs": [...], "maps": [...]}   or   {"stationary": {"graph": ..., "map": ...}}

Graph and map references inside map and system files are either inline
objects or paths relative to the referring file.
"""
from __future__ import annotations

import json
from pathlib import Path as FsPath
from typing import Any, Optional

from topgraph.algebra import AlgebraExpr
from topgraph.cardinal import format_cardinal, parse_cardinal
from topgraph.errors import DuplicateId
from topgraph.factor import FactorMap
from topgraph.graph import EdgeClass, TopGraph, validate_graph
from topgraph.projective import BratteliData, ProjectiveSystem

INFINITY = "infinity"


class FormatError(ValueError):
    """Malformed input file."""


def _load_json(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def graph_from_obj(obj) -> TopGraph:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise FormatError("graph object needs a 'vertices' field")
    try:
        vertices = [str(v) for v in obj["vertices"]]
        edges = [
            EdgeClass(str(e["id"]), str(e["dom"]), str(e["ran"]), parse_cardinal(e.get("mult", 1)))
            for e in obj.get("edges", [])
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad graph object: {exc}") from exc
    if len(set(vertices)) != len(vertices):
        raise DuplicateId("a vertex id is listed twice")
    g = TopGraph(frozenset(vertices), tuple(edges))
    validate_graph(g)
    return g


def graph_to_obj(g: TopGraph) -> dict:
    return {
        "vertices": g.sorted_vertices(),
        "edges": [{"id": c.id, "dom": c.dom, "ran": c.ran, "mult": format_cardinal(c.mult)} for c in g.edges],
    }


def load_graph(path) -> TopGraph:
    return graph_from_obj(_load_json(path))


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def save_graph(g: TopGraph, path) -> None:
    FsPath(path).write_text(dumps(graph_to_obj(g)), encoding="utf-8")


def _resolve_graph(ref, base: Optional[FsPath]) -> TopGraph:
    if isinstance(ref, str):
        p = FsPath(ref)
        if base is not None and not p.is_absolute():
            p = base / p
        return load_graph(p)
    return graph_from_obj(ref)


def _partial(raw) -> dict:
    if not isinstance(raw, dict):
        raise FormatError("vertex_map and edge_map must be objects")
    return {str(k): (None if v == INFINITY else str(v)) for k, v in raw.items()}


def map_from_obj(obj, base: Optional[FsPath] = None, source=None, target=None) -> FactorMap:
    if not isinstance(obj, dict):
        raise FormatError("factor map must be an object")
    try:
        src = source if source is not None else _resolve_graph(obj["source"], base)
        tgt = target if target is not None else _resolve_graph(obj["target"], base)
    except KeyError as exc:
        raise FormatError(f"factor map is missing {exc}") from exc
    return FactorMap(src, tgt, _partial(obj.get("vertex_map", {})), _partial(obj.get("edge_map", {})))


def map_to_obj(m: FactorMap) -> dict:
    return {
        "source": graph_to_obj(m.source),
        "target": graph_to_obj(m.target),
        "vertex_map": {v: m.vertex_map.get(v, INFINITY) for v in m.source.sorted_vertices()},
        "edge_map": {c.id: m.edge_map.get(c.id, INFINITY) for c in m.source.edges},
    }


def load_map(path) -> FactorMap:
    path = FsPath(path)
    return map_from_obj(_load_json(path), path.parent)


def bratteli_from_obj(obj) -> BratteliData:
    try:
        return BratteliData(obj["levels"], obj.get("multiplicities", []))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad Bratteli object: {exc}") from exc


def bratteli_to_obj(b: BratteliData) -> dict:
    return {
        "levels": [list(lv) for lv in b.levels],
        "multiplicities": [[list(row) for row in sig] for sig in b.multiplicities],
    }


def load_bratteli(path) -> BratteliData:
    return bratteli_from_obj(_load_json(path))


def system_from_obj(obj, base: Optional[FsPath] = None) -> ProjectiveSystem:
    if not isinstance(obj, dict):
        raise FormatError("system must be an object")
    if "stationary" in obj:
        st = obj["stationary"]
        F = _resolve_graph(st["graph"], base)
        raw = st["map"]
        if isinstance(raw, str):
            p = FsPath(raw)
            raw = _load_json(base / p if base is not None and not p.is_absolute() else p)
        return ProjectiveSystem.from_stationary(F, map_from_obj(raw, base, source=F, target=F))
    try:
        graphs = [_resolve_graph(ref, base) for ref in obj["graphs"]]
        maps = []
        for k, raw in enumerate(obj.get("maps", [])):
            if isinstance(raw, str):
                p = FsPath(raw)
                raw = _load_json(base / p if base is not None and not p.is_absolute() else p)
            maps.append(map_from_obj(raw, base, source=graphs[k + 1], target=graphs[k]))
        return ProjectiveSystem.explicit(graphs, maps)
    except (KeyError, IndexError) as exc:
        raise FormatError(f"bad system object: {exc}") from exc


def system_to_obj(s: ProjectiveSystem) -> dict:
    if s.stationary:
        m = map_to_obj(s.maps[0])
        return {"stationary": {"graph": graph_to_obj(s.graphs[0]), "map": m}}
    return {"graphs": [graph_to_obj(g) for g in s.graphs], "maps": [map_to_obj(m) for m in s.maps]}


def load_system(path) -> ProjectiveSystem:
    path = FsPath(path)
    return system_from_obj(_load_json(path), path.parent)


def algebra_to_obj(a: AlgebraExpr) -> list:
    return list(a.summands)


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: TopGraph, name: str = "G") -> str:
    """One node per vertex, one arrow per edge class labelled ``id×mult``."""
    lines = [f"digraph {_dot_id(name)} {{"]
    for v in g.sorted_vertices():
        lines.append(f"  {_dot_id(v)};")
    for c in g.edges:
        label = f"{c.id}×{c.mult}"
        lines.append(f"  {_dot_id(c.dom)} -> {_dot_id(c.ran)} [label={_dot_id(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
