"""Graph-producing constructions.

Fresh ids are deterministic: attached copies are prefixed ``w.``, tower and
amplification stages ``x<k>.``, disjoint-union and product components
``<i>.`` (1-based).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from topgraph.cardinal import OMEGA
from topgraph.errors import (
    DanglingEndpoint,
    NotASubgraph,
    NotHereditary,
    NotRegularSubset,
    RangeNotProper,
    RangeNotSurjective,
    UnknownVertex,
)
from topgraph.graph import EdgeClass, TopGraph, classify_vertices, prefixed, validate_graph

OMEGA_PREFIX = "w."


def omega_copy(x: str) -> str:
    return OMEGA_PREFIX + x


def stage_prefix(k: int) -> str:
    return f"x{k}."


def attach_e_y(g: TopGraph, Y: Iterable[str]) -> TopGraph:
    """Duplicate the vertices of ``Y`` and the edge classes leaving them.

    A copied class keeps its range and multiplicity; its domain is the copy
    of the original domain.  ``Y`` must consist of regular vertices.
    """
    Y = frozenset(Y)
    bad = Y - classify_vertices(g).rg
    if bad:
        raise NotRegularSubset(f"not regular vertices: {sorted(bad)}")
    vertices = set(g.vertices) | {omega_copy(v) for v in Y}
    edges = list(g.edges)
    for c in g.edges:
        if c.dom in Y:
            edges.append(EdgeClass(omega_copy(c.id), omega_copy(c.dom), c.ran, c.mult))
    out = TopGraph(frozenset(vertices), tuple(edges))
    validate_graph(out)
    return out


def toeplitz_graph(g: TopGraph) -> TopGraph:
    return attach_e_y(g, classify_vertices(g).rg)


def _check_vertices(g: TopGraph, V) -> frozenset:
    V = frozenset(V)
    unknown = V - g.vertices
    if unknown:
        raise UnknownVertex(f"unknown vertices: {sorted(unknown)}")
    return V


def subgraph_f_v(g: TopGraph, V: Iterable[str]) -> TopGraph:
    """Edge classes with range in ``V``, plus their domains."""
    V = _check_vertices(g, V)
    edges = [c for c in g.edges if c.ran in V]
    return TopGraph(V | {c.dom for c in edges}, tuple(edges))


@dataclass(frozen=True)
class DefectReport:
    """``y`` is the set of regular vertices of the subgraph that lose edges;
    the subalgebra generated by the subgraph is the algebra of ``graph``."""

    y: frozenset
    graph: TopGraph


def subalgebra_defect(g: TopGraph, sub: TopGraph) -> DefectReport:
    if not sub.vertices <= g.vertices:
        raise NotASubgraph(f"vertices not in the graph: {sorted(sub.vertices - g.vertices)}")
    for c in sub.edges:
        if not g.has_edge(c.id):
            raise NotASubgraph(f"edge class {c.id!r} is not in the graph")
        big = g.edge(c.id)
        if (big.dom, big.ran) != (c.dom, c.ran) or c.mult > big.mult:
            raise NotASubgraph(f"edge class {c.id!r} does not match the graph")
    missing_ranges = set()
    for c in g.edges:
        if not sub.has_edge(c.id) or sub.edge(c.id).mult != c.mult:
            missing_ranges.add(c.ran)
    y = classify_vertices(sub).rg & missing_ranges
    return DefectReport(frozenset(y), attach_e_y(sub, y))


def is_hereditary_v(g: TopGraph, V: Iterable[str]) -> bool:
    V = _check_vertices(g, V)
    return all(c.dom in V for c in g.edges if c.ran in V)


def is_full_v(g: TopGraph, V: Iterable[str]) -> tuple:
    """Return ``(full, depths)``.

    ``depths[v]`` is, for each vertex outside ``V``, the least ``n`` such that
    every length-``n`` path ending at ``v`` starts in ``V``.  The search stops
    at ``n = |vertices|``: the sets of such vertices only grow with ``n``.
    When not full, ``depths`` holds the vertices certified so far.
    """
    V = _check_vertices(g, V)
    if not is_hereditary_v(g, V):
        raise NotHereditary("some edge into V starts outside V")
    rg = classify_vertices(g).rg
    depths = {}
    full = True
    for v in sorted(g.vertices - V):
        if v not in rg:
            full = False
            continue
        frontier = {v}
        for n in range(1, len(g.vertices) + 1):
            frontier = {c.dom for u in frontier for c in g.in_classes(u)}
            if frontier <= V:
                depths[v] = n
                break
        else:
            full = False
    return full, depths


@dataclass(frozen=True)
class TowerStage:
    """One stage of a tower: new vertices and classes pointing into them.

    ``edges`` use local ids: ``dom`` names a vertex of the previous stage
    (the base graph for the first stage) and ``ran`` a vertex of this stage.
    """

    vertices: frozenset
    edges: tuple = ()

    @classmethod
    def build(cls, vertices, edges=()):
        return cls(frozenset(vertices), tuple(c if isinstance(c, EdgeClass) else EdgeClass(*c) for c in edges))


def attach_tower(g: TopGraph, stages: Iterable[TowerStage]) -> TopGraph:
    vertices = set(g.vertices)
    edges = list(g.edges)
    prev, prev_name = g.vertices, (lambda v: v)
    for k, st in enumerate(stages, start=1):
        name = lambda v, k=k: stage_prefix(k) + v  # noqa: E731
        hit = set()
        for c in st.edges:
            if c.dom not in prev or c.ran not in st.vertices:
                raise DanglingEndpoint(f"stage {k}: edge class {c.id!r} has endpoints outside its stages")
            if c.mult is OMEGA:
                raise RangeNotProper(f"stage {k}: edge class {c.id!r} has infinite multiplicity")
            hit.add(c.ran)
            edges.append(EdgeClass(stage_prefix(k) + c.id, prev_name(c.dom), name(c.ran), c.mult))
        if hit != set(st.vertices):
            raise RangeNotSurjective(f"stage {k}: vertices {sorted(set(st.vertices) - hit)} receive no edge")
        vertices |= {name(v) for v in st.vertices}
        prev, prev_name = st.vertices, name
    out = TopGraph(frozenset(vertices), tuple(edges))
    validate_graph(out)
    return out


def amplify(g: TopGraph, N: int, variant: str = "chain") -> TopGraph:
    """Attach ``N`` copies of the vertex set through identity edges.

    ``chain`` links copy k-1 to copy k; ``star`` links the original vertex
    set to every copy.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if variant == "chain":
        stage = TowerStage(g.vertices, tuple(EdgeClass(v, v, v, 1) for v in sorted(g.vertices)))
        return attach_tower(g, [stage] * N)
    if variant != "star":
        raise ValueError(f"unknown amplification variant {variant!r}")
    vertices = set(g.vertices)
    edges = list(g.edges)
    for k in range(1, N + 1):
        p = stage_prefix(k)
        for v in sorted(g.vertices):
            vertices.add(p + v)
            edges.append(EdgeClass(p + v, v, p + v, 1))
    out = TopGraph(frozenset(vertices), tuple(edges))
    validate_graph(out)
    return out


def disjoint_union(*graphs: TopGraph) -> TopGraph:
    vertices, edges = set(), []
    for i, g in enumerate(graphs, start=1):
        h = prefixed(g, f"{i}.")
        vertices |= h.vertices
        edges.extend(h.edges)
    return TopGraph(frozenset(vertices), tuple(edges))


def product_with_set(g: TopGraph, n: int) -> TopGraph:
    """Product with the discrete space {1..n}: n disjoint copies."""
    if n < 1:
        raise ValueError("n must be positive")
    return disjoint_union(*([g] * n))


def one_point_compactify(g: TopGraph, name: str = "inf") -> TopGraph:
    point = name
    while point in g.vertices:
        point += "'"
    return TopGraph(g.vertices | {point}, g.edges)
