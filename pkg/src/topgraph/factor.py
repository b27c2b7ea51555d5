"""Factor maps between discrete topological graphs.

A factor map ``m`` from ``F`` (the source) to ``E`` (the target) is a pair
of partial maps on vertices and edge classes.  A missing entry means the
element is sent to the point at infinity.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from topgraph.cardinal import OMEGA, Cardinal, card_sum
from topgraph.errors import (
    ConditionIIViolation,
    ConditionIViolation,
    GraphMismatch,
    PreconditionViolation,
    PropernessViolation,
)
from topgraph.graph import TopGraph, classify_vertices


@dataclass(frozen=True)
class FactorMap:
    source: TopGraph
    target: TopGraph
    vertex_map: dict = field(default_factory=dict)
    edge_map: dict = field(default_factory=dict)

    def __post_init__(self):
        # None is accepted as an explicit "maps to infinity"
        object.__setattr__(self, "vertex_map", {k: v for k, v in self.vertex_map.items() if v is not None})
        object.__setattr__(self, "edge_map", {k: v for k, v in self.edge_map.items() if v is not None})

    def v(self, x: Optional[str]) -> Optional[str]:
        """Image of a source vertex, ``None`` for infinity."""
        return None if x is None else self.vertex_map.get(x)

    def e(self, c: Optional[str]) -> Optional[str]:
        return None if c is None else self.edge_map.get(c)

    def __eq__(self, other):
        if not isinstance(other, FactorMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.vertex_map == other.vertex_map
            and self.edge_map == other.edge_map
        )

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.vertex_map.items()), frozenset(self.edge_map.items())))


def identity_map(g: TopGraph) -> FactorMap:
    return FactorMap(g, g, {v: v for v in g.vertices}, {c.id: c.id for c in g.edges})


def _check_domains(m: FactorMap) -> None:
    F, E = m.source, m.target
    for x, y in m.vertex_map.items():
        if x not in F.vertices or y not in E.vertices:
            raise GraphMismatch(f"vertex assignment {x!r} -> {y!r} leaves the graphs")
    for c, c2 in m.edge_map.items():
        if not F.has_edge(c) or not E.has_edge(c2):
            raise GraphMismatch(f"edge assignment {c!r} -> {c2!r} leaves the graphs")


def validate_factor_map(m: FactorMap) -> None:
    """Check endpoint compatibility, unique lifting and properness."""
    _check_domains(m)
    F, E = m.source, m.target

    for c in F.edges:
        cid2 = m.e(c.id)
        if cid2 is None:
            continue
        c2 = E.edge(cid2)
        if m.v(c.dom) != c2.dom or m.v(c.ran) != c2.ran:
            raise ConditionIViolation(
                c.id,
                f"endpoints ({m.v(c.dom)}, {m.v(c.ran)}) do not match ({c2.dom}, {c2.ran}) of {cid2!r}",
            )

    for c2 in E.edges:
        pre = [c for c in F.edges if m.e(c.id) == c2.id]
        if c2.mult is not OMEGA and any(c.mult is OMEGA for c in pre):
            raise PropernessViolation(c2.id, "an infinite class maps onto a finite class")

    lifts: dict = {}
    for c in F.edges:
        cid2 = m.e(c.id)
        if cid2 is not None:
            key = (cid2, c.dom)
            lifts[key] = lifts.get(key, 0) + c.mult
    for c2 in E.edges:
        for v in sorted(F.vertices):
            if m.v(v) != c2.dom:
                continue
            found = lifts.get((c2.id, v), 0)
            if found != c2.mult:
                raise ConditionIIViolation(c2.id, v, c2.mult, found)


def is_regular(m: FactorMap) -> bool:
    rg = classify_vertices(m.target).rg
    for v in m.source.vertices:
        if m.v(v) not in rg:
            continue
        ins = m.source.in_classes(v)
        if not ins:
            return False
        if any(m.e(c.id) is None for c in ins):
            return False
    return True


def compose(outer: FactorMap, inner: FactorMap) -> FactorMap:
    """``outer ∘ inner`` where inner: G → F and outer: F → E."""
    if inner.target != outer.source:
        raise GraphMismatch("inner map's target is not the outer map's source")
    vmap = {x: outer.v(y) for x, y in inner.vertex_map.items()}
    emap = {c: outer.e(c2) for c, c2 in inner.edge_map.items()}
    return FactorMap(inner.source, outer.target, vmap, emap)


def is_vertex_surjective(m: FactorMap) -> bool:
    return set(m.vertex_map.values()) >= set(m.target.vertices)


def lift_edge(m: FactorMap, target_class: str, v: str) -> list:
    """Classes over ``target_class`` with domain ``v``, as ``(class_id, mult)`` pairs.

    Their multiplicities add up to the multiplicity of ``target_class``.
    """
    if not m.target.has_edge(target_class):
        raise PreconditionViolation(f"unknown target class {target_class!r}")
    c2 = m.target.edge(target_class)
    if v not in m.source.vertices or m.v(v) != c2.dom:
        raise PreconditionViolation(f"vertex {v!r} does not lie over the domain {c2.dom!r} of {target_class!r}")
    return [(c.id, c.mult) for c in m.source.out_classes(v) if m.e(c.id) == target_class]


def lift_total(lifts: list) -> Cardinal:
    return card_sum(k for _, k in lifts)
