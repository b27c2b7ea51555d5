"""Discrete topological graphs.

A graph has a finite vertex set and finitely many edge classes.  An edge
class ``c`` with multiplicity ``k`` stands for ``k`` parallel edges from
``c.dom`` to ``c.ran``; multiplicity ``OMEGA`` stands for countably many.
With the discrete topology every map is a local homeomorphism, so ``dom``
and ``ran`` are unconstrained.

Paths are composed right to left: in a path ``(e_n, ..., e_1)`` the edge
``e_1`` is traversed first, ``dom(e_{k+1}) == ran(e_k)``, the path starts at
``dom(e_1)`` and ends at ``ran(e_n)``.
"""
from __future__ import annotations

import graphlib
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from topgraph.cardinal import OMEGA, Cardinal, card_sum, is_finite
from topgraph.errors import DanglingEndpoint, DuplicateId, HasLoops, UnknownVertex


@dataclass(frozen=True, order=True)
class EdgeClass:
    id: str
    dom: str
    ran: str
    mult: Cardinal = 1


@dataclass(frozen=True)
class TopGraph:
    """Finite vertex set plus edge classes.

    Construction does not validate; call :func:`validate_graph` (file loading
    does so automatically).
    """

    vertices: frozenset
    edges: tuple = ()
    _by_id: dict = field(init=False, repr=False, compare=False, hash=False)
    _in: dict = field(init=False, repr=False, compare=False, hash=False)
    _out: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        edges = tuple(sorted(self.edges, key=lambda c: c.id))
        object.__setattr__(self, "edges", edges)
        by_id, incoming, outgoing = {}, defaultdict(list), defaultdict(list)
        for c in edges:
            by_id.setdefault(c.id, c)
            incoming[c.ran].append(c)
            outgoing[c.dom].append(c)
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_in", dict(incoming))
        object.__setattr__(self, "_out", dict(outgoing))

    @classmethod
    def build(cls, vertices: Iterable[str], edges: Iterable = ()) -> "TopGraph":
        """Build from vertex ids and ``(id, dom, ran[, mult])`` tuples or EdgeClass values."""
        classes = [c if isinstance(c, EdgeClass) else EdgeClass(*c) for c in edges]
        return cls(frozenset(vertices), tuple(classes))

    def edge(self, cid: str) -> EdgeClass:
        return self._by_id[cid]

    def has_edge(self, cid: str) -> bool:
        return cid in self._by_id

    @property
    def edge_ids(self) -> frozenset:
        return frozenset(self._by_id)

    def sorted_vertices(self) -> list:
        return sorted(self.vertices)

    def in_classes(self, v: str) -> list:
        return self._in.get(v, [])

    def out_classes(self, v: str) -> list:
        return self._out.get(v, [])

    def indegree(self, v: str) -> Cardinal:
        return card_sum(c.mult for c in self.in_classes(v))

    def has_infinite_multiplicity(self) -> bool:
        return any(c.mult is OMEGA for c in self.edges)

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class VertexClassification:
    sce: frozenset
    inf: frozenset
    rg: frozenset
    fin: frozenset
    sg: frozenset


@dataclass(frozen=True)
class Path:
    """A path with explicit endpoints.

    ``steps`` holds ``(class_id, copy)`` pairs, outermost (last traversed)
    edge first; ``copy`` is the 1-based parallel-copy index within the class.
    """

    dom: str
    ran: str
    steps: tuple = ()

    def __len__(self):
        return len(self.steps)

    @property
    def classes(self) -> tuple:
        return tuple(cid for cid, _ in self.steps)

    def __str__(self):
        if not self.steps:
            return self.dom
        return "(" + ", ".join(f"{cid}#{k}" for cid, k in self.steps) + ")"


@dataclass(frozen=True)
class PathEnumeration:
    """Result of :func:`enumerate_paths`.

    ``paths`` lists every path avoiding OMEGA classes.  ``counts`` maps
    ``(length, dom)`` to the exact number of paths, OMEGA included, so paths
    through infinite classes are counted without being listed.
    """

    max_len: int
    paths: tuple
    counts: dict

    def count(self, length: int, dom: Optional[str] = None) -> Cardinal:
        if dom is not None:
            return self.counts.get((length, dom), 0)
        return card_sum(n for (k, _), n in self.counts.items() if k == length)

    def total(self, dom: Optional[str] = None) -> Cardinal:
        return card_sum(self.count(k, dom) for k in range(self.max_len + 1))


def validate_graph(g: TopGraph) -> None:
    if len(g._by_id) != len(g.edges):
        seen = set()
        for c in g.edges:
            if c.id in seen:
                raise DuplicateId(f"edge class id {c.id!r} is used twice")
            seen.add(c.id)
    for c in g.edges:
        for end in (c.dom, c.ran):
            if end not in g.vertices:
                raise DanglingEndpoint(f"edge class {c.id!r} references unknown vertex {end!r}")
        if not (c.mult is OMEGA or (isinstance(c.mult, int) and not isinstance(c.mult, bool) and c.mult > 0)):
            raise ValueError(f"edge class {c.id!r} has invalid multiplicity {c.mult!r}")


def classify_vertices(g: TopGraph) -> VertexClassification:
    sce, inf, rg = set(), set(), set()
    for v in g.vertices:
        deg = g.indegree(v)
        if deg == 0:
            sce.add(v)
        elif deg is OMEGA:
            inf.add(v)
        else:
            rg.add(v)
    fin = g.vertices - inf
    return VertexClassification(
        sce=frozenset(sce),
        inf=frozenset(inf),
        rg=frozenset(rg),
        fin=frozenset(fin),
        sg=frozenset(sce | inf),
    )


def _extend(g: TopGraph, p: Path) -> Iterator[Path]:
    for c in g.out_classes(p.ran):
        if c.mult is OMEGA:
            continue
        for k in range(1, c.mult + 1):
            yield Path(p.dom, c.ran, ((c.id, k),) + p.steps)


def enumerate_paths(g: TopGraph, max_len: int) -> PathEnumeration:
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    # counts[(n, v)][u]: number of length-n paths from v to u
    layer = {v: {v: 1} for v in g.vertices}
    counts = {}
    for v in g.vertices:
        counts[(0, v)] = 1
    for n in range(1, max_len + 1):
        nxt = {}
        for v, ends in layer.items():
            row = defaultdict(int)
            for u, k in ends.items():
                for c in g.out_classes(u):
                    row[c.ran] = row[c.ran] + k * c.mult
            nxt[v] = dict(row)
            counts[(n, v)] = card_sum(row.values())
        layer = nxt

    paths = []
    frontier = [Path(v, v) for v in g.sorted_vertices()]
    for n in range(max_len + 1):
        paths.extend(frontier)
        if n == max_len:
            break
        frontier = [q for p in frontier for q in _extend(g, p)]
    return PathEnumeration(max_len=max_len, paths=tuple(paths), counts=counts)


def has_cycle(g: TopGraph) -> bool:
    ts = graphlib.TopologicalSorter({v: () for v in g.vertices})
    for c in g.edges:
        if c.dom == c.ran:
            return True
        ts.add(c.ran, c.dom)
    try:
        ts.prepare()
    except graphlib.CycleError:
        return True
    return False


def topological_order(g: TopGraph) -> list:
    """Vertices ordered so every edge class points forward. Raises HasLoops."""
    if has_cycle(g):
        raise HasLoops("graph contains a loop")
    ts = graphlib.TopologicalSorter({v: () for v in sorted(g.vertices)})
    for c in g.edges:
        ts.add(c.ran, c.dom)
    return list(ts.static_order())


def path_count_from(g: TopGraph, v: str) -> Cardinal:
    if v not in g.vertices:
        raise UnknownVertex(v)
    order = topological_order(g)
    total: dict = {}
    for u in reversed(order):
        total[u] = 1 + card_sum(c.mult * total[c.ran] for c in g.out_classes(u))
    return total[v]


def loops(g: TopGraph, max_len: int) -> list:
    """Loops of length 1..max_len, each a Path with ``dom == ran`` (the base point).

    Rotations are listed separately.  Loops through OMEGA classes are
    infinitely many and not listed.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    found = []
    frontier = [Path(v, v) for v in g.sorted_vertices()]
    for _ in range(max_len):
        frontier = [q for p in frontier for q in _extend(g, p)]
        found.extend(p for p in frontier if p.dom == p.ran)
    return found


def is_topologically_free(g: TopGraph) -> tuple:
    """Return ``(True, None)`` or ``(False, witness)``.

    Discretely, a loop without entrances is a cycle along which every vertex
    has indegree exactly 1; the graph is free iff none exists.
    """
    pred = {}
    for v in g.vertices:
        ins = g.in_classes(v)
        if len(ins) == 1 and ins[0].mult == 1:
            pred[v] = ins[0]
    for start in g.sorted_vertices():
        seen = []
        v = start
        while v in pred and v not in seen:
            seen.append(v)
            v = pred[v].dom
        if v not in seen:
            continue
        cycle = seen[seen.index(v):]
        base = min(cycle)
        # walk backwards from the base point; steps are outermost first
        steps, u = [], base
        while True:
            c = pred[u]
            steps.append((c.id, 1))
            u = c.dom
            if u == base:
                break
        return False, Path(base, base, tuple(steps))
    return True, None


def relabel(g: TopGraph, vmap: dict, emap: dict) -> TopGraph:
    """Rename vertices and edge classes; ids missing from the maps are kept."""
    vm = lambda v: vmap.get(v, v)  # noqa: E731
    return TopGraph(
        frozenset(vm(v) for v in g.vertices),
        tuple(EdgeClass(emap.get(c.id, c.id), vm(c.dom), vm(c.ran), c.mult) for c in g.edges),
    )


def prefixed(g: TopGraph, prefix: str) -> TopGraph:
    return relabel(g, {v: prefix + v for v in g.vertices}, {c.id: prefix + c.id for c in g.edges})


def is_finite_graph(g: TopGraph) -> bool:
    return all(is_finite(c.mult) for c in g.edges)
