"""Projective systems of graphs indexed by the natural numbers.

A system is either an explicit chain ``G_0 <- G_1 <- ... <- G_K`` with
``maps[k]: G_{k+1} -> G_k``, or stationary: one graph ``F`` and one
self-factor-map ``m`` repeated forever.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Optional

from topgraph.algebra import AlgebraExpr, identify_finite_dim
from topgraph.constructions import attach_e_y
from topgraph.errors import (
    DepthExceedsStages,
    GraphMismatch,
    InvariantViolation,
    NotFinitelyRepresentable,
    NotLineShaped,
    PreconditionViolation,
    StageError,
    TopGraphError,
)
from topgraph.factor import FactorMap, is_regular, is_vertex_surjective, validate_factor_map
from topgraph.graph import EdgeClass, TopGraph, classify_vertices


@dataclass(frozen=True)
class ProjectiveSystem:
    graphs: tuple
    maps: tuple = ()
    stationary: bool = False

    def __post_init__(self):
        object.__setattr__(self, "graphs", tuple(self.graphs))
        object.__setattr__(self, "maps", tuple(self.maps))
        if self.stationary:
            if len(self.graphs) != 1 or len(self.maps) != 1:
                raise ValueError("a stationary system has exactly one graph and one map")
        elif len(self.maps) != max(len(self.graphs) - 1, 0):
            raise ValueError("an explicit system needs one map between consecutive stages")

    @classmethod
    def from_stationary(cls, F: TopGraph, m: FactorMap) -> "ProjectiveSystem":
        return cls((F,), (m,), stationary=True)

    @classmethod
    def explicit(cls, graphs, maps) -> "ProjectiveSystem":
        return cls(tuple(graphs), tuple(maps))

    @property
    def num_stages(self) -> Optional[int]:
        """Number of stages, ``None`` when unbounded."""
        return None if self.stationary else len(self.graphs)

    def graph(self, k: int) -> TopGraph:
        return self.graphs[0] if self.stationary else self.graphs[k]

    def bond(self, k: int) -> FactorMap:
        """The map from stage ``k+1`` to stage ``k``."""
        return self.maps[0] if self.stationary else self.maps[k]


@dataclass(frozen=True)
class SystemReport:
    regular: bool
    surjective: bool


def validate_system(s: ProjectiveSystem) -> SystemReport:
    regular = surjective = True
    for k in range(len(s.maps)):
        m = s.maps[k]
        try:
            if m.target != s.graph(k) or m.source != s.graph(k + 1):
                raise GraphMismatch("map does not connect consecutive stages")
            validate_factor_map(m)
        except TopGraphError as exc:
            raise StageError(k, exc) from exc
        regular = regular and is_regular(m)
        surjective = surjective and is_vertex_surjective(m)
    return SystemReport(regular=regular, surjective=surjective)


# -- stationary limits -------------------------------------------------------


def _eventual_image(elements, f) -> frozenset:
    current = frozenset(elements) | {None}
    while True:
        nxt = frozenset(f(x) for x in current)
        if nxt == current:
            return current
        current = nxt


@dataclass(frozen=True)
class Core:
    """Eventual image of a self-factor-map and the inverse of its restriction.

    ``back_v`` / ``back_e`` send each real core element to its unique core
    preimage, i.e. the next coordinate of the thread it starts.
    """

    vertices: frozenset
    edges: frozenset
    back_v: dict = field(repr=False)
    back_e: dict = field(repr=False)


def stationary_core(F: TopGraph, m: FactorMap) -> Core:
    if m.source != F or m.target != F:
        raise PreconditionViolation("the map must be a self-map of the graph")
    cv = _eventual_image(F.vertices, m.v)
    ce = _eventual_image(F.edge_ids, m.e)
    # a self-map of a finite set is a bijection on its eventual image, so the
    # checks below only fire if that invariant is broken by the data model
    back_v, back_e = {}, {}
    for x in cv:
        y = m.v(x)
        if y in back_v or (y is None and x is not None):
            raise NotFinitelyRepresentable("vertex map is not injective on its eventual image")
        back_v[y] = x
    for c in ce:
        c2 = m.e(c)
        if c2 in back_e or (c2 is None and c is not None):
            raise NotFinitelyRepresentable("edge map is not injective on its eventual image")
        if c2 is not None and F.edge(c).mult != F.edge(c2).mult:
            raise NotFinitelyRepresentable(f"edge class {c!r} changes multiplicity on the core")
        back_e[c2] = c
    back_v.pop(None, None)
    back_e.pop(None, None)
    return Core(
        vertices=frozenset(x for x in cv if x is not None),
        edges=frozenset(c for c in ce if c is not None),
        back_v=back_v,
        back_e=back_e,
    )


def stationary_limit(F: TopGraph, m: FactorMap) -> TopGraph:
    """Projective limit of ``F <- F <- ...`` along ``m``.

    Threads are identified with their stage-0 coordinate, which ranges over
    the real part of the eventual image of ``m``.
    """
    validate_factor_map(m)
    core = stationary_core(F, m)
    return TopGraph(core.vertices, tuple(F.edge(c) for c in core.edges))


def coordinate_map(F: TopGraph, m: FactorMap, k: int) -> FactorMap:
    """Projection from the stationary limit onto stage ``k``."""
    core = stationary_core(F, m)
    limit = TopGraph(core.vertices, tuple(F.edge(c) for c in core.edges))
    vmap, emap = {}, {}
    for x in core.vertices:
        y = x
        for _ in range(k):
            y = core.back_v[y]
        vmap[x] = y
    for c in core.edges:
        c2 = c
        for _ in range(k):
            c2 = core.back_e[c2]
        emap[c] = c2
    return FactorMap(limit, F, vmap, emap)


def obstruction_set(F: TopGraph, m: FactorMap, limit: TopGraph) -> frozenset:
    """Regular limit vertices whose coordinates are never regular at any stage."""
    core = stationary_core(F, m)
    if limit.vertices != core.vertices or limit.edge_ids != core.edges:
        raise PreconditionViolation("graph is not the stationary limit of this system")
    rg_f = classify_vertices(F).rg
    O = set()
    for x in core.vertices:
        y = x
        # coordinates cycle with period at most |F|
        for _ in range(len(F.vertices) + 1):
            if y in rg_f:
                O.add(x)
                break
            y = core.back_v[y]
    return frozenset(classify_vertices(limit).rg - O)


@dataclass(frozen=True)
class LimitReport:
    limit: TopGraph
    y: frozenset
    e_y: TopGraph
    iso_to_limit: bool
    limit_algebra: Optional[AlgebraExpr]
    e_y_algebra: Optional[AlgebraExpr]
    notes: tuple = ()


def _try_identify(g: TopGraph):
    try:
        return identify_finite_dim(g), None
    except TopGraphError as exc:
        return None, exc.name


def limit_algebra_report(F: TopGraph, m: FactorMap) -> LimitReport:
    limit = stationary_limit(F, m)
    y = obstruction_set(F, m, limit)
    e_y = attach_e_y(limit, y)
    a_lim, why_lim = _try_identify(limit)
    a_ey, why_ey = _try_identify(e_y)
    notes = []
    if why_lim:
        notes.append(f"limit algebra not identified: {why_lim}")
    if why_ey:
        notes.append(f"inductive-limit algebra not identified: {why_ey}")
    return LimitReport(limit, y, e_y, not y, a_lim, a_ey, tuple(notes))


# -- thread approximation ----------------------------------------------------


@dataclass(frozen=True)
class ThreadSet:
    """Coherent coordinate tuples ``(x_0, ..., x_depth)``; ``None`` is infinity."""

    depth: int
    vertex_threads: tuple
    edge_threads: tuple

    def real_counts(self, kind: str = "vertex") -> list:
        """Per stage k, the number of threads whose k-th coordinate is real."""
        threads = self.vertex_threads if kind == "vertex" else self.edge_threads
        return [sum(1 for t in threads if t[k] is not None) for k in range(self.depth + 1)]

    def everywhere_real(self, kind: str = "vertex") -> list:
        threads = self.vertex_threads if kind == "vertex" else self.edge_threads
        return [t for t in threads if None not in t]

    def stage0_support(self, kind: str = "vertex") -> frozenset:
        """Real stage-0 coordinates of depth-``depth`` threads.

        Shrinks as the depth grows and settles on the vertex (or edge) set of
        the limit; counting whole threads does not, since a coordinate with no
        preimage can still end a finite thread.
        """
        threads = self.vertex_threads if kind == "vertex" else self.edge_threads
        return frozenset(t[0] for t in threads if t[0] is not None)


def _sort_key(t):
    return tuple((x is None, x or "") for x in t)


def thread_approximation(s: ProjectiveSystem, depth: int) -> ThreadSet:
    """All coherent threads up to stage ``depth``.

    A thread is fixed by its last coordinate, since lower coordinates are
    images of higher ones; infinity can only occupy leading positions.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if not s.stationary and depth >= len(s.graphs):
        raise DepthExceedsStages(f"depth {depth} needs {depth + 1} stages, system has {len(s.graphs)}")

    def build(top, step):
        out = []
        for x in top:
            t = [x]
            for k in range(depth - 1, -1, -1):
                t.append(step(k, t[-1]))
            out.append(tuple(reversed(t)))
        return tuple(sorted(out, key=_sort_key))

    g_top = s.graph(depth)
    vt = build(sorted(g_top.vertices) + [None], lambda k, x: s.bond(k).v(x))
    et = build(sorted(g_top.edge_ids) + [None], lambda k, c: s.bond(k).e(c))
    return ThreadSet(depth, vt, et)


def brute_force_threads(s: ProjectiveSystem, depth: int) -> tuple:
    """Vertex threads by filtering the full product of stages (test oracle)."""
    stages = [sorted(s.graph(k).vertices) + [None] for k in range(depth + 1)]
    return tuple(
        sorted(
            (t for t in itertools.product(*stages) if all(s.bond(k).v(t[k + 1]) == t[k] for k in range(depth))),
            key=_sort_key,
        )
    )


# -- Bratteli diagrams -------------------------------------------------------


@dataclass(frozen=True)
class BratteliData:
    """``levels[n]`` is the dimension vector at level n; ``multiplicities[n][i][j]``
    is the multiplicity of block j at level n inside block i at level n+1."""

    levels: tuple
    multiplicities: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "levels", tuple(tuple(int(k) for k in lv) for lv in self.levels))
        object.__setattr__(
            self,
            "multiplicities",
            tuple(tuple(tuple(int(x) for x in row) for row in sig) for sig in self.multiplicities),
        )


def validate_bratteli(b: BratteliData) -> None:
    if not b.levels:
        raise InvariantViolation("at least one level is required")
    if len(b.multiplicities) != len(b.levels) - 1:
        raise InvariantViolation("need one multiplicity matrix between consecutive levels")
    for n, lv in enumerate(b.levels):
        if not lv or any(k < 1 for k in lv):
            raise InvariantViolation(f"level {n}: block sizes must be positive")
    for n, sig in enumerate(b.multiplicities):
        lo, hi = b.levels[n], b.levels[n + 1]
        if len(sig) != len(hi) or any(len(row) != len(lo) for row in sig):
            raise InvariantViolation(f"matrix {n} must be {len(hi)} x {len(lo)}")
        for i, row in enumerate(sig):
            if any(x < 0 for x in row):
                raise InvariantViolation(f"matrix {n} has a negative entry")
            if sum(x * k for x, k in zip(row, lo)) > hi[i]:
                raise InvariantViolation(f"matrix {n}, row {i + 1}: embedded blocks exceed size {hi[i]}")


def bratteli_vertex(i: int, k: int) -> str:
    return f"v{i}_{k}"


def bratteli_edge(i: int, k: int) -> str:
    return f"e{i}_{k}"


def line_stage(sizes) -> TopGraph:
    """Disjoint union of directed lines; block i has ``sizes[i-1]`` vertices."""
    vertices, edges = set(), []
    for i, size in enumerate(sizes, start=1):
        for k in range(1, size + 1):
            vertices.add(bratteli_vertex(i, k))
            if k < size:
                edges.append(EdgeClass(bratteli_edge(i, k), bratteli_vertex(i, k), bratteli_vertex(i, k + 1), 1))
    return TopGraph(frozenset(vertices), tuple(edges))


def _bratteli_map(upper: TopGraph, lower: TopGraph, hi, lo, sig) -> FactorMap:
    vmap, emap = {}, {}
    for i, size in enumerate(hi, start=1):
        row = sig[i - 1]
        for k in range(1, size + 1):
            offset = 0
            for j, kj in enumerate(lo, start=1):
                span = row[j - 1] * kj
                if offset < k <= offset + span:
                    l = (k - offset - 1) % kj + 1  # noqa: E741
                    vmap[bratteli_vertex(i, k)] = bratteli_vertex(j, l)
                    if k < size and l < kj:
                        emap[bratteli_edge(i, k)] = bratteli_edge(j, l)
                    break
                offset += span
    return FactorMap(upper, lower, vmap, emap)


def bratteli_to_system(b: BratteliData) -> ProjectiveSystem:
    validate_bratteli(b)
    graphs = [line_stage(lv) for lv in b.levels]
    maps = [
        _bratteli_map(graphs[n + 1], graphs[n], b.levels[n + 1], b.levels[n], b.multiplicities[n])
        for n in range(len(b.levels) - 1)
    ]
    return ProjectiveSystem.explicit(graphs, maps)


def _natural_key(s: str):
    return [int(tok) if tok.isdigit() else tok for tok in re.split(r"(\d+)", s)]


def line_blocks(g: TopGraph) -> list:
    """Split a disjoint union of lines into vertex lists, source first.

    Blocks are ordered by the natural sort order of their source ids.
    """
    for c in g.edges:
        if c.mult != 1:
            raise NotLineShaped(f"edge class {c.id!r} has multiplicity {c.mult}")
    for v in g.vertices:
        if len(g.in_classes(v)) > 1 or len(g.out_classes(v)) > 1:
            raise NotLineShaped(f"vertex {v!r} branches")
    sources = sorted((v for v in g.vertices if not g.in_classes(v)), key=_natural_key)
    blocks, seen = [], set()
    for s in sources:
        block, v = [s], s
        while g.out_classes(v):
            v = g.out_classes(v)[0].ran
            block.append(v)
        seen.update(block)
        blocks.append(block)
    if seen != set(g.vertices):
        raise NotLineShaped("graph contains a cycle")
    return blocks


def recover_bratteli(s: ProjectiveSystem) -> BratteliData:
    if s.stationary:
        raise NotLineShaped("recovery needs an explicit system")
    blocks = [line_blocks(g) for g in s.graphs]
    levels = [[len(b) for b in lv] for lv in blocks]
    sigmas = []
    for n, m in enumerate(s.maps):
        lower_sources = [b[0] for b in blocks[n]]
        sig = []
        for block in blocks[n + 1]:
            images = [m.v(x) for x in block]
            sig.append([images.count(src) for src in lower_sources])
        sigmas.append(sig)
    return BratteliData(levels, sigmas)
