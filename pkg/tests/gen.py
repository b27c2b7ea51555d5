"""Random instance generators and independent oracles shared by the tests."""
from __future__ import annotations

import itertools
import random

import numpy as np

from topgraph.cardinal import OMEGA
from topgraph.constructions import TowerStage
from topgraph.factor import FactorMap, is_regular
from topgraph.graph import EdgeClass, TopGraph, classify_vertices


def _mult(rng: random.Random, max_mult: int, omega_prob: float):
    if omega_prob and rng.random() < omega_prob:
        return OMEGA
    return rng.randint(1, max_mult)


def random_acyclic_graph(rng, max_vertices=10, max_edges=15, max_mult=3, min_vertices=0):
    n = rng.randint(min_vertices, max_vertices)
    names = [f"v{i}" for i in range(n)]
    order = names[:]
    rng.shuffle(order)
    edges = []
    if n >= 2:
        for k in range(rng.randint(0, max_edges)):
            i, j = sorted(rng.sample(range(n), 2))
            edges.append(EdgeClass(f"e{k}", order[i], order[j], rng.randint(1, max_mult)))
    return TopGraph(frozenset(names), tuple(edges))


def random_graph(rng, max_vertices=5, max_edges=6, max_mult=2, omega_prob=0.0, min_vertices=1):
    """Arbitrary graph: loops, parallel classes and OMEGA allowed."""
    n = rng.randint(min_vertices, max_vertices)
    names = [f"v{i}" for i in range(n)]
    edges = []
    if n:
        for k in range(rng.randint(0, max_edges)):
            edges.append(EdgeClass(f"e{k}", rng.choice(names), rng.choice(names), _mult(rng, max_mult, omega_prob)))
    return TopGraph(frozenset(names), tuple(edges))


def _split(rng, total):
    if total is OMEGA:
        return [OMEGA] if rng.random() < 0.7 else [OMEGA, rng.randint(1, 2)]
    parts, left = [], total
    while left:
        k = rng.randint(1, left)
        parts.append(k)
        left -= k
    return parts


def random_cover(rng, E: TopGraph, regular=False, tag="f", omega_prob=0.2, tries=200):
    """A random graph F with a valid factor map F -> E.

    Each covered vertex of E gets one or two copies; every edge class leaving
    a covered vertex is lifted at every copy with its multiplicity split into
    random parts.  Extra classes map to infinity.  With ``regular`` the result
    is filtered until the map is regular.
    """
    rg = classify_vertices(E).rg
    for _ in range(tries):
        seeds = {u for u in E.vertices if rng.random() < 0.7}
        covered, stack = set(seeds), list(seeds)
        while stack:
            u = stack.pop()
            for c in E.out_classes(u):
                if c.ran not in covered:
                    covered.add(c.ran)
                    stack.append(c.ran)
        vmap, copies = {}, {}
        for u in sorted(covered):
            copies[u] = [f"{tag}{u}_{i}" for i in range(rng.randint(1, 2))]
            for x in copies[u]:
                vmap[x] = u
        dead = [f"{tag}z{i}" for i in range(rng.randint(0, 2))]
        vertices = set(vmap) | set(dead)
        edges, emap, k = [], {}, 0
        for u in sorted(covered):
            for x in copies[u]:
                for c in E.out_classes(u):
                    for part in _split(rng, c.mult):
                        cid = f"{tag}{k}"
                        k += 1
                        edges.append(EdgeClass(cid, x, rng.choice(copies[c.ran]), part))
                        emap[cid] = c.id
        allowed = sorted(x for x in vertices if vmap.get(x) not in rg) if regular else sorted(vertices)
        for _ in range(rng.randint(0, 3)):
            if not allowed:
                break
            cid = f"{tag}{k}"
            k += 1
            edges.append(EdgeClass(cid, rng.choice(sorted(vertices)), rng.choice(allowed), _mult(rng, 2, omega_prob)))
        F = TopGraph(frozenset(vertices), tuple(edges))
        m = FactorMap(F, E, vmap, emap)
        if not regular:
            return F, m
        if is_regular(m):
            return F, m
    raise RuntimeError("could not generate a regular cover")


def random_automorphism_system(rng, max_vertices=6, max_seeds=5, omega_prob=0.15):
    """A graph with a vertex-bijective regular self-factor-map (a graph automorphism)."""
    n = rng.randint(1, max_vertices)
    names = [f"v{i}" for i in range(n)]
    perm_list = names[:]
    rng.shuffle(perm_list)
    perm = dict(zip(names, perm_list))
    edges, emap = [], {}
    for s in range(rng.randint(0, max_seeds)):
        a, b = rng.choice(names), rng.choice(names)
        mult = _mult(rng, 3, omega_prob)
        orbit = []
        x, y = a, b
        while True:
            orbit.append((x, y))
            x, y = perm[x], perm[y]
            if (x, y) == (a, b):
                break
        L = len(orbit)
        for k, (x, y) in enumerate(orbit):
            edges.append(EdgeClass(f"s{s}_{k}", x, y, mult))
            emap[f"s{s}_{k}"] = f"s{s}_{(k + 1) % L}"
    F = TopGraph(frozenset(names), tuple(edges))
    return F, FactorMap(F, F, perm, emap)


def random_stationary_system(rng, **kw):
    """A self-factor-map that is an automorphism ``a`` on a core copy of a graph E
    and ``a`` composed with a random cover map on a transient part.

    The limit is the core copy, relabelled with prefix ``1.``.
    """
    from topgraph.constructions import disjoint_union

    E, a = random_automorphism_system(rng, **kw)
    G, m = random_cover(rng, E, regular=rng.random() < 0.5, tag="g")
    F = disjoint_union(E, G)
    vmap = {"1." + x: "1." + a.v(x) for x in E.vertices}
    emap = {"1." + c: "1." + a.e(c) for c in E.edge_ids}
    for x in G.vertices:
        if m.v(x) is not None:
            vmap["2." + x] = "1." + a.v(m.v(x))
    for c in G.edge_ids:
        if m.e(c) is not None:
            emap["2." + c] = "1." + a.e(m.e(c))
    return F, FactorMap(F, F, vmap, emap), E


def random_tower(rng, g: TopGraph, max_stages=3):
    stages, prev = [], sorted(g.vertices)
    for k in range(rng.randint(0, max_stages)):
        if not prev:
            break
        xs = [f"t{k}_{i}" for i in range(rng.randint(1, 3))]
        edges, j = [], 0
        for x in xs:
            for _ in range(rng.randint(1, 2)):
                edges.append(EdgeClass(f"c{j}", rng.choice(prev), x, rng.randint(1, 3)))
                j += 1
        stages.append(TowerStage(frozenset(xs), tuple(edges)))
        prev = xs
    return stages


def hereditary_closure(g: TopGraph, V) -> frozenset:
    V, stack = set(V), list(V)
    while stack:
        u = stack.pop()
        for c in g.in_classes(u):
            if c.dom not in V:
                V.add(c.dom)
                stack.append(c.dom)
    return frozenset(V)


# -- oracles -----------------------------------------------------------------


def edge_instances(g: TopGraph):
    return [(c, k) for c in g.edges for k in range(1, c.mult + 1)]


def product_paths(g: TopGraph, max_len: int) -> list:
    """Every path of length <= max_len by filtering all edge-instance tuples.

    Returns ``(dom, ran, steps)`` triples with steps outermost first.
    Exponential in ``max_len``; for tiny graphs only.
    """
    inst = edge_instances(g)
    out = [(v, v, ()) for v in g.vertices]
    for n in range(1, max_len + 1):
        for combo in itertools.product(inst, repeat=n):
            # combo[0] is the outermost edge
            if all(combo[i][0].dom == combo[i + 1][0].ran for i in range(n - 1)):
                out.append((combo[-1][0].dom, combo[0][0].ran, tuple((c.id, k) for c, k in combo)))
    return out


def brute_force_paths(g: TopGraph, max_len: int) -> list:
    """Materialize every path of length <= max_len, one edge copy at a time."""
    out = []
    stack = [(v, v, ()) for v in sorted(g.vertices)]
    while stack:
        dom, ran, steps = stack.pop()
        out.append((dom, ran, steps))
        if len(steps) == max_len:
            continue
        for c in g.edges:
            if c.dom == ran:
                for k in range(1, c.mult + 1):
                    stack.append((dom, c.ran, ((c.id, k),) + steps))
    return out


def ordered_pair_count(g: TopGraph, domains=None) -> int:
    """Ordered pairs of paths sharing a domain, optionally restricted to ``domains``."""
    paths = brute_force_paths(g, max(len(g.vertices) - 1, 0))
    per = {}
    for dom, _, _ in paths:
        per[dom] = per.get(dom, 0) + 1
    return sum(k * k for v, k in per.items() if domains is None or v in domains)


def source_pair_count(g: TopGraph) -> int:
    return ordered_pair_count(g, classify_vertices(g).sce)


def ck_representation(g: TopGraph):
    """Concrete Cuntz-Krieger family on the span of paths starting at sources.

    ``P[v]`` projects onto paths ending at v; ``T[(c, k)]`` prepends the k-th
    copy of class c.  Only meaningful for finite acyclic graphs.
    """
    sources = classify_vertices(g).sce
    basis = [p for p in brute_force_paths(g, len(g.vertices)) if p[0] in sources]
    index = {p: i for i, p in enumerate(basis)}
    n = len(basis)
    P = {v: np.zeros((n, n)) for v in g.vertices}
    for i, (_, ran, _) in enumerate(basis):
        P[ran][i, i] = 1.0
    T = {}
    for c, k in edge_instances(g):
        M = np.zeros((n, n))
        for i, (dom, ran, steps) in enumerate(basis):
            if ran == c.dom:
                M[index[(dom, c.ran, ((c.id, k),) + steps)], i] = 1.0
        T[(c.id, k)] = M
    return P, T


def generated_algebra(generators, tol=1e-9):
    """Orthonormal basis (as flattened rows) of the *-algebra generated by matrices."""
    gens = []
    for G in generators:
        gens.append(G)
        gens.append(G.T.conj())
    if not gens:
        return np.zeros((0, 0))
    basis = np.zeros((0, gens[0].size))

    def add(M):
        nonlocal basis
        v = M.reshape(-1).astype(float)
        if basis.shape[0]:
            v = v - basis.T @ (basis @ v)
        norm = np.linalg.norm(v)
        if norm > tol:
            basis = np.vstack([basis, v / norm])
            return True
        return False

    frontier = [G for G in gens if add(G)]
    while frontier:
        new = []
        for A in frontier:
            for G in gens:
                for prod in (A @ G, G @ A):
                    if add(prod):
                        new.append(prod)
        frontier = new
    return basis


def algebra_dimension_and_center(g: TopGraph):
    """Dimension and number of simple summands of the algebra generated by the representation."""
    P, T = ck_representation(g)
    gens = list(P.values()) + list(T.values())
    basis = generated_algebra(gens)
    dim = basis.shape[0]
    if dim == 0:
        return 0, 0
    n = gens[0].shape[0]
    mats = [b.reshape(n, n) for b in basis]
    # center: combinations sum_i x_i B_i commuting with every generator
    rows = []
    for G in gens:
        rows.append(np.stack([(B @ G - G @ B).reshape(-1) for B in mats], axis=1))
    A = np.vstack(rows)
    rank = np.linalg.matrix_rank(A, tol=1e-8)
    return dim, dim - rank
