import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import line_graph
from gen import brute_force_paths, product_paths, random_graph
from topgraph.cardinal import OMEGA, card_sum, parse_cardinal
from topgraph.errors import DanglingEndpoint, DuplicateId, HasLoops
from topgraph.graph import (
    EdgeClass,
    TopGraph,
    classify_vertices,
    enumerate_paths,
    is_topologically_free,
    loops,
    path_count_from,
    relabel,
    validate_graph,
)


# -- cardinals ---------------------------------------------------------------


def test_omega_absorbs():
    assert 3 + OMEGA is OMEGA
    assert OMEGA + 3 is OMEGA
    assert card_sum([1, 2, 3]) == 6
    assert card_sum([1, OMEGA, 2]) is OMEGA
    assert 0 * OMEGA == 0
    assert 2 * OMEGA is OMEGA


@given(st.integers(min_value=0, max_value=10**9))
def test_every_finite_value_below_omega(n):
    assert n < OMEGA
    assert OMEGA > n
    assert not OMEGA < n


@given(st.lists(st.one_of(st.integers(1, 50), st.just(OMEGA)), max_size=6))
def test_sum_order_independent(xs):
    assert card_sum(xs) == card_sum(reversed(xs))
    assert (card_sum(xs) is OMEGA) == (OMEGA in xs)


def test_parse_cardinal():
    assert parse_cardinal("omega") is OMEGA
    assert parse_cardinal(4) == 4
    for bad in (0, -1, "7", 1.5, True):
        with pytest.raises(ValueError):
            parse_cardinal(bad)


# -- validation --------------------------------------------------------------


def test_validate_empty():
    validate_graph(TopGraph(frozenset()))


def test_validate_minimal():
    validate_graph(TopGraph.build(["v", "w"], [("e", "v", "w", 1)]))


def test_validate_dangling():
    with pytest.raises(DanglingEndpoint):
        validate_graph(TopGraph.build(["v"], [("e", "v", "u", 1)]))


def test_validate_duplicate():
    g = TopGraph.build(["v"], [("e", "v", "v", 1), ("e", "v", "v", 2)])
    with pytest.raises(DuplicateId):
        validate_graph(g)


# -- classification ----------------------------------------------------------


def test_classify_ex1(ex1_F):
    c = classify_vertices(ex1_F)
    assert c.sce == {"v", "v'"}
    assert c.inf == {"w"}
    assert c.rg == set()


def test_classify_edge():
    c = classify_vertices(TopGraph.build(["v", "w"], [("e", "v", "w", 1)]))
    assert (c.sce, c.inf, c.rg) == ({"v"}, set(), {"w"})
    assert c.fin == {"v", "w"}
    assert c.sg == {"v"}


def test_classify_isolated():
    c = classify_vertices(TopGraph.build(["v"]))
    assert (c.sce, c.inf, c.rg) == ({"v"}, set(), set())


@settings(max_examples=200)
@given(st.integers(0, 10**6))
def test_classification_partitions(seed):
    g = random_graph(random.Random(seed), omega_prob=0.2)
    c = classify_vertices(g)
    assert c.sce | c.inf | c.rg == g.vertices
    assert not (c.sce & c.inf or c.sce & c.rg or c.inf & c.rg)
    assert c.fin == g.vertices - c.inf
    assert c.sg == c.sce | c.inf
    assert c.rg == c.fin - c.sce
    for v in g.vertices:
        deg = card_sum(e.mult for e in g.edges if e.ran == v)
        assert (v in c.sce) == (deg == 0)
        assert (v in c.inf) == (deg is OMEGA)


# -- paths -------------------------------------------------------------------


def test_paths_line():
    pe = enumerate_paths(line_graph(3), 2)
    assert [pe.count(n) for n in range(3)] == [3, 2, 1]
    assert len(pe.paths) == 6


def test_paths_multiplicity():
    g = TopGraph.build(["v", "w"], [("e", "v", "w", 2)])
    pe = enumerate_paths(g, 1)
    assert {str(p) for p in pe.paths} == {"v", "w", "(e#1)", "(e#2)"}


def test_paths_omega(ex1_F):
    pe = enumerate_paths(ex1_F, 1)
    assert pe.count(1, "v'") is OMEGA
    assert pe.count(1, "v") == 1
    assert pe.count(1) is OMEGA
    # the infinite class is counted, never listed
    assert all("E1" not in p.classes for p in pe.paths)


def test_path_composition_convention():
    g = line_graph(3)
    (p,) = [p for p in enumerate_paths(g, 2).paths if len(p) == 2]
    # outermost edge first: l1 is traversed after l0
    assert p.classes == ("l1", "l0")
    assert (p.dom, p.ran) == ("p0", "p2")


@settings(max_examples=100)
@given(st.integers(0, 10**6), st.integers(0, 3))
def test_paths_match_brute_force(seed, n):
    g = random_graph(random.Random(seed), max_vertices=4, max_edges=4, max_mult=2)
    pe = enumerate_paths(g, n)
    listed = sorted((p.dom, p.ran, p.steps) for p in pe.paths)
    assert listed == sorted(product_paths(g, n))
    assert listed == sorted(brute_force_paths(g, n))
    for k in range(n + 1):
        assert pe.count(k) == sum(1 for p in listed if len(p[2]) == k)


@settings(max_examples=100)
@given(st.integers(0, 10**6), st.integers(0, 3))
def test_paths_prefix_stable(seed, n):
    g = random_graph(random.Random(seed), max_vertices=4, max_edges=5, omega_prob=0.2)
    short, long_ = enumerate_paths(g, n), enumerate_paths(g, n + 1)
    assert [p for p in long_.paths if len(p) <= n] == list(short.paths)
    assert all(short.counts[k] == long_.counts[k] for k in short.counts)


def test_path_count_line():
    g = line_graph(3)
    assert path_count_from(g, "p0") == 3
    assert path_count_from(g, "p0") == enumerate_paths(g, len(g)).total("p0")


def test_path_count_isolated():
    assert path_count_from(TopGraph.build(["v"]), "v") == 1


def test_path_count_star():
    g = TopGraph.build(["v", "w1", "w2"], [("a", "v", "w1", 1), ("b", "v", "w2", 1)])
    assert path_count_from(g, "v") == 3
    assert sum(1 for p in brute_force_paths(g, 3) if p[0] == "v") == 3


def test_path_count_omega(ex1_F):
    assert path_count_from(ex1_F, "v'") is OMEGA


def test_path_count_rejects_loops():
    with pytest.raises(HasLoops):
        path_count_from(TopGraph.build(["v"], [("e", "v", "v", 1)]), "v")


# -- loops and freeness ------------------------------------------------------


def test_loops_self_edge():
    found = loops(TopGraph.build(["v"], [("e", "v", "v", 1)]), 2)
    assert sorted(len(p) for p in found) == [1, 2]
    assert all(p.dom == p.ran == "v" for p in found)


def test_loops_acyclic():
    assert loops(line_graph(4), 3) == []


def test_loops_two_cycle():
    g = TopGraph.build(["v", "w"], [("a", "v", "w", 1), ("b", "w", "v", 1)])
    found = loops(g, 2)
    assert sorted(p.dom for p in found) == ["v", "w"]
    assert all(len(p) == 2 for p in found)


def test_free_single_loop():
    free, witness = is_topologically_free(TopGraph.build(["v"], [("e", "v", "v", 1)]))
    assert not free
    assert witness.steps == (("e", 1),) and witness.dom == "v"


def test_free_double_loop():
    assert is_topologically_free(TopGraph.build(["v"], [("e", "v", "v", 2)])) == (True, None)


def test_free_acyclic():
    assert is_topologically_free(line_graph(4))[0]


def test_free_cycle_with_entrance():
    g = TopGraph.build(["a", "b", "c"], [("x", "a", "b", 1), ("y", "b", "a", 1), ("z", "c", "a", 1)])
    assert is_topologically_free(g)[0]


def _brute_free(g, max_len):
    """Free iff no loop of length <= |V| visits only vertices of indegree 1."""
    for p in loops(g, max_len):
        verts = {g.edge(cid).ran for cid in p.classes}
        if all(g.indegree(v) == 1 for v in verts):
            return False
    return True


@settings(max_examples=200)
@given(st.integers(0, 10**6))
def test_free_matches_loop_search(seed):
    g = random_graph(random.Random(seed), max_vertices=4, max_edges=5, max_mult=2)
    free, witness = is_topologically_free(g)
    assert free == _brute_free(g, len(g))
    if not free:
        assert witness.dom == witness.ran
        verts = {g.edge(cid).ran for cid in witness.classes}
        assert all(g.indegree(v) == 1 for v in verts)
        # consecutive steps chain
        for (outer, _), (inner, _) in zip(witness.steps, witness.steps[1:]):
            assert g.edge(outer).dom == g.edge(inner).ran


@settings(max_examples=100)
@given(st.integers(0, 10**6))
def test_free_relabel_invariant(seed):
    rng = random.Random(seed)
    g = random_graph(rng, max_vertices=4, max_edges=5)
    vs = sorted(g.vertices)
    shuffled = vs[:]
    rng.shuffle(shuffled)
    h = relabel(g, {v: "r" + w for v, w in zip(vs, shuffled)}, {c.id: "q" + c.id for c in g.edges})
    assert is_topologically_free(g)[0] == is_topologically_free(h)[0]


def test_edgeclass_defaults():
    assert EdgeClass("e", "a", "b").mult == 1
