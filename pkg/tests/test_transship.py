import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deficiency_one import fixtures as F
from deficiency_one.digraph import DiGraph, closed_sets, excess_of
from deficiency_one.steady import exists_for_kappa, prepare
from deficiency_one.transship import (
    FlowBounds,
    eps_and_K,
    exists_kappa_condition,
    feasible_transshipment,
    hoffman_feasible,
    positive_transshipment,
)

from _gen import random_graph, random_instance

NINE_H = (9, 0, 0, 0, -2, -1, -3, -1, -2)


def two_vertex():
    return DiGraph.from_count(2, [(1, 2)])


def test_single_arc_bounds():
    g = two_vertex()
    b = FlowBounds.constant(g.arcs, 0, 2)
    h = {1: Fraction(-3, 2), 2: Fraction(3, 2)}
    assert hoffman_feasible(g, b, h)
    assert feasible_transshipment(g, b, h) == {(1, 2): Fraction(3, 2)}
    bad = {1: Fraction(-3), 2: Fraction(3)}
    assert not hoffman_feasible(g, b, bad)
    assert feasible_transshipment(g, b, bad) is None


@pytest.mark.parametrize("q, eps", [(Fraction(1, 2), Fraction(1, 2)), (Fraction(3), Fraction(1))])
def test_single_arc_positive(q, eps):
    res = positive_transshipment(two_vertex(), {1: -q, 2: q})
    assert res.exists
    assert res.witness == {(1, 2): q}
    assert res.eps == eps


def test_nine_vertex_conditions_and_witness():
    inst = F.with_h(F.nine_vertex_graph(), NINE_H)
    holds, conds, witness = exists_kappa_condition(inst)
    assert holds
    want = {frozenset(s) for s in ({5, 6, 7}, {7}, {7, 8}, {7, 8, 9}, {5, 6, 7, 8}, {5, 6, 7, 8, 9})}
    assert {frozenset(c.vertices) for c in conds} == want
    assert all(c.strict for c in conds)
    assert exists_for_kappa(inst, witness)


def test_nine_vertex_single_violation():
    h = list(NINE_H)
    h[6] += 3  # h7 = 0 now
    h[0] -= 3
    holds, conds, witness = exists_kappa_condition(F.with_h(F.nine_vertex_graph(), h))
    assert not holds and witness is None
    assert [c.vertices for c in conds if not c.satisfied] == [(7,)]


def test_bad_input():
    g = DiGraph.from_count(3, [(1, 2)])
    with pytest.raises(ValueError):
        positive_transshipment(g, {1: -1, 2: 1, 3: 0})
    with pytest.raises(ValueError):
        positive_transshipment(two_vertex(), {1: -1, 2: 2})


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_existence_equivalence(seed):
    inst = random_instance(random.Random(seed))
    inp = prepare(inst)
    g, h = inp.graph, inp.h
    closed_ok = all(sum(h[v] for v in u) < 0 for u in closed_sets(g))
    res = positive_transshipment(g, h)
    assert res.exists == closed_ok
    if res.exists:
        assert all(z >= res.eps > 0 for z in res.witness.values())
        assert all(excess_of(g, res.witness, {v}) == h[v] for v in g.vertices)
        assert hoffman_feasible(g, FlowBounds.constant(g.arcs, res.eps, res.K), h)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_hoffman_vs_construction(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(2, 8), 0.35)
    lower = {a: Fraction(rng.randint(0, 3)) for a in g.arcs}
    upper = {a: lower[a] + rng.randint(0, 4) for a in g.arcs}
    verts = list(g.vertices)
    h = {v: Fraction(rng.randint(-4, 4)) for v in verts}
    h[verts[0]] -= sum(h.values())
    b = FlowBounds(lower, upper)
    z = feasible_transshipment(g, b, h)
    assert hoffman_feasible(g, b, h) == (z is not None)
    if z is not None:
        assert all(lower[a] <= z[a] <= upper[a] for a in g.arcs)
        assert all(excess_of(g, z, {v}) == h[v] for v in verts)


def test_K_bound_dominates_eps():
    inst = F.with_h(F.eight_vertex_graph(), F.EIGHT_VERTEX_GOOD_H)
    inp = prepare(inst)
    eps, K = eps_and_K(inp.graph, inp.h)
    assert 0 < eps <= K
