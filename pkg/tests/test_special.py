import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from deficiency_one import fixtures as F
from deficiency_one.digraph import DiGraph, excess_of
from deficiency_one.netmodel import RateAssignment, build_kinetic_matrix
from deficiency_one.forall import forall_condition
from deficiency_one.special import (
    chain_analysis,
    chain_order,
    theta_flux,
    tree_like_analysis,
    tree_like_structure,
)
from deficiency_one.steady import prepare, solve_theta
from deficiency_one.transship import exists_kappa_condition

from _gen import random_chain, random_instance, random_rates, random_tree_like


def rng_set(a, b):
    return frozenset(range(a, b + 1))


def tree22(h=None):
    if h is None:
        h = [16, 0, 0, 0, 0, 0] + [-1] * 16
    return F.with_h(F.tree22_graph(), h)


def test_tree22_structure():
    st_ = tree_like_structure(F.tree22_graph())
    assert st_.l == 7
    assert st_.parent[20] == 14
    assert st_.descendants[20] == {20, 21, 22}
    absent = {j for j, present in st_.reverse_arc.items() if not present}
    present = {j for j, p in st_.reverse_arc.items() if p}
    assert absent == {8, 10, 11, 12, 14, 15, 18, 19, 20, 21}
    assert present == {9, 13, 16, 17, 22}


def test_tree22_conditions():
    res = tree_like_analysis(tree22())
    exists = {frozenset(c.vertices) for c in res.exists_conditions}
    assert all(c.strict for c in res.exists_conditions)
    assert exists == {
        rng_set(7, 22), rng_set(8, 11), frozenset({10}), frozenset({11}), frozenset({12}),
        rng_set(14, 22), rng_set(15, 19), frozenset({18}), frozenset({19}),
        rng_set(20, 22), frozenset({21}),
    }
    extra = {frozenset(c.vertices) for c in res.forall_conditions if not c.strict}
    assert extra == {rng_set(9, 10), rng_set(13, 22), rng_set(16, 19), frozenset({17}), frozenset({22})}


def test_small_chain():
    inst = F.with_h(DiGraph.from_count(2, [(2, 1)]), (3, -3))
    res = chain_analysis(inst, {(2, 1): Fraction(3, 2)})
    assert res.is_chain and res.theta == {2: 2}
    assert res.exists_holds


def test_four_chain_conditions():
    g = DiGraph.from_count(4, [(2, 1), (3, 2), (4, 3), (2, 3), (3, 4)])
    res = chain_analysis(F.with_h(g, (3, -1, -1, -1)))
    assert [(c.vertices, c.strict) for c in res.forall_conditions] == [
        ((2, 3, 4), True), ((3, 4), False), ((4,), False),
    ]


def test_chain_is_tree_like_with_exit_2():
    g = DiGraph.from_count(4, [(2, 1), (3, 2), (4, 3), (2, 3), (3, 4)])
    assert tree_like_structure(g).l == 2


def test_not_a_chain():
    assert chain_order(F.eight_vertex_graph()) is None
    assert not chain_analysis(F.with_h(F.eight_vertex_graph(), F.EIGHT_VERTEX_GOOD_H)).is_chain
    assert not tree_like_analysis(F.with_h(F.eight_vertex_graph(), F.EIGHT_VERTEX_GOOD_H)).is_tree_like


def test_skip_down_arc_uses_entering_flux():
    # 4 -> 3 -> 2 -> 1 plus 2 -> 4: U(4) is entered although (3, 4) is absent.
    g = DiGraph.from_count(4, [(4, 3), (3, 2), (2, 1), (2, 4)])
    inst = F.with_h(g, (3, -1, -1, -1))
    st_ = tree_like_structure(g)
    assert st_.reverse_arc[4] is False and st_.entered[4] is True
    k = RateAssignment({(4, 3): 2, (3, 2): 3, (2, 1): 5, (2, 4): 7})
    res = tree_like_analysis(inst, k)
    assert res.theta == solve_theta(g, k, prepare(inst).h).values
    assert res.forall_holds == forall_condition(inst)[0]


def _check_recursion(inst, analysis, rng):
    inp = prepare(inst)
    k = random_rates(rng, inp.graph)
    res = analysis(inst, k)
    assert res.theta == solve_theta(inp.graph, k, inp.h).values
    assert res.exists_holds == exists_kappa_condition(inst)[0]
    assert res.forall_holds == (res.exists_holds and forall_condition(inst)[0])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_chain_recursion(seed):
    rng = random.Random(seed)
    inst = random_chain(rng)
    assert chain_analysis(inst).is_chain
    _check_recursion(inst, chain_analysis, rng)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_tree_like_recursion(seed):
    rng = random.Random(seed)
    inst = random_tree_like(rng)
    assert tree_like_analysis(inst).is_tree_like
    _check_recursion(inst, tree_like_analysis, rng)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_excess_of_flux_equals_h(seed):
    """With z = kappa * theta and h = I theta, the excess of any set is its h-sum."""
    rng = random.Random(seed)
    inst = random_instance(rng, c_max=7)
    g = inst.graph
    k = random_rates(rng, g)
    theta = {v: Fraction(rng.randint(1, 9), rng.randint(1, 9)) for v in g.vertices}
    m = build_kinetic_matrix(g, k).as_lists()
    h = {v: sum(m[a][b] * theta[w] for b, w in enumerate(g.vertices)) for a, v in enumerate(g.vertices)}
    z = theta_flux(g, k, theta)
    u = [v for v in g.vertices if rng.random() < 0.5]
    assert excess_of(g, z, u) == sum((h[v] for v in u), Fraction(0))
