import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deficiency_one import fixtures as F
from deficiency_one import linalg
from deficiency_one.digraph import DiGraph
from deficiency_one.netmodel import GraphHInstance, RateAssignment, parse_inputs
from deficiency_one.steady import (
    OutOfScopeError,
    Verdict,
    classify,
    compute_deficiency,
    compute_h,
    exists_for_kappa,
    prepare,
    sample_kappa,
    sampling_check,
    solve_theta,
)
from deficiency_one.transship import positive_transshipment

from _gen import random_instance, random_rates


def test_net1_deficiency_and_h():
    net = F.net1()
    assert compute_deficiency(net) == (1, 1, 1)
    h = compute_h(net)
    vals = [h.values[k] for k in range(len(h.values))]
    assert sum(vals) == 0
    assert linalg.matvec(net.complex_matrix, vals) == [0] * net.n
    assert vals == [-1, 1, -1, 1]
    assert sum(vals[:3]) <= 0


def test_invertible_complex_matrix_gives_deficiency_zero():
    net = parse_inputs("species A B\ncomplex 1 = A\ncomplex 2 = B\nreaction 1 -> 2\n")
    assert compute_deficiency(net)[0] == 0
    with pytest.raises(OutOfScopeError):
        compute_h(net)


def test_deficiency_zero_verdicts():
    rev = parse_inputs("species A B\ncomplex 1 = A\ncomplex 2 = B\nreaction 1 -> 2\nreaction 2 -> 1\n")
    assert classify(rev).verdict is Verdict.ALWAYS_NONEMPTY
    one_way = parse_inputs("species A B\ncomplex 1 = A\ncomplex 2 = B\nreaction 1 -> 2\n")
    assert classify(one_way).verdict is Verdict.ALWAYS_EMPTY


def test_higher_deficiency_is_out_of_scope():
    text = "species A\n" + "".join(f"complex {k} = {k} A\n" for k in range(1, 5))
    text += "reaction 1 -> 2\nreaction 2 -> 3\nreaction 3 -> 4\n"
    with pytest.raises(OutOfScopeError):
        classify(parse_inputs(text))


def test_chain_theta_at_unit_rates():
    g = DiGraph.from_count(3, [(2, 1), (3, 2), (2, 3)])
    h = (Fraction(3), Fraction(-1), Fraction(-2))
    th = solve_theta(g, RateAssignment.uniform(g.arcs), h).values
    assert th[2] == -(h[1] + h[2])
    assert th[3] == th[2] - h[2]


def test_transshipment_rates_give_unit_theta():
    inst = F.with_h(F.nine_vertex_graph(), (9, 0, 0, 0, -2, -1, -3, -1, -2))
    inp = prepare(inst)
    res = positive_transshipment(inp.graph, inp.h)
    th = solve_theta(inp.graph, RateAssignment(res.witness), inp.h).values
    assert set(th.values()) == {1}


def test_zero_total_on_nonabsorbing_never_positive():
    inst = F.with_h(F.eight_vertex_graph(), (0, -1, 1, 0, 0, 0, 0, 0))
    rng = random.Random(1)
    for _ in range(30):
        assert not exists_for_kappa(inst, sample_kappa(inst.graph.arcs, rng))


def test_eight_vertex_verdicts():
    assert classify(F.with_h(F.eight_vertex_graph(), F.EIGHT_VERTEX_GOOD_H)).verdict is Verdict.ALWAYS_NONEMPTY
    assert classify(F.with_h(F.eight_vertex_graph(), (2, -2, 0, 0, 0, 0, 0, 0))).verdict is Verdict.ALWAYS_EMPTY


def test_network_fixtures():
    r1 = classify(F.net1())
    assert r1.verdict is Verdict.DEPENDS_ON_KAPPA
    assert exists_for_kappa(F.net1(), r1.witness_kappa)
    assert not exists_for_kappa(F.net1(), r1.falsifier_kappa)
    assert classify(F.net2()).verdict is Verdict.ALWAYS_NONEMPTY


def test_strongly_connected_deficiency_one():
    text = "species A\ncomplex 1 = A\ncomplex 2 = 2 A\ncomplex 3 = 3 A\n"
    text += "reaction 1 -> 2\nreaction 2 -> 3\nreaction 3 -> 1\n"
    net = parse_inputs(text)
    assert compute_deficiency(net)[0] == 1
    assert classify(net).verdict is Verdict.ALWAYS_NONEMPTY


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_theta_residual_and_scaling_invariance(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, c_max=7)
    inp = prepare(inst)
    kappa = random_rates(rng, inp.graph)
    th = solve_theta(inp.graph, kappa, inp.h)
    double = GraphHInstance(inst.graph, tuple(2 * x for x in inst.h))
    assert classify(inst, find_falsifier=False).verdict == classify(double, find_falsifier=False).verdict
    th2 = solve_theta(inp.graph, kappa, prepare(double).h)
    assert all(th2.values[v] == 2 * th.values[v] for v in th.values)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**9))
def test_sampling_agrees_with_verdict(seed):
    inst = random_instance(random.Random(seed), c_max=6)
    res = classify(inst)
    assert sampling_check(inst, res, samples=20, seed=seed).consistent or (
        res.verdict is Verdict.DEPENDS_ON_KAPPA and res.falsifier_kappa is None
    )
