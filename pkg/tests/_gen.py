"""Random instance generators shared by the property and acceptance suites."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional

from deficiency_one.digraph import DiGraph
from deficiency_one.netmodel import GraphHInstance, RateAssignment


def random_graph(rng: random.Random, c: int, p: float) -> DiGraph:
    arcs = [(i, j) for i in range(1, c + 1) for j in range(1, c + 1) if i != j and rng.random() < p]
    return DiGraph.from_count(c, arcs)


def random_instance(rng: random.Random, c_max: int = 8, h_low: int = -3, h_high: int = 2) -> GraphHInstance:
    """Graph with one linkage class, one absorbing component, not strongly connected.

    h is integral with zero sum. Non-absorbing values are drawn from
    ``[h_low, h_high]`` and the absorbing part takes up the remainder, so
    every verdict shows up regularly.
    """
    while True:
        c = rng.randint(2, c_max)
        g = random_graph(rng, c, rng.uniform(0.15, 0.45))
        cs = g.components
        if cs.ell != 1 or cs.t != 1 or cs.strongly_connected:
            continue
        absorbing = set(cs.absorbing_vertices())
        h = {v: 0 for v in g.vertices}
        for v in g.vertices:
            if v not in absorbing:
                h[v] = rng.randint(h_low, h_high)
        rest = -sum(h.values())
        targets = sorted(absorbing)
        for k, v in enumerate(targets):
            share = rest // len(targets) + (1 if k < rest % len(targets) else 0)
            h[v] = share
        if all(x == 0 for x in h.values()):
            continue
        return GraphHInstance(g, tuple(Fraction(h[v]) for v in g.vertices))


def random_rates(rng: random.Random, g: DiGraph, top: int = 9) -> RateAssignment:
    return RateAssignment({a: Fraction(rng.randint(1, top), rng.randint(1, top)) for a in g.sorted_arcs()})


def relabel(instance: GraphHInstance, perm: List[int]) -> GraphHInstance:
    """Rename vertex ``v`` to ``perm[v - 1]``."""
    g = instance.graph
    arcs = [(perm[i - 1], perm[j - 1]) for i, j in g.arcs]
    h = [Fraction(0)] * len(g)
    for v, x in zip(g.vertices, instance.h):
        h[perm[v - 1] - 1] = x
    return GraphHInstance(DiGraph.from_count(len(g), arcs), tuple(h))


def random_chain(rng: random.Random, c: Optional[int] = None) -> GraphHInstance:
    c = c or rng.randint(2, 8)
    order = list(range(1, c + 1))
    rng.shuffle(order)
    arcs = [(order[k], order[k - 1]) for k in range(1, c)]
    arcs += [(order[k - 1], order[k]) for k in range(2, c)]
    return _with_random_h(rng, DiGraph.from_count(c, arcs), {order[0]})


def random_tree_like(rng: random.Random, c_max: int = 10) -> GraphHInstance:
    """Absorbing cycle plus an in-tree towards a single exit vertex.

    Optional reverse arcs ``p(j) -> j`` and skip-down arcs from an ancestor
    into a descendant keep the path to the exit vertex unique.
    """
    while True:
        c = rng.randint(3, c_max)
        k = rng.randint(1, min(3, c - 2))
        absorbing = list(range(1, k + 1))
        arcs = set()
        if k > 1:
            arcs |= {(absorbing[m], absorbing[(m + 1) % k]) for m in range(k)}
        l = k + 1
        arcs |= {(l, a) for a in absorbing if rng.random() < 0.6} or {(l, absorbing[0])}
        if not any(a == l for a, _ in arcs):
            arcs.add((l, absorbing[0]))
        parent = {}
        for v in range(l + 1, c + 1):
            parent[v] = rng.randint(l, v - 1)
            arcs.add((v, parent[v]))
            if rng.random() < 0.4:
                arcs.add((parent[v], v))
        for v in range(l + 1, c + 1):
            anc = []
            w = parent[v]
            while w in parent:
                w = parent[w]
                anc.append(w)
            if anc and rng.random() < 0.15:
                arcs.add((rng.choice(anc), v))
        g = DiGraph.from_count(c, arcs)
        cs = g.components
        if cs.ell == 1 and cs.t == 1 and not cs.strongly_connected:
            return _with_random_h(rng, g, set(cs.absorbing_vertices()))


def _with_random_h(rng: random.Random, g: DiGraph, absorbing) -> GraphHInstance:
    h = {v: (rng.randint(-3, 1) if v not in absorbing else 0) for v in g.vertices}
    rest = -sum(h.values())
    first = min(absorbing)
    h[first] = rest
    if all(x == 0 for x in h.values()):
        h[first], h[max(g.vertices)] = Fraction(1), Fraction(-1)
        if max(g.vertices) == first:
            h = {v: 0 for v in g.vertices}
            other = next(v for v in g.vertices if v != first)
            h[first], h[other] = 1, -1
    return GraphHInstance(g, tuple(Fraction(h[v]) for v in g.vertices))
