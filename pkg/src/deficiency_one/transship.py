"""Positive h-transshipments: feasibility tests and explicit construction.

An h-transshipment is an arc function ``z`` whose excess at every vertex
equals ``h``. Read as rate coefficients, a positive one gives rates for which
the all-ones vector solves ``I_kappa theta = h``, so it certifies that
positive steady states exist for some choice of rates.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .digraph import Arc, DiGraph, closed_sets, excess_of
from .netmodel import RateAssignment
from .steady import Condition, prepare

#: Largest vertex count for which subset enumeration is used.
SUBSET_ENUMERATION_CAP = 20
#: Largest vertex count for which the upper bound ``K`` is computed exactly.
EXACT_K_CAP = 14


@dataclass(frozen=True)
class FlowBounds:
    lower: Dict[Arc, Fraction]
    upper: Dict[Arc, Fraction]

    def __post_init__(self):
        if set(self.lower) != set(self.upper):
            raise ValueError("lower and upper bounds must cover the same arcs")
        for a in self.lower:
            if self.lower[a] > self.upper[a]:
                raise ValueError(f"lower bound exceeds upper bound on {a}")

    @classmethod
    def constant(cls, arcs, lo, hi) -> "FlowBounds":
        lo, hi = Fraction(lo), Fraction(hi)
        return cls({a: lo for a in arcs}, {a: hi for a in arcs})


@dataclass(frozen=True)
class TransshipmentResult:
    exists: bool
    witness: Optional[Dict[Arc, Fraction]]
    eps: Optional[Fraction]
    K: Optional[Fraction]
    closed: Tuple[frozenset, ...] = ()


def _check_h(graph: DiGraph, h: Mapping[int, Fraction]) -> Dict[int, Fraction]:
    hv = {v: Fraction(h[v]) for v in graph.vertices}
    if sum(hv.values()) != 0:
        raise ValueError("h(V) must be zero")
    return hv


def hoffman_feasible(graph: DiGraph, bounds: FlowBounds, h: Mapping[int, Fraction]) -> bool:
    """Cut criterion for an h-transshipment within ``bounds``.

    Checks ``upper(in(U)) - lower(out(U)) >= h(U)`` for every vertex set ``U``.
    Above :data:`SUBSET_ENUMERATION_CAP` vertices the answer comes from the
    flow construction instead.
    """
    hv = _check_h(graph, h)
    if set(bounds.lower) != set(graph.arcs):
        raise ValueError("bounds must be given on every arc")
    verts = list(graph.vertices)
    n = len(verts)
    if n > SUBSET_ENUMERATION_CAP:
        return feasible_transshipment(graph, bounds, hv) is not None
    bit = {v: 1 << k for k, v in enumerate(verts)}
    arcs = [(bit[i], bit[j], bounds.lower[(i, j)], bounds.upper[(i, j)]) for i, j in graph.arcs]
    hbits = [hv[v] for v in verts]
    for mask in range(1, 1 << n):
        hu = sum((hbits[k] for k in range(n) if mask >> k & 1), Fraction(0))
        cap = Fraction(0)
        for bi, bj, lo, hi in arcs:
            tail_in, head_in = bool(mask & bi), bool(mask & bj)
            if head_in and not tail_in:
                cap += hi
            elif tail_in and not head_in:
                cap -= lo
        if cap < hu:
            return False
    return True


class _FlowNetwork:
    """Edmonds-Karp max flow with exact rational capacities."""

    def __init__(self):
        self.adj: Dict[object, List[int]] = {}
        self.head: List[object] = []
        self.cap: List[Fraction] = []

    def add_edge(self, u, v, cap: Fraction) -> int:
        """Add ``u -> v`` and its residual twin; returns the forward edge id."""
        for x in (u, v):
            self.adj.setdefault(x, [])
        eid = len(self.head)
        self.head += [v, u]
        self.cap += [Fraction(cap), Fraction(0)]
        self.adj[u].append(eid)
        self.adj[v].append(eid + 1)
        return eid

    def max_flow(self, s, t) -> Fraction:
        total = Fraction(0)
        if s not in self.adj or t not in self.adj:
            return total
        while True:
            prev: Dict[object, int] = {}
            seen = {s}
            queue = deque([s])
            while queue and t not in seen:
                u = queue.popleft()
                for e in self.adj[u]:
                    v = self.head[e]
                    if v not in seen and self.cap[e] > 0:
                        seen.add(v)
                        prev[v] = e
                        queue.append(v)
            if t not in seen:
                return total
            push = None
            v = t
            while v != s:
                e = prev[v]
                push = self.cap[e] if push is None else min(push, self.cap[e])
                v = self.head[e ^ 1]
            v = t
            while v != s:
                e = prev[v]
                self.cap[e] -= push
                self.cap[e ^ 1] += push
                v = self.head[e ^ 1]
            total += push


def feasible_transshipment(
    graph: DiGraph, bounds: FlowBounds, h: Mapping[int, Fraction]
) -> Optional[Dict[Arc, Fraction]]:
    """Construct an h-transshipment ``z`` with ``lower <= z <= upper``, or return ``None``.

    The lower bounds are shifted out, leaving a supply/demand problem on
    capacities ``upper - lower`` that is solved as a single-source,
    single-sink max flow.
    """
    hv = _check_h(graph, h)
    lower = bounds.lower
    need = dict(hv)
    for (i, j), lo in lower.items():
        need[j] -= lo
        need[i] += lo
    net = _FlowNetwork()
    src, snk = ("source",), ("sink",)
    ids = {}
    for a in graph.sorted_arcs():
        ids[a] = net.add_edge(a[0], a[1], bounds.upper[a] - lower[a])
    demand = Fraction(0)
    for v, b in need.items():
        if b > 0:
            net.add_edge(v, snk, b)
            demand += b
        elif b < 0:
            net.add_edge(src, v, -b)
    if net.max_flow(src, snk) != demand:
        return None
    # flow on a forward edge = capacity moved onto its twin
    return {a: lower[a] + net.cap[e ^ 1] for a, e in ids.items()}


def eps_and_K(graph: DiGraph, h: Mapping[int, Fraction], closed: Optional[List[frozenset]] = None) -> Tuple[Fraction, Fraction]:
    """Bounds ``0 < eps <= K`` inside which a positive h-transshipment must exist.

    ``eps`` is the smallest ``-h(U)/|out(U)|`` over closed sets (capped at 1).
    ``K`` is the largest ``(h(U) + eps |out(U)|) / |in(U)|`` over sets with an
    entering arc; above :data:`EXACT_K_CAP` vertices the safe bound
    ``sum of positive h + eps |A|`` is used instead.
    """
    hv = _check_h(graph, h)
    if closed is None:
        closed = closed_sets(graph)
    eps = Fraction(1)
    for u in closed:
        eps = min(eps, -sum(hv[v] for v in u) / len(graph.arcs_out(u)))
    verts = list(graph.vertices)
    n = len(verts)
    if n > EXACT_K_CAP:
        K = max(eps, sum(x for x in hv.values() if x > 0) + eps * len(graph.arcs))
        return eps, K
    bit = {v: 1 << k for k, v in enumerate(verts)}
    arcs = [(bit[i], bit[j]) for i, j in graph.arcs]
    hbits = [hv[v] for v in verts]
    K = eps
    for mask in range(1, (1 << n) - 1):
        n_in = n_out = 0
        for bi, bj in arcs:
            tail_in, head_in = bool(mask & bi), bool(mask & bj)
            if head_in and not tail_in:
                n_in += 1
            elif tail_in and not head_in:
                n_out += 1
        if n_in:
            hu = sum((hbits[k] for k in range(n) if mask >> k & 1), Fraction(0))
            K = max(K, (hu + eps * n_out) / n_in)
    return eps, K


def positive_transshipment(graph: DiGraph, h: Mapping[int, Fraction]) -> TransshipmentResult:
    """Decide whether a strictly positive h-transshipment exists and build one.

    It exists exactly when ``h(U) < 0`` for every closed set ``U`` (nonempty,
    proper, no entering arc). The witness lies in ``[eps, K]`` arcwise.

    Raises:
        ValueError: if the graph is not weakly connected or ``h(V) != 0``.
    """
    hv = _check_h(graph, h)
    if graph.components.weak_count != 1:
        raise ValueError("graph must be weakly connected")
    closed = closed_sets(graph)
    if any(sum(hv[v] for v in u) >= 0 for u in closed):
        return TransshipmentResult(False, None, None, None, tuple(closed))
    eps, K = eps_and_K(graph, hv, closed)
    z = feasible_transshipment(graph, FlowBounds.constant(graph.arcs, eps, K), hv)
    if z is None:
        raise AssertionError("closed-set condition holds but no transshipment was constructed")
    for v in graph.vertices:
        if excess_of(graph, z, {v}) != hv[v]:
            raise AssertionError("constructed transshipment has the wrong excess")
    return TransshipmentResult(True, z, eps, K, tuple(closed))


def exists_kappa_condition(instance) -> Tuple[bool, List[Condition], Optional[RateAssignment]]:
    """Closed-set criterion for the existence of suitable rates.

    Returns:
        ``(holds, conditions, witness)``: one strict condition per closed set,
        and, when all hold, the positive transshipment used as rates.
    """
    inp = prepare(instance)
    inp.require_general_case()
    conds = [Condition.evaluate(u, True, inp.h) for u in closed_sets(inp.graph)]
    holds = all(c.satisfied for c in conds)
    witness = None
    if holds:
        res = positive_transshipment(inp.graph, inp.h)
        witness = RateAssignment(res.witness)
    return holds, conds, witness
