"""Closed-form recursions for chain-shaped and tree-like complex graphs.

Both shapes funnel every non-absorbing complex through a single exit vertex
``l`` along a unique path. Then ``theta''`` can be read off level by level
from flux balances across the descendant sets, and the existence conditions
become simple sign conditions on those sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from .digraph import Arc, DiGraph
from .netmodel import RateAssignment
from .steady import Condition, OutOfScopeError, prepare

#: Stop counting simple paths once this many are found.
_PATH_LIMIT = 2


@dataclass(frozen=True)
class ChainResult:
    is_chain: bool
    order: Tuple[int, ...] = ()
    theta: Optional[Dict[int, Fraction]] = None
    exists_conditions: Tuple[Condition, ...] = ()
    forall_conditions: Tuple[Condition, ...] = ()

    @property
    def exists_holds(self) -> bool:
        return all(c.satisfied for c in self.exists_conditions)

    @property
    def forall_holds(self) -> bool:
        return all(c.satisfied for c in self.forall_conditions)


@dataclass(frozen=True)
class TreeLikeStructure:
    """Exit vertex, parents and descendant sets of a tree-like graph.

    Attributes:
        l: the only non-absorbing vertex with an arc into the absorbing part.
        parent: ``j -> p(j)`` for non-absorbing ``j != l``.
        descendants: ``j -> U(j)``, the vertices whose path to ``l`` meets ``j``.
        reverse_arc: ``j -> whether (p(j), j) is an arc``.
        entered: ``j -> whether any arc enters U(j)``. Equals ``reverse_arc``
            unless an ancestor of ``j`` has an arc skipping down into ``U(j)``.
        depth: distance to ``l`` along the unique path.
    """

    l: int
    parent: Dict[int, int]
    descendants: Dict[int, FrozenSet[int]]
    reverse_arc: Dict[int, bool]
    entered: Dict[int, bool]
    depth: Dict[int, int]


@dataclass(frozen=True)
class TreeLikeResult:
    is_tree_like: bool
    structure: Optional[TreeLikeStructure] = None
    theta: Optional[Dict[int, Fraction]] = None
    exists_conditions: Tuple[Condition, ...] = ()
    forall_conditions: Tuple[Condition, ...] = ()

    @property
    def exists_holds(self) -> bool:
        return all(c.satisfied for c in self.exists_conditions)

    @property
    def forall_holds(self) -> bool:
        return all(c.satisfied for c in self.forall_conditions)


def _general_or_none(instance):
    try:
        inp = prepare(instance)
        inp.require_general_case()
    except OutOfScopeError:
        return None
    return inp


def chain_order(graph: DiGraph) -> Optional[Tuple[int, ...]]:
    """Vertex order ``C1, C2, ..., Cc`` if the graph is a chain, else ``None``.

    A chain has arcs ``C_k -> C_{k-1}`` for every ``k >= 2`` and
    ``C_{k-1} -> C_k`` for every ``k >= 3`` and nothing else.
    """
    cs = graph.components
    if cs.t != 1 or len(cs.absorbing_vertices()) != 1 or len(graph) < 2:
        return None
    order = [cs.absorbing_vertices()[0]]
    while len(order) < len(graph):
        cand = [v for v in graph.pred[order[-1]] if v not in order]
        if len(cand) != 1:
            return None
        order.append(cand[0])
    c = len(order)
    want = {(order[k], order[k - 1]) for k in range(1, c)}
    want |= {(order[k - 1], order[k]) for k in range(2, c)}
    return tuple(order) if set(graph.arcs) == want else None


def chain_analysis(instance, kappa: Optional[Mapping[Arc, Fraction]] = None) -> ChainResult:
    """Chain recursion for ``theta''`` and the chain existence conditions."""
    inp = _general_or_none(instance)
    if inp is None:
        return ChainResult(False)
    order = chain_order(inp.graph)
    if order is None:
        return ChainResult(False)
    h = inp.h
    c = len(order)
    tail = {k: frozenset(order[k - 1 :]) for k in range(2, c + 1)}
    exists = (Condition.evaluate(tail[2], True, h),)
    forall = exists + tuple(Condition.evaluate(tail[k], False, h) for k in range(3, c + 1))
    theta = None
    if kappa is not None:
        kappa = kappa if isinstance(kappa, RateAssignment) else RateAssignment(kappa)
        C = lambda k: order[k - 1]  # noqa: E731
        theta = {C(2): -inp.h_of(tail[2]) / kappa[(C(2), C(1))]}
        for k in range(3, c + 1):
            down = kappa[(C(k), C(k - 1))]
            up = kappa[(C(k - 1), C(k))]
            theta[C(k)] = up / down * theta[C(k - 1)] - inp.h_of(tail[k]) / down
    return ChainResult(True, order, theta, exists, forall)


def _count_paths(graph: DiGraph, start: int, goal: int, allowed: FrozenSet[int]) -> Tuple[int, Optional[List[int]]]:
    """Number of simple ``start -> goal`` paths inside ``allowed`` (capped) and one of them."""
    found: List[List[int]] = []
    path = [start]
    on_path = {start}

    def dfs(v: int):
        if len(found) >= _PATH_LIMIT:
            return
        if v == goal:
            found.append(list(path))
            return
        for w in graph.succ[v]:
            if w in allowed and w not in on_path:
                path.append(w)
                on_path.add(w)
                dfs(w)
                on_path.discard(w)
                path.pop()

    dfs(start)
    return len(found), (found[0] if found else None)


def tree_like_structure(graph: DiGraph) -> Optional[TreeLikeStructure]:
    """Parents and descendant sets, or ``None`` if the graph is not tree-like."""
    cs = graph.components
    if cs.ell != 1 or cs.t != 1 or cs.strongly_connected:
        return None
    cprime = set(cs.absorbing_vertices())
    rest = frozenset(v for v in graph.vertices if v not in cprime)
    exits = [v for v in sorted(rest) if any(w in cprime for w in graph.succ[v])]
    if len(exits) != 1:
        return None
    l = exits[0]
    paths: Dict[int, List[int]] = {}
    for v in sorted(rest):
        n, p = _count_paths(graph, v, l, rest)
        if n != 1:
            return None
        paths[v] = p
    parent = {v: p[1] for v, p in paths.items() if v != l}
    desc = {i: frozenset(v for v, p in paths.items() if i in p) for i in rest}
    reverse = {j: (parent[j], j) in graph.arcs for j in parent}
    entered = {j: bool(graph.arcs_in(desc[j])) for j in parent}
    depth = {v: len(p) - 1 for v, p in paths.items()}
    return TreeLikeStructure(l, parent, desc, reverse, entered, depth)


def tree_like_analysis(instance, kappa: Optional[Mapping[Arc, Fraction]] = None) -> TreeLikeResult:
    """Tree-like recursion for ``theta''`` and the matching existence conditions.

    The recursion balances flux across each descendant set ``U(j)``. Flux
    enters ``U(j)`` only from ancestors of ``j`` and leaves only along
    ``j -> p(j)``, so::

        theta_j = (sum of kappa_km * theta_k over arcs (k, m) entering U(j)
                   - h(U(j))) / kappa_{j, p(j)}

    which reduces to the familiar parent-only form when ``(p(j), j)`` is the
    sole entering arc. Likewise the strict/non-strict split of the
    conditions follows whether ``U(j)`` is entered at all.
    """
    inp = _general_or_none(instance)
    if inp is None:
        return TreeLikeResult(False)
    st = tree_like_structure(inp.graph)
    if st is None:
        return TreeLikeResult(False)
    h = inp.h
    rest = frozenset(inp.cdouble)
    exists = [Condition.evaluate(rest, True, h)]
    loose = []
    for j in sorted(st.parent):
        if st.entered[j]:
            loose.append(Condition.evaluate(st.descendants[j], False, h))
        else:
            exists.append(Condition.evaluate(st.descendants[j], True, h))
    theta = None
    if kappa is not None:
        kappa = kappa if isinstance(kappa, RateAssignment) else RateAssignment(kappa)
        g = inp.graph
        out_l = sum((kappa[(st.l, w)] for w in g.succ[st.l] if w not in rest), Fraction(0))
        theta = {st.l: -inp.h_of(rest) / out_l}
        for j in sorted(st.parent, key=lambda v: (st.depth[v], v)):
            inflow = sum((kappa[a] * theta[a[0]] for a in g.arcs_in(st.descendants[j])), Fraction(0))
            theta[j] = (inflow - inp.h_of(st.descendants[j])) / kappa[(j, st.parent[j])]
    return TreeLikeResult(True, st, theta, tuple(exists), tuple(exists) + tuple(loose))


def theta_flux(graph: DiGraph, kappa: Mapping[Arc, Fraction], theta: Mapping[int, Fraction]) -> Dict[Arc, Fraction]:
    """Arc flux ``kappa_ij * theta_i``, with ``theta`` taken as zero where absent."""
    return {(i, j): q * Fraction(theta.get(i, 0)) for (i, j), q in kappa.items()}
