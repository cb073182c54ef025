"""When do positive steady states exist for *every* choice of rates?

All computations run on the complex graph with its absorbing component
contracted to a single vertex ``bottom`` (the smallest id of that component).
Non-absorbing complexes keep their ids, so every vertex set reported here is
already in the original numbering.

Main objects:

* ``U(i)``: complexes all of whose paths to the absorbing component pass
  through ``i`` (the vertices postdominated by ``i``).
* j-inarb family: vertex sets that can occur as the tree hanging from ``j`` in
  a branching rooted at the absorbing component plus ``j``.
* ``W(j)``: complexes with a path to ``j`` and a path to the absorbing
  component that share only their start.
* ``J``: one exit vertex per non-absorbing strong component.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from .digraph import DiGraph, contract_absorbing, reach_sets, two_disjoint_paths
from .netmodel import RateAssignment
from .steady import Condition, prepare, solve_theta

#: Largest number of non-absorbing complexes for subset enumeration.
INARB_VERTEX_CAP = 16
#: Scaling steps tried by :func:`falsify_kappa` (factor ``10**-k``).
FALSIFIER_STEPS = 12


@dataclass(frozen=True)
class ContractedView:
    """The contracted graph and the data every analysis here needs.

    Attributes:
        graph: contracted graph.
        bottom: id of the merged absorbing vertex.
        cdouble: non-absorbing vertices, sorted.
        h: h-values on ``cdouble``.
        component: vertex -> its strong component (as a sorted tuple).
    """

    graph: DiGraph
    bottom: int
    cdouble: Tuple[int, ...]
    h: Dict[int, Fraction]
    component: Dict[int, Tuple[int, ...]]

    def h_of(self, u) -> Fraction:
        return sum((self.h[v] for v in u), Fraction(0))


def contracted_view(instance) -> ContractedView:
    inp = prepare(instance)
    inp.require_general_case()
    g, mapping = contract_absorbing(inp.graph, inp.cprime)
    bottom = min(inp.cprime)
    comps = g.components
    component = {v: comps.component(v) for v in inp.cdouble}
    h = {v: inp.h[v] for v in inp.cdouble}
    return ContractedView(g, bottom, inp.cdouble, h, component)


def _view(obj) -> ContractedView:
    return obj if isinstance(obj, ContractedView) else contracted_view(obj)


# ------------------------------------------------------------ postdominators


@dataclass(frozen=True)
class PostdomFamily:
    """Postdominator sets and the trees derived from them.

    Attributes:
        U: ``i -> U(i)`` for every non-absorbing ``i``.
        tree_parent: parent map of the postdominator tree (root ``bottom``).
        U_component: ``j -> U(C''(j))``, the vertices whose every exit path
            meets the strong component of ``j``.
        calU: ``j -> union of U(j')`` over ``j'`` in the component of ``j``.
        J: the representative set used for the component trees.
        comp_tree_parent: parent map of the tree of ``{calU(j) : j in J}``.
        cond_arcs: arcs of the condensation, on ``J`` plus ``bottom``.
        R_tree: ``j -> vertices of the component tree that reach j``.
        R_cond: ``j -> vertices of the condensation that reach j``.
    """

    bottom: int
    U: Dict[int, FrozenSet[int]]
    tree_parent: Dict[int, int]
    U_component: Dict[int, FrozenSet[int]]
    calU: Dict[int, FrozenSet[int]]
    J: Tuple[int, ...]
    comp_tree_parent: Dict[int, int]
    cond_arcs: FrozenSet[Tuple[int, int]]
    R_tree: Dict[int, FrozenSet[int]]
    R_cond: Dict[int, FrozenSet[int]]

    def r_equal(self, j: int) -> bool:
        return self.R_tree[j] == self.R_cond[j]


def postdominated_by(view: ContractedView, blocked) -> FrozenSet[int]:
    """Non-absorbing vertices that cannot reach ``bottom`` once ``blocked`` is removed."""
    blocked = set(blocked)
    alive = reach_sets(view.graph, view.bottom, avoid=blocked)
    return frozenset(v for v in view.cdouble if v not in alive)


def _laminar_parent(sets: Mapping[int, FrozenSet[int]], root: int) -> Dict[int, int]:
    parent = {}
    for k, s in sets.items():
        above = [(len(t), k2) for k2, t in sets.items() if k2 != k and s < t]
        parent[k] = min(above)[1] if above else root
    return parent


def _tree_reach(parent: Mapping[int, int], target: int) -> FrozenSet[int]:
    out = set()
    for v in parent:
        w = v
        while w in parent:
            if w == target:
                out.add(v)
                break
            w = parent[w]
    return frozenset(out | {target})


def exit_candidates(view: ContractedView) -> List[Tuple[int, ...]]:
    """Per non-absorbing strong component, the vertices with an arc leaving it."""
    seen = []
    for v in view.cdouble:
        comp = view.component[v]
        if comp in seen:
            continue
        seen.append(comp)
    out = []
    members = {}
    for comp in seen:
        cs = set(comp)
        members[comp] = tuple(v for v in comp if any(w not in cs for w in view.graph.succ[v]))
        out.append(members[comp])
    return out


def choose_J(view: ContractedView) -> Tuple[int, ...]:
    """Smallest exit vertex of every non-absorbing strong component."""
    return tuple(sorted(min(c) for c in exit_candidates(view)))


def all_J(view: ContractedView) -> List[Tuple[int, ...]]:
    return [tuple(sorted(p)) for p in itertools.product(*exit_candidates(view))]


def postdominators(instance, J: Optional[Sequence[int]] = None) -> PostdomFamily:
    """Postdominator sets, the postdominator tree and the component-level trees."""
    view = _view(instance)
    U = {i: postdominated_by(view, {i}) for i in view.cdouble}
    parent = _laminar_parent(U, view.bottom)
    U_comp = {j: postdominated_by(view, view.component[j]) for j in view.cdouble}
    calU = {j: frozenset().union(*(U[k] for k in view.component[j])) for j in view.cdouble}
    J = tuple(sorted(J)) if J is not None else choose_J(view)
    comp_parent = _laminar_parent({j: calU[j] for j in J}, view.bottom)
    rep = {v: j for j in J for v in view.component[j]}
    cond = set()
    for a, b in view.graph.arcs:
        ra = rep.get(a)
        rb = rep.get(b, view.bottom if b == view.bottom else None)
        if ra is not None and rb is not None and ra != rb:
            cond.add((ra, rb))
    cond_graph = DiGraph(tuple(J) + (view.bottom,), frozenset(cond))
    R_tree = {j: _tree_reach(comp_parent, j) for j in J}
    R_cond = {j: reach_sets(cond_graph, j) for j in J}
    return PostdomFamily(view.bottom, U, parent, U_comp, calU, J, comp_parent, frozenset(cond), R_tree, R_cond)


# ------------------------------------------------------------ j-inarb sets


def j_inarb_family(instance, j: int) -> List[Tuple[FrozenSet[int], FrozenSet[int]]]:
    """All sets ``U`` of the j-inarb family with their partition index sets ``I_U``.

    ``U`` ranges over subsets of the non-absorbing vertices containing ``j``
    such that every member reaches ``j`` inside ``U`` and every non-member
    reaches the absorbing vertex outside ``U``. ``I_U`` holds the members not
    postdominated by another member.

    Returns:
        ``(U, I_U)`` pairs sorted by size then members.
    """
    view = _view(instance)
    if j not in view.cdouble:
        raise ValueError(f"{j} is not a non-absorbing vertex")
    others = [v for v in view.cdouble if v != j]
    if len(view.cdouble) > INARB_VERTEX_CAP:
        raise ValueError(f"j-inarb enumeration capped at {INARB_VERTEX_CAP} vertices")
    U_of = {i: postdominated_by(view, {i}) for i in view.cdouble}
    out = []
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            u = frozenset((j,) + extra)
            if reach_sets(view.graph.induced(u), j) != u:
                continue
            alive = reach_sets(view.graph, view.bottom, avoid=u)
            if any(v not in alive for v in view.cdouble if v not in u):
                continue
            iu = frozenset(i for i in u if not any(i in U_of[k] for k in u if k != i))
            out.append((u, iu))
    return sorted(out, key=lambda p: (len(p[0]), sorted(p[0])))


# --------------------------------------------------------------------- W(j)


@dataclass(frozen=True)
class WFamily:
    W: Dict[int, FrozenSet[int]]
    J: Tuple[int, ...]
    all_J: Tuple[Tuple[int, ...], ...]
    inside: Dict[int, bool]


def W_set(view: ContractedView, j: int) -> FrozenSet[int]:
    """``W(j)`` via two internally disjoint paths to an auxiliary sink."""
    aux = max(view.graph.vertices) + 1
    g = DiGraph(view.graph.vertices + (aux,), view.graph.arcs | {(j, aux), (view.bottom, aux)})
    members = {j}
    for i in view.cdouble:
        if i != j and two_disjoint_paths(g, i, aux)[0]:
            members.add(i)
    return frozenset(members)


def W_of(instance, J: Optional[Sequence[int]] = None) -> WFamily:
    view = _view(instance)
    W = {j: W_set(view, j) for j in view.cdouble}
    J = tuple(sorted(J)) if J is not None else choose_J(view)
    inside = {j: W[j] <= set(view.component[j]) for j in J}
    return WFamily(W, J, tuple(all_J(view)), inside)


# -------------------------------------------------------------- conditions


def forall_condition(instance, J: Optional[Sequence[int]] = None) -> Tuple[bool, List[Condition]]:
    """Condition list for positive steady states at every choice of rates.

    One non-strict condition per ``U(i)``, one strict condition
    ``h(U(C''(j))) < 0`` per ``j`` in ``J`` with ``W(j)`` inside its own
    component. A set listed twice keeps only its strict form.
    """
    view = _view(instance)
    pd = postdominators(view, J)
    wf = W_of(view, pd.J)
    wanted: Dict[FrozenSet[int], bool] = {}
    for i in view.cdouble:
        wanted.setdefault(pd.U[i], False)
    for j in pd.J:
        if wf.inside[j]:
            wanted[pd.U_component[j]] = True
    conds = [Condition.evaluate(u, strict, view.h) for u, strict in wanted.items()]
    return all(c.satisfied for c in conds), conds


def _main_form(view, U, U_comp, W, J) -> bool:
    if any(view.h_of(U[i]) > 0 for i in view.cdouble):
        return False
    return all(view.h_of(U_comp[j]) < 0 for j in J if W[j] <= set(view.component[j]))


def _J_form(view, U, W, J, restrict: bool) -> bool:
    if any(view.h_of(U[i]) > 0 for i in view.cdouble):
        return False
    for j in J:
        if restrict and not W[j] <= set(view.component[j]):
            continue
        if not any(view.h_of(U[i]) < 0 for i in W[j]):
            return False
    return True


def forall_bruteforce(instance) -> bool:
    """Literal check over every j-inarb family: all sums ``<= 0`` and one ``< 0``."""
    view = _view(instance)
    for j in view.cdouble:
        sums = [view.h_of(u) for u, _ in j_inarb_family(view, j)]
        if any(s > 0 for s in sums) or not any(s < 0 for s in sums):
            return False
    return True


def forall_formulations(instance) -> Dict[str, bool]:
    """Evaluate every equivalent form of the all-rates criterion.

    Keys are ``"inarb"``, ``"postdom"`` and then, for each valid ``J``,
    ``"J<set>"``, ``"J-inside<set>"`` and ``"main<set>"``.
    """
    view = _view(instance)
    U = {i: postdominated_by(view, {i}) for i in view.cdouble}
    U_comp = {j: postdominated_by(view, view.component[j]) for j in view.cdouble}
    W = {j: W_set(view, j) for j in view.cdouble}
    out = {"inarb": forall_bruteforce(view)}

    ok = not any(view.h_of(U[i]) > 0 for i in view.cdouble)
    if ok:
        for j in view.cdouble:
            reps = frozenset().union(*(iu for _, iu in j_inarb_family(view, j)))
            if not any(view.h_of(U[i]) < 0 for i in reps):
                ok = False
                break
    out["postdom"] = ok
    for J in all_J(view):
        tag = ",".join(map(str, J))
        out[f"J{{{tag}}}"] = _J_form(view, U, W, J, restrict=False)
        out[f"J-inside{{{tag}}}"] = _J_form(view, U, W, J, restrict=True)
        out[f"main{{{tag}}}"] = _main_form(view, U, U_comp, W, J)
    return out


# -------------------------------------------------------------- falsifier


def falsify_kappa(instance, steps: int = FALSIFIER_STEPS) -> Optional[RateAssignment]:
    """Rates for which no positive steady state exists, when such rates exist.

    If some ``U(i)`` has positive h-sum, the rates on arcs crossing the
    boundary of ``U(i)`` are shrunk by ``10**-k`` for ``k = 1..steps`` until
    the reduced solution loses positivity. Otherwise a j-inarb family sums to
    zero throughout and unit rates already fail.

    Returns:
        The rates, or ``None`` when the all-rates criterion holds or the
        search budget runs out.
    """
    inp = prepare(instance)
    view = _view(inp)
    g = inp.graph
    unit = RateAssignment.uniform(g.arcs)

    def fails(kappa) -> bool:
        return not solve_theta(g, kappa, inp.h).positive

    from .transship import exists_kappa_condition

    if not exists_kappa_condition(inp)[0]:
        return unit if fails(unit) else None
    if forall_condition(view)[0]:
        return None
    bad = [i for i in view.cdouble if view.h_of(postdominated_by(view, {i})) > 0]
    if not bad:
        return unit if fails(unit) else None
    ubar = postdominated_by(view, {bad[0]})
    cut = g.arcs_in(ubar) + g.arcs_out(ubar)
    for k in range(1, steps + 1):
        kappa = unit.scaled(cut, Fraction(1, 10**k))
        if fails(kappa):
            return kappa
    return None
