"""Directed graphs without multiple arcs and the algorithms the analysis needs.

Vertices are integers (complex indices); a contracted graph keeps the ids of
the vertices it did not merge. Arcs are ordered pairs ``(tail, head)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

Arc = Tuple[int, int]

#: Vertex cap for branching enumeration (an oracle, exponential by nature).
BRANCHING_VERTEX_CAP = 16
#: Cap on the number of condensation vertices scanned by :func:`closed_sets`.
CLOSED_SET_COMPONENT_CAP = 20


@dataclass(frozen=True)
class DiGraph:
    """A finite directed graph without self-loops or parallel arcs."""

    vertices: Tuple[int, ...]
    arcs: FrozenSet[Arc]

    def __post_init__(self):
        verts = tuple(sorted(set(self.vertices)))
        if len(verts) != len(self.vertices):
            raise ValueError("duplicate vertices")
        object.__setattr__(self, "vertices", verts)
        arcs = frozenset((int(i), int(j)) for i, j in self.arcs)
        vs = set(verts)
        for i, j in arcs:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if i not in vs or j not in vs:
                raise ValueError(f"arc {i}->{j} references an unknown vertex")
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def from_count(cls, c: int, arcs: Iterable[Arc]) -> "DiGraph":
        """Graph on vertices ``1..c``."""
        return cls(tuple(range(1, c + 1)), frozenset(arcs))

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def succ(self) -> Dict[int, Tuple[int, ...]]:
        out: Dict[int, List[int]] = {v: [] for v in self.vertices}
        for i, j in self.arcs:
            out[i].append(j)
        return {v: tuple(sorted(w)) for v, w in out.items()}

    @cached_property
    def pred(self) -> Dict[int, Tuple[int, ...]]:
        inn: Dict[int, List[int]] = {v: [] for v in self.vertices}
        for i, j in self.arcs:
            inn[j].append(i)
        return {v: tuple(sorted(w)) for v, w in inn.items()}

    @cached_property
    def components(self) -> "ComponentStructure":
        return analyze_components(self)

    def sorted_arcs(self) -> List[Arc]:
        return sorted(self.arcs)

    def arcs_in(self, u: Iterable[int]) -> List[Arc]:
        """Arcs entering ``u`` (the in-cut)."""
        s = set(u)
        return sorted(a for a in self.arcs if a[1] in s and a[0] not in s)

    def arcs_out(self, u: Iterable[int]) -> List[Arc]:
        """Arcs leaving ``u`` (the out-cut)."""
        s = set(u)
        return sorted(a for a in self.arcs if a[0] in s and a[1] not in s)

    def induced(self, keep: Iterable[int]) -> "DiGraph":
        s = set(keep)
        return DiGraph(tuple(s), frozenset(a for a in self.arcs if a[0] in s and a[1] in s))


@dataclass(frozen=True)
class ComponentStructure:
    """Strong/weak component data of a :class:`DiGraph`.

    Attributes:
        strong: strong components, each a sorted tuple, ordered by smallest member.
        component_of: vertex -> index into ``strong``.
        weak_count: number of weak components (linkage classes).
        absorbing: indices of strong components with no leaving arc.
        condensation: acyclic graph on component indices ``0..len(strong)-1``.
    """

    strong: Tuple[Tuple[int, ...], ...]
    component_of: Mapping[int, int]
    weak_count: int
    absorbing: Tuple[int, ...]
    condensation: DiGraph = field(repr=False)

    @property
    def ell(self) -> int:
        return self.weak_count

    @property
    def t(self) -> int:
        return len(self.absorbing)

    @property
    def strongly_connected(self) -> bool:
        return len(self.strong) == 1

    def absorbing_vertices(self) -> Tuple[int, ...]:
        return tuple(sorted(v for k in self.absorbing for v in self.strong[k]))

    def component(self, v: int) -> Tuple[int, ...]:
        return self.strong[self.component_of[v]]


def _tarjan(g: DiGraph) -> List[List[int]]:
    index: Dict[int, int] = {}
    low: Dict[int, int] = {}
    on_stack: Set[int] = set()
    stack: List[int] = []
    result: List[List[int]] = []
    counter = 0
    for root in g.vertices:
        if root in index:
            continue
        work = [(root, iter(g.succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                result.append(sorted(comp))
    return result


def analyze_components(g: DiGraph) -> ComponentStructure:
    """Strong components (Tarjan), weak component count, absorbing components, condensation."""
    comps = sorted(_tarjan(g), key=lambda c: c[0])
    comp_of = {v: k for k, comp in enumerate(comps) for v in comp}
    cond_arcs = {(comp_of[i], comp_of[j]) for i, j in g.arcs if comp_of[i] != comp_of[j]}
    condensation = DiGraph(tuple(range(len(comps))), frozenset(cond_arcs))
    absorbing = tuple(k for k in range(len(comps)) if not condensation.succ[k])

    # weak components by union-find
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, j in g.arcs:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
    weak = len({find(v) for v in g.vertices})
    return ComponentStructure(
        strong=tuple(tuple(c) for c in comps),
        component_of=comp_of,
        weak_count=weak,
        absorbing=absorbing,
        condensation=condensation,
    )


def _bfs(adj: Mapping[int, Sequence[int]], sources: Iterable[int], blocked: Iterable[int] = ()) -> Set[int]:
    blocked = set(blocked)
    seen = {s for s in sources if s not in blocked}
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen and w not in blocked:
                seen.add(w)
                queue.append(w)
    return seen


def reach_sets(g: DiGraph, targets, avoid: Iterable[int] = ()) -> FrozenSet[int]:
    """Vertices with a directed path to ``targets`` (targets included).

    Paths may not pass through ``avoid``.
    """
    if isinstance(targets, int):
        targets = (targets,)
    return frozenset(_bfs(g.pred, targets, avoid))


def reachable_from(g: DiGraph, sources, avoid: Iterable[int] = ()) -> FrozenSet[int]:
    if isinstance(sources, int):
        sources = (sources,)
    return frozenset(_bfs(g.succ, sources, avoid))


def closed_sets(g: DiGraph, cprime: Optional[Iterable[int]] = None) -> List[FrozenSet[int]]:
    """All nonempty proper vertex sets with no entering arc.

    Such a set is a union of strong components closed under predecessors, so
    the scan runs over predecessor-closed sets of condensation vertices.

    Args:
        g: the graph.
        cprime: unused beyond validation; accepted for symmetry with callers
            that already know the absorbing component.

    Returns:
        Sets sorted by (size, sorted members).
    """
    cs = g.components
    if cs.strongly_connected:
        return []
    if cprime is not None and set(cprime) != set(cs.absorbing_vertices()):
        raise ValueError("cprime is not the union of the absorbing components")
    cond = cs.condensation
    # components that can be part of a proper closed set: a set holding every
    # component is the whole vertex set
    k = len(cs.strong)
    non_absorbing = [c for c in range(k) if c not in cs.absorbing]
    if len(non_absorbing) > CLOSED_SET_COMPONENT_CAP:
        raise ValueError(f"closed-set enumeration capped at {CLOSED_SET_COMPONENT_CAP} components")
    order = _topological(cond)
    out: List[FrozenSet[int]] = []
    chosen: Set[int] = set()

    def rec(pos: int):
        if pos == len(order):
            if chosen and len(chosen) < k:
                out.append(frozenset(v for c in chosen for v in cs.strong[c]))
            return
        comp = order[pos]
        rec(pos + 1)
        if all(p in chosen for p in cond.pred[comp]):
            chosen.add(comp)
            rec(pos + 1)
            chosen.discard(comp)

    rec(0)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def _topological(g: DiGraph) -> List[int]:
    indeg = {v: len(g.pred[v]) for v in g.vertices}
    queue = deque(sorted(v for v, d in indeg.items() if d == 0))
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in g.succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if len(order) != len(g.vertices):
        raise ValueError("graph has a directed circuit")
    return order


def excess_of(g: DiGraph, z: Mapping[Arc, Fraction], u: Iterable[int]) -> Fraction:
    """``z(arcs entering u) - z(arcs leaving u)``."""
    s = set(u)
    if not s <= set(g.vertices):
        raise ValueError("U is not a subset of the vertex set")
    total = Fraction(0)
    for a in g.arcs:
        tail_in, head_in = a[0] in s, a[1] in s
        if head_in and not tail_in:
            total += z[a]
        elif tail_in and not head_in:
            total -= z[a]
    return total


def _max_flow_paths(
    succ: Dict[object, List[object]], cap: Dict[Tuple[object, object], int], s, t, limit: int
) -> Tuple[int, Dict[Tuple[object, object], int]]:
    """Integer augmenting-path max flow, stopping at ``limit`` units."""
    flow: Dict[Tuple[object, object], int] = {}
    value = 0
    while value < limit:
        prev = {s: None}
        queue = deque([s])
        while queue and t not in prev:
            v = queue.popleft()
            for w in succ[v]:
                if w not in prev and cap.get((v, w), 0) - flow.get((v, w), 0) > 0:
                    prev[w] = v
                    queue.append(w)
        if t not in prev:
            break
        w = t
        while prev[w] is not None:
            v = prev[w]
            flow[(v, w)] = flow.get((v, w), 0) + 1
            flow[(w, v)] = flow.get((w, v), 0) - 1
            w = v
        value += 1
    return value, flow


def two_disjoint_paths(g: DiGraph, s: int, t: int) -> Tuple[bool, Optional[Tuple[List[int], List[int]]]]:
    """Decide whether two internally vertex-disjoint ``s -> t`` paths exist.

    Vertices other than ``s`` and ``t`` get unit capacity through the usual
    in/out splitting; at most two augmentations are run.

    Returns:
        ``(exists, (path1, path2))`` with the witness paths as vertex lists when
        ``exists`` is true, else ``(False, None)``.
    """
    if s == t:
        raise ValueError("s and t must differ")
    if (s, t) in g.arcs:
        raise ValueError("s and t must be nonadjacent")
    succ: Dict[object, List[object]] = {}
    cap: Dict[Tuple[object, object], int] = {}

    def add(u, v, c):
        succ.setdefault(u, []).append(v)
        succ.setdefault(v, []).append(u)
        cap[(u, v)] = cap.get((u, v), 0) + c

    for v in g.vertices:
        add(("in", v), ("out", v), 2 if v in (s, t) else 1)
    for i, j in g.arcs:
        add(("out", i), ("in", j), 1)
    value, flow = _max_flow_paths(succ, cap, ("out", s), ("in", t), 2)
    if value < 2:
        return False, None
    heads: Dict[int, List[int]] = {}
    for (a, b), f in sorted(flow.items(), key=str):
        if f > 0 and a[0] == "out" and b[0] == "in":
            heads.setdefault(a[1], []).append(b[1])
    paths = []
    for _ in range(2):
        path = [s]
        while path[-1] != t:
            path.append(heads[path[-1]].pop())
        paths.append(path)
    return True, (paths[0], paths[1])


def enumerate_branchings(
    g: DiGraph,
    roots: Iterable[int],
    constraint: Optional[Tuple[int, int]] = None,
    include_cyclic: bool = False,
) -> List[FrozenSet[Arc]]:
    """Enumerate root-set branchings (or all functional arc sets).

    Every vertex outside ``roots`` picks exactly one out-arc, root vertices
    pick none. With ``include_cyclic=False`` only acyclic choices are kept.
    ``constraint=(i, j)`` keeps choices in which ``i`` reaches ``j``.

    Raises:
        ValueError: above :data:`BRANCHING_VERTEX_CAP` vertices or empty roots.
    """
    roots = set(roots)
    if not roots:
        raise ValueError("root set must be nonempty")
    if len(g.vertices) > BRANCHING_VERTEX_CAP:
        raise ValueError(f"branching enumeration capped at {BRANCHING_VERTEX_CAP} vertices")
    free = [v for v in g.vertices if v not in roots]
    choice: Dict[int, int] = {}
    out: List[FrozenSet[Arc]] = []

    def closes_cycle(v: int, w: int) -> bool:
        # following chosen arcs from w, do we come back to v?
        while w in choice:
            if w == v:
                return True
            w = choice[w]
        return w == v

    def rec(pos: int):
        if pos == len(free):
            if constraint is not None and not _reaches(choice, *constraint):
                return
            out.append(frozenset(choice.items()))
            return
        v = free[pos]
        for w in g.succ[v]:
            if not include_cyclic and closes_cycle(v, w):
                continue
            choice[v] = w
            rec(pos + 1)
            del choice[v]

    rec(0)
    return out


def _reaches(choice: Mapping[int, int], i: int, j: int) -> bool:
    seen = set()
    v = i
    while True:
        if v == j:
            return True
        if v in seen or v not in choice:
            return False
        seen.add(v)
        v = choice[v]


def arborescence_vertices(branching: Iterable[Arc], root: int) -> FrozenSet[int]:
    """Vertices whose chosen path in an acyclic branching ends at ``root``."""
    nxt = dict(branching)
    members = set()
    for v in set(nxt) | {root}:
        w = v
        while w in nxt:
            w = nxt[w]
        if w == root:
            members.add(v)
    return frozenset(members)


def contract_absorbing(g: DiGraph, cprime: Iterable[int]) -> Tuple[DiGraph, Dict[int, int]]:
    """Merge the absorbing strong component ``cprime`` into one vertex.

    The merged vertex keeps the smallest id of ``cprime``; all other ids are
    unchanged.

    Returns:
        The contracted graph and the old-id -> new-id map.
    """
    cp = frozenset(cprime)
    cs = g.components
    absorbing = {frozenset(cs.strong[k]) for k in cs.absorbing}
    if cp not in absorbing:
        raise ValueError("cprime is not an absorbing strong component")
    bottom = min(cp)
    mapping = {v: (bottom if v in cp else v) for v in g.vertices}
    arcs = {(mapping[i], mapping[j]) for i, j in g.arcs if mapping[i] != mapping[j]}
    verts = tuple(sorted(set(mapping.values())))
    return DiGraph(verts, frozenset(arcs)), mapping
