"""Deficiency, the h-vector, the reduced steady-state system and the classifier.

Everything downstream works on an :class:`AnalysisInput`, which bundles the
complex graph, its component split and (when there is one) the h-vector. Use
:func:`prepare` to obtain it from a :class:`ReactionNetwork` or a
:class:`GraphHInstance`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Tuple

from . import linalg
from .digraph import Arc, DiGraph
from .netmodel import GraphHInstance, RateAssignment, ReactionNetwork, build_kinetic_matrix


class OutOfScopeError(ValueError):
    """The instance lies outside the supported network class."""


class Verdict(str, Enum):
    ALWAYS_NONEMPTY = "AlwaysNonempty"
    DEPENDS_ON_KAPPA = "DependsOnKappa"
    ALWAYS_EMPTY = "AlwaysEmpty"


@dataclass(frozen=True)
class Condition:
    """A sign condition ``h(vertices) < 0`` or ``h(vertices) <= 0``."""

    vertices: Tuple[int, ...]
    strict: bool
    value: Fraction
    satisfied: bool

    @classmethod
    def evaluate(cls, vertices: Iterable[int], strict: bool, h: Mapping[int, Fraction]) -> "Condition":
        vs = tuple(sorted(vertices))
        value = sum((h[v] for v in vs), Fraction(0))
        return cls(vs, strict, value, value < 0 if strict else value <= 0)

    @property
    def relation(self) -> str:
        return "<0" if self.strict else "<=0"

    def __str__(self) -> str:
        body = ",".join(map(str, self.vertices))
        return f"h({{{body}}}) {'<' if self.strict else '<='} 0  [{self.value}]"

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "relation": self.relation,
            "value": str(self.value),
            "satisfied": self.satisfied,
        }


@dataclass(frozen=True)
class HVector:
    """The distinguished vector spanning ``ker B ∩ ran I_kappa``.

    Attributes:
        values: one coordinate per complex, ``values[k-1]`` for complex ``k``.
        integral: whether the vector was scaled to coprime integers.
        sign_note: how the sign was fixed.
    """

    values: Tuple[Fraction, ...]
    integral: bool = True
    sign_note: str = "h(C'') <= 0"

    def __getitem__(self, k: int) -> Fraction:
        return self.values[k - 1]

    def __len__(self) -> int:
        return len(self.values)

    def as_dict(self) -> Dict[int, Fraction]:
        return {k: v for k, v in enumerate(self.values, start=1)}


@dataclass(frozen=True)
class ThetaVector:
    """Solution of the reduced system on the non-absorbing complexes."""

    values: Dict[int, Fraction]

    @property
    def positive(self) -> bool:
        return all(v > 0 for v in self.values.values())

    def __getitem__(self, k: int) -> Fraction:
        return self.values[k]


@dataclass(frozen=True)
class AnalysisInput:
    """Graph-level data shared by all analyses.

    Attributes:
        graph: the complex graph on vertices ``1..c``.
        h: the h-vector keyed by vertex, or ``None`` when the deficiency is zero.
        delta: deficiency (taken as 1 for graph+h input).
        ell: number of linkage classes.
        t: number of absorbing strong components.
        cprime: vertices of the absorbing component (when ``t == 1``).
        cdouble: the remaining vertices.
        source: the object this was built from.
    """

    graph: DiGraph
    h: Optional[Dict[int, Fraction]]
    delta: int
    ell: int
    t: int
    cprime: Tuple[int, ...]
    cdouble: Tuple[int, ...]
    source: object = field(default=None, compare=False, repr=False)

    @property
    def strongly_connected(self) -> bool:
        return self.graph.components.strongly_connected

    def h_of(self, u: Iterable[int]) -> Fraction:
        return sum((self.h[v] for v in u), Fraction(0))

    def given_kappa(self) -> Optional[RateAssignment]:
        src = self.source
        return src.given_kappa() if hasattr(src, "given_kappa") else None

    def require_general_case(self) -> None:
        """Raise unless ``ell = t = 1``, the graph is not strongly connected and h is known."""
        if not (self.ell == 1 and self.t == 1):
            raise OutOfScopeError(f"requires one linkage class and one absorbing component (ell={self.ell}, t={self.t})")
        if self.strongly_connected:
            raise OutOfScopeError("graph is strongly connected")
        if self.h is None:
            raise OutOfScopeError("no h-vector (deficiency zero)")


# ---------------------------------------------------------------- deficiency


def _kinetic_unit(graph: DiGraph) -> linalg.Matrix:
    return build_kinetic_matrix(graph, RateAssignment.uniform(graph.arcs)).as_lists()


def compute_deficiency(net: ReactionNetwork) -> Tuple[int, int, int]:
    """Deficiency as ``dim(ker B ∩ ran I)`` at unit rates, plus ``(ell, t)``.

    The intersection dimension is obtained from ``dim ker B + rank I -
    dim(ker B + ran I)`` and checked against ``c - t - rank(B I)``.

    Raises:
        OutOfScopeError: if ``ell != t``.
    """
    g = net.graph
    cs = g.components
    if cs.ell != cs.t:
        raise OutOfScopeError(f"unsupported network class: ell={cs.ell} differs from t={cs.t}")
    b = net.complex_matrix
    ik = _kinetic_unit(g)
    kernel = linalg.nullspace(b, net.c)
    rank_i = linalg.rank(ik)
    range_cols = linalg.transpose(linalg.column_basis(ik)) if rank_i else []
    both = kernel + range_cols
    span = linalg.rank(both) if both else 0
    delta = len(kernel) + rank_i - span
    other = net.c - cs.t - linalg.rank(linalg.matmul(b, ik))
    if delta != other:
        raise AssertionError(f"deficiency formulas disagree: {delta} vs {other}")
    return delta, cs.ell, cs.t


def compute_h(net: ReactionNetwork) -> HVector:
    """The h-vector of a deficiency-one network that is not strongly connected.

    Scaled to coprime integers with ``h(C'') <= 0``; when ``h(C'') = 0`` the
    first nonzero coordinate is made positive instead.
    """
    delta, ell, t = compute_deficiency(net)
    if delta != 1:
        raise OutOfScopeError(f"h-vector requires deficiency one, got {delta}")
    g = net.graph
    if g.components.strongly_connected:
        raise OutOfScopeError("h-vector normalization needs a graph that is not strongly connected")
    if t != 1:
        raise OutOfScopeError("h-vector normalization needs a single absorbing component")
    ik = _kinetic_unit(g)
    basis = linalg.column_basis(ik)
    coeffs = linalg.nullspace(linalg.matmul(net.complex_matrix, basis), len(basis[0]))
    if len(coeffs) != 1:
        raise AssertionError("intersection is not one-dimensional")
    h = linalg.primitive_integer_vector(linalg.matvec(basis, coeffs[0]))
    cprime = set(g.components.absorbing_vertices())
    tail = sum(h[k - 1] for k in g.vertices if k not in cprime)
    if tail > 0:
        h = [-x for x in h]
        note = "h(C'') <= 0"
    elif tail == 0:
        first = next(x for x in h if x != 0)
        if first < 0:
            h = [-x for x in h]
        note = "h(C'') = 0; first nonzero coordinate made positive"
    else:
        note = "h(C'') <= 0"
    return HVector(tuple(h), True, note)


def prepare(obj) -> AnalysisInput:
    """Build the shared analysis data for a network, a graph+h instance or pass one through."""
    if isinstance(obj, AnalysisInput):
        return obj
    if isinstance(obj, ReactionNetwork):
        delta, ell, t = compute_deficiency(obj)
        if delta >= 2:
            raise OutOfScopeError(f"deficiency {delta} is out of scope")
        g = obj.graph
        h = None
        if delta == 1 and t == 1 and not g.components.strongly_connected:
            h = compute_h(obj).as_dict()
        elif delta == 1 and t == 1:
            # any spanning vector works when the graph is strongly connected
            ik = _kinetic_unit(g)
            basis = linalg.column_basis(ik)
            coeffs = linalg.nullspace(linalg.matmul(obj.complex_matrix, basis), len(basis[0]))
            vec = linalg.primitive_integer_vector(linalg.matvec(basis, coeffs[0]))
            h = {k: v for k, v in enumerate(vec, start=1)}
        return _assemble(g, h, delta, obj)
    if isinstance(obj, GraphHInstance):
        g = obj.graph
        cs = g.components
        if cs.ell != cs.t:
            raise OutOfScopeError(f"unsupported network class: ell={cs.ell} differs from t={cs.t}")
        return _assemble(g, {k: v for k, v in enumerate(obj.h, start=1)}, 1, obj)
    raise TypeError(f"cannot analyse {type(obj).__name__}")


def _assemble(g: DiGraph, h, delta: int, source) -> AnalysisInput:
    cs = g.components
    if cs.t == 1:
        cprime = cs.absorbing_vertices()
        cdouble = tuple(v for v in g.vertices if v not in set(cprime))
    else:
        cprime, cdouble = (), ()
    return AnalysisInput(g, h, delta, cs.ell, cs.t, cprime, cdouble, source)


# ------------------------------------------------------------- steady states


def _h_mapping(h, graph: DiGraph) -> Dict[int, Fraction]:
    if isinstance(h, HVector):
        return h.as_dict()
    if isinstance(h, Mapping):
        return {int(k): Fraction(v) for k, v in h.items()}
    vals = list(h)
    if len(vals) != len(graph):
        raise ValueError("h has the wrong length")
    return {v: Fraction(x) for v, x in zip(graph.vertices, vals)}


def solve_theta(graph: DiGraph, kappa: Mapping, h) -> ThetaVector:
    """Solve ``I''_kappa theta'' = h''`` exactly on the non-absorbing complexes.

    Raises:
        OutOfScopeError: unless there is exactly one absorbing component and
            the graph is not strongly connected.
    """
    cs = graph.components
    if cs.t != 1 or cs.strongly_connected:
        raise OutOfScopeError("solve_theta needs one absorbing component and a graph that is not strongly connected")
    hv = _h_mapping(h, graph)
    cprime = set(cs.absorbing_vertices())
    rest = [v for v in graph.vertices if v not in cprime]
    km = build_kinetic_matrix(graph, kappa)
    block = km.block(rest)
    rhs = [hv[v] for v in rest]
    theta = linalg.solve(block, rhs)
    if linalg.matvec(block, theta) != rhs:
        raise AssertionError("nonzero residual in the reduced system")
    return ThetaVector(dict(zip(rest, theta)))


def exists_for_kappa(instance, kappa: Mapping) -> bool:
    """Whether positive steady states exist for the given rates."""
    inp = prepare(instance)
    if inp.delta == 0:
        # deficiency zero: exactly the weakly reversible networks
        cs = inp.graph.components
        return len(cs.absorbing) == len(cs.strong)
    if inp.ell != 1 or inp.t != 1:
        raise OutOfScopeError("requires one linkage class and one absorbing component")
    if inp.strongly_connected:
        return True
    return solve_theta(inp.graph, kappa, inp.h).positive


def sample_kappa(
    arcs: Iterable[Arc],
    rng: random.Random,
    low: float = 1e-3,
    high: float = 1e3,
    max_denominator: int = 10**4,
) -> RateAssignment:
    """Log-uniform random rates, rounded to nearby fractions."""
    lo, hi = math.log10(low), math.log10(high)
    values = {}
    for a in sorted(arcs):
        x = 10 ** rng.uniform(lo, hi)
        values[a] = Fraction(x).limit_denominator(max_denominator)
    return RateAssignment(values)


# -------------------------------------------------------------- classifier


@dataclass(frozen=True)
class Classification:
    """Three-way verdict together with the conditions behind it."""

    verdict: Verdict
    exists_conditions: Tuple[Condition, ...] = ()
    forall_conditions: Tuple[Condition, ...] = ()
    witness_kappa: Optional[RateAssignment] = None
    falsifier_kappa: Optional[RateAssignment] = None
    reason: str = ""

    @property
    def exists_holds(self) -> bool:
        return all(c.satisfied for c in self.exists_conditions)

    @property
    def forall_holds(self) -> bool:
        return all(c.satisfied for c in self.forall_conditions)


def classify(instance, find_falsifier: bool = True) -> Classification:
    """Decide whether positive steady states exist for all, some or no rates.

    Args:
        instance: a network, graph+h instance or prepared input.
        find_falsifier: search for rates without positive steady states when
            the verdict depends on the rates.
    """
    from . import forall, transship

    inp = prepare(instance)
    if inp.delta == 0:
        cs = inp.graph.components
        if len(cs.absorbing) == len(cs.strong):
            return Classification(Verdict.ALWAYS_NONEMPTY, reason="deficiency zero, weakly reversible")
        return Classification(Verdict.ALWAYS_EMPTY, reason="deficiency zero, not weakly reversible")
    if inp.ell != 1 or inp.t != 1:
        raise OutOfScopeError(f"out of scope: ell={inp.ell}, t={inp.t}")
    if inp.strongly_connected:
        return Classification(Verdict.ALWAYS_NONEMPTY, reason="deficiency one, strongly connected")

    holds, exists_conds, witness = transship.exists_kappa_condition(inp)
    if not holds:
        return Classification(Verdict.ALWAYS_EMPTY, tuple(exists_conds), reason="a closed set has h >= 0")
    f_holds, forall_conds = forall.forall_condition(inp)
    if f_holds:
        return Classification(
            Verdict.ALWAYS_NONEMPTY,
            tuple(exists_conds),
            tuple(forall_conds),
            witness_kappa=witness,
            reason="every condition of the all-rates criterion holds",
        )
    falsifier = forall.falsify_kappa(inp) if find_falsifier else None
    return Classification(
        Verdict.DEPENDS_ON_KAPPA,
        tuple(exists_conds),
        tuple(forall_conds),
        witness_kappa=witness,
        falsifier_kappa=falsifier,
        reason="exists-condition holds, all-rates condition fails",
    )


@dataclass(frozen=True)
class SamplingReport:
    """Outcome of checking a verdict against randomly drawn rates."""

    samples: int
    seed: int
    positive: int
    witness_ok: Optional[bool]
    falsifier_ok: Optional[bool]
    consistent: bool

    def to_json(self) -> dict:
        return {
            "samples": self.samples,
            "seed": self.seed,
            "positive_samples": self.positive,
            "nonpositive_samples": self.samples - self.positive,
            "witness_verified": self.witness_ok,
            "falsifier_verified": self.falsifier_ok,
            "consistent": self.consistent,
        }


def sampling_check(instance, result: Classification, samples: int = 200, seed: int = 0) -> SamplingReport:
    """Compare a verdict with ``samples`` log-uniform random rate draws.

    AlwaysNonempty needs every draw positive and AlwaysEmpty needs none.
    DependsOnKappa needs its witness to pass and, when present, its falsifier to fail.
    """
    inp = prepare(instance)
    rng = random.Random(seed)
    positive = 0
    for _ in range(samples):
        if exists_for_kappa(inp, sample_kappa(inp.graph.arcs, rng)):
            positive += 1
    w_ok = f_ok = None
    if result.witness_kappa is not None:
        w_ok = exists_for_kappa(inp, result.witness_kappa)
    if result.falsifier_kappa is not None:
        f_ok = not exists_for_kappa(inp, result.falsifier_kappa)
    if result.verdict is Verdict.ALWAYS_NONEMPTY:
        ok = positive == samples and w_ok is not False
    elif result.verdict is Verdict.ALWAYS_EMPTY:
        ok = positive == 0
    else:
        ok = w_ok is True and f_ok is not False
    return SamplingReport(samples, seed, positive, w_ok, f_ok, ok)
