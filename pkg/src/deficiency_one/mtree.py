"""Branching sums as exact oracles for the reduced kinetic matrix.

The inverse of the reduced kinetic matrix, its determinant and the solution
``theta''`` all have closed forms as weighted sums over branchings of the
complex graph. These functions evaluate those sums by enumeration so they
can be compared with plain elimination.

Sign convention for the minor identity: with ``n x n`` matrix ``Z`` whose
rows sum to zero, deleted set ``Q`` and ``i, j`` outside ``Q``,

    det Z[rows without Q+j, cols without Q+i]
        = (-1)**(p_i + p_j) * (-1)**(n - |Q| - 1) * sum over branchings

where ``p_i`` and ``p_j`` are the positions of ``i`` and ``j`` among the
indices *not in Q*. Using the raw indices instead goes wrong as soon as
``Q`` has an element between ``i`` and ``j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Mapping, Sequence, Tuple

from . import linalg
from .digraph import Arc, DiGraph, arborescence_vertices, enumerate_branchings
from .netmodel import build_kinetic_matrix

#: Size cap for the permutation-expansion determinant.
BRUTE_DET_CAP = 8
#: Minors up to this size use permutation expansion, larger ones elimination.
MINOR_EXPANSION_SIZE = 6


@dataclass(frozen=True)
class BranchingSum:
    """A weighted branching count and its individual terms."""

    value: Fraction
    terms: Tuple[Tuple[FrozenSet[Arc], Fraction], ...]

    @classmethod
    def of(cls, branchings: Iterable[FrozenSet[Arc]], weight: Mapping[Arc, Fraction]) -> "BranchingSum":
        terms = []
        for br in branchings:
            p = Fraction(1)
            for a in br:
                p *= weight[a]
            terms.append((br, p))
        terms.sort(key=lambda t: sorted(t[0]))
        return cls(sum((p for _, p in terms), Fraction(0)), tuple(terms))

    def monomials(self) -> List[Tuple[Arc, ...]]:
        """Arc tuples of the terms, each sorted (symbolic view)."""
        return [tuple(sorted(br)) for br, _ in self.terms]


def _split(graph: DiGraph) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    cs = graph.components
    if cs.t != 1 or cs.strongly_connected:
        raise ValueError("needs one absorbing component and a graph that is not strongly connected")
    cprime = cs.absorbing_vertices()
    return cprime, tuple(v for v in graph.vertices if v not in set(cprime))


def L_value(graph: DiGraph, kappa: Mapping[Arc, Fraction]) -> BranchingSum:
    """Weighted sum over branchings rooted at the absorbing component."""
    cprime, _ = _split(graph)
    res = BranchingSum.of(enumerate_branchings(graph, cprime), kappa)
    if res.value == 0:
        raise AssertionError("branching sum vanished for positive rates")
    return res


def inverse_numerator(graph: DiGraph, kappa: Mapping[Arc, Fraction], i: int, j: int) -> BranchingSum:
    """Branchings rooted at the absorbing component plus ``j`` in which ``i`` reaches ``j``."""
    cprime, rest = _split(graph)
    if i not in rest or j not in rest:
        raise ValueError("i and j must be non-absorbing")
    return BranchingSum.of(enumerate_branchings(graph, set(cprime) | {j}, constraint=(i, j)), kappa)


def branching_inverse(graph: DiGraph, kappa: Mapping[Arc, Fraction], i: int, j: int) -> Fraction:
    """Entry ``(j, i)`` of the inverse reduced kinetic matrix, by branching sums."""
    return -inverse_numerator(graph, kappa, i, j).value / L_value(graph, kappa).value


def theta_branching(graph: DiGraph, kappa: Mapping[Arc, Fraction], h: Mapping[int, Fraction], j: int) -> Fraction:
    """``theta_j`` as ``-(1/L) * sum of kappa_A * h(tree of j in A)``."""
    cprime, rest = _split(graph)
    if j not in rest:
        raise ValueError("j must be non-absorbing")
    L = L_value(graph, kappa).value
    total = Fraction(0)
    for br in enumerate_branchings(graph, set(cprime) | {j}):
        p = Fraction(1)
        for a in br:
            p *= kappa[a]
        total += p * sum((Fraction(h[v]) for v in arborescence_vertices(br, j)), Fraction(0))
    return -total / L


def sign_of_bijection(pi: Mapping[int, int]) -> int:
    """``(-1)**inversions`` of a bijection between two ordered index sets."""
    keys = sorted(pi)
    if len(set(pi.values())) != len(keys):
        raise ValueError("not a bijection")
    inv = sum(1 for a, b in itertools.combinations(keys, 2) if pi[a] > pi[b])
    return -1 if inv % 2 else 1


def brute_determinant(z: Sequence[Sequence]) -> Fraction:
    """Determinant by signed permutation expansion (``n <= 8``)."""
    n = len(z)
    if n > BRUTE_DET_CAP:
        raise ValueError(f"permutation expansion capped at {BRUTE_DET_CAP}")
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        p = Fraction(1)
        for r, c in enumerate(perm):
            p *= Fraction(z[r][c])
            if p == 0:
                break
        if p:
            total += sign_of_bijection(dict(enumerate(perm))) * p
    return total


def minor(z: Sequence[Sequence], drop_rows: Iterable[int], drop_cols: Iterable[int]) -> Fraction:
    """Determinant after deleting the given (1-based) rows and columns."""
    n = len(z)
    rows = [r for r in range(1, n + 1) if r not in set(drop_rows)]
    cols = [c for c in range(1, n + 1) if c not in set(drop_cols)]
    if len(rows) != len(cols):
        raise ValueError("minor must be square")
    sub = [[Fraction(z[r - 1][c - 1]) for c in cols] for r in rows]
    if len(sub) <= MINOR_EXPANSION_SIZE:
        return brute_determinant(sub)
    return linalg.det(sub)


def matrix_graph(z: Sequence[Sequence]) -> DiGraph:
    """Graph of the nonzero off-diagonal entries of ``z`` (vertices ``1..n``)."""
    n = len(z)
    arcs = [(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b and z[a - 1][b - 1] != 0]
    return DiGraph.from_count(n, arcs)


def matrix_tree_identity(z: Sequence[Sequence], Q: Iterable[int], i: int, j: int) -> Tuple[Fraction, Fraction]:
    """Both sides of the all-minors identity for one ``(i, j)`` minor.

    Returns:
        ``(minor_value, branching_value)``; they agree for every row-sum-zero
        ``z``.

    Raises:
        ValueError: if a row sum is nonzero or ``i``/``j`` lie in ``Q``.
    """
    n = len(z)
    if any(sum(Fraction(x) for x in row) != 0 for row in z):
        raise ValueError("row sums must be zero")
    Q = set(Q)
    if i in Q or j in Q:
        raise ValueError("i and j must lie outside Q")
    lhs = minor(z, Q | {j}, Q | {i})
    rest = [v for v in range(1, n + 1) if v not in Q]
    weight = {(a, b): Fraction(z[a - 1][b - 1]) for a in range(1, n + 1) for b in range(1, n + 1) if a != b}
    g = matrix_graph(z)
    total = BranchingSum.of(enumerate_branchings(g, Q | {j}, constraint=(i, j)), weight).value
    sign = (-1) ** (rest.index(i) + rest.index(j)) * (-1) ** (n - len(Q) - 1)
    return lhs, sign * total


def inverse_via_minors(graph: DiGraph, kappa: Mapping[Arc, Fraction], i: int, j: int) -> Fraction:
    """Entry ``(j, i)`` of the inverse reduced matrix via two minors of the transposed kinetic matrix."""
    cprime, rest = _split(graph)
    km = build_kinetic_matrix(graph, kappa).as_lists()
    zt = linalg.transpose(km)
    pos = {v: k + 1 for k, v in enumerate(graph.vertices)}
    Q = {pos[v] for v in cprime}
    pi, pj = pos[i], pos[j]
    free = [v for v in range(1, len(zt) + 1) if v not in Q]
    num = (-1) ** (free.index(pi) + free.index(pj)) * minor(zt, Q | {pj}, Q | {pi})
    return num / minor(zt, Q, Q)
