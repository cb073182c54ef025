"""Exact rational linear algebra on lists of :class:`fractions.Fraction`.

Matrices are plain ``list[list[Fraction]]`` (row major). Everything here is
exact; there is no pivoting tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, List, Sequence, Tuple

Matrix = List[List[Fraction]]


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def shape(m: Sequence[Sequence]) -> Tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def transpose(m: Sequence[Sequence]) -> Matrix:
    if not m:
        return []
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> List[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def rref(m: Sequence[Sequence]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = [list(map(Fraction, row)) for row in m]
    nrows, ncols = shape(a)
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = next((k for k in range(r, nrows) if a[k][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for k in range(nrows):
            if k != r and a[k][col] != 0:
                f = a[k][col]
                a[k] = [x - f * y for x, y in zip(a[k], a[r])]
        pivots.append(col)
        r += 1
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> List[List[Fraction]]:
    """Basis of the right kernel ``{x : m x = 0}`` as a list of vectors."""
    if ncols is None:
        ncols = shape(m)[1]
    if not m:
        return [[Fraction(int(i == k)) for i in range(ncols)] for k in range(ncols)]
    r, pivots = rref(m)
    free = [k for k in range(ncols) if k not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in enumerate(pivots):
            v[p] = -r[row][f]
        basis.append(v)
    return basis


def column_basis(m: Sequence[Sequence]) -> Matrix:
    """Columns of ``m`` forming a basis of its range, returned as a matrix."""
    _, pivots = rref(m)
    return [[Fraction(row[p]) for p in pivots] for row in m]


def solve(a: Sequence[Sequence], b: Sequence) -> List[Fraction]:
    """Solve the square system ``a x = b``.

    Raises:
        ZeroDivisionError: if ``a`` is singular.
    """
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(b[k])] for k, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [red[k][n] for k in range(n)]


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == k)) for i in range(n)] for k, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def det(m: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination.

    Entries are scaled to a common integer denominator first so every
    intermediate quotient is an exact integer division.
    """
    n = len(m)
    if n == 0:
        return Fraction(1)
    rows = [list(map(Fraction, row)) for row in m]
    denom = 1
    for row in rows:
        for x in row:
            denom = denom * x.denominator // gcd(denom, x.denominator)
    a = [[int(x * denom) for x in row] for row in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], denom**n)


def primitive_integer_vector(v: Sequence[Fraction]) -> List[Fraction]:
    """Scale ``v`` to coprime integers, keeping its direction."""
    lcm = 1
    for x in v:
        lcm = lcm * Fraction(x).denominator // gcd(lcm, Fraction(x).denominator)
    ints = [int(Fraction(x) * lcm) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return [Fraction(0)] * len(v)
    return [Fraction(x // g) for x in ints]
