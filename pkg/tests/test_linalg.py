from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from deficiency_one import linalg

small_ints = st.integers(min_value=-5, max_value=5)


def square(n_max=5):
    return st.integers(1, n_max).flatmap(
        lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)
    )


def test_rank_and_nullspace_of_known_matrix():
    m = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert linalg.rank(m) == 2
    ns = linalg.nullspace(m)
    assert len(ns) == 1
    assert linalg.matvec(m, ns[0]) == [0, 0, 0]


def test_solve_and_inverse():
    a = [[2, 1], [1, 3]]
    x = linalg.solve(a, [3, 5])
    assert x == [Fraction(4, 5), Fraction(7, 5)]
    inv = linalg.inverse(a)
    assert linalg.matmul(a, inv) == [[1, 0], [0, 1]]


def test_singular_solve_raises():
    with pytest.raises(ZeroDivisionError):
        linalg.solve([[1, 2], [2, 4]], [1, 2])


def test_primitive_integer_vector():
    v = linalg.primitive_integer_vector([Fraction(1, 2), Fraction(-3, 4), 0])
    assert v == [2, -3, 0]


@settings(max_examples=60, deadline=None)
@given(square())
def test_det_matches_permutation_expansion(m):
    from deficiency_one.mtree import brute_determinant

    assert linalg.det(m) == brute_determinant(m)


@settings(max_examples=60, deadline=None)
@given(square())
def test_rank_nullity(m):
    n = len(m[0])
    assert linalg.rank(m) + len(linalg.nullspace(m)) == n
    for v in linalg.nullspace(m):
        assert all(x == 0 for x in linalg.matvec(m, v))
