"""Exact linear algebra mod p and over the rationals."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symmetroids.linalg import (
    char_poly_mod_p,
    det_over_field,
    kernel_mod_p,
    poly_gcd_mod_p,
    rank_mod_p,
    rank_over_field,
    rank_rational,
    rref_mod_p,
    solve_mod_p,
    squarefree_univariate_mod_p,
)
from symmetroids.fields import QQ, PrimeField


def test_rank_mod_p_known():
    p = 31991
    assert rank_mod_p([[1, 2], [2, 4]], p) == 1
    assert rank_mod_p([[1, 0], [0, 1]], p) == 2
    assert rank_mod_p([[0, 0], [0, 0]], p) == 0
    # rank drops only modulo 5
    m = [[1, 2], [3, 11]]
    assert rank_mod_p(m, 5) == 1
    assert rank_mod_p(m, 7) == 2


def test_rref_pivots():
    a, pivots = rref_mod_p([[2, 4, 6], [1, 2, 4]], 7)
    assert pivots == [0, 2]
    assert a[0][0] == 1 and a[1][2] == 1


def test_kernel_and_solve():
    p = 101
    m = [[1, 2, 3], [4, 5, 6]]
    basis = kernel_mod_p(m, p)
    assert len(basis) == 1
    v = basis[0]
    arr = (np.array(m, dtype=np.int64) @ np.array(v, dtype=np.int64)) % p
    assert not arr.any()
    x = solve_mod_p([[1, 1], [1, 2]], [5, 8], p)
    assert x == [2, 3]
    assert solve_mod_p([[1, 1], [2, 2]], [1, 3], p) is None


def test_char_poly_known_matrices():
    p = 31991
    # diag(2, 3): x^2 - 5x + 6
    assert char_poly_mod_p([[2, 0], [0, 3]], p) == [1, p - 5, 6]
    # nilpotent: x^2
    assert char_poly_mod_p([[0, 1], [0, 0]], p) == [1, 0, 0]
    # companion matrix of x^3 - 2x - 5
    c = [[0, 0, 5], [1, 0, 2], [0, 1, 0]]
    assert char_poly_mod_p(c, p) == [1, 0, p - 2, p - 5]


def test_char_poly_needs_large_p():
    with pytest.raises(ValueError):
        char_poly_mod_p([[0] * 7 for _ in range(7)], 7)


def test_poly_gcd_and_squarefree():
    p = 31991
    # (x-1)^2 (x-2) has gcd (x-1) with its derivative
    f = [1, p - 4, 5, p - 2]
    g = poly_gcd_mod_p(f, [3, p - 8, 5], p)
    assert g == [1, p - 1]
    assert not squarefree_univariate_mod_p(f, p)
    assert squarefree_univariate_mod_p([1, 0, p - 2], p)  # x^2 - 2
    assert squarefree_univariate_mod_p([1, 5], p)
    assert squarefree_univariate_mod_p([1], p)


def test_rank_rational():
    m = [
        [Fraction(1, 2), Fraction(1, 3)],
        [Fraction(3, 2), Fraction(1)],
    ]
    assert rank_rational(m) == 1
    assert rank_rational([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]) == 2
    assert rank_rational([]) == 0


def test_rank_and_det_over_field_dispatch():
    f7 = PrimeField(7)
    assert rank_over_field([[3, 1], [6, 2]], f7) == 1
    assert rank_over_field([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]], QQ) == 1
    assert det_over_field([[1, 2], [3, 4]], f7) == (4 - 6) % 7
    assert det_over_field(
        [[Fraction(1, 2), Fraction(1)], [Fraction(1), Fraction(3)]], QQ
    ) == Fraction(1, 2)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=0, max_value=100), min_size=3, max_size=3),
        min_size=3,
        max_size=3,
    )
)
def test_char_poly_trace_det_consistency(rows):
    p = 31991
    coeffs = char_poly_mod_p(rows, p)
    assert len(coeffs) == 4 and coeffs[0] == 1
    trace = sum(rows[i][i] for i in range(3)) % p
    assert coeffs[1] == (-trace) % p
    det = int(round(float(np.linalg.det(np.array(rows, dtype=float)))))
    assert coeffs[3] == (-det) % p


@settings(max_examples=40, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=0, max_value=31990), min_size=4, max_size=4),
        min_size=2,
        max_size=6,
    )
)
def test_rank_bounds_and_kernel_dimension(rows):
    p = 31991
    r = rank_mod_p(rows, p)
    assert 0 <= r <= min(len(rows), 4)
    kernel = kernel_mod_p(rows, p)
    assert len(kernel) == 4 - r
