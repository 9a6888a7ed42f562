"""Exact linear algebra kernels.

Prime-field matrices are numpy int64 arrays with entries in [0, p);
elimination stays exact because p is word-sized, so every intermediate
product fits comfortably below 2^63.  Rational matrices use Fractions
and plain Python loops; they only appear on small inputs.

The characteristic polynomial uses the Faddeev-LeVerrier recurrence,
which divides by 1..n and therefore needs p > n.  That matches its one
caller: certifying that a zero-dimensional quotient of colength n is
reduced over a field with p > n.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank over F_p by forward elimination; does not modify the input."""
    a = np.array(matrix, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        pivot = None
        for r in range(rank, rows):
            if a[r, col]:
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
        inv = pow(int(a[rank, col]), -1, p)
        a[rank] = a[rank] * inv % p
        column = a[rank + 1 :, col]
        nz = np.nonzero(column)[0]
        if nz.size:
            a[rank + 1 + nz] = (a[rank + 1 + nz] - np.outer(column[nz], a[rank])) % p
        rank += 1
    return rank


def rref_mod_p(matrix: np.ndarray, p: int):
    """(reduced row echelon form, pivot column list) over F_p."""
    a = np.array(matrix, dtype=np.int64) % p
    rows, cols = a.shape
    pivots = []
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        pivot = None
        for r in range(rank, rows):
            if a[r, col]:
                pivot = r
                break
        if pivot is None:
            continue
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
        inv = pow(int(a[rank, col]), -1, p)
        a[rank] = a[rank] * inv % p
        column = a[:, col].copy()
        column[rank] = 0
        nz = np.nonzero(column)[0]
        if nz.size:
            a[nz] = (a[nz] - np.outer(column[nz], a[rank])) % p
        pivots.append(col)
        rank += 1
    return a, pivots


def kernel_mod_p(matrix: np.ndarray, p: int) -> "list[list[int]]":
    """A basis of the right kernel over F_p, one vector per free column."""
    a, pivots = rref_mod_p(matrix, p)
    cols = a.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-int(a[r, fc])) % p
        basis.append(v)
    return basis


def solve_mod_p(matrix: np.ndarray, rhs: np.ndarray, p: int) -> "list[int] | None":
    """One solution of A x = b over F_p, or None when inconsistent."""
    a = np.array(matrix, dtype=np.int64) % p
    b = np.array(rhs, dtype=np.int64) % p
    aug = np.hstack([a, b.reshape(-1, 1)])
    r, pivots = rref_mod_p(aug, p)
    cols = a.shape[1]
    if cols in pivots:
        return None
    x = [0] * cols
    for row, pc in enumerate(pivots):
        x[pc] = int(r[row, cols])
    return x


def char_poly_mod_p(matrix: np.ndarray, p: int) -> "list[int]":
    """Coefficients [c_n, ..., c_1, c_0] of det(tI - M) over F_p, monic.

    Faddeev-LeVerrier; requires p > n.
    """
    a = np.array(matrix, dtype=np.int64) % p
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if p <= n:
        raise ValueError("characteristic polynomial recurrence needs p > n")
    coeffs = [1]
    m = np.zeros((n, n), dtype=np.int64)
    c = 1
    identity = np.eye(n, dtype=np.int64)
    for k in range(1, n + 1):
        m = (a @ ((m + c * identity) % p)) % p
        c = (-int(np.trace(m)) * pow(k, -1, p)) % p
        coeffs.append(c)
    return coeffs


def poly_deriv_mod_p(coeffs: Sequence[int], p: int) -> "list[int]":
    """Derivative of a univariate polynomial given high-to-low coefficients."""
    n = len(coeffs) - 1
    if n <= 0:
        return [0]
    out = [(coeffs[i] * (n - i)) % p for i in range(n)]
    return _trim(out)


def _trim(coeffs):
    i = 0
    while i < len(coeffs) - 1 and coeffs[i] == 0:
        i += 1
    return list(coeffs[i:])


def poly_gcd_mod_p(a: Sequence[int], b: Sequence[int], p: int) -> "list[int]":
    """Monic gcd of univariate polynomials, high-to-low coefficients."""
    fa = _trim([x % p for x in a])
    fb = _trim([x % p for x in b])

    def is_zero(f):
        return len(f) == 1 and f[0] == 0

    def rem(num, den):
        num = list(num)
        dd = len(den) - 1
        inv = pow(den[0], -1, p)
        while len(num) - 1 >= dd and not is_zero(num):
            factor = num[0] * inv % p
            for i, dc in enumerate(den):
                num[i] = (num[i] - factor * dc) % p
            num = _trim(num)
        return num

    while not is_zero(fb):
        fa, fb = fb, rem(fa, fb)
    inv = pow(fa[0], -1, p)
    return [c * inv % p for c in fa]


def squarefree_univariate_mod_p(coeffs: Sequence[int], p: int) -> bool:
    """True when gcd(f, f') is constant; valid whenever deg f < p."""
    f = _trim([c % p for c in coeffs])
    if len(f) - 1 >= p:
        raise ValueError("squarefree test needs deg f < p")
    if len(f) <= 1:
        return True
    df = poly_deriv_mod_p(f, p)
    if len(df) == 1 and df[0] == 0:
        return False
    return len(poly_gcd_mod_p(f, df, p)) == 1


def rank_rational(rows: "list[list[Fraction]]") -> int:
    """Rank over Q by fraction-exact Gaussian elimination (small inputs)."""
    m = [[Fraction(v) for v in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [v * inv for v in m[rank]]
        for r in range(nrows):
            if r != rank and m[r][col]:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_over_field(rows, field) -> int:
    """Rank of a small matrix of raw field values (either field)."""
    if not rows or not rows[0]:
        return 0
    if hasattr(field, "p"):
        return rank_mod_p(np.array(rows, dtype=np.int64), field.p)
    return rank_rational(rows)


def det_over_field(rows, field):
    """Determinant of a small square matrix of raw field values."""
    n = len(rows)
    m = [[field.normalize(v) for v in row] for row in rows]
    det = field.one
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col]:
                pivot = r
                break
        if pivot is None:
            return field.zero
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = field.neg(det)
        det = field.mul(det, m[col][col])
        inv = field.inv(m[col][col])
        for r in range(col + 1, n):
            if m[r][col]:
                factor = field.mul(m[r][col], inv)
                m[r] = [field.sub(a, field.mul(factor, b)) for a, b in zip(m[r], m[col])]
    return det
