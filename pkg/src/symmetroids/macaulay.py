"""Colength oracle by brute-force linear algebra, independent of division.

For an affine ideal I = (g_1, ..., g_k) the oracle works with two
degrees: a measurement degree m and a certificate degree M >= m.  Stack
the coefficient vectors of every multiple x^a * g_i of total degree
<= M over the monomials of degree <= M; the span V_M of the rows meets
R_{<=m} in

    dim(V_M cap R_{<=m}) = rank(A) - rank(A restricted to degree > m)

and the quotient proxy

    dim(m, M) = #(monomials of degree <= m) - dim(V_M cap R_{<=m})

is nonincreasing in M with limit dim R_{<=m} / (I cap R_{<=m}), which in
turn equals the colength once m passes the regularity of a
zero-dimensional ideal.  The certificate slack matters: an ideal element
of low degree may only be reachable through cancellation between
higher-degree multiples, and measuring with M = m silently counts the
Hilbert function of the homogenized generators instead, which overshoots
whenever the top-degree forms share a projective zero (try
(x0^3 - 1, x1^2 - x0, x2 - x0*x1)).

The oracle answers only from agreement windows: for each m it raises M
until two consecutive values of dim(m, M) agree, and it returns the
common value of two consecutive settled measurements dim*(m-1), dim*(m).
Anything that never settles within the escalation budget comes back as
None (inconclusive); ideals that are not zero-dimensional never settle.
The default starting measurement degree is three times the maximum
generator degree.

This module exists to cross-check the staircase count coming out of the
Buchberger engine through a completely different mechanism: no monomial
orders, no division, just ranks.  It intentionally imports nothing from
the groebner module.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .fields import PrimeField
from .linalg import rank_mod_p, rank_rational
from .polynomials import Polynomial, monomials_up_to_degree


def _certified_dimension_at(generators, nvars: int, m: int, M: int, field) -> int:
    columns = monomials_up_to_degree(nvars, M)
    col_index = {mono: i for i, mono in enumerate(columns)}
    high = [i for i, mono in enumerate(columns) if sum(mono) > m]
    n_low = len(columns) - len(high)
    rows = []
    for g in generators:
        room = M - g.degree()
        if room < 0:
            continue
        for mult in monomials_up_to_degree(nvars, room):
            row = [0] * len(columns)
            for mono, c in g.terms.items():
                shifted = tuple(x + y for x, y in zip(mono, mult))
                row[col_index[shifted]] = c
            rows.append(row)
    if not rows:
        return n_low
    if isinstance(field, PrimeField):
        a = np.array(rows, dtype=np.int64)
        rank_full = rank_mod_p(a, field.p)
        rank_high = rank_mod_p(a[:, high], field.p) if high else 0
    else:
        rank_full = rank_rational([[Fraction(v) for v in row] for row in rows])
        rank_high = (
            rank_rational([[Fraction(row[i]) for i in high] for row in rows])
            if high
            else 0
        )
    return n_low - (rank_full - rank_high)


def _settled_dimension(generators, nvars: int, m: int, escalations: int, field):
    previous = None
    for slack in range(escalations + 1):
        current = _certified_dimension_at(generators, nvars, m, m + slack, field)
        if current == previous:
            return current
        previous = current
    return None


def macaulay_colength(
    generators: "list[Polynomial]",
    degree_cap: "int | None" = None,
    escalations: int = 4,
) -> "int | None":
    """Stabilized quotient dimension, or None when it never settles.

    Settles the certificate degree at each measurement degree, then
    returns the common value of two consecutive settled measurements,
    raising the measurement degree by one up to `escalations` times.
    Ideals that are not zero-dimensional never stabilize and come back
    as None.
    """
    gens = [g for g in generators if g]
    if not gens:
        return None
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
    if any(g.degree() == 0 for g in gens):
        return 0
    if degree_cap is None:
        degree_cap = 3 * max(g.degree() for g in gens)
    degree_cap = max(degree_cap, 2)
    previous = _settled_dimension(
        gens, ring.nvars, degree_cap - 1, escalations, ring.field
    )
    for step in range(escalations + 1):
        cap = degree_cap + step
        current = _settled_dimension(gens, ring.nvars, cap, escalations, ring.field)
        if current is not None and current == previous:
            return current
        previous = current
    return None
