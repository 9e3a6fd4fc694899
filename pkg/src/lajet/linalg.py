"""Exact linear algebra: Bareiss elimination over Z/Q and over Q[y].

Matrices are plain lists of rows.  Nothing here uses floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .poly import Poly


# -- polynomial helpers ------------------------------------------------------


def poly_divexact(a: Poly, b: Poly) -> Poly:
    """Exact quotient a / b in Q[y]; raises if b does not divide a."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if b.is_const():
        return a * (1 / b.const_value())
    lead_e, lead_c = b.sorted_terms()[0]
    rem = a
    quot: dict = {}
    while rem:
        e, c = rem.sorted_terms()[0]
        shift = tuple(x - y for x, y in zip(e, lead_e))
        if any(s < 0 for s in shift):
            raise ArithmeticError("polynomial division is not exact")
        q = c / lead_c
        quot[shift] = quot.get(shift, 0) + q
        rem = rem - b * Poly(a.nvars, {shift: q})
    return Poly(a.nvars, quot)


def poly_det(M: list, nvars: int) -> Poly:
    """Determinant over Q[y] by fraction-free Bareiss elimination."""
    n = len(M)
    if n == 0:
        return Poly.one(nvars)
    A = [list(row) for row in M]
    sign = 1
    prev = Poly.one(nvars)
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((r for r in range(k + 1, n) if A[r][k]), None)
            if swap is None:
                return Poly.zero(nvars)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        pivot = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = poly_divexact(A[i][j] * pivot - A[i][k] * A[k][j], prev)
            A[i][k] = Poly.zero(nvars)
        prev = pivot
    det = A[n - 1][n - 1]
    return det if sign > 0 else -det


def unit_inverse(M: list, nvars: int) -> list:
    """Inverse over Q[y] of a square matrix, pivoting only on nonzero constants.

    Raises ``ArithmeticError`` if some column has no unit pivot available,
    which for the Gram matrices here signals a broken invariant.
    """
    n = len(M)
    zero = Poly.zero(nvars)
    one = Poly.one(nvars)
    A = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] and A[r][col].is_const()), None)
        if piv is None:
            raise ArithmeticError(f"no unit pivot in column {col}")
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col].const_value()
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [row[n:] for row in A]


def mat_vec(M: list, v: list, nvars: int) -> list:
    out = []
    for row in M:
        acc = Poly.zero(nvars)
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


# -- rational matrices ------------------------------------------------------


def _integer_rows(M: list) -> list:
    rows = []
    for row in M:
        fr = [Fraction(x) for x in row]
        den = 1
        for x in fr:
            if x.denominator != 1:
                den = lcm(den, x.denominator)
        rows.append([int(x * den) for x in fr])
    return rows


def rank(M: list) -> int:
    """Rank of a rational matrix by fraction-free (Bareiss) elimination.

    Each row is scaled to integers first; pivots are chosen as the first
    nonzero entry scanning rows top-down, so the run is deterministic.
    """
    if not M or not M[0]:
        return 0
    A = _integer_rows(M)
    nrows, ncols = len(A), len(A[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, nrows):
            a = A[i][c]
            row_i = A[i]
            row_r = A[r]
            if a:
                A[i] = [(x * p - a * y) // prev for x, y in zip(row_i, row_r)]
            elif p != prev:
                A[i] = [(x * p) // prev for x in row_i]
        prev = p
        r += 1
        if r == nrows:
            break
    return r


def nullspace_dim(M: list, ncols: int) -> int:
    return ncols - rank(M) if M else ncols
