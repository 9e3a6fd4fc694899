from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lajet.linalg import nullspace_dim, poly_det, rank, unit_inverse
from lajet.poly import Poly

entries = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def matrices(draw):
    r = draw(st.integers(1, 5))
    c = draw(st.integers(1, 5))
    rows = draw(st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r))
    # low-rank structure is more interesting than generic full rank
    if draw(st.booleans()) and r > 1:
        rows[-1] = [a + b for a, b in zip(rows[0], rows[1 % r])]
    return rows


@given(matrices())
@settings(max_examples=80, deadline=None)
def test_rank_matches_sympy(M):
    assert rank(M) == sympy.Matrix(M).rank()
    assert nullspace_dim(M, len(M[0])) == len(M[0]) - sympy.Matrix(M).rank()


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)))
@settings(max_examples=60, deadline=None)
def test_det_matches_sympy(M):
    n = len(M)
    P = [[Poly.const(0, x) for x in row] for row in M]
    assert poly_det(P, 0).const_value() == Fraction(str(sympy.Matrix(M).det()))


def test_poly_det():
    y = Poly.var(1, 0)
    one = Poly.one(1)
    assert poly_det([[y, one], [one, y]], 1) == y * y - 1


def test_unit_inverse_triangular():
    y = Poly.var(1, 0)
    one, zero = Poly.one(1), Poly.zero(1)
    M = [[one, zero], [y, -one]]
    inv = unit_inverse(M, 1)
    for i in range(2):
        for j in range(2):
            s = sum((M[i][k] * inv[k][j] for k in range(2)), zero)
            assert s == (one if i == j else zero)
