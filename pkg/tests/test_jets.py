from fractions import Fraction

import pytest
import sympy

from lajet import algebroid as A
from lajet.enveloping import UElement, u_mul
from lajet.jets import (Jet, OrderError, g_nabla, gram, jet_eval, jet_mul, local_coordinates,
                        two_nabla, verify_jets)
from lajet.poly import Poly


def xi(spec, q, *a):
    return Jet.basis(spec, q, tuple(a))


def test_eval_examples(t1):
    y = Poly.var(1, 0)
    assert jet_eval(xi(t1, 3, 1), UElement.gen(t1, 0)) == Poly.one(1)
    assert jet_eval(xi(t1, 3, 0), UElement.one(t1)) == Poly.one(1)
    assert jet_eval(Jet.basis(t1, 3, (2,), y), UElement.mono(t1, (2,))) == y


def test_eval_order_exceeded(t1):
    with pytest.raises(OrderError):
        jet_eval(xi(t1, 2, 1), UElement.mono(t1, (2,)))


def test_mul_examples(t1):
    assert jet_mul(xi(t1, 4, 1), xi(t1, 4, 1)) == xi(t1, 4, 2).scale(2)
    assert jet_mul(xi(t1, 4, 1), xi(t1, 4, 2)) == xi(t1, 4, 3).scale(3)
    alpha = xi(t1, 4, 2) + xi(t1, 4, 1).scale(Poly.var(1, 0))
    assert jet_mul(Jet.unit(t1, 4), alpha) == alpha


def test_mul_order_mismatch(t1):
    with pytest.raises(OrderError):
        jet_mul(xi(t1, 3, 1), xi(t1, 4, 1))


def test_mul_matches_sympy_series(specs):
    """Under x_i = xi_{e_i} the jet algebra is a truncated power series ring."""
    spec = specs["abelian2"]
    q = 4
    lc = local_coordinates(spec, q)
    x1, x2 = sympy.symbols("x1 x2")

    def as_sympy(alpha):
        return sum(sympy.Rational(str(c.const_value())) * x1 ** e[0] * x2 ** e[1]
                   for e, c in lc.to_series(alpha).items())

    def trunc(expr):
        p = sympy.Poly(sympy.expand(expr), x1, x2)
        return sum(c * x1 ** i * x2 ** j for (i, j), c in p.terms() if i + j < q)

    a = xi(spec, q, 1, 0) + xi(spec, q, 0, 2).scale(3)
    b = xi(spec, q, 1, 1) - xi(spec, q, 0, 0)
    assert sympy.expand(as_sympy(jet_mul(a, b)) - trunc(as_sympy(a) * as_sympy(b))) == 0


def test_g_nabla_examples(t1):
    d = UElement.gen(t1, 0)
    for a in range(1, 4):
        assert g_nabla(d, xi(t1, 4, a)) == -xi(t1, 3, a - 1)
    assert g_nabla(d, xi(t1, 4, 0)).is_zero()
    y = Poly.var(1, 0)
    alpha = xi(t1, 4, 2) + xi(t1, 4, 1)
    assert g_nabla(UElement.scalar(t1, y), alpha) == alpha.scale(y)


def test_g_nabla_order_exhausted(t1):
    with pytest.raises(OrderError):
        g_nabla(UElement.mono(t1, (2,)), xi(t1, 2, 1))


def test_two_nabla_examples(t1):
    d = UElement.gen(t1, 0)
    for a in range(1, 4):
        r = two_nabla(d, xi(t1, 4, a))
        assert r.order == 3 and r == xi(t1, 3, a - 1)
    assert two_nabla(d, xi(t1, 4, 0)).is_zero()
    alpha = xi(t1, 4, 2) + xi(t1, 4, 1)
    assert two_nabla(UElement.one(t1), alpha) == alpha
    y = UElement.scalar(t1, Poly.var(1, 0))
    assert jet_eval(two_nabla(y, xi(t1, 4, 0)), d) == Poly.one(1)
    # alpha(D E) by definition
    E = UElement.mono(t1, (1,), Poly.var(1, 0))
    for D in (d, UElement.mono(t1, (2,))):
        assert jet_eval(two_nabla(E, alpha), D) == jet_eval(alpha, u_mul(D, E))


def test_local_coordinate_examples(t1):
    lc = local_coordinates(t1, 3)
    assert lc.from_xi[(2,)] == {(2,): Fraction(1, 2)}
    assert lc.from_xi[(0,)] == {(0,): 1}
    ab = A.abelian(2)
    lc2 = local_coordinates(ab, 2)
    assert lc2.from_xi[(1, 0)] == {(1, 0): 1}
    assert lc2.from_xi[(0, 1)] == {(0, 1): 1}


def test_gram_examples(specs, t1):
    for spec in specs.values():
        assert gram(spec, 3, 2).is_identity()
    g = gram(t1, 2, 1)
    assert g.entries == [[1, 0], [0, -1]]


@pytest.mark.parametrize("name", sorted(A.examples()))
@pytest.mark.parametrize("q", [2, 3, 4])
def test_gram1_unimodular(specs, name, q):
    spec = specs[name]
    g = gram(spec, q, 1)
    det = g.det()
    assert det.is_const() and abs(det.const_value()) == 1
    if spec.nvars == 0:
        M = sympy.Matrix([[sympy.Rational(str(x.const_value())) for x in row] for row in g.entries])
        assert abs(M.det()) == 1


@pytest.mark.parametrize("name", sorted(A.examples()))
def test_verify_jets(specs, name):
    r = verify_jets(specs[name], q=4)
    assert r.passed, r.failures()


def test_verify_jets_catches_broken_spec():
    r = verify_jets(A.broken(), q=3)
    assert not r.passed
