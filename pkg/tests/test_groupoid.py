import pytest

from lajet import algebroid as A
from lajet.enveloping import UElement, u_counit, multi_indices
from lajet.groupoid import (GroupoidData, groupoid_report,
                            kp_coproduct_check, normalize, pairing_i, tangent_picture_report, unit_i,
                            verify_groupoid)
from lajet.jets import Jet, JetTensor, jet_counit
from lajet.poly import Poly


@pytest.fixture(scope="module")
def g1(t1):
    return GroupoidData(t1, 4)


def xi(g, *a):
    return g.xi(tuple(a))


def test_unit_examples(t1):
    y = Poly.var(1, 0)
    assert unit_i(t1, y, 2, 1) == Jet.basis(t1, 2, (0,), y)
    assert unit_i(t1, y, 2, 2) == Jet.basis(t1, 2, (0,), y) + Jet.basis(t1, 2, (1,))
    for spec in A.examples().values():
        for which in (1, 2):
            assert unit_i(spec, Poly.one(spec.nvars), 3, which) == Jet.unit(spec, 3)


def test_pairing_examples(g1, specs):
    d = UElement.gen(g1.spec, 0)
    assert pairing_i(xi(g1, 1), d, 1) == -Poly.one(1)
    for spec in specs.values():
        g = GroupoidData(spec, 3)
        for a in g.basis:
            alpha = g.xi(a)
            for which in (1, 2):
                assert pairing_i(alpha, UElement.one(spec), which) == jet_counit(alpha)
        for b in g.basis:
            D = UElement.mono(spec, b)
            for which in (1, 2):
                assert pairing_i(Jet.unit(spec, 3), D, which) == u_counit(D)


def test_coproduct_examples(g1):
    spec, q = g1.spec, g1.order
    one = Poly.one(1)
    z, e = (0,), (1,)
    assert g1.coproduct(xi(g1, 0)) == JetTensor(spec, q, 2, {(z, z): one}, groupoid=True)
    assert g1.coproduct(xi(g1, 1)) == JetTensor(spec, q, 2, {(e, z): one, (z, e): one}, groupoid=True)
    r = Poly.parse("y1^2+1", 1)
    u1 = g1.unit(r, 1)
    assert g1.coproduct(u1) == normalize(spec, q, [(u1, xi(g1, 0))])


def test_kp_examples(g1, specs):
    d = UElement.gen(g1.spec, 0)
    assert kp_coproduct_check(g1, xi(g1, 1), d, d)
    for spec in specs.values():
        g = GroupoidData(spec, 3)
        for D in multi_indices(spec.rank, 1):
            for E in multi_indices(spec.rank, 1):
                assert kp_coproduct_check(g, Jet.unit(spec, 3), UElement.mono(spec, D), UElement.mono(spec, E))


def test_antipode_examples(g1):
    assert g1.antipode(xi(g1, 0)) == xi(g1, 0)
    assert g1.antipode(xi(g1, 1)) == -xi(g1, 1)
    r = Poly.parse("3*y1-1/2", 1)
    assert g1.antipode(g1.unit(r, 1)) == g1.unit(r, 2)


@pytest.mark.parametrize("name", sorted(A.examples()))
def test_groupoid_suite(specs, name):
    r = groupoid_report(specs[name], 4)
    assert r.passed, r.failures()
    names = {c.name for c in r.checks}
    assert {"counit_laws", "antipode_laws", "coassociativity", "coproduct_algebra_morphism",
            "antipode_algebra_morphism", "antipode_exchanges_units", "antipode_involution",
            "connections_from_coproduct", "coproduct_pairing_with_coproduct",
            "coproduct_kp_formula"} <= names


def test_tangent_picture(t1):
    r = tangent_picture_report(t1, 4)
    assert r.passed
    assert len(r.checks) == 8


def test_tangent_picture_needs_tangent(solv):
    with pytest.raises(ValueError):
        tangent_picture_report(solv, 3)


def test_suite_detects_wrong_antipode(solv):
    g = GroupoidData(solv, 3)
    g.antipode = lambda alpha: alpha
    failed = {c.name for _, c in verify_groupoid(g).failures()}
    assert "antipode_laws" in failed


def test_suite_detects_wrong_coproduct(solv):
    g = GroupoidData(solv, 3)
    true = g.coproduct

    def skewed(alpha):
        T = true(alpha)
        terms = {k: c for k, c in T.terms.items() if k[0] <= k[1]}
        return JetTensor(T.spec, T.order, 2, terms, groupoid=True)

    g.coproduct = skewed
    assert not verify_groupoid(g).passed


def test_broken_spec_fails():
    r = verify_groupoid(GroupoidData(A.broken(), 3))
    assert not r.passed
