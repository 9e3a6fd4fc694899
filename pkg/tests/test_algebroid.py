import pytest

from lajet import algebroid as A
from lajet.algebroid import LElement, anchor_apply, bracket, check_axioms
from lajet.poly import Poly


def L(spec, *coeffs):
    return LElement(tuple(Poly.parse(c, spec.nvars) if spec.nvars else Poly.const(0, int(c)) for c in coeffs))


def test_bracket_examples(t1):
    assert bracket(t1, L(t1, "1"), L(t1, "y1")) == L(t1, "1")
    ab = A.abelian(2)
    assert bracket(ab, ab.frame(0), ab.frame(1)).is_zero()
    s = A.solvable()
    assert bracket(s, s.frame(1), s.frame(0)) == L(s, "0", "-1")


def test_anchor_examples(t1):
    y = Poly.var(1, 0)
    assert anchor_apply(t1, t1.frame(0), y * y) == y * 2
    assert anchor_apply(t1, L(t1, "y1"), y) == y
    ab = A.abelian(2)
    assert anchor_apply(ab, ab.frame(0), Poly.const(0, 5)).is_zero()


def test_rank_mismatch(t1):
    with pytest.raises(ValueError):
        bracket(t1, t1.frame(0), A.abelian(2).frame(0))


def test_antisymmetry_is_structural():
    s = A.solvable()
    assert s.c(1, 0, 1) == -s.c(0, 1, 1)
    with pytest.raises(ValueError):
        A.AlgebroidSpec(0, 2, s.anchor, {(1, 0, 1): Poly.one(0)})


@pytest.mark.parametrize("name", sorted(A.examples()))
def test_examples_pass_axioms(specs, name):
    r = check_axioms(specs[name])
    assert r.passed, r.failures()


def test_broken_spec_fails_with_witness():
    r = check_axioms(A.broken())
    failed = {c.name: c for _, c in r.failures()}
    assert failed
    assert set(failed) & {"jacobi", "anchor_bracket_compatible"}
    assert all(c.witness for c in failed.values())


def test_anchor_is_bracket_compatible_on_random_elements(specs):
    import random
    rng = random.Random(3)
    for spec in specs.values():
        for _ in range(4):
            X, Y = A.random_lelement(spec, rng), A.random_lelement(spec, rng)
            f = A.random_poly(rng, spec.nvars)
            lhs = anchor_apply(spec, bracket(spec, X, Y), f)
            rhs = anchor_apply(spec, X, anchor_apply(spec, Y, f)) - anchor_apply(spec, Y, anchor_apply(spec, X, f))
            assert lhs == rhs
