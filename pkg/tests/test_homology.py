import json
from fractions import Fraction

import pytest
import sympy

from lajet import algebroid as A
from lajet.hh import cochain_complex, koszul_dual_complex
from lajet.homology import ComplexError, GradedComplex, evaluate_at_point, homology_ranks
from lajet.poly import Poly


def test_zero_differentials():
    c = GradedComplex("z", {0: 1, 1: 2, 2: 1}, {1: [{}, {}], 2: [{}]})
    t = homology_ranks(c)
    assert t.dims == {0: 1, 1: 2, 2: 1}
    assert t.euler == 0


def test_square_nonzero_rejected():
    with pytest.raises(ComplexError):
        GradedComplex("bad", {0: 1, 1: 1, 2: 1}, {1: [{0: 1}], 2: [{0: 1}]})


def test_weights_must_be_respected():
    with pytest.raises(ComplexError):
        GradedComplex("w", {0: 1, 1: 1}, {1: [{0: 1}]}, {0: [0], 1: [1]})


def test_exact_sequence():
    c = GradedComplex("ex", {0: 1, 1: 1}, {1: [{0: Fraction(1, 3)}]})
    assert homology_ranks(c).dims == {0: 0, 1: 0}


def test_evaluate_examples():
    ab = A.abelian(2)
    c = cochain_complex(ab, 2, 2)
    assert evaluate_at_point(c, []).diffs == c.diffs
    y = Poly.var(1, 0)
    z = GradedComplex("z", {0: 1, 1: 1}, {1: [{}]})
    assert evaluate_at_point(z, [5]).diffs == {1: [{}]}
    p = GradedComplex("p", {0: 1, 1: 1}, {1: [{0: y * y - 1}]})
    assert evaluate_at_point(p, [1]).diffs == {1: [{}]}
    assert evaluate_at_point(p, [2]).diffs == {1: [{0: Fraction(3)}]}
    with pytest.raises(ValueError):
        evaluate_at_point(p, [1, 2])


def test_ranks_need_evaluation():
    y = Poly.var(1, 0)
    p = GradedComplex("p", {0: 1, 1: 1}, {1: [{0: y}]})
    with pytest.raises(ComplexError):
        homology_ranks(p)


def test_koszul_dual_constant_in_y(t1):
    c = koszul_dual_complex(t1, 4)
    assert homology_ranks(evaluate_at_point(c, [0])).dims == homology_ranks(evaluate_at_point(c, [1])).dims


@pytest.mark.parametrize("name", ["tangent1", "solvable", "anchored"])
def test_ranks_match_sympy(specs, name):
    """Per-weight block elimination against sympy ranks of the full matrices."""
    spec = specs[name]
    c = evaluate_at_point(cochain_complex(spec, 2, 3), [0] * spec.nvars)
    table = homology_ranks(c)

    def srank(n):
        M = c.dense(n)
        if not M or not M[0]:
            return 0
        return sympy.Matrix([[sympy.Rational(str(x)) for x in row] for row in M]).rank()

    for n in c.degrees:
        assert table.dims[n] == c.ranks[n] - srank(n) - srank(n + 1)


def test_serialization():
    c = GradedComplex("s", {0: 1, 1: 1}, {1: [{0: Fraction(-1, 2)}]}, meta={"k": 1})
    d = json.loads(c.to_json())
    assert d["degrees"][0] == {"homological_degree": 1, "rank": 1, "differential_matrix": [["-1/2"]]}
    assert homology_ranks(c).to_dict()["dims"] == {"0": 0, "1": 0}
