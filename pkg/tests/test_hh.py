from math import comb

import pytest

from lajet import algebroid as A
from lajet.hh import (bar_tensor_complex, hh_report, koszul_complex, koszul_dual_complex, koszul_tensor_O,
                      primitives_dim)
from lajet.homology import evaluate_at_point, homology_ranks
from lajet.jets import Jet


@pytest.mark.parametrize("name", sorted(A.examples()))
def test_primitives_are_the_generators(specs, name):
    spec = specs[name]
    assert primitives_dim(spec, 3, [0] * spec.nvars) == spec.rank


def test_koszul_d1_is_multiplication_by_x(t1):
    K = koszul_complex(t1, 4)
    assert K[1] == {(0,): [((), Jet.basis(t1, 4, (1,)))]}
    assert K[0] == {(): []}


@pytest.mark.parametrize("name", sorted(A.examples()))
def test_O_tensor_K(specs, name):
    spec = specs[name]
    t = homology_ranks(evaluate_at_point(koszul_tensor_O(spec), [0] * spec.nvars))
    assert t.dims == {n: comb(spec.rank, n) for n in range(spec.rank + 1)}


@pytest.mark.parametrize("name", sorted(A.examples()))
@pytest.mark.parametrize("bound", [3, 4])
def test_koszul_dual_concentrated(specs, name, bound):
    spec = specs[name]
    d = spec.rank
    t = homology_ranks(evaluate_at_point(koszul_dual_complex(spec, bound), [0] * spec.nvars))
    assert {n: t.dims[-n] for n in range(d + 1)} == {n: int(n == d) for n in range(d + 1)}
    assert t.by_weight[-d] == {w: int(w == -d) for w in t.by_weight[-d]}


def test_bar_window_agrees_with_koszul(t1):
    for q in (4, 5):
        t = homology_ranks(evaluate_at_point(bar_tensor_complex(t1, q, 2), [0]))
        assert (t.dims[0], t.dims[1]) == (1, 1)


def test_abelian_cochain_window():
    r = hh_report(A.abelian(2), suites=False)
    dims = r.data["cochain_cohomology"]["dims"]
    assert dims["0"] == 1 and dims["1"] == 2
    assert r.data["cochain_cohomology"]["complete_weight_dims"]["2"] == 1


def test_tangent_chain_table():
    r = hh_report(A.tangent(1), suites=False)
    assert r.data["chain_homology"]["koszul"] == {"0": 1, "1": 1, "2": 0}


@pytest.mark.parametrize("name", sorted(A.examples()))
def test_hh_report_passes(specs, name):
    r = hh_report(specs[name], suites=False)
    assert r.passed, r.failures()


def test_window_limited_degrees_are_labelled(specs):
    r = hh_report(specs["abelian2"], suites=False)
    coh = r.data["cochain_cohomology"]
    for n in coh["window_limited_degrees"]:
        assert coh["dims"][str(n)] != coh["complete_weight_dims"][str(n)]
