"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
All comparisons are exact (rational arithmetic, zero tolerance).
"""

from __future__ import annotations

import subprocess
import sys
import tempfile
import time
from functools import lru_cache
from math import comb
from pathlib import Path

import pytest

from lajet import algebroid as A
from lajet.complexes import complexes_report
from lajet.enveloping import UElement, multi_indices
from lajet.groupoid import GroupoidData, kp_coproduct_check, tangent_picture_report, verify_groupoid
from lajet.hh import bar_tensor_complex, hh_report, koszul_dual_complex, koszul_tensor_O, primitives_dim
from lajet.homology import evaluate_at_point, homology_ranks
from lajet.jets import gram, verify_jets

SPECS = A.examples()
NAMES = sorted(SPECS)
Q, N, P = 4, 3, 3


def _origin(spec):
    return [0] * spec.nvars


@lru_cache(maxsize=None)
def _complexes(name):
    return complexes_report(SPECS[name], Q, N, P)


@lru_cache(maxsize=None)
def _jets(name):
    return verify_jets(SPECS[name], Q)


@lru_cache(maxsize=None)
def _groupoid(name):
    return verify_groupoid(GroupoidData(SPECS[name], Q))


@lru_cache(maxsize=None)
def _hh(name):
    return hh_report(SPECS[name], Q, N, P, suites=False)


def _checks(report, names):
    """Status of the named checks, found anywhere in the report tree."""
    found = {}

    def walk(r):
        for c in r.checks:
            if c.name in names:
                found.setdefault(c.name, []).append(c.status)
        for s in r.sections:
            walk(s)

    walk(report)
    missing = set(names) - set(found)
    if missing:
        raise AssertionError(f"checks not found: {sorted(missing)}")
    return all(all(v) for v in found.values())


def _named(report_fn, names):
    bad = [n for n in NAMES if not _checks(report_fn(n), names)]
    return not bad, f"failing specs: {bad}" if bad else f"{len(NAMES)} specs"


# -- criteria ---------------------------------------------------------------


def c01_axiom_gate():
    t0 = time.perf_counter()
    good = [n for n in NAMES if A.check_axioms(SPECS[n]).passed]
    bad = A.check_axioms(A.broken())
    elapsed = time.perf_counter() - t0
    witnessed = bool(bad.failures()) and all(c.witness for _, c in bad.failures())
    ok = len(good) == len(NAMES) and not bad.passed and witnessed and elapsed < 1.0
    return ok, f"{len(good)}/{len(NAMES)} valid pass, broken caught with witness, {elapsed:.2f}s"


def c02_d_squared_zero():
    return _named(_complexes, {"dH_squared_zero", "bH_reduced_squared_zero",
                               "bH_unreduced_squared_zero", "bar_squared_zero"})


def c03_bar_acyclicity():
    return _named(_complexes, {"bar_contracting_homotopy"})


def c04_pairing_nondegenerate():
    bad = []
    for n in NAMES:
        for q in range(1, Q + 1):
            g1, g2 = gram(SPECS[n], q, 1), gram(SPECS[n], q, 2)
            det = g1.det()
            if not (g2.is_identity() and det.is_const() and abs(det.const_value()) == 1):
                bad.append((n, q))
    return not bad, f"q=1..{Q}, failing: {bad}" if bad else f"q=1..{Q}, {len(NAMES)} specs"


def c05_connection_algebra():
    return _named(_jets, {"connections_commute", "connections_flat", "grothendieck_leibniz",
                          "sweedler_leibniz", "symbol_contraction"})


def c06_formal_groupoid():
    names = {"counit_laws", "antipode_laws", "coassociativity", "coproduct_algebra_morphism",
             "antipode_algebra_morphism", "antipode_exchanges_units", "antipode_involution",
             "connections_from_coproduct", "coproduct_pairing_with_coproduct"}
    ok, detail = _named(_groupoid, names)
    full = all(_groupoid(n).passed for n in NAMES)
    return ok and full, detail + ("" if full else ", other groupoid checks failing")


def c07_kp_oracle():
    count = 0
    bad = []
    for n in NAMES:
        spec = SPECS[n]
        g = GroupoidData(spec, Q)
        monos = multi_indices(spec.rank, Q - 1)
        for a in g.basis:
            for d in monos:
                for e in monos:
                    if sum(d) + sum(e) >= Q:
                        continue
                    count += 1
                    if not kp_coproduct_check(g, g.xi(a), UElement.mono(spec, d), UElement.mono(spec, e)):
                        bad.append((n, a, d, e))
    return not bad, f"{count} (alpha, D, E) triples" + (f", failing {bad[:3]}" if bad else "")


def c08_tangent_structure_maps():
    reports = [tangent_picture_report(SPECS[n], Q) for n in ("tangent1", "tangent2")]
    ok = all(r.passed for r in reports) and all(len(r.checks) == 8 for r in reports)
    return ok, "units, coproduct, counit, antipode, Taylor expansion for m=d=1,2"


def c09_koszul():
    bad = []
    for n in NAMES:
        spec = SPECS[n]
        d = spec.rank
        dual = homology_ranks(evaluate_at_point(koszul_dual_complex(spec, 4), _origin(spec)))
        concentrated = all(dual.dims[-k] == (1 if k == d else 0) for k in range(d + 1))
        weight_ok = dual.by_weight[-d] == {w: int(w == -d) for w in dual.by_weight[-d]}
        ok_t = homology_ranks(evaluate_at_point(koszul_tensor_O(spec), _origin(spec)))
        binom = all(ok_t.dims[k] == comb(d, k) for k in range(d + 1))
        if not (concentrated and weight_ok and binom):
            bad.append(n)
    return not bad, f"d in {{1,2}}, x-degree <= 4" + (f", failing {bad}" if bad else "")


def c10_resolution_agreement():
    bad = []
    for n in NAMES:
        spec = SPECS[n]
        ok_t = homology_ranks(evaluate_at_point(koszul_tensor_O(spec), _origin(spec)))
        dims = []
        for q in (Q, Q + 1):
            t = homology_ranks(evaluate_at_point(bar_tensor_complex(spec, q, 2), _origin(spec)))
            dims.append((t.dims[0], t.dims[1]))
        if not (dims[0] == dims[1] == (ok_t.dims[0], ok_t.dims[1])):
            bad.append((n, dims))
    return not bad, f"degrees 0..1 at q={Q},{Q + 1}" + (f", failing {bad}" if bad else "")


def c11_cochain_window():
    bad = []
    for n in NAMES:
        spec = SPECS[n]
        coh = _hh(n).data["cochain_cohomology"]["dims"]
        prim = primitives_dim(spec, N, _origin(spec))
        if not (coh["0"] == 1 and coh["1"] == spec.rank == prim):
            bad.append(n)
    return not bad, "H0 = 1, H1 = d = dim primitives" + (f", failing {bad}" if bad else "")


def c12_cup_cap():
    names = {"dH_derivation_for_cup", "cup_associative", "cap_leibniz_bar", "cap_leibniz_unreduced",
             "cap_leibniz_reduced", "cup_cap_interchange", "cap_compatible_with_psi",
             "phi_component_invertible_p0", "phi_component_invertible_p1", "phi_component_invertible_p2"}
    return _named(_complexes, names)


def c13_determinism():
    configs = ["tangent", "tangent2", "abelian2", "solvable", "anchored"]
    with tempfile.TemporaryDirectory() as tmp:
        runs = []
        for k in range(2):
            out = Path(tmp) / f"run{k}"
            r = subprocess.run([sys.executable, "-m", "lajet.cli", "homology", *configs,
                                "--golden", str(out)], capture_output=True, text=True)
            if r.returncode != 0:
                return False, f"run {k} exited {r.returncode}: {r.stderr.strip()[:200]}"
            runs.append({p.name: p.read_bytes() for p in sorted(out.iterdir())})
    same = runs[0] == runs[1] and len(runs[0]) == len(configs)
    return same, f"{len(runs[0])} golden files, byte-identical" if same else "golden files differ"


CRITERIA = [
    ("axiom gate", c01_axiom_gate),
    ("d^2 = 0 everywhere", c02_d_squared_zero),
    ("bar acyclicity", c03_bar_acyclicity),
    ("pairing non-degeneracy", c04_pairing_nondegenerate),
    ("connection algebra", c05_connection_algebra),
    ("formal groupoid", c06_formal_groupoid),
    ("coproduct oracle agreement", c07_kp_oracle),
    ("tangent structure maps", c08_tangent_structure_maps),
    ("Koszul / Ext", c09_koszul),
    ("resolution agreement", c10_resolution_agreement),
    ("cochain cohomology window", c11_cochain_window),
    ("cup/cap structure", c12_cup_cap),
    ("determinism", c13_determinism),
]


def _line(i, title, ok, detail):
    return f"ACCEPTANCE {i:02d} {'PASS' if ok else 'FAIL'}  {title}: {detail}"


@pytest.mark.parametrize("index", range(1, len(CRITERIA) + 1), ids=[c[1].__name__ for c in CRITERIA])
def test_criterion(index, capsys):
    title, fn = CRITERIA[index - 1]
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(index, title, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for i, (title, fn) in enumerate(CRITERIA, 1):
        ok, detail = fn()
        results.append(ok)
        print(_line(i, title, ok, detail), flush=True)
    sys.exit(0 if all(results) else 1)
