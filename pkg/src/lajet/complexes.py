"""Chain-level Hochschild complexes, products and comparison maps.

Cochains are ``UTensor`` values (arity 0 holds a function in the key
``()``).  Chains, unreduced chains and bar elements are ``JetTensor``
values in the central convention; for unreduced chains and bar elements
slot 0 is the distinguished (module) slot.  Signs follow the displayed
formulas of the source; ``docs/signs.md`` lists them.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .algebroid import AlgebroidSpec, random_poly
from .enveloping import UElement, UTensor, _add_into, algebra, multi_indices, u_coproduct
from .jets import Jet, JetTensor, OrderError, _g_nabla_gen, jet_eval, jet_mul, two_nabla
from .linalg import poly_det, rank
from .poly import Poly, derivation_apply
from .report import Report


def _zero_index(spec: AlgebroidSpec) -> tuple:
    return (0,) * spec.rank


# -- cochains --------------------------------------------------------------


def cochain(spec: AlgebroidSpec, *slots: UElement) -> UTensor:
    if not slots:
        return UTensor(spec, 0, {(): Poly.one(spec.nvars)})
    return UTensor.from_elements(*slots)


def scalar_cochain(spec: AlgebroidSpec, f: Poly) -> UTensor:
    return UTensor(spec, 0, {(): f})


@lru_cache(maxsize=None)
def _coproduct_mono(spec: AlgebroidSpec, a: tuple) -> tuple:
    return tuple(algebra(spec).coproduct_mono(a).items())


@lru_cache(maxsize=None)
def _dH_key(spec: AlgebroidSpec, key: tuple) -> tuple:
    p = len(key)
    one = Poly.one(spec.nvars)
    z = _zero_index(spec)
    out: dict = {}
    _add_into(out, key + (z,), one)
    for i in range(p, 0, -1):
        sign = -1 if (p - i) % 2 == 0 else 1
        for (l, r), c in _coproduct_mono(spec, key[i - 1]):
            _add_into(out, key[:i - 1] + (l, r) + key[i:], c * sign)
    _add_into(out, (z,) + key, one if p % 2 else -one)
    return tuple(out.items())


def dH(c: UTensor) -> UTensor:
    """D (x) 1 - Delta_p D + Delta_{p-1} D - ... + (-1)^(p+1) 1 (x) D; zero on functions."""
    p = c.arity
    if p == 0:
        return UTensor(c.spec, 1, {})
    out: dict = {}
    for key, f in c.terms.items():
        for k, g in _dH_key(c.spec, key):
            _add_into(out, k, f * g)
    return UTensor(c.spec, p + 1, out)


def cup(a: UTensor, b: UTensor) -> UTensor:
    """(D_1..D_p) cup (E_1..E_q) = (-1)^(pq) D_1..D_p E_1..E_q."""
    sign = -1 if (a.arity * b.arity) % 2 else 1
    out: dict = {}
    for ka, fa in a.terms.items():
        for kb, fb in b.terms.items():
            _add_into(out, ka + kb, fa * fb * sign)
    return UTensor(a.spec, a.arity + b.arity, out)


# -- chains ------------------------------------------------------------------


def chain(*jets: Jet) -> JetTensor:
    return JetTensor.from_jets(*jets)


def scalar_chain(spec: AlgebroidSpec, q: int, f: Poly) -> JetTensor:
    return JetTensor(spec, q, 0, {(): f})


@lru_cache(maxsize=None)
def _prod(spec: AlgebroidSpec, q: int, a: tuple, b: tuple) -> tuple:
    jet = jet_mul(Jet.basis(spec, q, a), Jet.basis(spec, q, b))
    return tuple(jet.coeffs.items())


def _merge(spec, q, key: tuple, i: int, sign: int, out: dict, f: Poly) -> None:
    """Add sign * f * (... a_i a_{i+1} ...) to ``out``."""
    for g, c in _prod(spec, q, key[i], key[i + 1]):
        _add_into(out, key[:i] + (g,) + key[i + 2:], f * c * sign)


def _apply(T: JetTensor, arity: int, key_fn) -> JetTensor:
    out: dict = {}
    for key, f in T.terms.items():
        for k, g in key_fn(T.spec, T.order, key):
            _add_into(out, k, f * g)
    return JetTensor(T.spec, T.order, arity, out)


@lru_cache(maxsize=None)
def _bH_reduced_key(spec, q, key):
    p = len(key)
    one = Poly.one(spec.nvars)
    z = _zero_index(spec)
    out: dict = {}
    if key[0] == z:
        _add_into(out, key[1:], one)
    for i in range(1, p):
        _merge(spec, q, key, i - 1, -1 if i % 2 else 1, out, one)
    if key[-1] == z:
        _add_into(out, key[:-1], one if p % 2 == 0 else -one)
    return tuple(out.items())


def bH_reduced(c: JetTensor) -> JetTensor:
    """eps(a1) a2.. - a1 a2 .. + ... + (-1)^p a1 .. eps(ap); zero for p = 0."""
    if c.arity == 0:
        return JetTensor(c.spec, c.order, 0, {})
    return _apply(c, c.arity - 1, _bH_reduced_key)


@lru_cache(maxsize=None)
def _bH_unreduced_key(spec, q, key):
    p = len(key) - 1
    one = Poly.one(spec.nvars)
    out: dict = {}
    for i in range(p):
        _merge(spec, q, key, i, -1 if i % 2 else 1, out, one)
    sign = -1 if p % 2 else 1
    for g, c in _prod(spec, q, key[p], key[0]):
        _add_into(out, (g,) + key[1:p], c * sign)
    return tuple(out.items())


def bH_unreduced(c: JetTensor) -> JetTensor:
    """Hochschild boundary on a0 (x) .. (x) ap including the cyclic term."""
    if c.arity <= 1:
        return JetTensor(c.spec, c.order, max(c.arity - 1, 0), {})
    return _apply(c, c.arity - 1, _bH_unreduced_key)


def reduce_chain(c: JetTensor) -> JetTensor:
    """a0 (x) a1 .. ap -> eps(a0) a1 .. ap."""
    z = _zero_index(c.spec)
    out = {key[1:]: f for key, f in c.terms.items() if key[0] == z}
    return JetTensor(c.spec, c.order, c.arity - 1, out)


# -- bar complex ---------------------------------------------------------


@lru_cache(maxsize=None)
def _bar_key(spec, q, key):
    p = len(key) - 1
    one = Poly.one(spec.nvars)
    z = _zero_index(spec)
    out: dict = {}
    for i in range(p):
        _merge(spec, q, key, i, -1 if i % 2 else 1, out, one)
    if key[-1] == z:
        _add_into(out, key[:-1], one if p % 2 == 0 else -one)
    return tuple(out.items())


def bar_diff(b: JetTensor, augmented: bool = True) -> JetTensor:
    """b' on a0 (x) .. (x) ap; on p = 0 it is the augmentation eps (or zero)."""
    if b.arity == 1 and not augmented:
        return JetTensor(b.spec, b.order, 0, {})
    if b.arity == 0:
        return JetTensor(b.spec, b.order, 0, {})
    return _apply(b, b.arity - 1, _bar_key)


def bar_homotopy(b: JetTensor) -> JetTensor:
    """h_{-1}(f) = f 1 and h_p(a0 (x) ..) = 1 (x) a0 (x) ..."""
    z = _zero_index(b.spec)
    return JetTensor(b.spec, b.order, b.arity + 1, {(z,) + key: f for key, f in b.terms.items()})


def bar_act(alpha: Jet, b: JetTensor) -> JetTensor:
    """J-module structure: alpha . (a0 (x) ..) = alpha a0 (x) ..."""
    q = min(alpha.order, b.order)
    out: dict = {}
    for key, f in b.truncate(q).terms.items():
        for a, g in alpha.coeffs.items():
            for c, h in _prod(b.spec, q, a, key[0]):
                _add_into(out, (c,) + key[1:], f * g * h)
    return JetTensor(b.spec, q, b.arity, out)


def psi_map(f: Poly, b: JetTensor) -> JetTensor:
    """f (x) a0 (x) .. (x) ap -> f eps(a0) a1 (x) .. (x) ap."""
    return reduce_chain(b).scale(f)


# -- caps -----------------------------------------------------------------


def cap_reduced(D: UTensor, c: JetTensor) -> JetTensor:
    """D cap a = a1(D1) .. ap(Dp) a_{p+1} (x) ..; zero if D has more slots than a."""
    p, n = D.arity, c.arity
    if p > n:
        return JetTensor(c.spec, c.order, 0, {})
    spec, q = c.spec, c.order
    out: dict = {}
    for dk, g in D.terms.items():
        if any(sum(b) >= q for b in dk):
            raise OrderError(f"cochain slot degree exceeds chain order {q}")
        for key, f in c.terms.items():
            if key[:p] == dk:
                _add_into(out, key[p:], f * g)
    return JetTensor(spec, q, n - p, out)


@lru_cache(maxsize=None)
def _two_nabla_basis(spec: AlgebroidSpec, q: int, b: tuple, a: tuple) -> Jet:
    return two_nabla(UElement.mono(spec, b), Jet.basis(spec, q, a))


def cap_bar(D: UTensor, b: JetTensor) -> JetTensor:
    """D cap (a0 (x) .. (x) aq) = a0 2nabla_{D1} a1 .. 2nabla_{Dp} ap (x) a_{p+1} (x) ...

    Zero if q < p.  Functions act on slot 0.  Output order drops by the
    largest slot degree of D.  Also the cap on unreduced chains.
    """
    from .groupoid import unit_i

    spec = b.spec
    p, n = D.arity, b.arity
    if p == 0:
        f = D.terms.get((), Poly.zero(spec.nvars))
        return b.scale(f)
    if p > n - 1:
        return JetTensor(spec, b.order, max(n - p, 1), {})
    loss = max(sum(x) for k in D.terms for x in k) if D.terms else 0
    r = b.order - loss
    if r <= 0:
        raise OrderError(f"order {b.order} exhausted by cochain slots of degree {loss}")
    out: dict = {}
    for dk, g in D.terms.items():
        twist = unit_i(spec, g, r, 2)
        for key, f in b.terms.items():
            slot = Jet.basis(spec, r, key[0], f)
            slot = jet_mul(slot, twist)
            for bi, ai in zip(dk, key[1:p + 1]):
                if slot.is_zero():
                    break
                slot = jet_mul(slot, _two_nabla_basis(spec, b.order, bi, ai).truncate(r))
            for a0, h in slot.coeffs.items():
                _add_into(out, (a0,) + key[p + 1:], h)
    return JetTensor(spec, r, n - p, out)


cap_unreduced = cap_bar


def g_nabla_tensor(i: int, T: JetTensor) -> JetTensor:
    """Grothendieck connection along e_i on a central tensor, by the Leibniz rule."""
    spec, q = T.spec, T.order
    rho = spec.anchor[i]
    out: dict = {}
    for key, f in T.terms.items():
        df = derivation_apply(rho, f)
        if df:
            _add_into(out, key, df)
        for s, a in enumerate(key):
            for c, h in _g_nabla_gen(i, Jet.basis(spec, q, a)).coeffs.items():
                _add_into(out, key[:s] + (c,) + key[s + 1:], f * h)
    return JetTensor(spec, q - 1, T.arity, out)


# -- Phi ----------------------------------------------------------------------


def phi_component(spec: AlgebroidSpec, q: int, p: int) -> list:
    """Matrix of D_1..D_p -> (a_1..a_p -> <a_1, D_1> .. <a_p, D_p>).

    Rows are indexed by p-tuples of jet basis indices, columns by p-tuples
    of PBW monomials of degree < q; each entry is computed as
    eps(D cap (1 (x) xi_a1 (x) .. (x) xi_ap)).
    """
    basis = multi_indices(spec.rank, q - 1)
    keys = _tuples(basis, p)
    z = _zero_index(spec)
    one = Poly.one(spec.nvars)
    cols = []
    for dk in keys:
        D = UTensor(spec, p, {dk: one})
        col = []
        for ak in keys:
            b = JetTensor(spec, q, p + 1, {(z,) + ak: one})
            capped = cap_bar(D, b)
            val = Poly.zero(spec.nvars)
            for key, f in capped.terms.items():
                if key[0] == z:
                    val = val + f
            col.append(val)
        cols.append(col)
    return [list(row) for row in zip(*cols)] if cols else []


def is_invertible(M: list, nvars: int) -> bool:
    if not M:
        return True
    if all(x.is_const() for row in M for x in row):
        return rank([[x.const_value() for x in row] for row in M]) == len(M)
    det = poly_det(M, nvars)
    return det.is_const() and not det.is_zero()


def _tuples(basis: list, p: int) -> list:
    out = [()]
    for _ in range(p):
        out = [k + (b,) for k in out for b in basis]
    return out


# -- sweeps ---------------------------------------------------------------


def cochain_basis(spec: AlgebroidSpec, N: int, p: int) -> list:
    return _tuples(multi_indices(spec.rank, N), p)


def chain_basis(spec: AlgebroidSpec, q: int, arity: int) -> list:
    return _tuples(multi_indices(spec.rank, q - 1), arity)


def _random_tensor_terms(rng, spec, keys, count, coeff_deg=1):
    terms = {}
    for _ in range(count):
        key = rng.choice(keys)
        c = random_poly(rng, spec.nvars, coeff_deg, 2) if spec.nvars else Poly.const(0, rng.randint(-3, 3))
        terms[key] = terms.get(key, Poly.zero(spec.nvars)) + c
    return terms


def complexes_report(spec: AlgebroidSpec, q: int = 4, N: int = 3, P: int = 3,
                     seed: int = 0, samples: int = 6) -> Report:
    """d^2 = 0 sweeps, bar acyclicity and the cup/cap identities."""
    rng = random.Random(seed)
    report = Report(f"complexes[{spec.name}]", meta={"q": q, "N": N, "P": P, "seed": seed})
    one = Poly.one(spec.nvars)

    def w(**kw):
        return {k: str(v) for k, v in kw.items()}

    def sweep(keys, make, check):
        for key in keys:
            wit = check(make(key))
            if wit is not None:
                return wit
        return None

    # d^2 = 0
    def basis_cochain(key):
        return UTensor(spec, len(key), {key: one})

    wit = None
    for p in range(P + 1):
        wit = wit or sweep(cochain_basis(spec, N, p), basis_cochain,
                           lambda c: None if dH(dH(c)).is_zero() else w(cochain=c.to_str()))
    report.add("dH_squared_zero", wit is None, None, wit)

    def basis_chain(key):
        return JetTensor(spec, q, len(key), {key: one})

    wit = None
    for p in range(P + 1):
        wit = wit or sweep(chain_basis(spec, q, p), basis_chain,
                           lambda c: None if bH_reduced(bH_reduced(c)).is_zero() else w(chain=c.to_str()))
    report.add("bH_reduced_squared_zero", wit is None, q, wit)

    wit = None
    for p in range(P + 1):
        wit = wit or sweep(chain_basis(spec, q, p + 1), basis_chain,
                           lambda c: None if bH_unreduced(bH_unreduced(c)).is_zero() else w(chain=c.to_str()))
    report.add("bH_unreduced_squared_zero", wit is None, q, wit)

    wit = None
    for p in range(P + 1):
        wit = wit or sweep(chain_basis(spec, q, p + 1), basis_chain,
                           lambda c: None if bar_diff(bar_diff(c)).is_zero() else w(chain=c.to_str()))
    report.add("bar_squared_zero", wit is None, q, wit)

    # contracting homotopy on the augmented bar complex
    def homotopy(c):
        lhs = bar_diff(bar_homotopy(c))
        if c.arity > 0:
            lhs = lhs + bar_homotopy(bar_diff(c))
        return None if lhs == c else w(chain=c.to_str())

    wit = homotopy(scalar_chain(spec, q, one))
    for p in range(P + 1):
        wit = wit or sweep(chain_basis(spec, q, p + 1), basis_chain, homotopy)
    report.add("bar_contracting_homotopy", wit is None, q, wit)

    # reduction and Psi commute with differentials
    def reduction(c):
        return None if reduce_chain(bH_unreduced(c)) == bH_reduced(reduce_chain(c)) else w(chain=c.to_str())

    wit = None
    for p in range(1, P + 1):
        wit = wit or sweep(chain_basis(spec, q, p + 1), basis_chain, reduction)
    report.add("reduction_commutes_with_differentials", wit is None, q, wit)

    def psi(c):
        return None if psi_map(one, bar_diff(c)) == bH_reduced(psi_map(one, c)) else w(chain=c.to_str())

    wit = None
    for p in range(1, P + 1):
        wit = wit or sweep(chain_basis(spec, q, p + 1), basis_chain, psi)
    report.add("psi_commutes_with_differentials", wit is None, q, wit)

    # random samples for the product identities
    def rand_cochain(p, count=3):
        keys = cochain_basis(spec, min(N, q - 1), p)
        return UTensor(spec, p, _random_tensor_terms(rng, spec, keys, count))

    def rand_chain(arity, count=3):
        return JetTensor(spec, q, arity, _random_tensor_terms(rng, spec, chain_basis(spec, q, arity), count))

    def rand_jet():
        keys = multi_indices(spec.rank, q - 1)
        terms = _random_tensor_terms(rng, spec, [(k,) for k in keys], 3)
        return Jet(spec, q, {k[0]: f for k, f in terms.items()})

    cochains = [scalar_cochain(spec, random_poly(rng, spec.nvars, 1, 2))]
    cochains += [rand_cochain(p) for p in range(1, P) for _ in range(samples // 2)]

    def leibniz_cup():
        for a in cochains:
            for b in cochains:
                lhs = dH(cup(a, b))
                sign = -1 if a.arity % 2 else 1
                rhs = cup(dH(a), b) + cup(a, dH(b)).scale(Poly.const(spec.nvars, sign))
                if lhs != rhs:
                    return w(a=a.to_str(), b=b.to_str())
        return None

    wit = leibniz_cup()
    report.add("dH_derivation_for_cup", wit is None, None, wit)

    def assoc_cup():
        for a in cochains[:3]:
            for b in cochains:
                for c in cochains[-3:]:
                    if cup(cup(a, b), c) != cup(a, cup(b, c)):
                        return w(a=a.to_str(), b=b.to_str(), c=c.to_str())
        return None

    wit = assoc_cup()
    report.add("cup_associative", wit is None, None, wit)

    bars = [rand_chain(k) for k in range(1, P + 2) for _ in range(2)]

    def cap_leibniz(kind):
        diff = {"bar": lambda x: bar_diff(x, augmented=False), "unreduced": bH_unreduced}[kind]
        for D in cochains:
            sign = Poly.const(spec.nvars, -1 if D.arity % 2 else 1)
            for b in bars:
                try:
                    lhs = diff(cap_bar(D, b))
                    rhs = cap_bar(dH(D), b) + cap_bar(D, diff(b)).scale(sign)
                except OrderError:
                    continue
                if lhs != rhs:
                    return w(kind=kind, D=D.to_str(), chain=b.to_str())
        return None

    for kind in ("bar", "unreduced"):
        wit = cap_leibniz(kind)
        report.add(f"cap_leibniz_{kind}", wit is None, q - min(N, q - 1), wit)

    reduced = [rand_chain(k) for k in range(0, P + 1) for _ in range(2)]

    def cap_leibniz_reduced():
        for D in cochains:
            sign = Poly.const(spec.nvars, -1 if D.arity % 2 else 1)
            for c in reduced:
                lhs = bH_reduced(cap_reduced(D, c))
                rhs = cap_reduced(dH(D), c) + cap_reduced(D, bH_reduced(c)).scale(sign)
                if lhs != rhs:
                    return w(D=D.to_str(), chain=c.to_str())
        return None

    wit = cap_leibniz_reduced()
    report.add("cap_leibniz_reduced", wit is None, q, wit)

    def cup_cap():
        for D in cochains:
            for E in cochains:
                sign = Poly.const(spec.nvars, -1 if (D.arity * E.arity) % 2 else 1)
                for b in bars:
                    try:
                        lhs = cap_bar(cup(D, E), b)
                        rhs = cap_bar(E, cap_bar(D, b)).scale(sign)
                    except OrderError:
                        continue
                    if lhs != rhs:
                        return w(D=D.to_str(), E=E.to_str(), chain=b.to_str())
        return None

    wit = cup_cap()
    report.add("cup_cap_interchange", wit is None, None, wit)

    def cap_equivariant():
        for D in cochains:
            for b in bars:
                try:
                    lhs = reduce_chain(cap_bar(D, b))
                    rhs = cap_reduced(D, reduce_chain(b))
                except OrderError:
                    continue
                if D.arity <= b.arity - 1 and lhs != rhs:
                    return w(D=D.to_str(), chain=b.to_str())
        return None

    wit = cap_equivariant()
    report.add("cap_commutes_with_reduction", wit is None, None, wit)

    def cap_flat():
        # functions act naturally, so only cochains of positive arity are flat
        for D in cochains:
            if D.arity == 0:
                continue
            for b in bars:
                for i in range(spec.rank):
                    try:
                        lhs = g_nabla_tensor(i, cap_bar(D, b))
                        rhs = cap_bar(D, g_nabla_tensor(i, b))
                    except OrderError:
                        continue
                    if lhs != rhs:
                        return w(D=D.to_str(), chain=b.to_str(), i=i + 1)
        return None

    wit = cap_flat()
    report.add("cap_commutes_with_grothendieck_connection", wit is None, None, wit)

    def psi_cap():
        for D in cochains:
            for b in bars:
                f = random_poly(rng, spec.nvars, 1, 2) if spec.nvars else Poly.const(0, 2)
                try:
                    lhs = cap_reduced(D, psi_map(f, b))
                    rhs = psi_map(f, cap_bar(D, b))
                except OrderError:
                    continue
                if lhs != rhs:
                    return w(D=D.to_str(), chain=b.to_str(), f=f)
        return None

    wit = psi_cap()
    report.add("cap_compatible_with_psi", wit is None, None, wit)

    def bar_linear():
        for b in bars:
            if b.arity < 2:
                continue
            alpha = rand_jet()
            if bar_diff(bar_act(alpha, b)) != bar_act(alpha, bar_diff(b)):
                return w(alpha=alpha, chain=b.to_str())
        return None

    wit = bar_linear()
    report.add("bar_differential_J_linear", wit is None, q, wit)

    for p in range(0, 3):
        M = phi_component(spec, q, p)
        report.add(f"phi_component_invertible_p{p}", is_invertible(M, spec.nvars), q, detail={"size": len(M)})
    return report
