"""The formal groupoid structure on truncated jets.

Units, pairings, coproduct, antipode and the axiom suite.  The coproduct
and the antipode are solved from their defining pairing identities against
the Gram matrix of the first pairing; the second pairing is the identity
in the xi basis.

Tensors follow the bimodule convention of the groupoid: a term is stored as
``xi_a (x) ... (x) c xi_b`` with the coefficient on the last slot (see
``JetTensor``).  ``normalize`` brings an arbitrary tensor of jets into that
form by repeatedly writing a slot as ``sum_k 1_2(h_k) xi_k`` and pushing
``h_k`` into the next slot.
"""

from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass, field

from .algebroid import AlgebroidSpec, random_poly
from .enveloping import UElement, _add_into, multi_indices, u_act, u_coproduct, u_counit, u_mul
from .jets import (Jet, JetTensor, OrderError, exp_factorial, g_nabla, g_nabla_mono, gram,
                   jet_counit, jet_eval, jet_mul, local_coordinates, pairing, two_nabla)
from .poly import Poly
from .report import Report


def _deg(a: tuple) -> int:
    return sum(a)


# -- units and pairings ---------------------------------------------------


def unit_i(spec: AlgebroidSpec, r: Poly, q: int, which: int) -> Jet:
    """1_1(r)(D) = r D(1) and 1_2(r)(D) = D(r)."""
    if q < 1:
        raise OrderError("units need q >= 1")
    if which == 1:
        return Jet.unit(spec, q).scale(r)
    if which == 2:
        return Jet(spec, q, {g: u_act(UElement.mono(spec, g), r) for g in multi_indices(spec.rank, q - 1)})
    raise ValueError(f"which must be 1 or 2, got {which}")


def pairing_i(alpha: Jet, D: UElement, which: int) -> Poly:
    return pairing(alpha, D, which)


def pairing_vector(alpha: Jet, which: int = 1) -> list:
    """(<alpha, e^beta>_which) over the PBW basis of degree < order."""
    basis = multi_indices(alpha.spec.rank, alpha.order - 1)
    if which == 2:
        return [alpha.coeff(b) for b in basis]
    return [jet_counit(g_nabla_mono(b, alpha)) for b in basis]


def right_coords(alpha: Jet) -> dict:
    """Coefficients h with alpha = sum_k 1_2(h_k) xi_k, exact at alpha's order.

    Natural rational constants commute with both units, so jets with
    constant coefficients are returned unchanged.
    """
    if all(f.is_const() for f in alpha.coeffs.values()):
        return dict(alpha.coeffs)
    g = gram(alpha.spec, alpha.order, 1)
    v = pairing_vector(alpha, 1)
    out = {}
    for a, row in zip(g.basis, g.inverse):
        acc = Poly.zero(alpha.spec.nvars)
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        if acc:
            out[a] = acc
    return out


def from_right_coords(spec: AlgebroidSpec, q: int, h: dict) -> Jet:
    out = Jet.zero(spec, q)
    for a, f in h.items():
        out = out + jet_mul(unit_i(spec, f, q, 2), Jet.basis(spec, q, a))
    return out


# -- tensors in the groupoid convention --------------------------------------


def normalize(spec: AlgebroidSpec, q: int, terms) -> JetTensor:
    """Bring ``sum j_1 (x) ... (x) j_n`` (an iterable of jet tuples) to normal form."""
    out: dict = {}
    arity = None
    for jets in terms:
        arity = len(jets)
        _normalize_into(out, q, (), jets)
    if arity is None:
        raise ValueError("normalize needs at least one term to fix the arity")
    return JetTensor(spec, q, arity, out, groupoid=True)


def _normalize_into(out: dict, q: int, prefix: tuple, jets: tuple) -> None:
    used = sum(_deg(a) for a in prefix)
    room = q - used
    if room <= 0:
        return
    head = jets[0].truncate(min(jets[0].order, room))
    if len(jets) == 1:
        for b, f in head.coeffs.items():
            _add_into(out, prefix + (b,), f)
        return
    for k, h in right_coords(head).items():
        rest = (jets[1].scale(h),) + tuple(jets[2:])
        _normalize_into(out, q, prefix + (k,), rest)


def tensor_slots(T: JetTensor):
    """Yield each stored term as a tuple of jets (coefficient on the last slot)."""
    spec, q = T.spec, T.order
    for key, c in T.terms.items():
        jets = [Jet.basis(spec, q, a) for a in key[:-1]]
        jets.append(Jet.basis(spec, q, key[-1], c))
        yield tuple(jets)


def tensor_product(A: JetTensor, B: JetTensor) -> JetTensor:
    """Componentwise product of two groupoid tensors of the same arity."""
    q = min(A.order, B.order)
    terms = []
    for ja in tensor_slots(A.truncate(q)):
        for jb in tensor_slots(B.truncate(q)):
            if sum(_deg(next(iter(j.coeffs))) for j in ja) + sum(_deg(next(iter(j.coeffs))) for j in jb) >= q:
                continue
            terms.append(tuple(jet_mul(x.truncate(q), y.truncate(q)) for x, y in zip(ja, jb)))
    if not terms:
        return JetTensor(A.spec, q, A.arity, {}, groupoid=True)
    return normalize(A.spec, q, terms)


def tensor_pairing(T: JetTensor, Ds: tuple) -> Poly:
    """sum <t_1, D_1>_1 ... <t_{n-1}, D_{n-1}>_1 <t_n, D_n>_2 on normal-form terms.

    This is the pairing that defines the coproduct; it is well defined on
    the groupoid tensor product.
    """
    spec = T.spec
    out = Poly.zero(spec.nvars)
    for key, c in T.terms.items():
        val = c
        for a, D in zip(key[:-1], Ds[:-1]):
            val = val * pairing(Jet.basis(spec, T.order, a), D, 1)
            if not val:
                break
        if val:
            out = out + val * Ds[-1].coeff(key[-1])
    return out


# -- coproduct and antipode ---------------------------------------------


@dataclass
class GroupoidData:
    spec: AlgebroidSpec
    order: int
    _coprod: dict = field(default_factory=dict, repr=False)
    _antipode: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.order < 1:
            raise OrderError("groupoid data needs q >= 1")
        self.gram1 = gram(self.spec, self.order, 1)
        self.gram2 = gram(self.spec, self.order, 2)

    @property
    def basis(self) -> list:
        return self.gram1.basis

    def xi(self, a: tuple) -> Jet:
        return Jet.basis(self.spec, self.order, a)

    def coproduct(self, alpha: Jet) -> JetTensor:
        return groupoid_coproduct(self, alpha)

    def antipode(self, alpha: Jet) -> Jet:
        return antipode(self, alpha)

    def antipode_matrix(self) -> list:
        """M[b][a] = coefficient of xi_b in S(xi_a)."""
        cols = [self.antipode(self.xi(a)) for a in self.basis]
        return [[col.coeff(b) for col in cols] for b in self.basis]

    def unit(self, r: Poly, which: int) -> Jet:
        return unit_i(self.spec, r, self.order, which)


def _cache_key(alpha: Jet):
    return (alpha.order, frozenset(alpha.coeffs.items()))


def groupoid_coproduct(g: GroupoidData, alpha: Jet) -> JetTensor:
    """Solve eps(1nabla_D 2nabla_E alpha) = sum <a1, D>_1 <a2, E>_2 for Delta(alpha).

    For each E = e^gamma the jet 2nabla_E(alpha) has order q - |gamma|, and
    its expansion in the 1_2-twisted basis gives the left factors paired
    with xi_gamma.  Certified at total order q.
    """
    if alpha.order < g.order:
        raise OrderError(f"jet of order {alpha.order} below groupoid order {g.order}")
    alpha = alpha.truncate(g.order)
    key = _cache_key(alpha)
    hit = g._coprod.get(key)
    if hit is not None:
        return hit
    spec, q = g.spec, g.order
    out: dict = {}
    for gamma in g.basis:
        eta = two_nabla(UElement.mono(spec, gamma), alpha)
        for a, c in right_coords(eta).items():
            _add_into(out, (a, gamma), c)
    res = JetTensor(spec, q, 2, out, groupoid=True)
    g._coprod[key] = res
    return res


def antipode(g: GroupoidData, alpha: Jet) -> Jet:
    """<S alpha, D>_1 = <alpha, D>_2, solved as S alpha = sum 1_2(s_a) xi_a."""
    if alpha.order < g.order:
        raise OrderError(f"jet of order {alpha.order} below groupoid order {g.order}")
    alpha = alpha.truncate(g.order)
    key = _cache_key(alpha)
    hit = g._antipode.get(key)
    if hit is not None:
        return hit
    spec, q = g.spec, g.order
    v = [alpha.coeff(b) for b in g.basis]
    s = {}
    for a, row in zip(g.basis, g.gram1.inverse):
        acc = Poly.zero(spec.nvars)
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        if acc:
            s[a] = acc
    res = from_right_coords(spec, q, s)
    g._antipode[key] = res
    return res


def kp_coproduct_check(g: GroupoidData, alpha: Jet, D: UElement, E: UElement) -> bool:
    """alpha(DE) = sum alpha_(1)(D alpha_(2)(E)), with Delta from the pairing solve."""
    lhs, rhs = _kp_sides(g, alpha, D, E)
    return lhs == rhs


def _kp_sides(g: GroupoidData, alpha: Jet, D: UElement, E: UElement):
    spec = g.spec
    if max(D.degree(), 0) + max(E.degree(), 0) >= g.order:
        raise OrderError("D E exceeds the groupoid order")
    lhs = jet_eval(alpha, u_mul(D, E))
    rhs = Poly.zero(spec.nvars)
    for (a, b), c in groupoid_coproduct(g, alpha).terms.items():
        r = c * E.coeff(b)
        if not r:
            continue
        DR = u_mul(D, UElement.scalar(spec, r))
        rhs = rhs + DR.coeff(a)
    return lhs, rhs


# -- verification ---------------------------------------------------------


def _jets_of(g: GroupoidData, samples: int, rng: random.Random) -> list:
    """Basis jets plus a few jets with polynomial coefficients."""
    jets = [g.xi(a) for a in g.basis]
    if g.spec.nvars:
        for _ in range(samples):
            coeffs = {a: random_poly(rng, g.spec.nvars, 2, 2) for a in g.basis if rng.random() < 0.5}
            jets.append(Jet(g.spec, g.order, coeffs))
    return jets


def _polys(spec: AlgebroidSpec, rng: random.Random, samples: int) -> list:
    out = [Poly.one(spec.nvars), Poly.const(spec.nvars, 3)]
    out += [Poly.var(spec.nvars, j) for j in range(spec.nvars)]
    if spec.nvars:
        out += [random_poly(rng, spec.nvars, 2, 3) for _ in range(samples)]
    return out


def _first(items, pred):
    for item in items:
        w = pred(item)
        if w is not None:
            return w
    return None


def _jet_sum(spec: AlgebroidSpec, q: int, jets) -> Jet:
    out = Jet.zero(spec, q)
    for j in jets:
        out = out + j
    return out


def verify_groupoid(g: GroupoidData, samples: int = 2, seed: int = 0) -> Report:
    """Run the groupoid axiom suite over basis jets and basis U-monomials."""
    spec, q = g.spec, g.order
    rng = random.Random(seed)
    report = Report(f"groupoid[{spec.name}]", meta={"order": q, "seed": seed})
    jets = _jets_of(g, samples, rng)
    polys = _polys(spec, rng, samples)
    monos = [UElement.mono(spec, b) for b in g.basis]
    one = Jet.unit(spec, q)
    zero_idx = (0,) * spec.rank

    def w(**kw):
        return {k: str(v) for k, v in kw.items()}

    # units are algebra maps; connections on functions and on 1
    def unit_props(r):
        for s in polys:
            for i in (1, 2):
                if g.unit(r * s, i) != jet_mul(g.unit(r, i), g.unit(s, i)):
                    return w(which=i, r=r, s=s)
        for i in (1, 2):
            if jet_counit(g.unit(r, i)) != r:
                return w(which=i, r=r)
        return None

    report.add("units_algebra_morphisms", _first(polys, unit_props) is None, q,
               _first(polys, unit_props))
    report.add("units_preserve_one", g.unit(Poly.one(spec.nvars), 1) == one == g.unit(Poly.one(spec.nvars), 2), q)

    def nabla_r(alpha):
        for r in polys:
            D = UElement.scalar(spec, r)
            if g_nabla(D, alpha) != jet_mul(g.unit(r, 1), alpha):
                return w(which=1, r=r, alpha=alpha)
            if two_nabla(D, alpha) != jet_mul(g.unit(r, 2), alpha):
                return w(which=2, r=r, alpha=alpha)
        return None

    wit = _first(jets, nabla_r)
    report.add("nabla_of_functions_is_unit_multiplication", wit is None, q, wit)

    def nabla_one(D):
        eps = u_act(D, Poly.one(spec.nvars))
        k = max(D.degree(), 0)
        if g_nabla(D, one) != g.unit(eps, 1).truncate(q - k):
            return w(which=1, D=D.to_str())
        if two_nabla(D, one) != g.unit(eps, 2).truncate(q - k):
            return w(which=2, D=D.to_str())
        return None

    Ds = monos + [u_mul(UElement.scalar(spec, r), m) for r in polys[2:4] for m in monos]
    wit = _first(Ds, nabla_one)
    report.add("nabla_of_one_is_unit_of_counit", wit is None, q - 1, wit)

    # pairing linearity and the pairings with 1 and with units
    def linearity(alpha):
        for r in polys:
            for D in monos:
                rD = u_mul(UElement.scalar(spec, r), D)
                Dr = u_mul(D, UElement.scalar(spec, r))
                if Dr.degree() >= q:
                    continue
                for i in (1, 2):
                    base = pairing(alpha, D, i)
                    if pairing(alpha, rD, i) != r * base:
                        return w(which=i, law="left", r=r, D=D.to_str(), alpha=alpha)
                    twisted = jet_mul(alpha, g.unit(r, 3 - i))
                    if pairing(twisted, D, i) != r * base:
                        return w(which=i, law="twisted", r=r, D=D.to_str(), alpha=alpha)
                    if pairing(alpha, Dr, i) != pairing(jet_mul(g.unit(r, i), alpha), D, i):
                        return w(which=i, law="right", r=r, D=D.to_str(), alpha=alpha)
        return None

    wit = _first(jets, linearity)
    report.add("pairing_linearity", wit is None, q, wit)

    def pairing_units(alpha):
        one_u = UElement.one(spec)
        for i in (1, 2):
            if pairing(alpha, one_u, i) != jet_counit(alpha):
                return w(which=i, alpha=alpha)
        for D in Ds:
            for i in (1, 2):
                if pairing(one, D, i) != u_act(D, Poly.one(spec.nvars)):
                    return w(which=i, D=D.to_str())
        return None

    wit = pairing_units(jets[-1]) or pairing_units(jets[0])
    report.add("pairing_with_units", wit is None, q, wit)

    det = g.gram1.det()
    report.add("gram1_unimodular", det.is_const() and det.const_value() in (1, -1), q,
               detail=det.to_str(spec.var_names))
    report.add("gram2_identity", g.gram2.is_identity(), q)

    # coproduct
    coprods = {id(a): g.coproduct(a) for a in jets}
    unit_tensor = JetTensor(spec, q, 2, {(zero_idx, zero_idx): Poly.one(spec.nvars)}, groupoid=True)
    report.add("coproduct_of_one", g.coproduct(one) == unit_tensor, q)

    def defining(alpha):
        T = coprods[id(alpha)]
        for D in monos:
            for E in monos:
                if D.degree() + E.degree() >= q:
                    continue
                lhs = jet_counit(g_nabla(D, two_nabla(E, alpha)))
                if tensor_pairing(T, (D, E)) != lhs:
                    return w(alpha=alpha, D=D.to_str(), E=E.to_str())
        return None

    wit = _first(jets, defining)
    report.add("coproduct_defining_identity", wit is None, q, wit)

    def kp(alpha):
        for D in monos:
            for E in monos:
                if D.degree() + E.degree() >= q:
                    continue
                lhs, rhs = _kp_sides(g, alpha, D, E)
                if lhs != rhs:
                    return w(alpha=alpha, D=D.to_str(), E=E.to_str(), lhs=lhs, rhs=rhs)
        return None

    wit = _first(jets, kp)
    report.add("coproduct_kp_formula", wit is None, q, wit)

    def bimodule(alpha):
        T = coprods[id(alpha)]
        for r in polys[1:]:
            left = g.coproduct(jet_mul(g.unit(r, 1), alpha))
            if left != normalize(spec, q, [(j[0].scale(r),) + j[1:] for j in tensor_slots(T)]):
                return w(side="left", r=r, alpha=alpha)
            right = g.coproduct(jet_mul(alpha, g.unit(r, 2)))
            exp = normalize(spec, q, [j[:-1] + (jet_mul(j[-1], g.unit(r, 2)),) for j in tensor_slots(T)])
            if right != exp:
                return w(side="right", r=r, alpha=alpha)
        return None

    wit = _first(jets, bimodule)
    report.add("coproduct_bimodule_morphism", wit is None, q, wit)

    def counit_laws(alpha):
        T = coprods[id(alpha)]
        left = Jet.zero(spec, q)
        right = Jet.zero(spec, q)
        for (a, b), c in T.terms.items():
            if a == zero_idx:
                left = left + Jet.basis(spec, q, b, c)
            if b == zero_idx:
                right = right + jet_mul(Jet.basis(spec, q, a), g.unit(c, 2))
        if left != alpha:
            return w(side="left", alpha=alpha, got=left)
        if right != alpha:
            return w(side="right", alpha=alpha, got=right)
        return None

    wit = _first(jets, counit_laws)
    report.add("counit_laws", wit is None, q, wit)

    def algebra_morphism(pair):
        a, b = pair
        lhs = g.coproduct(jet_mul(a, b))
        rhs = tensor_product(coprods[id(a)], coprods[id(b)])
        if lhs != rhs:
            return w(alpha=a, beta=b)
        return None

    pairs = [(a, b) for i, a in enumerate(jets) for b in jets[i:]]
    wit = _first(pairs, algebra_morphism)
    report.add("coproduct_algebra_morphism", wit is None, q, wit)

    def coassoc(alpha):
        T = coprods[id(alpha)]
        lhs_terms = []
        rhs = {}
        for (a, b), c in T.terms.items():
            left = g.coproduct(g.xi(a))
            for jets2 in tensor_slots(left):
                lhs_terms.append(jets2 + (Jet.basis(spec, q, b, c),))
            inner = g.coproduct(Jet.basis(spec, q, b, c))
            for key, f in inner.terms.items():
                _add_into(rhs, (a,) + key, f)
        lhs = normalize(spec, q, lhs_terms) if lhs_terms else JetTensor(spec, q, 3, {}, True)
        if lhs != JetTensor(spec, q, 3, rhs, True):
            return w(alpha=alpha)
        return None

    wit = _first(jets, coassoc)
    report.add("coassociativity", wit is None, q, wit)

    # antipode
    def antipode_laws(alpha):
        T = coprods[id(alpha)]
        eps = jet_counit(alpha)
        left = _jet_sum(spec, q, (jet_mul(g.antipode(g.xi(a)), Jet.basis(spec, q, b, c))
                                  for (a, b), c in T.terms.items()))
        right = _jet_sum(spec, q, (jet_mul(g.xi(a), g.antipode(Jet.basis(spec, q, b, c)))
                                   for (a, b), c in T.terms.items()))
        if left != g.unit(eps, 2):
            return w(side="left", alpha=alpha, got=left)
        if right != g.unit(eps, 1):
            return w(side="right", alpha=alpha, got=right)
        return None

    wit = _first(jets, antipode_laws)
    report.add("antipode_laws", wit is None, q, wit)

    def s_squared(alpha):
        if g.antipode(g.antipode(alpha)) != alpha:
            return w(alpha=alpha)
        return None

    wit = _first(jets, s_squared)
    report.add("antipode_involution", wit is None, q, wit)

    def s_morphism(pair):
        a, b = pair
        if g.antipode(jet_mul(a, b)) != jet_mul(g.antipode(a), g.antipode(b)):
            return w(alpha=a, beta=b)
        return None

    wit = _first(pairs, s_morphism)
    report.add("antipode_algebra_morphism", wit is None, q, wit)

    def s_units(r):
        if g.antipode(g.unit(r, 1)) != g.unit(r, 2) or g.antipode(g.unit(r, 2)) != g.unit(r, 1):
            return w(r=r)
        return None

    wit = _first(polys, s_units)
    report.add("antipode_exchanges_units", wit is None, q, wit)

    # reconstruction of the connections from the coproduct
    def reconstruction(alpha):
        T = coprods[id(alpha)]
        for D in monos:
            k = D.degree()
            if k >= q:
                continue
            got1 = Jet.zero(spec, q)
            got2 = Jet.zero(spec, q)
            for (a, b), c in T.terms.items():
                p1 = pairing(g.xi(a), D, 1)
                if p1:
                    got1 = got1 + Jet.basis(spec, q, b, p1 * c)
                p2 = c * D.coeff(b)
                if p2:
                    got2 = got2 + jet_mul(g.xi(a), g.unit(p2, 2))
            if g_nabla(D, alpha) != got1.truncate(q - k):
                return w(which=1, alpha=alpha, D=D.to_str())
            if two_nabla(D, alpha) != got2.truncate(q - k):
                return w(which=2, alpha=alpha, D=D.to_str())
        return None

    wit = _first(jets, reconstruction)
    report.add("connections_from_coproduct", wit is None, q - 1, wit)

    # pairing a coproduct against a coproduct
    def a15(alpha):
        T = coprods[id(alpha)]
        eps = jet_counit(alpha)
        for D in Ds:
            if D.degree() >= q:
                continue
            lhs = Poly.zero(spec.nvars)
            for (d1, d2), f in u_coproduct(D).terms.items():
                D1 = UElement.mono(spec, d1)
                D2 = UElement.mono(spec, d2)
                lhs = lhs + f * tensor_pairing(T, (D1, D2))
            if lhs != u_act(D, eps):
                return w(alpha=alpha, D=D.to_str(), lhs=lhs)
        return None

    wit = _first(jets, a15)
    report.add("coproduct_pairing_with_coproduct", wit is None, q, wit)
    return report


# -- tangent case: the a (x) b picture -------------------------------------


def tangent_picture_report(spec: AlgebroidSpec, q: int, seed: int = 0, samples: int = 3) -> Report:
    """Reproduce the structure maps of the completed R (x) R picture.

    ``a (x) b`` is realized as ``1_1(a) 1_2(b)``; in local coordinates
    ``x_i = xi_{e_i}`` the second unit is the Taylor expansion
    ``1_2(b) = sum_k d^k b / k! x^k``.
    """
    if spec.nvars != spec.rank:
        raise ValueError("the a (x) b picture needs the tangent algebroid")
    g = GroupoidData(spec, q)
    rng = random.Random(seed)
    report = Report(f"tangent_picture[{spec.name}]", meta={"order": q, "seed": seed})
    polys = _polys(spec, rng, samples)
    lc = local_coordinates(spec, q)
    one = Poly.one(spec.nvars)

    def pic(a, b):
        return jet_mul(g.unit(a, 1), g.unit(b, 2))

    def w(**kw):
        return {k: str(v) for k, v in kw.items()}

    pairs = [(a, b) for a in polys for b in polys]

    wit = _first(polys, lambda a: None if g.unit(a, 1) == pic(a, one) else w(a=a))
    report.add("unit1_is_a_tensor_1", wit is None, q, wit)
    wit = _first(polys, lambda b: None if g.unit(b, 2) == pic(one, b) else w(b=b))
    report.add("unit2_is_1_tensor_b", wit is None, q, wit)

    def coprod(pair):
        a, b = pair
        exp = normalize(spec, q, [(g.unit(a, 1), g.unit(b, 2))])
        return None if g.coproduct(pic(a, b)) == exp else w(a=a, b=b)

    wit = _first(pairs, coprod)
    report.add("coproduct", wit is None, q, wit)

    wit = _first(pairs, lambda p: None if jet_counit(pic(*p)) == p[0] * p[1] else w(a=p[0], b=p[1]))
    report.add("counit", wit is None, q, wit)

    wit = _first(pairs, lambda p: None if g.antipode(pic(*p)) == pic(p[1], p[0]) else w(a=p[0], b=p[1]))
    report.add("antipode", wit is None, q, wit)

    def taylor(b):
        series: dict = {}
        for e in multi_indices(spec.rank, q - 1):
            D = UElement.mono(spec, e)
            coeff = u_act(D, b)
            if coeff:
                series[e] = coeff * Fraction(1, exp_factorial(e))
        return None if lc.to_series(g.unit(b, 2)) == series else w(b=b)

    wit = _first(polys, taylor)
    report.add("unit2_is_taylor_expansion", wit is None, q, wit)

    def coordinate(i):
        yi = Poly.var(spec.nvars, i)
        return None if g.unit(yi, 2) - g.unit(yi, 1) == lc.x(i) else w(i=i)

    wit = _first(range(spec.rank), coordinate)
    report.add("coordinate_is_difference_of_units", wit is None, q, wit)

    def evaluation(pair):
        f, h = pair
        for e in multi_indices(spec.rank, q - 1):
            D = UElement.mono(spec, e)
            if jet_eval(pic(f, h), D) != f * u_act(D, h):
                return w(f=f, g=h, D=D.to_str())
        return None

    wit = _first(pairs, evaluation)
    report.add("evaluation_pairing", wit is None, q, wit)
    return report


def groupoid_report(spec: AlgebroidSpec, q: int, seed: int = 0, samples: int = 2) -> Report:
    g = GroupoidData(spec, q)
    report = verify_groupoid(g, samples=samples, seed=seed)
    if spec.nvars == spec.rank and not spec.structure and all(
            row.components[i] == Poly.one(spec.nvars) and sum(1 for c in row.components if c) == 1
            for i, row in enumerate(spec.anchor)):
        report.extend(tangent_picture_report(spec, q, seed=seed))
    return report
