"""Truncated jets: the dual of the PBW filtration pieces of U.

A jet of order q is an R-linear functional on PBW monomials of degree
< q, stored as its values ``coeffs[a] = alpha(e^a)``.  Equivalently it is
``sum_a coeffs[a] * xi_a`` with ``xi_a`` the dual basis, so the evaluation
pairing is the identity in these coordinates.

Every operation returns the tightest order it can certify: the two
U-actions drop the order by the degree of the acting element, and
comparisons between jets of different order truncate to the smaller one.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

from .algebroid import AlgebroidSpec
from .enveloping import UElement, _add_into, algebra, multi_indices, u_mul
from .linalg import poly_det, unit_inverse
from .poly import Poly, derivation_apply


class OrderError(ValueError):
    """Raised when a computation needs more jet order than is available."""


def _deg(a: tuple) -> int:
    return sum(a)


class Jet:
    __slots__ = ("spec", "order", "coeffs")

    def __init__(self, spec: AlgebroidSpec, order: int, coeffs: dict | None = None):
        if order < 0:
            raise OrderError(f"negative jet order {order}")
        self.spec = spec
        self.order = order
        self.coeffs = {a: f for a, f in (coeffs or {}).items() if f and _deg(a) < order}

    @classmethod
    def basis(cls, spec: AlgebroidSpec, order: int, alpha: tuple, coeff: Poly | None = None) -> "Jet":
        return cls(spec, order, {tuple(alpha): coeff if coeff is not None else Poly.one(spec.nvars)})

    @classmethod
    def unit(cls, spec: AlgebroidSpec, order: int) -> "Jet":
        return cls.basis(spec, order, (0,) * spec.rank)

    @classmethod
    def zero(cls, spec: AlgebroidSpec, order: int) -> "Jet":
        return cls(spec, order)

    def coeff(self, alpha: tuple) -> Poly:
        return self.coeffs.get(tuple(alpha), Poly.zero(self.spec.nvars))

    def truncate(self, order: int) -> "Jet":
        if order > self.order:
            raise OrderError(f"cannot raise order {self.order} to {order}")
        return Jet(self.spec, order, self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _aligned(self, other: "Jet"):
        q = min(self.order, other.order)
        return q, self.truncate(q), other.truncate(q)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Jet):
            return NotImplemented
        _, a, b = self._aligned(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.order, frozenset(self.coeffs.items())))

    def __add__(self, other: "Jet") -> "Jet":
        q, a, b = self._aligned(other)
        out = dict(a.coeffs)
        for k, f in b.coeffs.items():
            _add_into(out, k, f)
        return Jet(self.spec, q, out)

    def __neg__(self) -> "Jet":
        return Jet(self.spec, self.order, {k: -f for k, f in self.coeffs.items()})

    def __sub__(self, other: "Jet") -> "Jet":
        return self + (-other)

    def scale(self, f) -> "Jet":
        """Natural R-module structure (the first unit map)."""
        return Jet(self.spec, self.order, {k: f * g for k, g in self.coeffs.items()})

    def __mul__(self, other: "Jet") -> "Jet":
        return jet_mul(self, other)

    def to_str(self) -> str:
        if not self.coeffs:
            return "0"
        names = self.spec.var_names
        parts = []
        for a in sorted(self.coeffs, key=lambda a: (_deg(a), a), reverse=True):
            idx = ",".join(str(x) for x in a)
            parts.append(f"({self.coeffs[a].to_str(names)}) * xi[{idx}]")
        return " + ".join(parts) + f"  (order {self.order})"

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Jet({self.to_str()!r})"


class JetTensor:
    """Element of a tensor power of truncated jets, stored in the xi basis.

    ``groupoid=False``: the central convention (R acts the same on every
    slot); each slot is truncated below ``order``.

    ``groupoid=True``: the bimodule convention of the formal groupoid.  A
    stored coefficient ``c`` on ``(a, ..., b)`` sits on the last slot,
    ``xi_a (x) ... (x) c xi_b``; coefficients move leftwards only through the
    second unit.  Total degree is truncated below ``order``.
    """

    __slots__ = ("spec", "order", "arity", "terms", "groupoid")

    def __init__(self, spec: AlgebroidSpec, order: int, arity: int,
                 terms: dict | None = None, groupoid: bool = False):
        self.spec = spec
        self.order = order
        self.arity = arity
        self.groupoid = groupoid
        self.terms = {}
        for key, f in (terms or {}).items():
            if len(key) != arity:
                raise ValueError(f"key {key} does not have arity {arity}")
            if not f:
                continue
            if groupoid:
                if sum(_deg(a) for a in key) >= order:
                    continue
            elif any(_deg(a) >= order for a in key):
                continue
            self.terms[key] = f

    @classmethod
    def from_jets(cls, *jets: Jet) -> "JetTensor":
        """Tensor product (central convention) of jets."""
        spec = jets[0].spec
        q = min(j.order for j in jets)
        terms: dict = {(): Poly.one(spec.nvars)}
        for j in jets:
            nxt: dict = {}
            for key, f in terms.items():
                for a, g in j.coeffs.items():
                    if _deg(a) < q:
                        _add_into(nxt, key + (a,), f * g)
            terms = nxt
        return cls(spec, q, len(jets), terms)

    @classmethod
    def basis(cls, spec: AlgebroidSpec, order: int, key: tuple, coeff: Poly | None = None) -> "JetTensor":
        return cls(spec, order, len(key), {tuple(key): coeff if coeff is not None else Poly.one(spec.nvars)})

    def truncate(self, order: int) -> "JetTensor":
        if order > self.order:
            raise OrderError(f"cannot raise order {self.order} to {order}")
        return JetTensor(self.spec, order, self.arity, self.terms, self.groupoid)

    def is_zero(self) -> bool:
        return not self.terms

    def _aligned(self, other: "JetTensor"):
        if self.groupoid != other.groupoid:
            raise ValueError("incompatible tensor conventions")
        if self.arity != other.arity and self.terms and other.terms:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")
        q = min(self.order, other.order)
        a, b = self.truncate(q), other.truncate(q)
        if not a.terms:
            a.arity = b.arity
        elif not b.terms:
            b.arity = a.arity
        return q, a, b

    def __eq__(self, other) -> bool:
        if not isinstance(other, JetTensor):
            return NotImplemented
        _, a, b = self._aligned(other)
        return a.terms == b.terms

    def __hash__(self):
        return hash((self.order, self.arity, frozenset(self.terms.items())))

    def __add__(self, other: "JetTensor") -> "JetTensor":
        q, a, b = self._aligned(other)
        out = dict(a.terms)
        for k, f in b.terms.items():
            _add_into(out, k, f)
        return JetTensor(self.spec, q, a.arity, out, self.groupoid)

    def __neg__(self) -> "JetTensor":
        return JetTensor(self.spec, self.order, self.arity,
                         {k: -f for k, f in self.terms.items()}, self.groupoid)

    def __sub__(self, other: "JetTensor") -> "JetTensor":
        return self + (-other)

    def scale(self, f) -> "JetTensor":
        return JetTensor(self.spec, self.order, self.arity,
                         {k: f * g for k, g in self.terms.items()}, self.groupoid)

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        names = self.spec.var_names
        parts = []
        for key in sorted(self.terms, reverse=True):
            slots = " x ".join("xi[" + ",".join(str(x) for x in a) + "]" for a in key)
            parts.append(f"({self.terms[key].to_str(names)}) * {slots}")
        return " + ".join(parts) + f"  (order {self.order})"

    def __repr__(self) -> str:
        return f"JetTensor({self.to_str()!r})"


# -- structure tables --------------------------------------------------------


class JetTables:
    """Cached multiplication data for jets of one algebroid."""

    def __init__(self, spec: AlgebroidSpec):
        self.spec = spec
        self.alg = algebra(spec)
        self._prod: dict = {}
        self._rmul: dict = {}

    def basis(self, order: int) -> list:
        return multi_indices(self.spec.rank, order - 1) if order > 0 else []

    def product_table(self, a: tuple, b: tuple) -> list:
        """xi_a xi_b = sum c xi_g, read off from the coproduct of e^g."""
        key = (a, b)
        hit = self._prod.get(key)
        if hit is None:
            g = tuple(x + y for x, y in zip(a, b))
            hit = []
            for (l, r), c in self.alg.coproduct_mono(g).items():
                if l == a and r == b:
                    hit.append((g, c))
            self._prod[key] = hit
        return hit

    def right_mul(self, gamma: tuple, E: UElement) -> dict:
        """e^gamma * E in normal form."""
        key = (gamma, frozenset(E.terms.items()))
        hit = self._rmul.get(key)
        if hit is None:
            hit = u_mul(UElement.mono(self.spec, gamma), E).terms
            self._rmul[key] = hit
        return hit


@lru_cache(maxsize=None)
def tables(spec: AlgebroidSpec) -> JetTables:
    return JetTables(spec)


# -- operations --------------------------------------------------------------


def jet_eval(alpha: Jet, D: UElement) -> Poly:
    if D.degree() >= alpha.order:
        raise OrderError(f"pairing a jet of order {alpha.order} with an element of degree {D.degree()}")
    out = Poly.zero(alpha.spec.nvars)
    for a, f in D.terms.items():
        g = alpha.coeffs.get(a)
        if g:
            out = out + f * g
    return out


def jet_counit(alpha: Jet) -> Poly:
    """epsilon(alpha) = alpha(1)."""
    if alpha.order < 1:
        raise OrderError("counit needs order >= 1")
    return alpha.coeff((0,) * alpha.spec.rank)


def jet_mul(alpha: Jet, beta: Jet) -> Jet:
    if alpha.order != beta.order:
        raise OrderError(f"order mismatch: {alpha.order} vs {beta.order}")
    q = alpha.order
    tb = tables(alpha.spec)
    out: dict = {}
    for a, f in alpha.coeffs.items():
        for b, g in beta.coeffs.items():
            if _deg(a) + _deg(b) >= q:
                continue
            fg = f * g
            for gamma, c in tb.product_table(a, b):
                _add_into(out, gamma, fg * c)
    return Jet(alpha.spec, q, out)


def jet_mul_any(alpha: Jet, beta: Jet) -> Jet:
    """Product at the common order of the two factors."""
    q = min(alpha.order, beta.order)
    return jet_mul(alpha.truncate(q), beta.truncate(q))


def _g_nabla_gen(i: int, alpha: Jet) -> Jet:
    """Grothendieck connection along the frame element e_i: order drops by one."""
    spec = alpha.spec
    q = alpha.order - 1
    if q <= 0:
        raise OrderError("jet order exhausted by the connection")
    alg = algebra(spec)
    rho = spec.anchor[i]
    out: dict = {}
    for gamma in multi_indices(spec.rank, q - 1):
        val = derivation_apply(rho, alpha.coeff(gamma))
        for beta, f in alg.gen_times_mono(i, gamma).items():
            g = alpha.coeffs.get(beta)
            if g:
                val = val - f * g
        if val:
            out[gamma] = val
    return Jet(spec, q, out)


def g_nabla_mono(beta: tuple, alpha: Jet) -> Jet:
    out = alpha
    for i in range(len(beta) - 1, -1, -1):
        for _ in range(beta[i]):
            out = _g_nabla_gen(i, out)
    return out


def g_nabla(D: UElement, alpha: Jet) -> Jet:
    """Grothendieck connection extended to U, applied along the PBW factorization."""
    k = max(D.degree(), 0)
    q = alpha.order - k
    if q <= 0:
        raise OrderError(f"order {alpha.order} exhausted by an element of degree {k}")
    out = Jet.zero(alpha.spec, q)
    for beta, f in D.terms.items():
        out = out + g_nabla_mono(beta, alpha).truncate(q).scale(f)
    return out


def two_nabla(E: UElement, alpha: Jet) -> Jet:
    """(E . alpha)(D) = alpha(D E)."""
    k = max(E.degree(), 0)
    q = alpha.order - k
    if q <= 0:
        raise OrderError(f"order {alpha.order} exhausted by an element of degree {k}")
    spec = alpha.spec
    tb = tables(spec)
    out: dict = {}
    for gamma in multi_indices(spec.rank, q - 1):
        val = Poly.zero(spec.nvars)
        for beta, f in tb.right_mul(gamma, E).items():
            g = alpha.coeffs.get(beta)
            if g:
                val = val + f * g
        if val:
            out[gamma] = val
    return Jet(spec, q, out)


# -- local coordinates --------------------------------------------------------


@dataclass
class LocalCoordinates:
    """Algebra isomorphism J^(q) = R[x_1..x_d]/(x)^q for the lift x_i = xi_{e_i}.

    ``to_xi[a]`` is the jet of the monomial x^a; ``from_xi[a]`` expresses
    xi_a as a polynomial in the x's (a map from exponent to coefficient).
    """

    spec: AlgebroidSpec
    order: int
    to_xi: dict
    from_xi: dict

    def x(self, i: int) -> Jet:
        e = [0] * self.spec.rank
        e[i] = 1
        return Jet.basis(self.spec, self.order, tuple(e))

    def to_series(self, alpha: Jet) -> dict:
        """Coefficients of alpha as a truncated power series in the x's."""
        out: dict = {}
        for a, f in alpha.truncate(min(alpha.order, self.order)).coeffs.items():
            for e, c in self.from_xi[a].items():
                _add_into(out, e, f * c)
        return out

    def from_series(self, series: dict) -> Jet:
        out = Jet.zero(self.spec, self.order)
        for e, f in series.items():
            if _deg(e) < self.order:
                out = out + self.to_xi[e].scale(f)
        return out


def series_mul(a: dict, b: dict, order: int) -> dict:
    out: dict = {}
    for e1, f in a.items():
        for e2, g in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            if _deg(e) < order:
                _add_into(out, e, f * g)
    return out


@lru_cache(maxsize=None)
def local_coordinates(spec: AlgebroidSpec, q: int) -> LocalCoordinates:
    d = spec.rank
    basis = multi_indices(d, q - 1)
    to_xi: dict = {}
    for a in basis:
        jet = Jet.unit(spec, q)
        for i in range(d):
            e = [0] * d
            e[i] = 1
            xi_i = Jet.basis(spec, q, tuple(e))
            for _ in range(a[i]):
                jet = jet_mul(jet, xi_i)
        to_xi[a] = jet
    # columns of to_xi are x^a in xi coordinates; invert that matrix
    M = [[to_xi[a].coeff(b) for a in basis] for b in basis]
    inv = unit_inverse(M, spec.nvars)
    from_xi = {}
    for j, b in enumerate(basis):
        from_xi[b] = {a: inv[i][j] for i, a in enumerate(basis) if inv[i][j]}
    return LocalCoordinates(spec, q, to_xi, from_xi)


def exp_factorial(a: tuple) -> int:
    out = 1
    for k in a:
        out *= factorial(k)
    return out


# -- Gram matrices -----------------------------------------------------------


@dataclass
class GramMatrix:
    """M[row][col] = <xi_col, e^row>_which, over PBW/jet bases of degree < q."""

    spec: AlgebroidSpec
    order: int
    which: int
    basis: list
    entries: list

    def det(self) -> Poly:
        return poly_det(self.entries, self.spec.nvars)

    @property
    def inverse(self) -> list:
        inv = getattr(self, "_inv", None)
        if inv is None:
            inv = unit_inverse(self.entries, self.spec.nvars)
            object.__setattr__(self, "_inv", inv)
        return inv

    def is_identity(self) -> bool:
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                if x != (1 if i == j else 0):
                    return False
        return True


def pairing(alpha: Jet, D: UElement, which: int) -> Poly:
    """<alpha, D>_which = epsilon(nabla^which_D alpha)."""
    if D.degree() >= alpha.order:
        raise OrderError(f"pairing a jet of order {alpha.order} with an element of degree {D.degree()}")
    if which == 2:
        return jet_eval(alpha, D)
    if which == 1:
        return jet_counit(g_nabla(D, alpha))
    raise ValueError(f"which must be 1 or 2, got {which}")


@lru_cache(maxsize=None)
def gram(spec: AlgebroidSpec, q: int, which: int) -> GramMatrix:
    if q < 1:
        raise OrderError("gram needs q >= 1")
    basis = multi_indices(spec.rank, q - 1)
    rows = []
    for beta in basis:
        D = UElement.mono(spec, beta)
        row = []
        for a in basis:
            row.append(pairing(Jet.basis(spec, q, a), D, which))
        rows.append(row)
    return GramMatrix(spec, q, which, basis, rows)


def tensor_basis(spec: AlgebroidSpec, q: int, arity: int) -> list:
    basis = multi_indices(spec.rank, q - 1)
    return list(itertools.product(basis, repeat=arity))


# -- verification ------------------------------------------------------------


def _random_jet(spec: AlgebroidSpec, q: int, rng) -> Jet:
    from .algebroid import random_poly

    coeffs = {a: random_poly(rng, spec.nvars, 2, 2) for a in multi_indices(spec.rank, q - 1)
              if rng.random() < 0.5}
    return Jet(spec, q, coeffs)


def verify_jets(spec: AlgebroidSpec, q: int = 4, samples: int = 3, seed: int = 0):
    """Jet algebra and connection identities over basis and random jets."""
    import random

    from .report import Report

    rng = random.Random(seed)
    report = Report(f"jets[{spec.name}]", meta={"order": q, "seed": seed})
    basis = multi_indices(spec.rank, q - 1)
    jets = [Jet.basis(spec, q, a) for a in basis]
    jets += [_random_jet(spec, q, rng) for _ in range(samples)]
    monos = [UElement.mono(spec, b) for b in basis]
    low = [D for D in monos if D.degree() <= 2]
    gens = [UElement.gen(spec, i) for i in range(spec.rank)]
    alg = algebra(spec)

    def w(**kw):
        return {k: str(v) for k, v in kw.items()}

    def first(items, pred):
        for item in items:
            out = pred(item)
            if out is not None:
                return out
        return None

    pairs = [(a, b) for i, a in enumerate(jets) for b in jets[i:]]
    wit = first(pairs, lambda p: None if jet_mul(*p) == jet_mul(p[1], p[0]) else w(alpha=p[0], beta=p[1]))
    report.add("product_commutative", wit is None, q, wit)

    triples = [(a, b, c) for a in jets[:4] for b in jets for c in jets[-2:]]
    wit = first(triples, lambda t: None if jet_mul(jet_mul(t[0], t[1]), t[2]) == jet_mul(t[0], jet_mul(t[1], t[2]))
                else w(alpha=t[0], beta=t[1], gamma=t[2]))
    report.add("product_associative", wit is None, q, wit)

    unit = Jet.unit(spec, q)
    wit = first(jets, lambda a: None if jet_mul(unit, a) == a else w(alpha=a))
    report.add("product_unit", wit is None, q, wit)

    def commute(alpha):
        for D in low:
            for E in low:
                if D.degree() + E.degree() >= q:
                    continue
                if g_nabla(D, two_nabla(E, alpha)) != two_nabla(E, g_nabla(D, alpha)):
                    return w(alpha=alpha, D=D.to_str(), E=E.to_str())
        return None

    wit = first(jets, commute)
    report.add("connections_commute", wit is None, q - min(4, q - 1), wit)

    def flat(alpha):
        # both actions are module structures: compare with the product in U
        for D in low:
            for E in low:
                if D.degree() + E.degree() >= q:
                    continue
                DE = u_mul(D, E)
                if g_nabla(DE, alpha) != g_nabla(D, g_nabla(E, alpha)):
                    return w(which=1, alpha=alpha, D=D.to_str(), E=E.to_str())
                if two_nabla(DE, alpha) != two_nabla(D, two_nabla(E, alpha)):
                    return w(which=2, alpha=alpha, D=D.to_str(), E=E.to_str())
        return None

    wit = first(jets, flat)
    report.add("connections_flat", wit is None, q - min(4, q - 1), wit)

    def leibniz(pair):
        a, b = pair
        for l in gens:
            lhs = g_nabla(l, jet_mul(a, b))
            rhs = jet_mul(g_nabla(l, a), b.truncate(q - 1)) + jet_mul(a.truncate(q - 1), g_nabla(l, b))
            if lhs != rhs:
                return w(alpha=a, beta=b, l=l.to_str())
        return None

    wit = first(pairs, leibniz)
    report.add("grothendieck_leibniz", wit is None, q - 1, wit)

    def sweedler(pair):
        a, b = pair
        for D in monos:
            k = D.degree()
            if k >= q:
                continue
            for which, act in ((1, g_nabla), (2, two_nabla)):
                rhs = Jet.zero(spec, q - k)
                for (d1, d2), c in alg.coproduct_mono(next(iter(D.terms))).items():
                    x = act(UElement.mono(spec, d1), a).truncate(q - k)
                    y = act(UElement.mono(spec, d2), b).truncate(q - k)
                    rhs = rhs + jet_mul(x, y).scale(c)
                if act(D, jet_mul(a, b)) != rhs:
                    return w(which=which, alpha=a, beta=b, D=D.to_str())
        return None

    wit = first(pairs, sweedler)
    report.add("sweedler_leibniz", wit is None, 1, wit)

    def symbol(a):
        k = _deg(a)
        for i in range(spec.rank):
            l = UElement.gen(spec, i)
            for which, act, sign in ((1, g_nabla, -1), (2, two_nabla, 1)):
                if k == 0:
                    continue
                out = act(l, Jet.basis(spec, q, a))
                for c, f in out.coeffs.items():
                    if _deg(c) < k - 1:
                        return w(which=which, a=a, i=i + 1, low=c)
                    if _deg(c) == k - 1:
                        expect = sign if a[i] > 0 and c == tuple(x - (j == i) for j, x in enumerate(a)) else 0
                        if f != expect:
                            return w(which=which, a=a, i=i + 1, c=c, got=f)
                if a[i] > 0:
                    c = tuple(x - (j == i) for j, x in enumerate(a))
                    if out.coeff(c) != sign:
                        return w(which=which, a=a, i=i + 1, c=c)
        for j in range(spec.nvars):
            y = Poly.var(spec.nvars, j)
            for act in (g_nabla, two_nabla):
                out = act(UElement.scalar(spec, y), Jet.basis(spec, q, a))
                for c, f in out.coeffs.items():
                    if _deg(c) < k or (_deg(c) == k and f != (y if c == a else 0)):
                        return w(a=a, r=y, c=c)
        return None

    wit = first(basis, symbol)
    report.add("symbol_contraction", wit is None, q, wit)

    for which in (1, 2):
        det = gram(spec, q, which).det()
        ok = det.is_const() and det.const_value() in (1, -1)
        report.add(f"gram{which}_unimodular", ok, q, detail=det.to_str(spec.var_names))
    report.add("gram2_identity", gram(spec, q, 2).is_identity(), q)

    lc = local_coordinates(spec, q)

    def multiplicative(pair):
        a, b = pair
        lhs = lc.to_series(jet_mul(a, b))
        rhs = series_mul(lc.to_series(a), lc.to_series(b), q)
        return None if lhs == rhs else w(alpha=a, beta=b)

    wit = first(pairs, multiplicative)
    report.add("local_coordinates_multiplicative", wit is None, q, wit)
    wit = first(jets, lambda a: None if lc.from_series(lc.to_series(a)) == a else w(alpha=a))
    report.add("local_coordinates_roundtrip", wit is None, q, wit)
    return report
