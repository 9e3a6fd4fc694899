"""The enveloping algebra U of a free Lie algebroid, in PBW normal form.

Elements are sums ``f_a * e1^a1 ... ed^ad`` with polynomial coefficients
on the left.  Products are normalized with the two rewriting rules

    e_i f   -> f e_i + rho(e_i)(f)
    e_j e_i -> e_i e_j + [e_j, e_i]      (j > i)

applied by multiplying generators in from the left, innermost first.
Multiplication tables for monomials are cached per algebroid.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

from .algebroid import AlgebroidSpec
from .poly import Poly, derivation_apply


def _add_into(out: dict, key, val: Poly) -> None:
    if not val:
        return
    cur = out.get(key)
    if cur is None:
        out[key] = val
    else:
        s = cur + val
        if s:
            out[key] = s
        else:
            del out[key]


def multi_indices(d: int, maxdeg: int, mindeg: int = 0) -> list:
    """All multi-indices of length ``d`` with ``mindeg <= |a| <= maxdeg``.

    Ordered by total degree, and descending lexicographically inside a degree,
    e.g. (0,0), (1,0), (0,1), (2,0), (1,1), (0,2).
    """
    out = []
    for k in range(mindeg, maxdeg + 1):
        out.extend(_compositions(d, k))
    return out


@lru_cache(maxsize=None)
def _compositions(d: int, k: int) -> tuple:
    if d == 0:
        return ((),) if k == 0 else ()
    res = []
    for first in range(k, -1, -1):
        for rest in _compositions(d - 1, k - first):
            res.append((first,) + rest)
    return tuple(res)


def u_basis(spec: AlgebroidSpec, maxdeg: int) -> list:
    if maxdeg < 0:
        raise ValueError("maxdeg must be non-negative")
    return multi_indices(spec.rank, maxdeg)


def add_index(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def index_binom(a: tuple, b: tuple) -> int:
    """prod_i C(a_i, b_i); zero unless b <= a componentwise."""
    out = 1
    for x, y in zip(a, b):
        if y > x:
            return 0
        out *= comb(x, y)
    return out


class UAlgebra:
    """Multiplication machinery for U of one algebroid."""

    def __init__(self, spec: AlgebroidSpec):
        self.spec = spec
        self.d = spec.rank
        self.m = spec.nvars
        self.zero_index = (0,) * self.d
        self._one = Poly.one(self.m)
        self._gen_mono: dict = {}
        self._mono_mono: dict = {}
        self._mono_poly: dict = {}
        self._coprod: dict = {}

    def unit_index(self, i: int) -> tuple:
        e = [0] * self.d
        e[i] = 1
        return tuple(e)

    # generator times monomial -----------------------------------------

    def gen_times_mono(self, i: int, beta: tuple) -> dict:
        key = (i, beta)
        hit = self._gen_mono.get(key)
        if hit is not None:
            return hit
        j = next((t for t, b in enumerate(beta) if b), None)
        if j is None or i <= j:
            res = {add_index(beta, self.unit_index(i)): self._one}
        else:
            rest = list(beta)
            rest[j] -= 1
            rest = tuple(rest)
            res: dict = {}
            # e_j (e_i rest)
            inner = self.gen_times_mono(i, rest)
            for gamma, f in self.gen_times_elem(j, inner).items():
                _add_into(res, gamma, f)
            # [e_i, e_j] rest
            for k in range(self.d):
                c = self.spec.c(i, j, k)
                if c:
                    for gamma, f in self.gen_times_mono(k, rest).items():
                        _add_into(res, gamma, c * f)
        self._gen_mono[key] = res
        return res

    def gen_times_elem(self, i: int, terms: dict) -> dict:
        """e_i * sum f_a e^a."""
        rho = self.spec.anchor[i]
        out: dict = {}
        for alpha, f in terms.items():
            df = derivation_apply(rho, f)
            if df:
                _add_into(out, alpha, df)
            for gamma, g in self.gen_times_mono(i, alpha).items():
                _add_into(out, gamma, f * g)
        return out

    def mono_times_elem(self, alpha: tuple, terms: dict) -> dict:
        out = terms
        for i in range(self.d - 1, -1, -1):
            for _ in range(alpha[i]):
                out = self.gen_times_elem(i, out)
        return out

    def mono_times_mono(self, alpha: tuple, beta: tuple) -> dict:
        key = (alpha, beta)
        hit = self._mono_mono.get(key)
        if hit is None:
            hit = self.mono_times_elem(alpha, {beta: self._one})
            self._mono_mono[key] = hit
        return hit

    def mono_times_poly(self, alpha: tuple, g: Poly) -> dict:
        """e^alpha * g, rewritten as sum h_c e^c."""
        key = (alpha, g)
        hit = self._mono_poly.get(key)
        if hit is None:
            hit = self.mono_times_elem(alpha, {self.zero_index: g})
            self._mono_poly[key] = hit
        return hit

    def mul_terms(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for alpha, f in a.items():
            for beta, g in b.items():
                if g.is_const():
                    fg = f * g.const_value()
                    for delta, k in self.mono_times_mono(alpha, beta).items():
                        _add_into(out, delta, fg * k)
                    continue
                for gamma, h in self.mono_times_poly(alpha, g).items():
                    fh = f * h
                    for delta, k in self.mono_times_mono(gamma, beta).items():
                        _add_into(out, delta, fh * k)
        return out

    # coproduct ---------------------------------------------------------

    def coproduct_mono(self, alpha: tuple) -> dict:
        """Delta(e^alpha) as {(a, b): coeff}, built from Delta(e_i) = e_i x 1 + 1 x e_i."""
        hit = self._coprod.get(alpha)
        if hit is not None:
            return hit
        z = self.zero_index
        cur = {(z, z): self._one}
        for i in range(self.d):
            ei = self.unit_index(i)
            for _ in range(alpha[i]):
                nxt: dict = {}
                for (a, b), c in cur.items():
                    for a2, f in self.mono_times_mono(a, ei).items():
                        _add_into(nxt, (a2, b), c * f)
                    for b2, f in self.mono_times_mono(b, ei).items():
                        _add_into(nxt, (a, b2), c * f)
                cur = nxt
        self._coprod[alpha] = cur
        return cur


@lru_cache(maxsize=None)
def algebra(spec: AlgebroidSpec) -> UAlgebra:
    return UAlgebra(spec)


class UElement:
    """Element of U in PBW normal form, coefficients on the left."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: AlgebroidSpec, terms: dict | None = None):
        self.spec = spec
        self.terms = {a: f for a, f in (terms or {}).items() if f}

    # constructors
    @classmethod
    def one(cls, spec: AlgebroidSpec) -> "UElement":
        return cls(spec, {(0,) * spec.rank: Poly.one(spec.nvars)})

    @classmethod
    def scalar(cls, spec: AlgebroidSpec, f: Poly) -> "UElement":
        return cls(spec, {(0,) * spec.rank: f})

    @classmethod
    def gen(cls, spec: AlgebroidSpec, i: int) -> "UElement":
        e = [0] * spec.rank
        e[i] = 1
        return cls(spec, {tuple(e): Poly.one(spec.nvars)})

    @classmethod
    def mono(cls, spec: AlgebroidSpec, alpha: tuple, coeff: Poly | None = None) -> "UElement":
        return cls(spec, {tuple(alpha): coeff if coeff is not None else Poly.one(spec.nvars)})

    @classmethod
    def from_lelement(cls, spec: AlgebroidSpec, X) -> "UElement":
        out = {}
        for i, f in enumerate(X.coeffs):
            e = [0] * spec.rank
            e[i] = 1
            out[tuple(e)] = f
        return cls(spec, out)

    def degree(self) -> int:
        return max((sum(a) for a in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, alpha: tuple) -> Poly:
        return self.terms.get(tuple(alpha), Poly.zero(self.spec.nvars))

    def __eq__(self, other) -> bool:
        return isinstance(other, UElement) and self.spec == other.spec and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "UElement") -> "UElement":
        out = dict(self.terms)
        for a, f in other.terms.items():
            _add_into(out, a, f)
        return UElement(self.spec, out)

    def __neg__(self) -> "UElement":
        return UElement(self.spec, {a: -f for a, f in self.terms.items()})

    def __sub__(self, other: "UElement") -> "UElement":
        return self + (-other)

    def scale(self, f) -> "UElement":
        """Left multiplication by a polynomial or rational."""
        return UElement(self.spec, {a: f * g for a, g in self.terms.items()})

    def __mul__(self, other: "UElement") -> "UElement":
        return u_mul(self, other)

    def symbol(self) -> dict:
        """Top filtration component, as a commutative polynomial in the e_i."""
        k = self.degree()
        return {a: f for a, f in self.terms.items() if sum(a) == k}

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        names = self.spec.var_names
        parts = []
        for a in sorted(self.terms, key=lambda a: (sum(a), a), reverse=True):
            mono = " ".join(
                f"e{i + 1}" if k == 1 else f"e{i + 1}^{k}" for i, k in enumerate(a) if k
            )
            coeff = f"({self.terms[a].to_str(names)})"
            parts.append(f"{coeff} * {mono}" if mono else coeff)
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"UElement({self.to_str()!r})"


class UTensor:
    """Element of the p-fold tensor power of U over R (central bimodule)."""

    __slots__ = ("spec", "arity", "terms")

    def __init__(self, spec: AlgebroidSpec, arity: int, terms: dict | None = None):
        self.spec = spec
        self.arity = arity
        self.terms = {}
        for key, f in (terms or {}).items():
            if len(key) != arity:
                raise ValueError(f"tensor key {key} does not have arity {arity}")
            if f:
                self.terms[key] = f

    @classmethod
    def from_elements(cls, *elems: UElement) -> "UTensor":
        spec = elems[0].spec
        terms: dict = {(): Poly.one(spec.nvars)}
        for u in elems:
            nxt: dict = {}
            for key, f in terms.items():
                for a, g in u.terms.items():
                    _add_into(nxt, key + (a,), f * g)
            terms = nxt
        return cls(spec, len(elems), terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, UTensor):
            return NotImplemented
        if not self.terms or not other.terms:
            return self.terms == other.terms
        return self.arity == other.arity and self.terms == other.terms

    def __add__(self, other: "UTensor") -> "UTensor":
        if not other.terms:
            return self
        if not self.terms:
            return other
        if other.arity != self.arity:
            raise ValueError("arity mismatch")
        out = dict(self.terms)
        for k, f in other.terms.items():
            _add_into(out, k, f)
        return UTensor(self.spec, self.arity, out)

    def __neg__(self) -> "UTensor":
        return UTensor(self.spec, self.arity, {k: -f for k, f in self.terms.items()})

    def __sub__(self, other: "UTensor") -> "UTensor":
        return self + (-other)

    def scale(self, f) -> "UTensor":
        return UTensor(self.spec, self.arity, {k: f * g for k, g in self.terms.items()})

    def swap(self) -> "UTensor":
        return UTensor(self.spec, self.arity, {k[::-1]: f for k, f in self.terms.items()})

    def max_slot_degree(self) -> int:
        return max((max((sum(a) for a in k), default=0) for k in self.terms), default=-1)

    def to_str(self) -> str:
        if not self.terms:
            return "0"
        names = self.spec.var_names
        parts = []
        for key in sorted(self.terms, reverse=True):
            slots = " x ".join(
                " ".join(f"e{i + 1}" if k == 1 else f"e{i + 1}^{k}" for i, k in enumerate(a) if k) or "1"
                for a in key
            )
            parts.append(f"({self.terms[key].to_str(names)}) * {slots}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"UTensor({self.to_str()!r})"


# -- operations -------------------------------------------------------------


def _same_spec(a: UElement, b: UElement) -> None:
    if a.spec is not b.spec and a.spec != b.spec:
        raise ValueError("elements belong to different algebroids")


def u_mul(a: UElement, b: UElement) -> UElement:
    _same_spec(a, b)
    return UElement(a.spec, algebra(a.spec).mul_terms(a.terms, b.terms))


def u_counit(D: UElement) -> Poly:
    return D.coeff((0,) * D.spec.rank)


def u_coproduct(D: UElement) -> UTensor:
    alg = algebra(D.spec)
    out: dict = {}
    for alpha, f in D.terms.items():
        for key, c in alg.coproduct_mono(alpha).items():
            _add_into(out, key, f * c)
    return UTensor(D.spec, 2, out)


def u_act(D: UElement, f: Poly) -> Poly:
    """Action of U on R extending the anchor."""
    spec = D.spec
    out = Poly.zero(spec.nvars)
    cache: dict = {}
    for alpha, c in D.terms.items():
        out = out + c * _mono_act(spec, alpha, f, cache)
    return out


def _mono_act(spec: AlgebroidSpec, alpha: tuple, f: Poly, cache: dict) -> Poly:
    if alpha in cache:
        return cache[alpha]
    g = f
    for i in range(spec.rank - 1, -1, -1):
        for _ in range(alpha[i]):
            g = derivation_apply(spec.anchor[i], g)
    cache[alpha] = g
    return g


def coproduct_binomial(D: UElement) -> UTensor:
    """Closed form Delta(f e^a) = sum_b C(a, b) f e^b x e^(a-b).

    Independent of the multiplicative construction; used as a cross-check.
    """
    out: dict = {}
    for alpha, f in D.terms.items():
        for beta in itertools.product(*(range(k + 1) for k in alpha)):
            rest = tuple(x - y for x, y in zip(alpha, beta))
            _add_into(out, (tuple(beta), rest), f * index_binom(alpha, beta))
    return UTensor(D.spec, 2, out)


def apply_in_slot(T: UTensor, slot: int, fn) -> UTensor:
    """Apply ``fn: UElement -> UTensor`` to one slot of ``T`` (R-linearly)."""
    spec = T.spec
    out: dict = {}
    arity = None
    for key, f in T.terms.items():
        piece = fn(UElement.mono(spec, key[slot]))
        arity = T.arity - 1 + piece.arity
        for sub, g in piece.terms.items():
            _add_into(out, key[:slot] + sub + key[slot + 1:], f * g)
    if arity is None:
        arity = T.arity + 1
    return UTensor(spec, arity, out)


def tensor_mul(A: UTensor, B: UTensor) -> UTensor:
    """Componentwise product, meaningful when ``A`` lies in the Takeuchi subspace.

    The coefficient of each term of ``B`` is moved into the first slot, where
    the generators of ``A`` act on it; on the Takeuchi subspace the choice of
    slot does not matter.
    """
    if A.arity != B.arity:
        raise ValueError("arity mismatch")
    alg = algebra(A.spec)
    one = Poly.one(alg.m)
    out: dict = {}
    for ka, fa in A.terms.items():
        for kb, fb in B.terms.items():
            slots = [alg.mul_terms({ka[0]: one}, {kb[0]: fb})]
            slots += [alg.mul_terms({a: one}, {b: one}) for a, b in zip(ka[1:], kb[1:])]
            for combo in itertools.product(*(s.items() for s in slots)):
                key = tuple(c[0] for c in combo)
                val = fa
                for c in combo:
                    val = val * c[1]
                _add_into(out, key, val)
    return UTensor(A.spec, A.arity, out)
