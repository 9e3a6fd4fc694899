"""Sparse multivariate polynomials over the rationals.

A ``Poly`` lives in ``Q[y1, ..., ym]`` for a fixed ``m`` and stores a map
from exponent tuples to exact rational coefficients: ``int`` when integral,
otherwise a ``Fraction`` in lowest terms (ints keep the common case fast).
Zero coefficients are never stored.  ``m = 0`` is allowed and gives the ground field ``Q``.

String form::

    3*y1^2*y2 - 1/2*y1 + 1

Terms are printed in descending graded-lexicographic order, so that
``Poly.parse(str(p)) == p`` and ``str(Poly.parse(s)) == s`` for canonical
``s``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponent = tuple  # tuple[int, ...] of length m


def _num(c):
    """Canonical exact coefficient: int if integral, else Fraction."""
    if type(c) is int:
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


def _grlex_key(e: Exponent):
    return (sum(e), e)


class Poly:
    """Immutable sparse polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not match {nvars} variables")
                c = _num(c)
                if c:
                    v = _num(clean.get(e, 0) + c)
                    if v:
                        clean[e] = v
                    else:
                        del clean[e]
        self.terms = clean
        self._hash = None

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> "Poly":
        return cls.const(nvars, 1)

    @classmethod
    def var(cls, nvars: int, j: int) -> "Poly":
        """The variable ``y_{j+1}`` (``j`` is zero-based)."""
        e = [0] * nvars
        e[j] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        # caller guarantees normalized terms
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_const(self) -> bool:
        return all(not any(e) for e in self.terms)

    def const_value(self) -> Fraction:
        """Constant term."""
        return Fraction(self.terms.get((0,) * self.nvars, 0))

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == Poly.const(self.nvars, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.nvars, other)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other) -> "Poly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v if type(v) is int else _num(v)
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly._raw(self.nvars, {})
            other = _num(other)
            return Poly._raw(self.nvars, {e: _num(c * other) for e, c in self.terms.items()})
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not self.terms or not other.terms:
            return Poly._raw(self.nvars, {})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        for e, v in out.items():
            if type(v) is not int:
                out[e] = _num(v)
        return Poly._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        out = Poly.one(self.nvars)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def diff(self, j: int) -> "Poly":
        """Partial derivative in ``y_{j+1}``."""
        out = {}
        for e, c in self.terms.items():
            k = e[j]
            if k:
                ne = e[:j] + (k - 1,) + e[j + 1:]
                out[ne] = _num(c * k)
        return Poly._raw(self.nvars, out)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ring has {self.nvars}")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    # text ---------------------------------------------------------------

    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names else [f"y{j + 1}" for j in range(self.nvars)]
        if not self.terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            a = abs(c)
            if mono:
                body = mono if a == 1 else f"{_fmt_rat(a)}*{mono}"
            else:
                body = _fmt_rat(a)
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {self.to_str()!r})"

    @classmethod
    def parse(cls, text: str, nvars: int | None = None, names: Sequence[str] | None = None) -> "Poly":
        """Parse the ASCII grammar ``c*y1^a*y2^b +/- ...``."""
        if names is None:
            if nvars is None:
                raise ValueError("need nvars or names")
            names = [f"y{j + 1}" for j in range(nvars)]
        names = list(names)
        nvars = len(names)
        index = {n: j for j, n in enumerate(names)}
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty polynomial string")
        if s[0] not in "+-":
            s = "+" + s
        chunks = re.findall(r"[+-][^+-]+", s)
        if "".join(chunks) != s:
            raise ValueError(f"cannot parse polynomial {text!r}")
        out: dict = {}
        for chunk in chunks:
            sign = -1 if chunk[0] == "-" else 1
            coeff = Fraction(sign)
            exps = [0] * nvars
            for factor in chunk[1:].split("*"):
                if not factor:
                    raise ValueError(f"empty factor in {text!r}")
                if re.fullmatch(r"\d+(/\d+)?", factor):
                    coeff *= Fraction(factor)
                    continue
                name, _, power = factor.partition("^")
                if name not in index:
                    raise ValueError(f"unknown variable {name!r} in {text!r}")
                if power and not power.isdigit():
                    raise ValueError(f"bad exponent {power!r} in {text!r}")
                exps[index[name]] += int(power) if power else 1
            e = tuple(exps)
            out[e] = out.get(e, 0) + coeff
        return cls(nvars, out)


def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def fmt_rational(c) -> str:
    c = Fraction(c)
    return _fmt_rat(abs(c)) if c >= 0 else "-" + _fmt_rat(-c)


class Derivation:
    """A derivation ``sum_j D_j d/dy_j`` of ``Q[y1..ym]``."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[Poly]):
        self.components = tuple(components)
        n = len(self.components)
        for c in self.components:
            if c.nvars != n:
                raise ValueError("derivation components must live in the ring it acts on")

    @property
    def nvars(self) -> int:
        return len(self.components)

    def __call__(self, f: Poly) -> Poly:
        return derivation_apply(self, f)

    def __eq__(self, other) -> bool:
        return isinstance(other, Derivation) and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __repr__(self) -> str:
        return "Derivation(" + ", ".join(str(c) for c in self.components) + ")"


def derivation_apply(D: Derivation, f: Poly) -> Poly:
    if D.nvars != f.nvars:
        raise ValueError(f"derivation on {D.nvars} variables applied to polynomial in {f.nvars}")
    out = Poly.zero(f.nvars)
    for j, c in enumerate(D.components):
        if c:
            df = f.diff(j)
            if df:
                out = out + c * df
    return out


def poly_arith(a: Poly, b: Poly, kind: str) -> Poly:
    if a.nvars != b.nvars:
        raise ValueError(f"variable count mismatch: {a.nvars} vs {b.nvars}")
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown kind {kind!r}")
