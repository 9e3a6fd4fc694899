"""Free Lie algebroids of rank d over Q[y1..ym].

An algebroid is given by its anchor (row i is the derivation rho(e_i))
and structure functions c_ij^k for i < j with [e_i, e_j] = sum_k c_ij^k e_k.
The i > j values are synthesized by antisymmetry.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .poly import Derivation, Poly, derivation_apply
from .report import Report


@dataclass(frozen=True)
class AlgebroidSpec:
    nvars: int
    rank: int
    anchor: tuple  # tuple of Derivation, one per frame element
    structure: dict = field(default_factory=dict)  # (i, j, k) -> Poly, i < j, zero-based
    name: str = "algebroid"
    var_names: tuple = ()

    def __post_init__(self):
        if len(self.anchor) != self.rank:
            raise ValueError(f"anchor has {len(self.anchor)} rows, rank is {self.rank}")
        for row in self.anchor:
            if row.nvars != self.nvars:
                raise ValueError("anchor row has wrong number of variables")
        for (i, j, k), c in self.structure.items():
            if not (0 <= i < j < self.rank and 0 <= k < self.rank):
                raise ValueError(f"structure index ({i},{j},{k}) must satisfy i<j<rank")
            if c.nvars != self.nvars:
                raise ValueError("structure function has wrong number of variables")
        if not self.var_names:
            object.__setattr__(self, "var_names", tuple(f"y{j + 1}" for j in range(self.nvars)))

    def __hash__(self):
        return hash((self.name, self.nvars, self.rank, self.anchor,
                     tuple(sorted((k, v) for k, v in self.structure.items()))))

    def __eq__(self, other):
        return (isinstance(other, AlgebroidSpec) and self.nvars == other.nvars
                and self.rank == other.rank and self.anchor == other.anchor
                and self.structure == other.structure)

    def zero(self) -> Poly:
        return Poly.zero(self.nvars)

    def one(self) -> Poly:
        return Poly.one(self.nvars)

    def c(self, i: int, j: int, k: int) -> Poly:
        """Structure function c_ij^k with the antisymmetric completion."""
        if i == j:
            return self.zero()
        if i < j:
            return self.structure.get((i, j, k), self.zero())
        return -self.structure.get((j, i, k), self.zero())

    def frame_bracket(self, i: int, j: int) -> "LElement":
        return LElement(tuple(self.c(i, j, k) for k in range(self.rank)))

    def frame(self, i: int) -> "LElement":
        comps = [self.zero()] * self.rank
        comps[i] = self.one()
        return LElement(tuple(comps))

    def fmt(self, f: Poly) -> str:
        return f.to_str(self.var_names)


@dataclass(frozen=True)
class LElement:
    """Section sum_i coeffs[i] e_i of the algebroid."""

    coeffs: tuple

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def __add__(self, other: "LElement") -> "LElement":
        _check_rank(self, other)
        return LElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "LElement") -> "LElement":
        _check_rank(self, other)
        return LElement(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "LElement":
        return LElement(tuple(-a for a in self.coeffs))

    def scale(self, f) -> "LElement":
        return LElement(tuple(f * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self.coeffs)


def _check_rank(x: LElement, y: LElement) -> None:
    if x.rank != y.rank:
        raise ValueError(f"rank mismatch: {x.rank} vs {y.rank}")


def anchor_apply(spec: AlgebroidSpec, X: LElement, f: Poly) -> Poly:
    if X.rank != spec.rank:
        raise ValueError(f"element of rank {X.rank} in algebroid of rank {spec.rank}")
    if f.nvars != spec.nvars:
        raise ValueError("polynomial is not in the algebroid's base ring")
    out = spec.zero()
    for a, row in zip(X.coeffs, spec.anchor):
        if a:
            out = out + a * derivation_apply(row, f)
    return out


def anchor_derivation(spec: AlgebroidSpec, X: LElement) -> Derivation:
    comps = [spec.zero()] * spec.nvars
    for a, row in zip(X.coeffs, spec.anchor):
        if a:
            comps = [c + a * r for c, r in zip(comps, row.components)]
    return Derivation(comps)


def bracket(spec: AlgebroidSpec, X: LElement, Y: LElement) -> LElement:
    if X.rank != spec.rank or Y.rank != spec.rank:
        raise ValueError("rank mismatch between elements and algebroid")
    d = spec.rank
    out = [spec.zero()] * d
    for i, f in enumerate(X.coeffs):
        if not f:
            continue
        for j, g in enumerate(Y.coeffs):
            if not g or i == j:
                continue
            fg = f * g
            for k in range(d):
                c = spec.c(i, j, k)
                if c:
                    out[k] = out[k] + fg * c
    for k in range(d):
        out[k] = out[k] + anchor_apply(spec, X, Y.coeffs[k]) - anchor_apply(spec, Y, X.coeffs[k])
    return LElement(tuple(out))


# -- axiom checker ---------------------------------------------------------


def random_poly(rng: random.Random, nvars: int, maxdeg: int = 2, nterms: int = 3) -> Poly:
    terms = {}
    for _ in range(nterms):
        e = [0] * nvars
        for _ in range(rng.randint(0, maxdeg)):
            if nvars:
                e[rng.randrange(nvars)] += 1
        terms[tuple(e)] = terms.get(tuple(e), 0) + rng.randint(-3, 3)
    return Poly(nvars, terms)


def random_lelement(spec: AlgebroidSpec, rng: random.Random) -> LElement:
    return LElement(tuple(random_poly(rng, spec.nvars) for _ in range(spec.rank)))


def _witness(**kw) -> dict:
    out = {}
    for k, v in kw.items():
        if isinstance(v, LElement):
            out[k] = [str(a) for a in v.coeffs]
        else:
            out[k] = str(v)
    return out


def check_axioms(spec: AlgebroidSpec, samples: int = 6, seed: int = 0) -> Report:
    """Check antisymmetry, Jacobi, anchor compatibility and the Leibniz laws.

    Frame elements are always checked; ``samples`` random sections with
    polynomial coefficients are added on top.
    """
    rng = random.Random(seed)
    report = Report(f"axioms[{spec.name}]", meta={"seed": seed, "samples": samples})
    elems = [spec.frame(i) for i in range(spec.rank)]
    elems += [random_lelement(spec, rng) for _ in range(samples)]
    funcs = [Poly.var(spec.nvars, j) for j in range(spec.nvars)]
    funcs += [random_poly(rng, spec.nvars, 3, 4) for _ in range(max(samples // 2, 1))]
    if not funcs:
        funcs = [spec.one()]

    n = len(elems)
    pairs = {(a, b): bracket(spec, elems[a], elems[b]) for a in range(n) for b in range(n)}

    def antisym():
        for (a, b), B in pairs.items():
            if not (B + pairs[b, a]).is_zero():
                return _witness(X=elems[a], Y=elems[b])
        return None

    w = antisym()
    report.add("antisymmetry", w is None, witness=w)

    def jacobi():
        for a in range(n):
            for b in range(a, n):
                for c in range(b, n):
                    X, Y, Z = elems[a], elems[b], elems[c]
                    s = (bracket(spec, X, pairs[b, c])
                         + bracket(spec, Y, pairs[c, a])
                         + bracket(spec, Z, pairs[a, b]))
                    if not s.is_zero():
                        return _witness(X=X, Y=Y, Z=Z, defect=s)
        return None

    w = jacobi()
    report.add("jacobi", w is None, witness=w)

    def compat():
        for (a, b), B in pairs.items():
            X, Y = elems[a], elems[b]
            for f in funcs:
                lhs = anchor_apply(spec, B, f)
                rhs = (anchor_apply(spec, X, anchor_apply(spec, Y, f))
                       - anchor_apply(spec, Y, anchor_apply(spec, X, f)))
                if lhs != rhs:
                    return _witness(X=X, Y=Y, f=f, lhs=lhs, rhs=rhs)
        return None

    w = compat()
    report.add("anchor_bracket_compatible", w is None, witness=w)

    def anchor_linear():
        for X in elems:
            for f1 in funcs:
                for f2 in funcs:
                    if anchor_apply(spec, X.scale(f1), f2) != f1 * anchor_apply(spec, X, f2):
                        return _witness(X=X, f1=f1, f2=f2)
        return None

    w = anchor_linear()
    report.add("anchor_O_linear", w is None, witness=w)

    def leibniz_anchor():
        for X in elems:
            for f1 in funcs:
                for f2 in funcs:
                    lhs = anchor_apply(spec, X, f1 * f2)
                    rhs = anchor_apply(spec, X, f1) * f2 + f1 * anchor_apply(spec, X, f2)
                    if lhs != rhs:
                        return _witness(X=X, f1=f1, f2=f2)
        return None

    w = leibniz_anchor()
    report.add("anchor_leibniz", w is None, witness=w)

    def leibniz_bracket():
        for (a, b), B in pairs.items():
            X, Y = elems[a], elems[b]
            for f in funcs:
                lhs = bracket(spec, X, Y.scale(f))
                rhs = Y.scale(anchor_apply(spec, X, f)) + B.scale(f)
                if lhs != rhs:
                    return _witness(X=X, Y=Y, f=f)
        return None

    w = leibniz_bracket()
    report.add("bracket_leibniz", w is None, witness=w)
    return report


# -- bundled examples ------------------------------------------------------


def _derivs(nvars: int, rows: Sequence[Sequence[str]]) -> tuple:
    return tuple(Derivation(Poly.parse(s, nvars) for s in row) for row in rows)


def tangent(m: int = 1) -> AlgebroidSpec:
    rows = [["1" if j == i else "0" for j in range(m)] for i in range(m)]
    return AlgebroidSpec(m, m, _derivs(m, rows), {}, name=f"tangent{m}")


def abelian(d: int = 2) -> AlgebroidSpec:
    return AlgebroidSpec(0, d, tuple(Derivation(()) for _ in range(d)), {}, name=f"abelian{d}")


def solvable() -> AlgebroidSpec:
    """Two-dimensional Lie algebra [e1, e2] = e2 over Q."""
    return AlgebroidSpec(0, 2, (Derivation(()), Derivation(())),
                         {(0, 1, 1): Poly.one(0)}, name="solvable")


def anchored() -> AlgebroidSpec:
    """Rank one over Q[y] with anchor y d/dy (not surjective)."""
    return AlgebroidSpec(1, 1, _derivs(1, [["y1"]]), {}, name="anchored")


def broken() -> AlgebroidSpec:
    """Rank three over Q[y]: anchor (d/dy, 0, 0), abelian except c_12^1 = 1.

    The corrupted bracket [e1, e2] = e1 is incompatible with the anchor.
    """
    return AlgebroidSpec(1, 3, _derivs(1, [["1"], ["0"], ["0"]]),
                         {(0, 1, 0): Poly.one(1)}, name="broken")


def examples() -> dict:
    """The shipped valid specs, keyed by name."""
    specs = [tangent(1), tangent(2), abelian(2), solvable(), anchored()]
    return {s.name: s for s in specs}
