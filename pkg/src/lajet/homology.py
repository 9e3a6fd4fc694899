"""Graded complexes over R or Q and their exact homology.

Every complex is stored homologically: ``d_n`` maps degree ``n`` to
``n - 1``.  Cochain complexes use degree ``-p`` for cochains of arity
``p``.  Differentials are sparse: ``diffs[n][j]`` is the column of the
``j``-th basis element of degree ``n`` as a dict ``{row: entry}``.

Optional per-basis weights let ranks be computed block by block; a complex
whose differentials do not respect the weights is rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .linalg import rank
from .poly import Poly, fmt_rational


class ComplexError(ValueError):
    """Raised when a complex is malformed (for example d o d != 0)."""


def _entry_str(x) -> str:
    if isinstance(x, Poly):
        return x.to_str()
    return fmt_rational(Fraction(x))


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, Poly) else x == 0


@dataclass
class GradedComplex:
    name: str
    ranks: dict  # degree -> rank
    diffs: dict  # degree -> list of sparse columns
    weights: dict = field(default_factory=dict)  # degree -> list of weights
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for n, cols in self.diffs.items():
            if len(cols) != self.ranks.get(n, 0):
                raise ComplexError(f"degree {n}: {len(cols)} columns for rank {self.ranks.get(n, 0)}")
            target = self.ranks.get(n - 1, 0)
            for col in cols:
                for i in col:
                    if not 0 <= i < target:
                        raise ComplexError(f"degree {n}: row {i} outside target rank {target}")
        for n, ws in self.weights.items():
            if len(ws) != self.ranks.get(n, 0):
                raise ComplexError(f"degree {n}: {len(ws)} weights for rank {self.ranks.get(n, 0)}")
        self._check_weights()
        self._check_square_zero()

    @property
    def degrees(self) -> list:
        return sorted(self.ranks)

    def column(self, n: int, j: int) -> dict:
        cols = self.diffs.get(n)
        return cols[j] if cols else {}

    def _check_weights(self) -> None:
        if not self.weights:
            return
        for n, cols in self.diffs.items():
            src, dst = self.weights.get(n), self.weights.get(n - 1)
            if src is None or dst is None:
                if any(cols):
                    raise ComplexError(f"degree {n}: weights missing")
                continue
            for j, col in enumerate(cols):
                for i, x in col.items():
                    if not _is_zero(x) and dst[i] != src[j]:
                        raise ComplexError(f"degree {n}: differential does not respect weights")

    def _check_square_zero(self) -> None:
        for n, cols in self.diffs.items():
            lower = self.diffs.get(n - 1)
            if not lower:
                continue
            for j, col in enumerate(cols):
                acc: dict = {}
                for k, x in col.items():
                    for i, y in lower[k].items():
                        acc[i] = acc[i] + x * y if i in acc else x * y
                if any(not _is_zero(v) for v in acc.values()):
                    raise ComplexError(f"d o d != 0 starting in degree {n}, column {j}")

    def dense(self, n: int) -> list:
        rows = self.ranks.get(n - 1, 0)
        cols = self.diffs.get(n, [])
        zero = 0
        M = [[zero] * len(cols) for _ in range(rows)]
        for j, col in enumerate(cols):
            for i, x in col.items():
                M[i][j] = x
        return M

    def to_dict(self) -> dict:
        out = []
        for n in sorted(self.ranks, reverse=True):
            M = self.dense(n)
            out.append({
                "homological_degree": n,
                "rank": self.ranks[n],
                "differential_matrix": [[_entry_str(x) for x in row] for row in M],
            })
        return {"name": self.name, "meta": self.meta, "degrees": out}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def evaluate_at_point(c: GradedComplex, point) -> GradedComplex:
    """Substitute y = point in every entry; the result has rational entries."""
    pt = tuple(Fraction(x) for x in point)
    diffs = {}
    for n, cols in c.diffs.items():
        new_cols = []
        for col in cols:
            new = {}
            for i, x in col.items():
                if isinstance(x, Poly):
                    if x.nvars != len(pt):
                        raise ValueError(f"point has {len(pt)} coordinates, ring has {x.nvars} variables")
                    v = x.evaluate(pt)
                else:
                    v = Fraction(x)
                if v:
                    new[i] = v
            new_cols.append(new)
        diffs[n] = new_cols
    meta = dict(c.meta)
    meta["point"] = [fmt_rational(x) for x in pt]
    return GradedComplex(c.name, dict(c.ranks), diffs, dict(c.weights), meta)


@dataclass
class HomologyTable:
    dims: dict  # degree -> dimension
    by_weight: dict = field(default_factory=dict)  # degree -> {weight: dimension}
    euler: int = 0

    def restricted(self, pred) -> dict:
        """Dimensions summed over the weights accepted by ``pred``."""
        return {n: sum(v for w, v in ws.items() if pred(w)) for n, ws in self.by_weight.items()}

    def to_dict(self) -> dict:
        out = {"dims": {str(n): v for n, v in sorted(self.dims.items())}, "euler": self.euler}
        if self.by_weight:
            out["by_weight"] = {str(n): {str(w): v for w, v in sorted(ws.items()) if v}
                                for n, ws in sorted(self.by_weight.items())}
        return out


def _block_rank(c: GradedComplex, n: int, weight=None) -> int:
    cols = c.diffs.get(n)
    if not cols:
        return 0
    if weight is None:
        col_ids = range(len(cols))
        row_ids = range(c.ranks.get(n - 1, 0))
    else:
        col_ids = [j for j, w in enumerate(c.weights[n]) if w == weight]
        row_ids = [i for i, w in enumerate(c.weights.get(n - 1, [])) if w == weight]
    if not col_ids or not row_ids:
        return 0
    index = {i: k for k, i in enumerate(row_ids)}
    M = [[0] * len(row_ids) for _ in col_ids]  # transposed: rank is the same
    for r, j in enumerate(col_ids):
        for i, x in cols[j].items():
            if isinstance(x, Poly):
                if not x.is_const():
                    raise ComplexError("evaluate the complex at a point before computing ranks")
                x = x.const_value()
            if x:
                M[r][index[i]] = x
    M = [row for row in M if any(row)]
    return rank(M) if M else 0


def homology_ranks(c: GradedComplex) -> HomologyTable:
    """dim ker d_n - dim im d_{n+1} in every degree, by exact elimination."""
    dims: dict = {}
    by_weight: dict = {}
    if c.weights:
        for n in c.degrees:
            ws = sorted(set(c.weights.get(n, [])))
            per = {}
            for w in ws:
                size = sum(1 for x in c.weights[n] if x == w)
                per[w] = size - _block_rank(c, n, w) - _block_rank(c, n + 1, w)
            by_weight[n] = per
            dims[n] = sum(per.values())
    else:
        for n in c.degrees:
            dims[n] = c.ranks[n] - _block_rank(c, n) - _block_rank(c, n + 1)
    for n, v in dims.items():
        if v < 0:
            raise ComplexError(f"negative homology in degree {n}")
    euler = sum((-1) ** (n % 2) * v for n, v in dims.items())
    expected = sum((-1) ** (n % 2) * r for n, r in c.ranks.items())
    if euler != expected:
        raise ComplexError("Euler characteristic mismatch")
    return HomologyTable(dims, by_weight, euler)
