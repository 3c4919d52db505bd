"""Exact linear algebra over Q.

Vectors are sparse dicts ``{column: Fraction}``. Two rank routes are kept:
fraction-free Bareiss elimination on dense integer matrices, and an
incremental sparse echelon basis used for spans, kernels and membership.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence


def _integer_row(row: Sequence) -> list:
    den = math.lcm(*(Fraction(x).denominator for x in row)) if row else 1
    return [int(Fraction(x) * den) for x in row]


def rank_bareiss(matrix: Sequence[Sequence]) -> int:
    """Rank by fraction-free Gaussian elimination (Bareiss)."""
    rows = [_integer_row(r) for r in matrix]
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    prev = 1
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for i in range(rank + 1, len(rows)):
            r = rows[i]
            a = r[col]
            # exact division is guaranteed by Sylvester's identity
            rows[i] = [(p[col] * r[j] - a * p[j]) // prev for j in range(ncols)]
        prev = p[col]
        rank += 1
        if rank == len(rows):
            break
    return rank


def dense(vectors: Iterable[dict], columns: Sequence) -> list:
    index = {c: i for i, c in enumerate(columns)}
    out = []
    for v in vectors:
        row = [0] * len(columns)
        for c, x in v.items():
            row[index[c]] = x
        out.append(row)
    return out


class Echelon:
    """Incrementally built row-echelon basis of a subspace.

    Rows are stored with pivot coefficient 1, keyed by pivot column (the
    smallest column in the row, under the natural ordering of the keys).
    """

    __slots__ = ("rows",)

    def __init__(self, vectors: Iterable[dict] = ()):
        self.rows: dict = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, v: dict) -> bool:
        """Insert v; return True if it enlarged the span."""
        r = self._lead_reduce(v)
        if not r:
            return False
        p = min(r)
        a = r[p]
        self.rows[p] = {c: x / a for c, x in r.items()}
        return True

    def _lead_reduce(self, v: dict) -> dict:
        v = {c: Fraction(x) for c, x in v.items() if x}
        rows = self.rows
        while v:
            p = min(v)
            row = rows.get(p)
            if row is None:
                return v
            a = v[p]
            for c, x in row.items():
                y = v.get(c, 0) - a * x
                if y:
                    v[c] = y
                else:
                    v.pop(c, None)
        return v

    def contains(self, v: dict) -> bool:
        return not self._lead_reduce(v)


def sparse_rank(vectors: Iterable[dict]) -> int:
    return Echelon(vectors).rank


def kernel(images: Sequence[dict]) -> list:
    """Basis of ``{x : sum_j x_j * images[j] = 0}`` as sparse dicts over j."""
    rows: dict = {}  # pivot -> (vector, combination)
    basis = []
    for j, img in enumerate(images):
        v = {c: Fraction(x) for c, x in img.items() if x}
        comb = {j: Fraction(1)}
        while v:
            p = min(v)
            entry = rows.get(p)
            if entry is None:
                break
            row, rcomb = entry
            a = v[p]
            for c, x in row.items():
                y = v.get(c, 0) - a * x
                if y:
                    v[c] = y
                else:
                    v.pop(c, None)
            for c, x in rcomb.items():
                y = comb.get(c, 0) - a * x
                if y:
                    comb[c] = y
                else:
                    comb.pop(c, None)
        if v:
            p = min(v)
            a = v[p]
            rows[p] = ({c: x / a for c, x in v.items()}, {c: x / a for c, x in comb.items()})
        else:
            basis.append(comb)
    return basis


def apply(images: Sequence[dict], x: dict) -> dict:
    """Evaluate ``sum_j x_j * images[j]``."""
    out: dict = {}
    for j, a in x.items():
        for c, y in images[j].items():
            s = out.get(c, 0) + a * y
            if s:
                out[c] = s
            else:
                out.pop(c, None)
    return out


def solve_affine(rows: Sequence[Sequence], rhs: Sequence, n: int,
                 free_value: Fraction = Fraction(0)) -> Optional[list]:
    """Solve ``rows @ x = rhs`` exactly; free variables take ``free_value``.

    Returns None when the system is inconsistent.
    """
    m = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        a = m[r][col]
        m[r] = [x / a for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                b = m[i][col]
                m[i] = [x - b * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    for i in range(r, len(m)):
        if m[i][n]:
            return None
    x = [Fraction(free_value)] * n
    for i, col in enumerate(pivots):
        x[col] = m[i][n] - sum((m[i][j] * x[j] for j in range(n) if j not in pivots), Fraction(0))
    return x
