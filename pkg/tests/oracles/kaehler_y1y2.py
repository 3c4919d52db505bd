"""Brute-force graded dimensions of the torsion example for f = y1*y2, p = 1.

Global 1-forms on the curve y1*y2 = 0 are the cokernel of multiplication by
y1*y2 on the maximal ideal (y1, y2) of Q[y1, y2]. The isomorphism sends a
1-form w to the coefficient g of df ^ w = g dy1 ^ dy2, which preserves the
grading with deg y_i = deg dy_i = 1. This script counts the degree-d piece
of that cokernel with plain rational elimination, independent of the
package, and writes the table to tests/data/kaehler_y1y2.json.

    python tests/oracles/kaehler_y1y2.py
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

MAX_DEGREE = 8


def monomials(d):
    return [(a, d - a) for a in range(d + 1)]


def max_ideal_piece(d):
    # every monomial of positive degree lies in (y1, y2)
    return monomials(d) if d >= 1 else []


def rank(rows):
    rows = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                k = rows[i][c] / rows[r][c]
                rows[i] = [x - k * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def cokernel_dim(d):
    target = max_ideal_piece(d)
    index = {m: i for i, m in enumerate(target)}
    images = []
    for a, b in max_ideal_piece(d - 2):
        row = [0] * len(target)
        row[index[(a + 1, b + 1)]] = 1
        images.append(row)
    return len(target) - (rank(images) if images else 0)


def main():
    dims = {str(d): cokernel_dim(d) for d in range(1, MAX_DEGREE + 1)}
    out = {"poly": "y1*y2", "vars": ["y1", "y2"], "weights": [1, 1], "target_degree": 2, "p": 1, "dims": dims}
    path = Path(__file__).resolve().parents[1] / "data" / "kaehler_y1y2.json"
    path.write_text(json.dumps(out, indent=2) + "\n")
    print(json.dumps(dims))


if __name__ == "__main__":
    main()
