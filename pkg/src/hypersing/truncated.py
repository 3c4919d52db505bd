"""Degree-truncated linear algebra: an independent check on the ideal engine.

Nothing here calls the Gröbner or Mora code. Local questions are answered in
``Q[x] / (I + F_{>N})``, where ``F_{>N}`` is spanned by monomials of weighted
degree above N. If the quotient dimensions at levels N and N + max(w) agree,
Nakayama's lemma gives ``F_{>N} ⊂ I`` in the local ring at the origin, so the
truncated answers are exact. That agreement is the stabilization certificate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .linalg import Echelon
from .poly import MPoly, WeightSystem


def monomials_up_to(w: WeightSystem, level: Fraction) -> list:
    """All exponent vectors of weighted degree <= level."""
    n = w.nvars
    bounds = [int(level / wi) for wi in w.weights]
    out = []

    def rec(i, prefix, used):
        if i == n:
            out.append(tuple(prefix))
            return
        for k in range(bounds[i] + 1):
            v = used + k * w.weights[i]
            if v > level:
                break
            prefix.append(k)
            rec(i + 1, prefix, v)
            prefix.pop()

    rec(0, [], Fraction(0))
    return out


@dataclass
class TruncatedIdeal:
    """Image of an ideal in ``Q[x]/F_{>level}`` with an echelon basis."""

    gens: tuple
    weights: WeightSystem
    level: Fraction
    monomials: list
    span: Echelon

    @classmethod
    def build(cls, gens: Sequence[MPoly], w: WeightSystem, level: Fraction) -> "TruncatedIdeal":
        level = Fraction(level)
        mons = monomials_up_to(w, level)
        val = w.valuation
        ech = Echelon()
        for g in gens:
            if not g:
                continue
            terms = [(m, c, val(m)) for m, c in g.terms.items()]
            lowest = min(t[2] for t in terms)
            for mult in mons:
                vm = val(mult)
                if vm + lowest > level:
                    continue
                vec = {}
                for m, c, v in terms:
                    if vm + v <= level:
                        vec[tuple(a + b for a, b in zip(m, mult))] = c
                if vec:
                    ech.add(vec)
        return cls(tuple(gens), w, level, mons, ech)

    @property
    def quotient_dim(self) -> int:
        return len(self.monomials) - self.span.rank

    def truncate(self, g: MPoly) -> dict:
        return {m: c for m, c in g.terms.items() if self.weights.valuation(m) <= self.level}

    def contains(self, g: MPoly) -> bool:
        return self.span.contains(self.truncate(g))


def certified_truncation(gens: Sequence[MPoly], w: Optional[WeightSystem] = None,
                         start: Fraction = Fraction(1), cap: Fraction = Fraction(40)) -> Optional[TruncatedIdeal]:
    """Smallest tested truncation carrying the stabilization certificate.

    Returns None when no certificate is found below ``cap`` (for instance when
    the ideal is not zero-dimensional at the origin).
    """
    n = gens[0].ring.nvars
    w = w or WeightSystem.standard(n)
    step = max(w.weights)
    level = Fraction(start)
    current = TruncatedIdeal.build(gens, w, level)
    while level <= cap:
        nxt = TruncatedIdeal.build(gens, w, level + step)
        if nxt.quotient_dim == current.quotient_dim:
            return current
        level += step
        current = nxt
    return None


def local_quotient_dim(gens: Sequence[MPoly], w: Optional[WeightSystem] = None, cap: Fraction = Fraction(40)):
    """dim of ``O_0 / I`` or ``math.inf`` if no certificate is reached by ``cap``."""
    t = certified_truncation(gens, w, cap=cap)
    return math.inf if t is None else t.quotient_dim


def local_member(g: MPoly, gens: Sequence[MPoly], w: Optional[WeightSystem] = None,
                 cap: Fraction = Fraction(40)) -> bool:
    t = certified_truncation(gens, w, cap=cap)
    if t is None:
        raise ValueError("ideal is not zero-dimensional at the origin within the cap")
    return t.contains(g)


def local_graded_dims(gens: Sequence[MPoly], w: WeightSystem, cap: Fraction = Fraction(40)) -> dict:
    """Dimensions of the graded pieces of ``O_0/I`` for the weighted order filtration.

    Returns ``{valuation: dim}``; the multiset of valuations of the standard
    monomials of a local weighted standard basis must match it.
    """
    t = certified_truncation(gens, w, cap=cap)
    if t is None:
        raise ValueError("ideal is not zero-dimensional at the origin within the cap")
    ech = Echelon()
    ech.rows = {p: dict(r) for p, r in t.span.rows.items()}
    base = ech.rank
    by_level: dict = {}
    for m in t.monomials:
        by_level.setdefault(w.valuation(m), []).append(m)
    dims = {}
    prev = base
    for v in sorted(by_level, reverse=True):
        for m in by_level[v]:
            ech.add({m: Fraction(1)})
        if ech.rank > prev:
            dims[v] = ech.rank - prev
        prev = ech.rank
    return dims


def global_member(g: MPoly, gens: Sequence[MPoly], max_degree: int) -> bool:
    """Is g a combination ``sum(q_i g_i)`` with every ``deg(q_i g_i) <= max_degree``?

    A True answer is a certificate of membership; False only rules out
    representations up to the given degree.
    """
    n = g.ring.nvars
    ech = Echelon()
    for gi in gens:
        d = gi.total_degree()
        if d < 0 or d > max_degree:
            continue
        for k in range(max_degree - d + 1):
            for mult in _exponents_of_degree(n, k):
                ech.add({tuple(a + b for a, b in zip(m, mult)): c for m, c in gi.terms.items()})
    if g.total_degree() > max_degree:
        return False
    return ech.contains(dict(g.terms))


def _exponents_of_degree(n: int, k: int):
    for c in itertools.combinations_with_replacement(range(n), k):
        e = [0] * n
        for i in c:
            e[i] += 1
        yield tuple(e)
