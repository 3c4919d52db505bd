"""Gröbner bases, Mora standard bases and quotient-ring invariants.

Global orders use Buchberger's algorithm with the normal selection strategy
and both Buchberger criteria. Local orders use Mora's tangent cone algorithm
(the ecart-driven weak normal form), which decides membership in the
localization of the polynomial ring at the origin.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import logging
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, Union

from .poly import MonomialOrder, MPoly, Ring, WeightSystem, partials

log = logging.getLogger(__name__)

CACHE_ENV = "HYPERSING_CACHE_DIR"
CACHE_VERSION = 1


# ---------------------------------------------------------------------------
# dict-level helpers


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_exp(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def _axpy(p: dict, c: Fraction, shift: tuple, g: dict) -> None:
    """In place: p -= c * x^shift * g."""
    for m, a in g.items():
        mm = tuple(x + y for x, y in zip(m, shift))
        v = p.get(mm, 0) - c * a
        if v:
            p[mm] = v
        else:
            p.pop(mm, None)


class _Elem:
    __slots__ = ("poly", "lm", "lc", "ecart")

    def __init__(self, poly: dict, order: MonomialOrder):
        self.poly = poly
        self.lm = order.leading(poly)
        self.lc = poly[self.lm]
        lo = order.deg(self.lm)
        self.ecart = max(order.deg(m) for m in poly) - lo if order.is_local else 0


def _spoly(f: _Elem, g: _Elem) -> dict:
    l = _lcm(f.lm, g.lm)
    p: dict = {}
    _axpy(p, -1 / f.lc, _sub_exp(l, f.lm), f.poly)
    _axpy(p, 1 / g.lc, _sub_exp(l, g.lm), g.poly)
    return p


def _monic(p: dict, order: MonomialOrder) -> dict:
    c = p[order.leading(p)]
    return {m: a / c for m, a in p.items()}


def _reduce_full(f: dict, basis: Sequence[_Elem], order: MonomialOrder) -> dict:
    """Complete reduction for a global order: no term of the result is divisible by a leading monomial."""
    p = dict(f)
    r: dict = {}
    key = order.key
    while p:
        m = max(p, key=key)
        c = p[m]
        for g in basis:
            if _divides(g.lm, m):
                _axpy(p, c / g.lc, _sub_exp(m, g.lm), g.poly)
                break
        else:
            r[m] = c
            del p[m]
    return r


def _mora_nf(f: dict, basis: Sequence[_Elem], order: MonomialOrder) -> dict:
    """Mora's weak normal form; ``T`` grows with intermediate remainders."""
    h = dict(f)
    T = list(basis)
    while h:
        he = _Elem(h, order)
        cands = [g for g in T if _divides(g.lm, he.lm)]
        if not cands:
            break
        g = min(cands, key=lambda e: e.ecart)
        if g.ecart > he.ecart:
            T.append(he)
            h = dict(h)
        shift = _sub_exp(he.lm, g.lm)
        _axpy(h, he.lc / g.lc, shift, g.poly)
    return h


# ---------------------------------------------------------------------------
# standard bases


@dataclass(frozen=True)
class QuotientBasis:
    """Standard monomials of a quotient ring and its dimension."""

    monomials: tuple
    dimension: Union[int, float]

    @property
    def finite(self) -> bool:
        return self.dimension != math.inf


@dataclass
class StandardBasis:
    """Gröbner basis (global order) or standard basis (local order)."""

    generators: list
    order: MonomialOrder
    source_ideal: tuple = field(default=())

    @property
    def ring(self) -> Ring:
        return self.generators[0].ring if self.generators else self.source_ideal[0].ring

    def leading_monomials(self) -> list:
        return [self.order.leading(g.terms) for g in self.generators]

    def _elems(self) -> list:
        return [_Elem(g.terms, self.order) for g in self.generators]

    def normal_form(self, f: MPoly) -> MPoly:
        if self.order.is_local:
            return mora_normal_form(f, self.generators, self.order)
        return MPoly._raw(f.ring, _reduce_full(f.terms, self._elems(), self.order))

    def contains(self, f: MPoly) -> bool:
        return self.normal_form(f).is_zero()

    def is_unit_ideal(self) -> bool:
        return any(not any(m) for m in self.leading_monomials())

    def is_zero_dimensional(self) -> bool:
        return self.quotient_basis().finite

    def quotient_basis(self) -> QuotientBasis:
        return standard_monomials(self.leading_monomials(), self.ring.nvars)


def standard_monomials(lms: Sequence[tuple], n: int) -> QuotientBasis:
    """Monomials outside the monomial ideal generated by ``lms``."""
    if any(not any(m) for m in lms):
        return QuotientBasis((), 0)
    bounds = []
    for i in range(n):
        pure = [m[i] for m in lms if m[i] > 0 and sum(m) == m[i]]
        if not pure:
            return QuotientBasis((), math.inf)
        bounds.append(min(pure))
    mons = tuple(m for m in itertools.product(*(range(b) for b in bounds))
                 if not any(_divides(l, m) for l in lms))
    return QuotientBasis(mons, len(mons))


def _pairs_update(pending: set, elems: list, new: int) -> None:
    for i in range(new):
        pending.add((i, new))


def _chain_skip(i: int, j: int, elems: list, pending: set, l: tuple) -> bool:
    for k, e in enumerate(elems):
        if k in (i, j):
            continue
        if _divides(e.lm, l):
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                return True
    return False


def _coprime(a: tuple, b: tuple) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _buchberger(gens: list, order: MonomialOrder, reducer) -> list:
    elems: list = []
    pending: set = set()
    for g in gens:
        if g:
            elems.append(_Elem(dict(g), order))
            _pairs_update(pending, elems, len(elems) - 1)
    while pending:
        i, j = min(pending, key=lambda ij: (order.deg(_lcm(elems[ij[0]].lm, elems[ij[1]].lm)), ij[1], ij[0]))
        pending.discard((i, j))
        fi, fj = elems[i], elems[j]
        if _coprime(fi.lm, fj.lm):
            continue
        l = _lcm(fi.lm, fj.lm)
        if _chain_skip(i, j, elems, pending, l):
            continue
        h = reducer(_spoly(fi, fj), elems, order)
        if h:
            elems.append(_Elem(h, order))
            _pairs_update(pending, elems, len(elems) - 1)
    return elems


def _minimize(elems: list, order: MonomialOrder) -> list:
    keep = []
    for i, e in enumerate(elems):
        dominated = False
        for j, o in enumerate(elems):
            if i == j or not _divides(o.lm, e.lm):
                continue
            # equal leading monomials: keep the earliest one
            if o.lm != e.lm or j < i:
                dominated = True
                break
        if not dominated:
            keep.append(e)
    return keep


def _canonical(polys: list, order: MonomialOrder) -> list:
    return sorted(polys, key=lambda p: order.key(order.leading(p)), reverse=True)


def groebner(gens: Sequence[MPoly], order: MonomialOrder) -> StandardBasis:
    """Reduced, monic Gröbner basis for a global order."""
    if order.is_local:
        raise ValueError("groebner() needs a global order; use standard_basis_local()")
    ring = _ring_of(gens)
    cached = _cache_load(gens, order)
    if cached is not None:
        return StandardBasis([MPoly._raw(ring, p) for p in cached], order, tuple(gens))
    elems = _minimize(_buchberger([g.terms for g in gens], order, _reduce_full), order)
    reduced = []
    for i, e in enumerate(elems):
        others = [o for k, o in enumerate(elems) if k != i]
        tail = {m: c for m, c in e.poly.items() if m != e.lm}
        r = _reduce_full(tail, others, order)
        r[e.lm] = e.lc
        reduced.append(_monic(r, order))
    reduced = _canonical(reduced, order)
    _cache_store(gens, order, reduced)
    return StandardBasis([MPoly._raw(ring, p) for p in reduced], order, tuple(gens))


def standard_basis_local(gens: Sequence[MPoly], order: MonomialOrder) -> StandardBasis:
    """Minimal monic standard basis for a local order (Mora's algorithm)."""
    if not order.is_local:
        raise ValueError("standard_basis_local() needs a local order")
    ring = _ring_of(gens)
    cached = _cache_load(gens, order)
    if cached is not None:
        return StandardBasis([MPoly._raw(ring, p) for p in cached], order, tuple(gens))
    elems = _minimize(_buchberger([g.terms for g in gens], order, _mora_nf), order)
    polys = _canonical([_monic(e.poly, order) for e in elems], order)
    _cache_store(gens, order, polys)
    return StandardBasis([MPoly._raw(ring, p) for p in polys], order, tuple(gens))


def standard_basis(gens: Sequence[MPoly], order: MonomialOrder) -> StandardBasis:
    if order.is_local:
        return standard_basis_local(gens, order)
    return groebner(gens, order)


def mora_normal_form(f: MPoly, basis: Sequence[MPoly], order: MonomialOrder) -> MPoly:
    """Weak normal form of f with respect to ``basis`` in the local ring at 0.

    Returns r with ``u*f = sum(q_i*b_i) + r`` for a unit u; when ``basis`` is a
    standard basis, r == 0 exactly when f lies in the local ideal.
    """
    if not order.is_local:
        raise ValueError("mora_normal_form() needs a local order")
    elems = [_Elem(b.terms, order) for b in basis if b]
    return MPoly._raw(f.ring, _mora_nf(f.terms, elems, order))


def _ring_of(gens: Sequence[MPoly]) -> Ring:
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
    return ring


# ---------------------------------------------------------------------------
# invariants


def _local_order(ring: Ring, weights: Optional[WeightSystem] = None) -> MonomialOrder:
    return MonomialOrder.local_order(weights or WeightSystem.standard(ring.nvars))


def local_quotient(gens: Sequence[MPoly], weights: Optional[WeightSystem] = None) -> QuotientBasis:
    sb = standard_basis_local(gens, _local_order(_ring_of(gens), weights))
    return sb.quotient_basis()


def jacobian_ideal(f: MPoly) -> list:
    return [d for d in partials(f) if d] or [f.ring.zero()]


def tjurina_ideal(f: MPoly) -> list:
    return [d for d in partials(f) + [f] if d] or [f.ring.zero()]


def _dim(gens: list, weights) -> Union[int, float]:
    if all(g.is_zero() for g in gens):
        return math.inf
    return local_quotient([g for g in gens if g], weights).dimension


def milnor_number(f: MPoly, weights: Optional[WeightSystem] = None) -> Union[int, float]:
    """dim of the local Milnor algebra at the origin (``math.inf`` if not isolated)."""
    return _dim(jacobian_ideal(f), weights)


def tjurina_number(f: MPoly, weights: Optional[WeightSystem] = None) -> Union[int, float]:
    """dim of the local Tjurina algebra at the origin (``math.inf`` if not isolated)."""
    return _dim(tjurina_ideal(f), weights)


def krull_dimension(gens: Sequence[MPoly]) -> int:
    """Dimension of the affine zero set V(gens); -1 for the unit ideal."""
    ring = _ring_of(gens)
    n = ring.nvars
    nonzero = [g for g in gens if g]
    if not nonzero:
        return n
    gb = groebner(nonzero, MonomialOrder.global_order(WeightSystem.standard(n)))
    lms = gb.leading_monomials()
    if any(not any(m) for m in lms):
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            s = set(subset)
            if not any(sup <= s for sup in supports):
                return size
    return 0


def codimension(gens: Sequence[MPoly]) -> int:
    n = _ring_of(gens).nvars
    d = krull_dimension(gens)
    return n + 1 if d < 0 else n - d


def hilbert_series(qb: QuotientBasis, w: WeightSystem, shift: Fraction):
    """Multiset of ``valuation(m) + shift`` over the standard monomials."""
    from .spectrum import SpectrumPoly

    if not qb.finite:
        raise ValueError("quotient is infinite-dimensional")
    return SpectrumPoly.from_values(w.valuation(m) + Fraction(shift) for m in qb.monomials)


# ---------------------------------------------------------------------------
# on-disk memo of bases


def _cache_key(gens: Sequence[MPoly], order: MonomialOrder) -> str:
    from .poly import to_string

    payload = {
        "v": CACHE_VERSION,
        "ring": list(gens[0].ring.names),
        "kind": order.kind,
        "weights": [str(w) for w in order.weights.weights],
        "gens": sorted(to_string(g) for g in gens),
    }
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


def _cache_path(gens, order) -> Optional[Path]:
    root = os.environ.get(CACHE_ENV)
    if not root or not gens:
        return None
    return Path(root) / f"basis-v{CACHE_VERSION}-{_cache_key(gens, order)}.json"


def _cache_load(gens, order) -> Optional[list]:
    path = _cache_path(gens, order)
    if path is None or not path.exists():
        return None
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        if data.get("version") != CACHE_VERSION:
            return None
        return [{tuple(t[0]): Fraction(t[1]) for t in p} for p in data["basis"]]
    except (OSError, ValueError, KeyError):
        log.warning("ignoring unreadable cache file %s", path)
        return None


def _cache_store(gens, order, polys: list) -> None:
    path = _cache_path(gens, order)
    if path is None:
        return
    data = {"version": CACHE_VERSION,
            "basis": [[[list(m), str(c)] for m, c in sorted(p.items())] for p in polys]}
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(data), encoding="utf-8")
        tmp.replace(path)
    except OSError:
        log.warning("could not write cache file %s", path)
