"""Spectra, Tjurina subspectra and their extremal invariants.

For a quasi-homogeneous f with weights w, the spectral numbers are the values
``sum((k_i + 1) * w_i)`` over a monomial basis ``x^k`` of the Milnor algebra.
A semi-quasi-homogeneous f (weight-1 part f0 with isolated singularity plus
terms of weight > 1) has the spectrum of f0.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from .ideal import hilbert_series, jacobian_ideal, standard_basis_local, tjurina_ideal
from .poly import (MonomialOrder, MPoly, WeightSystem, is_quasi_homogeneous,
                   parse_fraction, weighted_part)

INF = math.inf


class SpectrumError(ValueError):
    pass


class SpectrumPoly:
    """Finite multiset of rationals with positive multiplicities, kept sorted."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Optional[dict] = None):
        clean = {}
        for a, k in (entries or {}).items():
            if k < 0:
                raise ValueError("multiplicities must be non-negative")
            if k:
                clean[Fraction(a)] = int(k)
        self._entries = dict(sorted(clean.items()))

    @classmethod
    def from_values(cls, values: Iterable) -> SpectrumPoly:
        return cls(Counter(Fraction(v) for v in values))

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    def items(self):
        return self._entries.items()

    def values(self) -> list:
        """Expanded, weakly increasing list of spectral numbers."""
        return [a for a, k in self._entries.items() for _ in range(k)]

    def __iter__(self):
        return iter(self.values())

    def __len__(self) -> int:
        return sum(self._entries.values())

    total = property(__len__)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def multiplicity(self, a) -> int:
        return self._entries.get(Fraction(a), 0)

    def min(self) -> Fraction:
        if not self._entries:
            raise SpectrumError("empty spectrum")
        return next(iter(self._entries))

    def max(self) -> Fraction:
        if not self._entries:
            raise SpectrumError("empty spectrum")
        return next(reversed(self._entries))

    def integral(self) -> list:
        return [a for a in self._entries if a.denominator == 1]

    def shifted(self, by) -> SpectrumPoly:
        """Shifted view, e.g. ``by=-1`` for the (-1, n-1) normalization."""
        return SpectrumPoly({a + Fraction(by): k for a, k in self._entries.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, SpectrumPoly) and self._entries == other._entries

    def __hash__(self) -> int:
        return hash(tuple(self._entries.items()))

    def __mul__(self, other: SpectrumPoly) -> SpectrumPoly:
        return thom_sebastiani(self, other)

    def is_submultiset_of(self, other: SpectrumPoly) -> bool:
        return all(other.multiplicity(a) >= k for a, k in self._entries.items())

    def serialize(self) -> str:
        return "".join(f"{_frac(a)},{k}\n" for a, k in self._entries.items())

    @classmethod
    def parse(cls, text: Union[str, Iterable[str]]) -> SpectrumPoly:
        lines = text.splitlines() if isinstance(text, str) else list(text)
        out: Counter = Counter()
        for line in lines:
            line = line.strip()
            if not line:
                continue
            a, _, k = line.partition(",")
            out[parse_fraction(a)] += int(k) if k else 1
        return cls(out)

    def __repr__(self) -> str:
        body = ", ".join(f"{_frac(a)}" + (f"^{k}" if k > 1 else "") for a, k in self._entries.items())
        return f"SpectrumPoly({{{body}}})"


def _frac(a: Fraction) -> str:
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


@dataclass(frozen=True)
class AlphaInvariants:
    alpha_tilde: Union[Fraction, float]
    alpha_min_int: Union[int, float]
    alpha_max_tj: Optional[Fraction]


# ---------------------------------------------------------------------------
# computing spectra


def normalized(w: WeightSystem) -> WeightSystem:
    if w.target_degree == 1:
        return w
    return WeightSystem(tuple(x / w.target_degree for x in w.weights))


def leading_part(f: MPoly, w: WeightSystem, semi_qh: bool = False) -> MPoly:
    """Weight-1 part f0 of f after validating the (semi-)quasi-homogeneous shape.

    Raises SpectrumError if f is not quasi-homogeneous for w (or, with
    ``semi_qh``, if some term has weight < 1, f0 is empty, or f0 does not have
    an isolated singularity).
    """
    w = normalized(w)
    if is_quasi_homogeneous(f, w):
        f0 = f
    elif not semi_qh:
        raise SpectrumError(f"{f} is not quasi-homogeneous for weights ({w}); pass semi_qh to use its leading part")
    else:
        if any(w.valuation(m) < 1 for m in f.terms):
            raise SpectrumError("semi-quasi-homogeneous f must have no terms of weight < 1")
        f0 = weighted_part(f, w, 1)
        if not f0:
            raise SpectrumError("f has no terms of weight 1")
    sb = standard_basis_local(jacobian_ideal(f0), MonomialOrder.local_order(w))
    if not sb.quotient_basis().finite:
        raise SpectrumError(f"leading part {f0} does not have an isolated singularity")
    return f0


def spectrum_qh(f: MPoly, w: WeightSystem, semi_qh: bool = False) -> SpectrumPoly:
    """Spectrum of a (semi-)quasi-homogeneous isolated singularity at 0."""
    w = normalized(w)
    f0 = leading_part(f, w, semi_qh)
    sb = standard_basis_local(jacobian_ideal(f0), MonomialOrder.local_order(w))
    return hilbert_series(sb.quotient_basis(), w, w.total)


def tjurina_subspectrum(f: MPoly, w: WeightSystem, semi_qh: bool = False) -> SpectrumPoly:
    """Weighted valuations (shifted by sum(w)) of a Tjurina algebra monomial basis.

    Exact for quasi-homogeneous f; for semi-quasi-homogeneous f this is the
    leading-weight model, see :func:`tjurina_is_model`.
    """
    w = normalized(w)
    leading_part(f, w, semi_qh)
    sb = standard_basis_local(tjurina_ideal(f), MonomialOrder.local_order(w))
    qb = sb.quotient_basis()
    if not qb.finite:
        raise SpectrumError("Tjurina algebra is infinite-dimensional")
    return hilbert_series(qb, w, w.total)


def tjurina_is_model(f: MPoly, w: WeightSystem) -> bool:
    return not is_quasi_homogeneous(f, normalized(w))


def alpha_invariants(sp: SpectrumPoly, sptj: Optional[SpectrumPoly] = None,
                     q_homology_manifold: bool = False) -> AlphaInvariants:
    if not sp:
        raise SpectrumError("empty spectrum")
    ints = sp.integral()
    if q_homology_manifold:
        if ints:
            raise SpectrumError("declared Q-homology manifold but the spectrum has integral members")
        min_int = INF
    else:
        min_int = int(min(ints)) if ints else INF
    max_tj = sptj.max() if sptj else None
    return AlphaInvariants(sp.min(), min_int, max_tj)


def thom_sebastiani(a: SpectrumPoly, b: SpectrumPoly) -> SpectrumPoly:
    """Spectrum of f(x) + g(y) from those of f and g: the multiset of pairwise sums."""
    out: Counter = Counter()
    for x, k in a.items():
        for y, l in b.items():
            out[x + y] += k * l
    return SpectrumPoly(out)


def symmetry_check(sp: SpectrumPoly, n: int) -> bool:
    """True iff the multiset is invariant under ``alpha -> n - alpha``."""
    return all(sp.multiplicity(n - a) == k for a, k in sp.items())


def semicontinuity_count(sp: SpectrumPoly, a) -> int:
    """Number of spectral numbers in ``(a, a + 1]``, with multiplicity."""
    a = Fraction(a)
    return sum(k for x, k in sp.items() if a < x <= a + 1)


# ---------------------------------------------------------------------------
# integral shifts between spectral numbers and Bernstein-Sato exponents


def integral_shift_matching(alpha: SpectrumPoly, beta: SpectrumPoly) -> Optional[list]:
    """Pair every alpha with a beta so that ``alpha - beta`` is a non-negative integer.

    Within one residue class mod 1 the admissible pairs are exactly
    ``alpha >= beta``, so sorted pairing finds a perfect matching iff one
    exists. Returns the list of pairs or None.
    """
    if len(alpha) != len(beta):
        return None
    classes: dict = {}
    for x in alpha.values():
        classes.setdefault(x - math.floor(x), ([], []))[0].append(x)
    for y in beta.values():
        classes.setdefault(y - math.floor(y), ([], []))[1].append(y)
    pairs = []
    for r in sorted(classes):
        xs, ys = classes[r]
        if len(xs) != len(ys):
            return None
        for x, y in zip(sorted(xs), sorted(ys)):
            if x < y:
                return None
            pairs.append((x, y))
    return pairs


@dataclass
class BetaReport:
    name: str
    matching_exists: bool
    matching_is_identity: bool
    alpha_min_int: Union[int, float]
    beta_min_int: Union[int, float]
    alpha_low: list = field(default_factory=list)
    beta_low: list = field(default_factory=list)
    low_cutoff: Optional[Fraction] = None


def _min_int(sp: SpectrumPoly):
    ints = sp.integral()
    return int(min(ints)) if ints else INF


def beta_fixture_check(name: str, corpus=None) -> BetaReport:
    """Check the integral-shift property on a bundled fixture carrying both multisets.

    For a Thom-Sebastiani fixture the alpha and beta multisets are the sumsets
    of its summands' multisets; the low part is reported below
    ``1 - min(alpha of the last summand)``.
    """
    from .fixtures import load_corpus

    corpus = corpus if corpus is not None else load_corpus()
    fx = corpus.get(name)
    alpha, beta = _alpha_beta(fx, corpus)
    pairs = integral_shift_matching(alpha, beta)
    cutoff = None
    alpha_low = beta_low = []
    if fx.ts_summands:
        first = corpus.get(fx.ts_summands[0])
        partner_alpha, _ = _alpha_beta(corpus.get(fx.ts_summands[-1]), corpus)
        cutoff = 1 - partner_alpha.min()
        a0, b0 = _alpha_beta(first, corpus)
        alpha_low = [a for a in a0.values() if a <= cutoff]
        beta_low = [b for b in b0.values() if b <= cutoff]
    return BetaReport(
        name=name,
        matching_exists=pairs is not None,
        matching_is_identity=pairs is not None and all(x == y for x, y in pairs),
        alpha_min_int=_min_int(alpha),
        beta_min_int=_min_int(beta),
        alpha_low=alpha_low,
        beta_low=beta_low,
        low_cutoff=cutoff,
    )


def _alpha_beta(fx, corpus):
    if fx.ts_summands:
        parts = [_alpha_beta(corpus.get(s), corpus) for s in fx.ts_summands]
        alpha, beta = parts[0]
        for a, b in parts[1:]:
            alpha = thom_sebastiani(alpha, a)
            beta = thom_sebastiani(beta, b)
        return alpha, beta
    if fx.expected.get("spectrum") is None or fx.expected.get("beta") is None:
        raise KeyError(f"fixture {fx.name!r} carries no alpha/beta multisets")
    return fx.expected["spectrum"], fx.expected["beta"]
