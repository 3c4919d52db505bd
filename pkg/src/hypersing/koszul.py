"""Koszul complex ``(Omega^*, df^)`` of differential forms and its graded cohomology.

A monomial p-form ``x^a dx_I`` is stored as the pair ``(a, I)`` with I a
sorted index tuple. ``dx_i`` carries weight ``w_i``, so the form has weighted
degree ``sum(a_j w_j) + sum(w_i for i in I)`` and, for quasi-homogeneous f,
both ``df^`` and multiplication by f are homogeneous of degree ``deg_w(f)``.
Internally degrees are scaled to integers by the common denominator of the
weights.

Quasi-homogeneous input is handled slice by slice and is exact. Any other f
goes through a filtered, degree-truncated complex whose output is flagged
``truncated``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .linalg import Echelon, kernel, sparse_rank
from .poly import MPoly, WeightSystem, find_weights, is_quasi_homogeneous, weighted_valuation


class KoszulError(ValueError):
    pass


class HypothesisError(KoszulError):
    """Raised when the strict bound ``alpha_tilde > p + 1`` does not hold."""


class UncomputedDegree(KeyError):
    pass


# ---------------------------------------------------------------------------
# graded dimension tables


@dataclass
class GradedDims:
    """Dimensions per weighted degree over a closed window ``[lo, hi]``.

    Degrees inside the window that are absent from ``entries`` have dimension
    0; asking for a degree outside the window raises UncomputedDegree.
    ``bases`` optionally maps a degree to ``(numerator, relations)`` spanning
    sets of forms, so that the piece is ``span(numerator) / span(relations)``.
    """

    entries: dict
    window: tuple
    truncated: bool = False
    bases: Optional[dict] = None
    weights: Optional[WeightSystem] = None

    def __post_init__(self):
        lo, hi = (Fraction(x) for x in self.window)
        if lo > hi:
            raise KoszulError(f"empty degree window [{lo}, {hi}]")
        self.window = (lo, hi)
        clean = {}
        for d, k in self.entries.items():
            if k < 0:
                raise ValueError("dimensions are non-negative")
            if k:
                clean[Fraction(d)] = int(k)
        self.entries = dict(sorted(clean.items()))

    def in_window(self, d) -> bool:
        return self.window[0] <= Fraction(d) <= self.window[1]

    def dim(self, d) -> int:
        d = Fraction(d)
        if not self.in_window(d):
            raise UncomputedDegree(f"degree {d} lies outside the computed window")
        return self.entries.get(d, 0)

    def total(self) -> int:
        return sum(self.entries.values())

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedDims):
            return NotImplemented
        return self.entries == other.entries and self.window == other.window

    def to_table(self) -> str:
        lo, hi = self.window
        head = f"# window {_q(lo)} .. {_q(hi)}" + (" (truncated)" if self.truncated else "") + "\n"
        return head + "".join(f"{_q(d)}\t{k}\n" for d, k in self.entries.items())

    def to_dict(self) -> dict:
        return {
            "window": [_q(self.window[0]), _q(self.window[1])],
            "truncated": self.truncated,
            "dims": {_q(d): k for d, k in self.entries.items()},
            "total": self.total(),
        }


def _q(a: Fraction) -> str:
    a = Fraction(a)
    return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


@dataclass
class KoszulSlice:
    """``df^`` restricted to p-forms of one weighted degree."""

    p: int
    degree: Fraction
    domain: list
    codomain: list
    matrix: list = field(repr=False)  # rows indexed by codomain, columns by domain


# ---------------------------------------------------------------------------
# monomial forms


class _Forms:
    """Monomial forms on n variables with integer weights W."""

    def __init__(self, W: Sequence[int]):
        self.W = tuple(W)
        self.n = len(W)
        self._monos = lru_cache(maxsize=None)(self._monos_uncached)
        self._basis: dict = {}

    def _monos_uncached(self, i: int, t: int) -> tuple:
        if i == self.n:
            return ((),) if t == 0 else ()
        out = []
        for k in range(t // self.W[i] + 1):
            for rest in self._monos(i + 1, t - k * self.W[i]):
                out.append((k,) + rest)
        return tuple(out)

    def monomials(self, t: int) -> tuple:
        return self._monos(0, t) if t >= 0 else ()

    def basis(self, p: int, t: int) -> list:
        key = (p, t)
        if key not in self._basis:
            out = []
            if 0 <= p <= self.n:
                for I in itertools.combinations(range(self.n), p):
                    for a in self.monomials(t - sum(self.W[i] for i in I)):
                        out.append((a, I))
            out.sort()
            self._basis[key] = out
        return self._basis[key]

    def degree(self, form) -> int:
        a, I = form
        return sum(k * w for k, w in zip(a, self.W)) + sum(self.W[i] for i in I)

    def monomial_degrees(self, hi: int) -> list:
        """Sorted integer degrees <= hi realized by some monomial."""
        seen = {0}
        for w in self.W:
            for t in range(w, hi + 1):
                if t - w in seen:
                    seen.add(t)
        return sorted(seen)

    def form_degrees(self, p: int, lo: int, hi: int) -> list:
        mons = self.monomial_degrees(hi)
        out = set()
        for I in itertools.combinations(range(self.n), p):
            s = sum(self.W[i] for i in I)
            out.update(m + s for m in mons if lo <= m + s <= hi)
        return sorted(out)


def _add_into(out: dict, key, c) -> None:
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def _wedge_df(form, dfs, cap: Optional[int] = None, forms: Optional[_Forms] = None) -> dict:
    a, I = form
    out: dict = {}
    for i, terms in enumerate(dfs):
        if i in I:
            continue
        sign = -1 if sum(1 for j in I if j < i) % 2 else 1
        J = tuple(sorted(I + (i,)))
        for m, c in terms:
            b = tuple(x + y for x, y in zip(a, m))
            key = (b, J)
            if cap is not None and forms.degree(key) > cap:
                continue
            _add_into(out, key, sign * c)
    return out


def _times_f(form, fterms, cap: Optional[int] = None, forms: Optional[_Forms] = None) -> dict:
    a, I = form
    out: dict = {}
    for m, c in fterms:
        key = (tuple(x + y for x, y in zip(a, m)), I)
        if cap is not None and forms.degree(key) > cap:
            continue
        _add_into(out, key, c)
    return out


def _apply_map(vec: dict, single) -> dict:
    out: dict = {}
    for form, c in vec.items():
        for k, v in single(form).items():
            _add_into(out, k, c * v)
    return out


# ---------------------------------------------------------------------------
# the graded (quasi-homogeneous) complex


def _resolve_weights(f: MPoly, w: Optional[WeightSystem]) -> WeightSystem:
    if w is None:
        w = find_weights(f)
        if w is None:
            raise KoszulError(f"{f} is not quasi-homogeneous for any positive weights; pass weights")
    if w.nvars != f.ring.nvars:
        raise KoszulError("weight vector length does not match the number of variables")
    return w


class GradedKoszul:
    """Exact per-degree linear algebra for quasi-homogeneous f."""

    def __init__(self, f: MPoly, w: WeightSystem):
        if not is_quasi_homogeneous(f, w):
            raise KoszulError(f"{f} is not quasi-homogeneous of degree {w.target_degree} for weights ({w})")
        self.f = f
        self.w = w
        self.s = w.scale()
        self.D = int(w.target_degree * self.s)
        self.forms = _Forms(w.int_weights())
        self.n = f.ring.nvars
        self.dfs = [sorted(f.diff(i).terms.items()) for i in range(self.n)]
        self.fterms = sorted(f.terms.items())
        self._rank: dict = {}
        self._kernel: dict = {}

    # scaled integer degree <-> weighted degree
    def frac(self, t: int) -> Fraction:
        return Fraction(t, self.s)

    def scaled_window(self, window) -> tuple:
        lo, hi = (Fraction(x) for x in window)
        if lo > hi:
            raise KoszulError(f"empty degree window [{lo}, {hi}]")
        return math.ceil(lo * self.s), math.floor(hi * self.s)

    def d_images(self, p: int, t: int) -> list:
        return [_wedge_df(b, self.dfs) for b in self.forms.basis(p, t)]

    def f_images(self, p: int, t: int) -> list:
        return [_times_f(b, self.fterms) for b in self.forms.basis(p, t)]

    def slice(self, p: int, t: int) -> KoszulSlice:
        dom = self.forms.basis(p, t)
        cod = self.forms.basis(p + 1, t + self.D)
        index = {c: i for i, c in enumerate(cod)}
        mat = [[Fraction(0)] * len(dom) for _ in cod]
        for j, img in enumerate(self.d_images(p, t)):
            for c, x in img.items():
                mat[index[c]][j] = Fraction(x)
        return KoszulSlice(p, self.frac(t), dom, cod, mat)

    def rank(self, p: int, t: int) -> int:
        key = (p, t)
        if key not in self._rank:
            if p < 0 or p > self.n or t < 0:
                self._rank[key] = 0
            else:
                self._rank[key] = sparse_rank(self.d_images(p, t))
        return self._rank[key]

    def cycles(self, p: int, t: int) -> list:
        """Basis of ``ker(df^)`` in p-forms of scaled degree t."""
        key = (p, t)
        if key not in self._kernel:
            basis = self.forms.basis(p, t)
            combos = kernel(self.d_images(p, t)) if basis else []
            self._kernel[key] = [{basis[j]: c for j, c in comb.items()} for comb in combos]
        return self._kernel[key]

    def boundaries(self, p: int, t: int) -> list:
        return [v for v in self.d_images(p - 1, t - self.D) if v] if p >= 1 else []

    def h_dim(self, p: int, t: int) -> int:
        return len(self.forms.basis(p, t)) - self.rank(p, t) - self.rank(p - 1, t - self.D)

    def times_f(self, vec: dict) -> dict:
        return _apply_map(vec, lambda form: _times_f(form, self.fterms))


def default_window(f: MPoly, w: WeightSystem) -> tuple:
    """``[0, max(n*d - sum(w), sum(w))]`` with d the target degree.

    For an isolated quasi-homogeneous singularity this covers every degree
    where the top cohomology lives.
    """
    n = f.ring.nvars
    top = n * w.target_degree - w.total
    return Fraction(0), max(top, w.total)


def koszul_cohomology(f: MPoly, w: Optional[WeightSystem], p: int, window=None,
                      keep_bases: bool = False) -> GradedDims:
    """Per-degree dimension of ``H^p(Omega^*, df^)``.

    Exact for quasi-homogeneous f. Otherwise the result comes from the
    truncated filtered complex and is flagged ``truncated``.
    """
    if w is None:
        w = find_weights(f)
    if w is None or not is_quasi_homogeneous(f, w):
        return _filtered_cohomology(f, w, p, window)
    kc = GradedKoszul(f, w)
    window = window if window is not None else default_window(f, w)
    lo, hi = kc.scaled_window(window)
    entries = {kc.frac(t): kc.h_dim(p, t) for t in kc.forms.form_degrees(p, lo, hi)}
    out = GradedDims(entries, window, weights=w)
    if keep_bases:
        out.bases = {}
        for t in range(max(lo - kc.D, 0), hi + kc.D + 1):
            out.bases[kc.frac(t)] = (kc.cycles(p, t), kc.boundaries(p, t))
    return out


def cycle_module(f: MPoly, w: WeightSystem, p: int, window=None) -> GradedDims:
    """``K^p = ker(df^)`` on p-forms, with stored bases and no relations."""
    kc = GradedKoszul(f, w)
    window = window if window is not None else default_window(f, w)
    lo, hi = kc.scaled_window(window)
    entries = {}
    bases = {}
    for t in range(max(lo - kc.D, 0), hi + kc.D + 1):
        cyc = kc.cycles(p, t)
        bases[kc.frac(t)] = (cyc, [])
        if lo <= t <= hi:
            entries[kc.frac(t)] = len(cyc)
    return GradedDims(entries, window, bases=bases, weights=w)


# ---------------------------------------------------------------------------
# multiplication by f on a graded subquotient


def f_kernel_cokernel(f: MPoly, module: GradedDims, w: Optional[WeightSystem] = None) -> tuple:
    """``(M/fM, ker(f: M -> M))`` per degree for a graded subquotient M.

    ``module.bases[d] = (numerator, relations)`` must be present for every
    degree d of the window and for ``d -/+ deg_w(f)`` wherever those are
    non-negative.
    """
    if module.bases is None:
        raise KoszulError("module carries no stored bases")
    w = w or module.weights
    if w is None:
        raise KoszulError("weights are needed to know the degree of f")
    shift = weighted_valuation(f, w)
    if not is_quasi_homogeneous(f, w):
        raise KoszulError("multiplication by f is graded only for quasi-homogeneous f")
    fterms = sorted(f.terms.items())
    mul = lambda v: _apply_map(v, lambda form: _times_f(form, fterms))  # noqa: E731

    def piece(d):
        if d < 0:
            return [], []
        return module.bases.get(d)

    coker, ker = {}, {}
    degrees = sorted(d for d in module.bases if module.in_window(d))
    for d in degrees:
        num, rel = module.bases[d]
        below = piece(d - shift)
        above = piece(d + shift)
        if below is None or above is None:
            raise KoszulError(f"missing bases next to degree {d}")
        rel_rank = sparse_rank(rel)
        # M_d / f M_{d-s}
        coker[d] = len(num) - sparse_rank(list(rel) + [mul(v) for v in below[0]])
        # {x in num : f x in rel_{d+s}} / rel_d
        rel_above = sparse_rank(above[1])
        mixed = sparse_rank([mul(v) for v in num] + list(above[1]))
        ker[d] = len(num) - (mixed - rel_above) - rel_rank
    return (GradedDims(coker, module.window, weights=w),
            GradedDims(ker, module.window, weights=w))


# ---------------------------------------------------------------------------
# Du Bois cohomology dimensions


def _check_dubois_hypothesis(f: MPoly, w: WeightSystem, p: int) -> Fraction:
    from .spectrum import SpectrumError, spectrum_qh

    if p < 0:
        raise KoszulError("p must be non-negative")
    try:
        alpha = spectrum_qh(f, w).min()
    except SpectrumError as exc:
        raise KoszulError(f"needs an isolated quasi-homogeneous singularity: {exc}") from exc
    if not alpha > p + 1:
        raise HypothesisError(
            f"alpha_tilde = {alpha} is not > p + 1 = {p + 1}; the description of the Du Bois "
            "complex by the truncated Koszul complex needs the strict bound alpha_tilde > p + 1, "
            "and that bound cannot be relaxed")
    return alpha


def dubois_dims(f: MPoly, w: Optional[WeightSystem], p: int, window=None) -> dict:
    """Dims of ``H^j`` of the ``(d_X - p)``-th graded Du Bois piece, for j in [0, p].

    Assembled from short exact sequences in the Koszul cohomology:
    ``j = 0``: ``K^{n-p}/f + ker(f | H^{n-p+1})``;
    ``0 < j < p``: ``H^{n-p+j}/f + ker(f | H^{n-p+j+1})``;
    ``j = p >= 1``: ``H^n / f``.
    """
    w = _resolve_weights(f, w)
    _check_dubois_hypothesis(f, w, p)
    window = window if window is not None else default_window(f, w)
    n = f.ring.nvars
    out = {}
    for j in range(p + 1):
        q = n - p + j
        if j == p and p >= 1:
            coker, _ = f_kernel_cokernel(f, koszul_cohomology(f, w, n, window, keep_bases=True))
            out[j] = coker
            continue
        if j == 0:
            left, _ = f_kernel_cokernel(f, cycle_module(f, w, q, window))
        else:
            left, _ = f_kernel_cokernel(f, koszul_cohomology(f, w, q, window, keep_bases=True))
        if q + 1 <= n:
            _, right = f_kernel_cokernel(f, koszul_cohomology(f, w, q + 1, window, keep_bases=True))
        else:
            right = GradedDims({}, window)
        out[j] = _sum_dims(left, right)
    return out


def _sum_dims(a: GradedDims, b: GradedDims) -> GradedDims:
    keys = set(a.entries) | set(b.entries)
    return GradedDims({d: a.entries.get(d, 0) + b.entries.get(d, 0) for d in keys}, a.window,
                      weights=a.weights)


def truncated_cone_dims(f: MPoly, w: Optional[WeightSystem], p: int, window=None,
                        check_hypothesis: bool = True) -> dict:
    """Cohomology of the stupid truncation ``sigma_{>=n-p}`` of ``(Omega^*/f, df^)``.

    Computed directly as the mapping cone of f on the truncated Koszul
    complex: ``C^k = sigma^{k+1} + sigma^k`` with ``d(a, b) = (-da, f a + db)``.
    Indexed by ``j = k - (n - p)`` to line up with :func:`dubois_dims`.
    """
    w = _resolve_weights(f, w)
    if check_hypothesis:
        _check_dubois_hypothesis(f, w, p)
    kc = GradedKoszul(f, w)
    window = window if window is not None else default_window(f, w)
    lo, hi = kc.scaled_window(window)
    n = kc.n
    bottom = n - p

    def sigma(q: int, t: int) -> list:
        return kc.forms.basis(q, t) if bottom <= q <= n else []

    def cone_basis(k: int, t: int) -> list:
        return [("a", x) for x in sigma(k + 1, t)] + [("b", x) for x in sigma(k, t)]

    def cone_rank(k: int, t: int) -> int:
        if t < 0:
            return 0
        images = []
        for tag, form in cone_basis(k, t):
            if tag == "a":
                img = {("a", key): -c for key, c in _wedge_df(form, kc.dfs).items() if k + 2 <= n}
                if k + 1 >= bottom:
                    for key, c in _times_f(form, kc.fterms).items():
                        _add_into(img, ("b", key), c)
            else:
                img = {("b", key): c for key, c in _wedge_df(form, kc.dfs).items() if k + 1 <= n}
            images.append(img)
        return sparse_rank(images)

    out = {}
    for j in range(-1, p + 2):
        k = bottom + j
        degrees = set(kc.forms.form_degrees(k, lo, hi)) | set(kc.forms.form_degrees(k + 1, lo, hi))
        entries = {}
        for t in sorted(degrees):
            entries[kc.frac(t)] = len(cone_basis(k, t)) - cone_rank(k, t) - cone_rank(k - 1, t - kc.D)
        out[j] = GradedDims(entries, window, weights=w)
    return out


# ---------------------------------------------------------------------------
# Kähler differentials of the hypersurface


def kaehler_graded_dims(f: MPoly, w: Optional[WeightSystem], p: int, window=None) -> GradedDims:
    """Per-degree dimension of ``Omega^p / (df ^ Omega^{p-1} + f Omega^p)``."""
    w = _resolve_weights(f, w)
    kc = GradedKoszul(f, w)
    window = window if window is not None else default_window(f, w)
    lo, hi = kc.scaled_window(window)
    entries = {}
    for t in kc.forms.form_degrees(p, lo, hi):
        rel = kc.boundaries(p, t) + [v for v in kc.f_images(p, t - kc.D) if v] if t >= kc.D else []
        entries[kc.frac(t)] = len(kc.forms.basis(p, t)) - sparse_rank(rel)
    return GradedDims(entries, window, weights=w)


# ---------------------------------------------------------------------------
# the filtered, truncated complex for non-quasi-homogeneous f


def _filtered_cohomology(f: MPoly, w: Optional[WeightSystem], p: int, window=None) -> GradedDims:
    """Graded pieces ``Gr^e H^p`` of the weighted-order filtration.

    Forms of weighted degree above ``N = hi + ord_w(f)`` are discarded; the
    reported window is ``[lo, hi]`` and the result is flagged ``truncated``.
    """
    n = f.ring.nvars
    w = w or WeightSystem.standard(n)
    if not f:
        raise KoszulError("f must be non-zero")
    s = w.scale()
    forms = _Forms(w.int_weights())
    order = weighted_valuation(f, w)
    if window is None:
        window = (Fraction(0), n * order - w.total if n * order > 2 * w.total else w.total)
    lo, hi = (Fraction(x) for x in window)
    if lo > hi:
        raise KoszulError(f"empty degree window [{lo}, {hi}]")
    cap = math.floor((hi + order) * s)
    dfs = [sorted(f.diff(i).terms.items()) for i in range(n)]

    def space(q: int) -> list:
        out = []
        for t in range(cap + 1):
            out.extend(forms.basis(q, t))
        # descending degree so that kernel vectors found early lie deep in the filtration
        out.sort(key=lambda x: (-forms.degree(x), x))
        return out

    dom = space(p)
    images = [_wedge_df(b, dfs, cap, forms) for b in dom]
    combos = kernel(images)
    cycles = []
    for comb in combos:
        vec = {dom[j]: c for j, c in comb.items()}
        cycles.append((min(forms.degree(x) for x in vec), vec))
    bnd = Echelon(_wedge_df(b, dfs, cap, forms) for b in space(p - 1)) if p >= 1 else Echelon()
    base = bnd.rank
    entries = {}
    lo_s, hi_s = math.ceil(lo * s), math.floor(hi * s)
    cycles.sort(key=lambda cv: -cv[0])
    i = 0
    prev = base
    for e in range(cap, lo_s - 1, -1):
        while i < len(cycles) and cycles[i][0] >= e:
            bnd.add(cycles[i][1])
            i += 1
        if e <= hi_s and bnd.rank > prev:
            entries[Fraction(e, s)] = bnd.rank - prev
        prev = bnd.rank
    return GradedDims(entries, (lo, hi), truncated=True, weights=w)


# ---------------------------------------------------------------------------
# vanishing below the codimension of the singular locus


@dataclass
class VanishingCertificate:
    codim: int
    window: tuple
    checked: list
    violation: Optional[tuple] = None
    truncated: bool = False

    @property
    def ok(self) -> bool:
        return self.violation is None


def koszul_vanishing_certificate(f: MPoly, w: Optional[WeightSystem] = None, window=None) -> VanishingCertificate:
    """Verify ``H^p(Omega^*, df^) = 0`` for every ``p < codim V((df), f)`` on the window.

    A violation would point at an implementation bug; the first nonzero
    ``(p, degree)`` is reported.
    """
    from .ideal import codimension, tjurina_ideal

    c = codimension(tjurina_ideal(f))
    n = f.ring.nvars
    if w is None:
        w = find_weights(f)
    checked = []
    truncated = False
    used_window = None
    for p in range(min(c, n + 1)):
        dims = koszul_cohomology(f, w, p, window)
        used_window = dims.window
        truncated = truncated or dims.truncated
        checked.append(p)
        if not dims.is_zero():
            d = next(iter(dims.entries))
            return VanishingCertificate(c, used_window, checked, (p, d), truncated)
    return VanishingCertificate(c, used_window, checked, None, truncated)
