"""Sparse multivariate polynomials over Q, weight systems and monomial orders."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Monomial = tuple  # tuple of non-negative ints, one per ring variable
Scalar = Union[int, Fraction]


class RingMismatchError(ValueError):
    """Raised when polynomials from different rings are combined."""


@dataclass(frozen=True)
class Ring:
    """Ordered variable names; the variable count is fixed at creation."""

    names: tuple

    def __init__(self, names: Union[str, Iterable[str]]):
        if isinstance(names, str):
            names = [s.strip() for s in names.split(",") if s.strip()]
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        object.__setattr__(self, "names", names)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def gens(self) -> list[MPoly]:
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(MPoly(self, {tuple(e): Fraction(1)}))
        return out

    def zero(self) -> MPoly:
        return MPoly(self, {})

    def one(self) -> MPoly:
        return self.const(1)

    def const(self, c: Scalar) -> MPoly:
        c = Fraction(c)
        return MPoly(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exp: Sequence[int], coeff: Scalar = 1) -> MPoly:
        exp = tuple(exp)
        if len(exp) != self.nvars:
            raise ValueError(f"exponent {exp} has wrong length for {self}")
        c = Fraction(coeff)
        return MPoly(self, {exp: c} if c else {})

    def __str__(self) -> str:
        return ",".join(self.names)


def _clean(terms: Mapping) -> dict:
    return {m: Fraction(c) for m, c in terms.items() if c}


class MPoly:
    """Immutable sparse polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples to nonzero ``Fraction`` coefficients.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping = None):
        self.ring = ring
        self.terms = _clean(terms or {})
        n = ring.nvars
        for m in self.terms:
            if len(m) != n or any(e < 0 for e in m):
                raise ValueError(f"bad exponent {m} for ring {ring}")
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> MPoly:
        # trusted constructor: terms already clean
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    # -- basic protocol -------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator:
        return iter(self.terms.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def _coerce(self, other) -> MPoly:
        if isinstance(other, MPoly):
            if other.ring != self.ring:
                raise RingMismatchError(f"rings differ: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise TypeError(f"cannot combine MPoly with {type(other).__name__}")

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other) -> MPoly:
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return MPoly._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return MPoly._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> MPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> MPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> MPoly:
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            return MPoly._raw(self.ring, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return MPoly._raw(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> MPoly:
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure ------------------------------------------------------
    def coeff(self, exp: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def monomials(self) -> list:
        return list(self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def diff(self, i: int) -> MPoly:
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                e = list(m)
                e[i] -= 1
                out[tuple(e)] = c * m[i]
        return MPoly._raw(self.ring, out)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for x, e in zip(point, m):
                if e:
                    t *= Fraction(x) ** e
            total += t
        return total

    def substitute_linear(self, matrix: Sequence[Sequence[Scalar]]) -> MPoly:
        """Return f(A x), where row i of ``matrix`` gives the new x_i."""
        n = self.ring.nvars
        images = []
        for row in matrix:
            images.append(MPoly(self.ring, {
                tuple(1 if j == k else 0 for j in range(n)): Fraction(a)
                for k, a in enumerate(row) if a}))
        result = self.ring.zero()
        for m, c in self.terms.items():
            t = self.ring.const(c)
            for i, e in enumerate(m):
                if e:
                    t = t * images[i] ** e
            result = result + t
        return result

    def monic(self, order: MonomialOrder) -> MPoly:
        if not self.terms:
            return self
        lc = self.terms[order.leading(self.terms)]
        return self * (1 / lc)

    # -- printing -------------------------------------------------------
    def __str__(self) -> str:
        return to_string(self)

    def __repr__(self) -> str:
        return f"MPoly({to_string(self)!r}, ring={str(self.ring)!r})"


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def to_string(f: MPoly) -> str:
    """Canonical text form; terms in descending degrevlex order."""
    if not f.terms:
        return "0"
    order = MonomialOrder.global_order(WeightSystem.standard(f.ring.nvars))
    parts = []
    for m in sorted(f.terms, key=order.key, reverse=True):
        c = f.terms[m]
        factors = []
        for name, e in zip(f.ring.names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if factors:
            body = "*".join(factors) if a == 1 else _fmt_coeff(a) + "*" + "*".join(factors)
        else:
            body = _fmt_coeff(a)
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# weights and orders


@dataclass(frozen=True)
class WeightSystem:
    """Positive rational weights ``w_i`` with a target (weighted) degree.

    The valuation of ``x^k`` is ``sum(k_i * w_i)``.
    """

    weights: tuple
    target_degree: Fraction = Fraction(1)

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.weights)
        if any(w <= 0 for w in ws):
            raise ValueError(f"weights must be positive, got {ws}")
        object.__setattr__(self, "weights", ws)
        object.__setattr__(self, "target_degree", Fraction(self.target_degree))

    @classmethod
    def standard(cls, n: int) -> WeightSystem:
        return cls((Fraction(1),) * n, Fraction(1))

    @classmethod
    def parse(cls, text: str, target: Scalar = 1) -> WeightSystem:
        return cls(tuple(parse_fraction(s) for s in text.split(",")), Fraction(target))

    @property
    def nvars(self) -> int:
        return len(self.weights)

    def valuation(self, exp: Sequence[int]) -> Fraction:
        return sum((k * w for k, w in zip(exp, self.weights)), Fraction(0))

    @property
    def total(self) -> Fraction:
        """Sum of the weights, i.e. the valuation of 1 shifted by every dx_i."""
        return sum(self.weights, Fraction(0))

    def scale(self) -> int:
        """Common denominator turning weights and target into integers."""
        return math.lcm(*(w.denominator for w in self.weights), self.target_degree.denominator)

    def int_weights(self) -> tuple:
        s = self.scale()
        return tuple(int(w * s) for w in self.weights)

    def __str__(self) -> str:
        return ",".join(_fmt_coeff(w) for w in self.weights)


def parse_fraction(text: str) -> Fraction:
    """Exact fraction from ``"a"`` or ``"a/b"``; decimals are rejected."""
    text = text.strip()
    if not text or any(ch in text for ch in ".eE"):
        raise ValueError(f"not an exact fraction: {text!r}")
    return Fraction(text)


class MonomialOrder:
    """Weighted degree order with reverse-lexicographic tiebreak.

    ``kind="global"`` compares weighted degree first (a well-order);
    ``kind="local"`` reverses the degree comparison so that 1 is the largest
    monomial, as needed by Mora's tangent cone algorithm.
    """

    __slots__ = ("kind", "weights", "_iw", "_sign")

    def __init__(self, kind: str, weights: WeightSystem):
        if kind not in ("global", "local"):
            raise ValueError(f"unknown order kind {kind!r}")
        self.kind = kind
        self.weights = weights
        self._iw = weights.int_weights()
        self._sign = 1 if kind == "global" else -1

    @classmethod
    def global_order(cls, weights: WeightSystem) -> MonomialOrder:
        return cls("global", weights)

    @classmethod
    def local_order(cls, weights: WeightSystem) -> MonomialOrder:
        return cls("local", weights)

    @property
    def is_local(self) -> bool:
        return self.kind == "local"

    def deg(self, m: Monomial) -> int:
        """Integer-scaled weighted degree."""
        return sum(a * w for a, w in zip(m, self._iw))

    def key(self, m: Monomial) -> tuple:
        return (self._sign * self.deg(m),) + tuple(-a for a in reversed(m))

    def leading(self, terms: Iterable) -> Monomial:
        return max(terms, key=self.key)

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialOrder) and (self.kind, self.weights) == (other.kind, other.weights)

    def __hash__(self) -> int:
        return hash((self.kind, self.weights))

    def __repr__(self) -> str:
        return f"MonomialOrder({self.kind!r}, weights=({self.weights}))"


# ---------------------------------------------------------------------------
# operations on f


def parse_poly(text: str, ring: Union[Ring, str, Sequence[str]]) -> MPoly:
    from .parsing import parse

    if not isinstance(ring, Ring):
        ring = Ring(ring)
    return parse(text, ring)


def partials(f: MPoly) -> list:
    return [f.diff(i) for i in range(f.ring.nvars)]


def weighted_valuation(f: MPoly, w: WeightSystem) -> Union[Fraction, float]:
    """Minimum weighted degree over the terms of f; ``math.inf`` for f = 0."""
    if not f.terms:
        return math.inf
    return min(w.valuation(m) for m in f.terms)


def weighted_top_degree(f: MPoly, w: WeightSystem) -> Union[Fraction, float]:
    if not f.terms:
        return -math.inf
    return max(w.valuation(m) for m in f.terms)


def is_quasi_homogeneous(f: MPoly, w: WeightSystem) -> bool:
    if not f.terms:
        return False
    return all(w.valuation(m) == w.target_degree for m in f.terms)


def weighted_part(f: MPoly, w: WeightSystem, degree: Scalar) -> MPoly:
    degree = Fraction(degree)
    return MPoly._raw(f.ring, {m: c for m, c in f.terms.items() if w.valuation(m) == degree})


def euler_identity_check(f: MPoly, w: WeightSystem) -> bool:
    """Check ``f == sum(w_i * x_i * df/dx_i)`` for quasi-homogeneous f of degree 1."""
    if w.target_degree != 1 or not is_quasi_homogeneous(f, w):
        raise ValueError("Euler identity needs f quasi-homogeneous of weighted degree 1")
    xs = f.ring.gens()
    rhs = f.ring.zero()
    for wi, xi, df in zip(w.weights, xs, partials(f)):
        rhs = rhs + xi * df * wi
    return rhs == f


def find_weights(f: MPoly):
    """Weights making f quasi-homogeneous of degree 1, or None.

    Solves ``sum(k_i w_i) = 1`` over the exponents of f exactly. Free
    parameters (e.g. variables absent from f) are fixed to 1/2; the answer is
    rejected unless every weight is positive.
    """
    from .linalg import solve_affine

    n = f.ring.nvars
    if not f.terms or any(not any(m) for m in f.terms):
        return None
    rows = [[Fraction(k) for k in m] for m in sorted(f.terms)]
    sol = solve_affine(rows, [Fraction(1)] * len(rows), n, free_value=Fraction(1, 2))
    if sol is None or any(x <= 0 for x in sol):
        return None
    w = WeightSystem(tuple(sol))
    return w if is_quasi_homogeneous(f, w) else None
