"""Higher Du Bois levels, Hodge ideals of quasi-homogeneous f, and consistency checks."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from .ideal import (codimension, jacobian_ideal, milnor_number, standard_basis_local, tjurina_ideal,
                    tjurina_number)
from .poly import MonomialOrder, MPoly, WeightSystem, find_weights, is_quasi_homogeneous, to_string
from .spectrum import (INF, AlphaInvariants, SpectrumError, SpectrumPoly, alpha_invariants, normalized,
                       spectrum_qh, symmetry_check, tjurina_is_model, tjurina_subspectrum)

SCHEMA_VERSION = 1

PASS, FAIL, SKIP = "pass", "fail", "skip"


def jsonable(x):
    """Exact, JSON-friendly rendering: fractions as 'a/b', infinity as 'inf'."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, float):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, SpectrumPoly):
        return [f"{jsonable(a)},{k}" for a, k in x.items()]
    if isinstance(x, MPoly):
        return to_string(x)
    if isinstance(x, dict):
        return {str(jsonable(k)): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return str(x)


@dataclass
class Check:
    name: str
    anchor: str
    status: str
    witness: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {"name": self.name, "anchor": self.anchor, "status": self.status,
                "witness": jsonable(self.witness)}


# ---------------------------------------------------------------------------
# levels and bounds


def max_du_bois_level(alpha_tilde: Union[Fraction, float]) -> Union[int, float]:
    """Largest p >= 0 with ``alpha_tilde >= p + 1``; -1 below 1; infinite when smooth."""
    if alpha_tilde == INF:
        return INF
    a = Fraction(alpha_tilde)
    if a < 1:
        return -1
    return math.floor(a) - 1


def codim_bound_check(alpha_tilde, codim: int) -> Check:
    anchor = "minimal exponent is at most half the codimension of the singular locus"
    if alpha_tilde == INF:
        return Check("codim_bound", anchor, SKIP, {"reason": "smooth input"})
    a = Fraction(alpha_tilde)
    bound = Fraction(codim, 2)
    return Check("codim_bound", anchor, PASS if a <= bound else FAIL,
                 {"alpha_tilde": a, "half_codim": bound, "tight": a == bound})


def _staircase(w: WeightSystem, threshold: Fraction) -> set:
    """Exponents k with ``sum(k_i w_i) < threshold``."""
    n = w.nvars
    out = set()

    def rec(i, prefix, used):
        if i == n:
            out.add(tuple(prefix))
            return
        k = 0
        while used + k * w.weights[i] < threshold:
            prefix.append(k)
            rec(i + 1, prefix, used + k * w.weights[i])
            prefix.pop()
            k += 1

    if threshold > 0:
        rec(0, [], Fraction(0))
    return out


def hodge_monomials(w: WeightSystem, p: int) -> list:
    """Minimal exponents k with ``sum((k_i + 1) w_i) >= p + 1``."""
    threshold = Fraction(p + 1) - w.total
    if threshold <= 0:
        return [(0,) * w.nvars]
    stairs = _staircase(w, threshold)
    n = w.nvars
    gens = set()
    for k in stairs:
        for i in range(n):
            c = k[:i] + (k[i] + 1,) + k[i + 1:]
            if c in stairs:
                continue
            if all(c[j] == 0 or (c[:j] + (c[j] - 1,) + c[j + 1:]) in stairs for j in range(n)):
                gens.add(c)
    return sorted(gens, key=lambda k: (sum(k), tuple(-x for x in k)))


def hodge_ideal_generators_qh(f: MPoly, w: Optional[WeightSystem], p: int) -> list:
    """Generators of the p-th Hodge ideal of ``f = 0`` for quasi-homogeneous f.

    The ideal is spanned modulo f by monomials ``x^k`` with
    ``sum((k_i + 1) w_i) >= p + 1``; the minimal such monomials are returned,
    followed by f unless f already lies in the monomial ideal.
    """
    if p < 0:
        raise ValueError("p must be non-negative")
    w = w or find_weights(f)
    if w is None or not is_quasi_homogeneous(f, w):
        raise SpectrumError("Hodge ideal generators need a quasi-homogeneous f")
    w = normalized(w)
    spectrum_qh(f, w)  # rejects non-isolated input
    ring = f.ring
    mons = hodge_monomials(w, p)
    gens = [ring.monomial(k) for k in mons]

    def covered(m):
        return any(all(a >= b for a, b in zip(m, k)) for k in mons)

    if not all(covered(m) for m in f.terms):
        gens.append(f)
    return gens


def is_unit_ideal(gens: Iterable[MPoly]) -> bool:
    return any(g.is_constant() and g for g in gens)


def hodge_level(f: MPoly, w: WeightSystem) -> int:
    """Largest p with trivial Hodge ideal ``I_p = (1)``, or -1."""
    n = f.ring.nvars
    level = -1
    for p in range(n + 1):
        if not is_unit_ideal(hodge_ideal_generators_qh(f, w, p)):
            break
        level = p
    return level


# ---------------------------------------------------------------------------
# membership of powers of f in the Jacobian ideal


@dataclass
class PowerMembership:
    k_min: Optional[int]
    bound: Optional[int]
    searched: int
    check: Check


def power_membership_bound(f: MPoly, w: Optional[WeightSystem] = None, alpha_tilde=None,
                           semi_qh: bool = False) -> PowerMembership:
    """Smallest k with ``f^k`` in the local Jacobian ideal, against ``floor(n - 2 alpha) + 1``."""
    anchor = "f^k lies in the Jacobian ideal once k > n - 2 alpha_tilde"
    n = f.ring.nvars
    mu = milnor_number(f)
    if mu == 0:
        return PowerMembership(None, None, 0, Check("power_membership", anchor, SKIP, {"reason": "smooth input"}))
    if mu == INF:
        return PowerMembership(None, None, 0, Check("power_membership", anchor, SKIP,
                                                    {"reason": "non-isolated singularity"}))
    if alpha_tilde is None:
        w = w or find_weights(f)
        if w is None:
            return PowerMembership(None, None, 0, Check("power_membership", anchor, SKIP,
                                                        {"reason": "no weights to compute alpha_tilde"}))
        alpha_tilde = spectrum_qh(f, w, semi_qh).min()
    bound = math.floor(n - 2 * Fraction(alpha_tilde)) + 1
    sb = standard_basis_local(jacobian_ideal(f), MonomialOrder.local_order(WeightSystem.standard(n)))
    k_min = None
    power = f
    limit = max(bound, 1) + 2
    for k in range(1, limit + 1):
        if sb.contains(power):
            k_min = k
            break
        power = power * f
    ok = k_min is not None and k_min <= bound
    witness = {"k_min": k_min if k_min is not None else f"> {limit}", "bound": bound,
               "alpha_tilde": Fraction(alpha_tilde)}
    if w is not None and is_quasi_homogeneous(f, normalized(w)):
        witness["euler"] = k_min == 1
        ok = ok and k_min == 1
    return PowerMembership(k_min, bound, limit, Check("power_membership", anchor, PASS if ok else FAIL, witness))


# ---------------------------------------------------------------------------
# non-vanishing of the top Du Bois cohomology


def nonvanishing_check(f: MPoly, w: WeightSystem, p: int, alpha: AlphaInvariants,
                       semi_qh: bool = False, confirm: bool = True) -> Check:
    """Predict ``H^p`` of the ``(d_X - p)``-th Du Bois piece is nonzero.

    Hypotheses: ``alpha_min_int > p + 1`` and some element of weighted
    order ``>= p + 1`` survives in the Tjurina algebra. The second is checked
    by Mora membership of the order-(p+1) monomial generators and compared with
    ``alpha_max_tj >= p + 1``. When the cohomology itself is computable the
    prediction is compared with its dimension.
    """
    anchor = "order p+1 part not inside the Tjurina ideal forces nonzero top Du Bois cohomology"
    wn = normalized(w)
    model = tjurina_is_model(f, wn)
    sb = standard_basis_local(tjurina_ideal(f), MonomialOrder.local_order(wn))
    escapes = [m for m in hodge_monomials(wn, p) if not sb.contains(f.ring.monomial(m))]
    via_membership = bool(escapes)
    via_max_tj = alpha.alpha_max_tj is not None and alpha.alpha_max_tj >= p + 1
    min_int_ok = alpha.alpha_min_int > p + 1
    predicted = min_int_ok and via_membership
    witness = {
        "p": p,
        "alpha_min_int": alpha.alpha_min_int,
        "alpha_max_tj": alpha.alpha_max_tj,
        "order_part_escapes_tjurina": via_membership,
        "max_tjurina_reformulation": via_max_tj,
        "predicts_nonvanishing": predicted,
        "model": model,
    }
    if escapes:
        witness["escaping_monomial"] = f.ring.monomial(escapes[0])
    status = PASS if via_membership == via_max_tj else FAIL
    if confirm and predicted and not model and is_quasi_homogeneous(f, wn) and alpha.alpha_tilde > p + 1:
        from .koszul import dubois_dims

        dim = dubois_dims(f, wn, p)[p].total()
        witness["top_cohomology_dim"] = dim
        if dim == 0:
            status = FAIL
    return Check(f"nonvanishing_p{p}", anchor, status, witness)


# ---------------------------------------------------------------------------
# quadric endpoint among quotient hypersurface singularities


def quotient_endpoint_check(corpus=None) -> Check:
    """The three-dimensional quadric attains alpha_tilde = 3/2 in ``(1, 3/2]``.

    Every A1 fixture is reported; those with alpha_tilde outside the interval
    are listed as out of family rather than counted against the check.
    """
    from .fixtures import load_corpus

    corpus = corpus if corpus is not None else load_corpus()
    anchor = "rational homology manifold hypersurfaces with Du Bois singularities have alpha_tilde in (1, 3/2]"
    witness = {}
    ok = True
    found = False
    for fx in corpus:
        if not fx.name.startswith("A1_"):
            continue
        f = fx.polynomial()
        sp = spectrum_qh(f, fx.weight_system() or find_weights(f))
        a = sp.min()
        in_family = 1 < a <= Fraction(3, 2)
        entry = {"alpha_tilde": a, "in_interval": in_family,
                 "integral_spectral_numbers": sp.integral(), "q_homology_manifold": fx.q_homology_manifold}
        if in_family:
            good = fx.q_homology_manifold and not sp.integral()
            entry["status"] = PASS if good else FAIL
            ok = ok and good
            found = found or a == Fraction(3, 2)
        else:
            entry["status"] = "out-of-family"
        witness[fx.name] = entry
    witness["endpoint_attained"] = found
    return Check("quotient_endpoint", anchor, PASS if ok and found else FAIL, witness)


# ---------------------------------------------------------------------------
# full report


@dataclass
class SingularityReport:
    input: dict
    mu: Union[int, float]
    tau: Union[int, float]
    codim: int
    alpha: Optional[AlphaInvariants] = None
    spectrum: Optional[SpectrumPoly] = None
    tjurina_subspectrum: Optional[SpectrumPoly] = None
    tjurina_model: bool = False
    max_du_bois_level: Optional[Union[int, float]] = None
    k_min: Optional[int] = None
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def to_dict(self) -> dict:
        inv = {"mu": self.mu, "tau": self.tau, "codim_singular_locus": self.codim}
        if self.spectrum is not None:
            inv["spectrum"] = self.spectrum
        if self.tjurina_subspectrum is not None:
            inv["tjurina_subspectrum"] = self.tjurina_subspectrum
            inv["tjurina_subspectrum_model"] = self.tjurina_model
        if self.alpha is not None:
            inv["alpha_tilde"] = self.alpha.alpha_tilde
            inv["alpha_min_int"] = self.alpha.alpha_min_int
            inv["alpha_max_tj"] = self.alpha.alpha_max_tj
        if self.max_du_bois_level is not None:
            inv["max_du_bois_level"] = self.max_du_bois_level
        if self.k_min is not None:
            inv["k_min"] = self.k_min
        return {
            "schema_version": SCHEMA_VERSION,
            "input": jsonable(self.input),
            "invariants": jsonable(inv),
            "checks": [c.to_dict() for c in self.checks],
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        return render_text(self.to_dict())


def render_text(data: dict) -> str:
    lines = []
    inp = data["input"]
    lines.append(f"f = {inp['poly']}  in ({', '.join(inp['vars'])})")
    if inp.get("weights"):
        lines.append(f"weights: {', '.join(inp['weights'])}")
    flags = [k for k in ("semi_qh", "q_homology_manifold") if inp.get(k)]
    if flags:
        lines.append("flags: " + ", ".join(flags))
    for k, v in data["invariants"].items():
        if isinstance(v, list):
            v = " ".join(v) if v else "(empty)"
        lines.append(f"{k}: {v}")
    for c in data["checks"]:
        wit = ", ".join(f"{k}={_short(v)}" for k, v in c["witness"].items())
        lines.append(f"[{c['status'].upper()}] {c['name']}: {wit}")
    for note in data.get("notes", []):
        lines.append(f"note: {note}")
    return "\n".join(lines) + "\n"


def _short(v) -> str:
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_short(x)}" for k, x in v.items()) + "}"
    if isinstance(v, list):
        return "[" + ", ".join(_short(x) for x in v) + "]"
    return str(v)


def analyze(f: MPoly, w: Optional[WeightSystem] = None, semi_qh: bool = False,
            q_homology_manifold: bool = False, p_values: Optional[Iterable[int]] = None,
            koszul_window=None, with_koszul: Optional[bool] = None) -> SingularityReport:
    """Invariants and checks for the germ of ``f = 0`` at the origin."""
    from .koszul import koszul_vanishing_certificate

    if f.constant_term() != 0:
        raise ValueError("the origin does not lie on f = 0")
    n = f.ring.nvars
    input_echo = {"poly": to_string(f), "vars": list(f.ring.names),
                  "weights": [jsonable(x) for x in w.weights] if w else None,
                  "semi_qh": semi_qh, "q_homology_manifold": q_homology_manifold}
    mu = milnor_number(f)
    tau = tjurina_number(f)
    codim = codimension(tjurina_ideal(f))
    report = SingularityReport(input_echo, mu, tau, codim)

    if semi_qh and w is None:
        raise ValueError("semi-quasi-homogeneous input needs explicit weights")
    auto_w = w or find_weights(f)
    qh = auto_w is not None and is_quasi_homogeneous(f, normalized(auto_w))
    if w is None and auto_w is not None:
        report.notes.append(f"weights detected automatically: {auto_w}")
        report.input["weights"] = [jsonable(x) for x in auto_w.weights]

    if with_koszul is None:
        with_koszul = qh or koszul_window is not None
    if with_koszul:
        cert = koszul_vanishing_certificate(f, auto_w, koszul_window)
        report.checks.append(Check(
            "koszul_vanishing", "Koszul cohomology vanishes below the codimension of the singular locus",
            PASS if cert.ok else FAIL,
            {"codim": cert.codim, "checked_p": cert.checked, "window": list(cert.window or ()),
             "truncated": cert.truncated, "first_nonzero": cert.violation}))

    if mu == 0:
        report.alpha = AlphaInvariants(INF, INF, None)
        report.spectrum = SpectrumPoly()
        report.max_du_bois_level = INF
        report.notes.append("smooth at the origin")
        report.checks.append(codim_bound_check(INF, codim))
        return report
    if mu == INF:
        report.notes.append("non-isolated singularity: only Koszul and dimension data are reported")
        return report
    if auto_w is None or not (qh or semi_qh):
        report.notes.append("no quasi-homogeneous weights: spectrum checks skipped")
        pm = power_membership_bound(f)
        report.checks.append(pm.check)
        return report

    w = normalized(auto_w)
    sp = spectrum_qh(f, w, semi_qh and not qh)
    sptj = tjurina_subspectrum(f, w, semi_qh and not qh)
    alpha = alpha_invariants(sp, sptj, q_homology_manifold)
    report.spectrum = sp
    report.tjurina_subspectrum = sptj
    report.tjurina_model = tjurina_is_model(f, w)
    report.alpha = alpha
    report.max_du_bois_level = max_du_bois_level(alpha.alpha_tilde)

    checks = report.checks
    checks.append(Check("spectrum_total_is_mu", "spectrum has mu spectral numbers",
                        PASS if len(sp) == mu else FAIL, {"total": len(sp), "mu": mu}))
    checks.append(Check("tjurina_total_is_tau", "Tjurina subspectrum has tau members",
                        PASS if len(sptj) == tau else FAIL, {"total": len(sptj), "tau": tau}))
    checks.append(Check("spectrum_symmetry", "spectrum is symmetric about n/2",
                        PASS if symmetry_check(sp, n) else FAIL, {"n": n}))
    checks.append(Check("alpha_below_min_integral", "alpha_tilde <= minimal integral spectral number",
                        PASS if alpha.alpha_tilde <= alpha.alpha_min_int else FAIL,
                        {"alpha_tilde": alpha.alpha_tilde, "alpha_min_int": alpha.alpha_min_int}))
    checks.append(codim_bound_check(alpha.alpha_tilde, codim))
    pm = power_membership_bound(f, w, alpha.alpha_tilde, semi_qh)
    report.k_min = pm.k_min
    checks.append(pm.check)
    if qh:
        checks.append(Check("tjurina_equals_spectrum", "quasi-homogeneous f has tau = mu and equal multisets",
                            PASS if sptj == sp else FAIL, {}))
        hl = hodge_level(f, w)
        checks.append(Check("hodge_ideal_level", "p-Du Bois level equals the last trivial Hodge ideal",
                            PASS if hl == report.max_du_bois_level else FAIL,
                            {"hodge_level": hl, "max_du_bois_level": report.max_du_bois_level}))
    for p in (p_values if p_values is not None else range(n)):
        checks.append(nonvanishing_check(f, w, p, alpha, semi_qh))
    if report.tjurina_model:
        report.notes.append("Tjurina subspectrum uses the leading weight filtration (model)")
    return report
