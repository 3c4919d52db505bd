"""Command-line front end.

Exit codes: 0 success, 1 mismatch or failed check, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence

from .classify import (FAIL, analyze, hodge_ideal_generators_qh, jsonable, max_du_bois_level,
                       power_membership_bound, quotient_endpoint_check)
from .fixtures import Corpus, CorpusError, FixtureRecord, load_corpus
from .ideal import codimension, milnor_number, tjurina_ideal, tjurina_number
from .koszul import KoszulError, dubois_dims, koszul_cohomology, truncated_cone_dims
from .parsing import ParseError
from .poly import Ring, WeightSystem, find_weights, parse_fraction, parse_poly, to_string
from .spectrum import (INF, SpectrumError, alpha_invariants, integral_shift_matching, spectrum_qh,
                       thom_sebastiani, tjurina_is_model, tjurina_subspectrum)

OK, MISMATCH, USAGE = 0, 1, 2
SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input handling


def _infer_vars(text: str) -> list:
    seen = []
    for name in re.findall(r"[A-Za-z_][A-Za-z0-9_]*", text):
        if name not in seen:
            seen.append(name)
    return seen


def _inputs(args):
    names = args.vars.split(",") if args.vars else _infer_vars(args.poly)
    if not names:
        raise UsageError("no variables: pass --vars")
    ring = Ring([s.strip() for s in names])
    f = parse_poly(args.poly, ring)
    w = None
    if args.weights:
        w = WeightSystem(tuple(parse_fraction(s) for s in args.weights.split(",")))
        if w.nvars != ring.nvars:
            raise UsageError(f"{w.nvars} weights given for {ring.nvars} variables")
    return f, w


def _window(args):
    if getattr(args, "max_degree", None) is None:
        return None
    return Fraction(0), parse_fraction(args.max_degree)


def _emit(args, data: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(data, indent=2) + "\n")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    f, w = _inputs(args)
    p_values = [args.p] if args.p is not None else None
    report = analyze(f, w, args.semi_qh, args.q_homology_manifold, p_values, _window(args))
    data = report.to_dict()
    _emit(args, data, report.to_text())
    return OK if report.ok else MISMATCH


def cmd_spectrum(args) -> int:
    f, w = _inputs(args)
    w = w or find_weights(f)
    if w is None:
        raise UsageError("no weights making f quasi-homogeneous; pass --weights (and --semi-qh)")
    sp = spectrum_qh(f, w, args.semi_qh)
    sptj = tjurina_subspectrum(f, w, args.semi_qh)
    alpha = alpha_invariants(sp, sptj, args.q_homology_manifold)
    data = {
        "schema_version": SCHEMA_VERSION,
        "input": {"poly": to_string(f), "vars": list(f.ring.names), "weights": jsonable(list(w.weights))},
        "spectrum": jsonable(sp),
        "tjurina_subspectrum": jsonable(sptj),
        "tjurina_subspectrum_model": tjurina_is_model(f, w),
        "alpha_tilde": jsonable(alpha.alpha_tilde),
        "alpha_min_int": jsonable(alpha.alpha_min_int),
        "alpha_max_tj": jsonable(alpha.alpha_max_tj),
    }
    _emit(args, data, sp.serialize())
    return OK


def cmd_koszul(args) -> int:
    f, w = _inputs(args)
    ps = [args.p] if args.p is not None else list(range(f.ring.nvars + 1))
    tables = {p: koszul_cohomology(f, w, p, _window(args)) for p in ps}
    data = {"schema_version": SCHEMA_VERSION, "input": {"poly": to_string(f), "vars": list(f.ring.names)},
            "cohomology": {str(p): g.to_dict() for p, g in tables.items()}}
    text = "".join(f"H^{p} (total {g.total()})\n{g.to_table()}" for p, g in tables.items())
    _emit(args, data, text)
    return OK


def cmd_dubois(args) -> int:
    f, w = _inputs(args)
    if args.p is None:
        raise UsageError("dubois needs --p")
    dims = dubois_dims(f, w, args.p, _window(args))
    status = OK
    data = {"schema_version": SCHEMA_VERSION, "input": {"poly": to_string(f), "vars": list(f.ring.names)},
            "p": args.p, "dims": {str(j): g.to_dict() for j, g in dims.items()}}
    text = "".join(f"H^{j} (total {g.total()})\n{g.to_table()}" for j, g in dims.items())
    if args.check_cone:
        cone = truncated_cone_dims(f, w, args.p, _window(args))
        agree = all(cone[j] == dims[j] for j in dims) and all(
            cone[j].is_zero() for j in cone if j not in dims)
        data["cone_agrees"] = agree
        text += f"cone agrees: {agree}\n"
        status = OK if agree else MISMATCH
    _emit(args, data, text)
    return status


def cmd_classify(args) -> int:
    f, w = _inputs(args)
    w = w or find_weights(f)
    report = analyze(f, w, args.semi_qh, args.q_homology_manifold, [], with_koszul=False)
    level = report.max_du_bois_level
    data = {"schema_version": SCHEMA_VERSION, "input": report.to_dict()["input"],
            "max_du_bois_level": jsonable(level),
            "alpha_tilde": jsonable(report.alpha.alpha_tilde if report.alpha else None)}
    lines = [f"alpha_tilde: {data['alpha_tilde']}", f"max_du_bois_level: {data['max_du_bois_level']}"]
    if args.p is not None and w is not None and report.alpha is not None and not report.tjurina_model \
            and report.mu not in (0, INF):
        gens = hodge_ideal_generators_qh(f, w, args.p)
        data["hodge_ideal"] = {"p": args.p, "generators": [to_string(g) for g in gens]}
        lines.append(f"I_{args.p} = (" + ", ".join(to_string(g) for g in gens) + ")")
    _emit(args, data, "\n".join(lines) + "\n")
    return OK if report.ok else MISMATCH


# ---------------------------------------------------------------------------
# corpus verification


def verify_fixture(fx: FixtureRecord, corpus: Optional[Corpus] = None) -> list:
    """Recompute every expected value of a fixture; return diff strings."""
    f = fx.polynomial()
    w = fx.weight_system() or find_weights(f)
    got: dict = {}
    exp = fx.expected
    need = set(exp)
    diffs = []
    mu = milnor_number(f)
    if "mu" in need:
        got["mu"] = mu
    if "tau" in need:
        got["tau"] = tjurina_number(f)
    if "codim" in need:
        got["codim"] = codimension(tjurina_ideal(f))
    sp = None
    if need & {"spectrum", "alpha_tilde", "alpha_min_int", "level", "k_min"} or fx.ts_summands:
        if mu == 0:
            from .spectrum import SpectrumPoly

            sp = SpectrumPoly()
        elif w is not None:
            sp = spectrum_qh(f, w, fx.semi_qh)
    if sp is not None:
        alpha_tilde = sp.min() if sp else INF
        got["spectrum"] = sp
        got["alpha_tilde"] = alpha_tilde
        if sp:
            got["alpha_min_int"] = alpha_invariants(sp, None, fx.q_homology_manifold).alpha_min_int
        got["level"] = max_du_bois_level(alpha_tilde)
        if "k_min" in need:
            got["k_min"] = power_membership_bound(f, w, alpha_tilde, fx.semi_qh).k_min
    for key in sorted(need):
        if key == "beta":
            if exp.get("spectrum") is not None and integral_shift_matching(exp["spectrum"], exp["beta"]) is None:
                diffs.append(f"{fx.name}.beta: no integral-shift matching with the spectrum")
            continue
        if key not in got:
            diffs.append(f"{fx.name}.{key}: could not be recomputed")
        elif got[key] != exp[key]:
            diffs.append(f"{fx.name}.{key}: expected {_show(exp[key])}, got {_show(got[key])}")
    if fx.ts_summands and corpus is not None and sp is not None:
        prod = None
        for name in fx.ts_summands:
            part = corpus.get(name)
            g = part.polynomial()
            s = spectrum_qh(g, part.weight_system() or find_weights(g), part.semi_qh)
            prod = s if prod is None else thom_sebastiani(prod, s)
        if prod != sp:
            diffs.append(f"{fx.name}.spectrum: differs from the product of its summands' spectra")
    return diffs


def _show(v) -> str:
    j = jsonable(v)
    return " ".join(j) if isinstance(j, list) else str(j)


def verify_corpus(corpus: Corpus, jobs: int = 1) -> dict:
    def run(fx):
        try:
            return fx.name, verify_fixture(fx, corpus)
        except (SpectrumError, KoszulError, ValueError) as exc:
            return fx.name, [f"{fx.name}: error: {exc}"]

    fixtures = list(corpus)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(run, fixtures))
    else:
        results = [run(fx) for fx in fixtures]
    return dict(sorted(results))


def cmd_corpus_verify(args) -> int:
    try:
        corpus = load_corpus(args.path)
    except OSError as exc:
        raise UsageError(str(exc)) from exc
    if len(corpus) == 0:
        print("warning: corpus is empty", file=sys.stderr)
    results = verify_corpus(corpus, args.jobs)
    endpoint = None
    if any(name.startswith("A1_") for name in results):
        endpoint = quotient_endpoint_check(corpus)
    failed = any(results.values()) or (endpoint is not None and endpoint.status == FAIL)
    data = {"schema_version": SCHEMA_VERSION,
            "fixtures": [{"name": n, "status": "fail" if d else "pass", "diffs": d} for n, d in results.items()]}
    if endpoint is not None:
        data["quotient_endpoint"] = endpoint.to_dict()
    lines = []
    for n, d in results.items():
        lines.append(f"{'FAIL' if d else 'ok'}  {n}")
        lines.extend(f"    {x}" for x in d)
    if endpoint is not None:
        lines.append(f"{'ok' if endpoint.status != FAIL else 'FAIL'}  quotient endpoint check")
    _emit(args, data, "\n".join(lines) + ("\n" if lines else ""))
    return MISMATCH if failed else OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypersing", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def poly_cmd(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("poly", help="polynomial, e.g. 'x^6+y^5+x^3*y^3'")
        p.add_argument("--vars", help="comma-separated variable names (default: order of appearance)")
        p.add_argument("--weights", help="exact weights, e.g. 1/6,1/5")
        p.add_argument("--semi-qh", action="store_true", help="treat f as semi-quasi-homogeneous")
        p.add_argument("--q-homology-manifold", action="store_true")
        p.add_argument("--max-degree", help="upper end of the weighted degree window")
        p.add_argument("--p", type=int)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.set_defaults(func=func)
        return p

    poly_cmd("analyze", cmd_analyze, "full invariant report")
    poly_cmd("spectrum", cmd_spectrum, "spectrum and Tjurina subspectrum")
    poly_cmd("koszul", cmd_koszul, "graded Koszul cohomology dimensions")
    d = poly_cmd("dubois", cmd_dubois, "Du Bois cohomology dimensions")
    d.add_argument("--check-cone", action="store_true", help="compare with the mapping-cone computation")
    poly_cmd("classify", cmd_classify, "Du Bois level and Hodge ideal generators")

    c = sub.add_parser("corpus-verify", help="recompute every expected value of a corpus")
    c.add_argument("path", nargs="?", default=None, help="corpus file (default: bundled corpus)")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.set_defaults(func=cmd_corpus_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, CorpusError, SpectrumError, KoszulError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
