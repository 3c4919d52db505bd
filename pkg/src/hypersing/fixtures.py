"""Fixture corpus: polynomials with expected invariants and per-value provenance."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from .poly import MPoly, Ring, WeightSystem, parse_fraction, parse_poly
from .spectrum import SpectrumPoly

def _load_schema() -> dict:
    text = resources.files("hypersing").joinpath("data/corpus_schema.json").read_text(encoding="utf-8")
    return json.loads(text)


# field names, value kinds and the provenance vocabulary live in the bundled schema file
_SCHEMA = _load_schema()
SCHEMA_VERSION = _SCHEMA["schema_version"]
TAGS = tuple(_SCHEMA["provenance_tags"])
_FIXTURE_FIELDS = set(_SCHEMA["fixture_fields"])
_REQUIRED = set(_SCHEMA["required"])
_EXPECTED_FIELDS = dict(_SCHEMA["expected"])


class CorpusError(ValueError):
    pass


class UnknownFixture(KeyError):
    pass


def _parse_value(kind: str, raw, where: str):
    try:
        if kind == "spectrum":
            if not isinstance(raw, list):
                raise CorpusError(f"{where}: spectrum must be a list of 'alpha,mult' strings")
            return SpectrumPoly.parse(raw)
        if raw == "inf":
            if kind == "int":
                raise CorpusError(f"{where}: infinity not allowed here")
            return math.inf
        if kind == "rational":
            return parse_fraction(str(raw))
        if isinstance(raw, bool) or not isinstance(raw, int):
            raise CorpusError(f"{where}: expected an integer or 'inf', got {raw!r}")
        return raw
    except CorpusError:
        raise
    except (ValueError, ZeroDivisionError) as exc:
        raise CorpusError(f"{where}: {exc}") from exc


def _dump_value(kind: str, value):
    if kind == "spectrum":
        return value.serialize().splitlines()
    if value == math.inf:
        return "inf"
    if kind == "rational":
        v = Fraction(value)
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return value


@dataclass
class FixtureRecord:
    name: str
    poly: str
    vars: list
    weights: Optional[list] = None
    semi_qh: bool = False
    q_homology_manifold: bool = False
    ts_summands: Optional[list] = None
    max_degree: Optional[str] = None
    expected: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict) -> FixtureRecord:
        if not isinstance(data, dict):
            raise CorpusError("fixture entries must be objects")
        name = data.get("name", "<unnamed>")
        unknown = set(data) - _FIXTURE_FIELDS
        if unknown:
            raise CorpusError(f"fixture {name!r}: unknown fields {sorted(unknown)}")
        missing = _REQUIRED - set(data)
        if missing:
            raise CorpusError(f"fixture {name!r}: missing fields {sorted(missing)}")
        raw_expected = data.get("expected", {}) or {}
        bad = set(raw_expected) - set(_EXPECTED_FIELDS)
        if bad:
            raise CorpusError(f"fixture {name!r}: unknown expected keys {sorted(bad)}")
        provenance = data.get("provenance", {}) or {}
        untagged = set(raw_expected) - set(provenance)
        if untagged:
            raise CorpusError(f"fixture {name!r}: expected values without provenance {sorted(untagged)}")
        stray = set(provenance) - set(raw_expected)
        if stray:
            raise CorpusError(f"fixture {name!r}: provenance for absent values {sorted(stray)}")
        for key, tag in provenance.items():
            if not isinstance(tag, str) or tag.split(":")[0].strip() not in TAGS:
                raise CorpusError(f"fixture {name!r}: provenance of {key!r} must start with one of {TAGS}")
        expected = {k: _parse_value(_EXPECTED_FIELDS[k], v, f"fixture {name!r}.{k}")
                    for k, v in raw_expected.items()}
        rec = cls(
            name=name,
            poly=data["poly"],
            vars=list(data["vars"]),
            weights=list(data["weights"]) if data.get("weights") is not None else None,
            semi_qh=bool(data.get("semi_qh", False)),
            q_homology_manifold=bool(data.get("q_homology_manifold", False)),
            ts_summands=list(data["ts_summands"]) if data.get("ts_summands") else None,
            max_degree=data.get("max_degree"),
            expected=expected,
            provenance=dict(provenance),
        )
        rec.polynomial()
        rec.weight_system()
        return rec

    def to_dict(self) -> dict:
        out: dict = {"name": self.name, "poly": self.poly, "vars": list(self.vars)}
        if self.weights is not None:
            out["weights"] = list(self.weights)
        if self.semi_qh:
            out["semi_qh"] = True
        if self.q_homology_manifold:
            out["q_homology_manifold"] = True
        if self.ts_summands:
            out["ts_summands"] = list(self.ts_summands)
        if self.max_degree is not None:
            out["max_degree"] = self.max_degree
        out["expected"] = {k: _dump_value(_EXPECTED_FIELDS[k], v) for k, v in self.expected.items()}
        out["provenance"] = dict(self.provenance)
        return out

    def ring(self) -> Ring:
        return Ring(self.vars)

    def polynomial(self) -> MPoly:
        try:
            return parse_poly(self.poly, self.ring())
        except ValueError as exc:
            raise CorpusError(f"fixture {self.name!r}: {exc}") from exc

    def weight_system(self) -> Optional[WeightSystem]:
        if self.weights is None:
            return None
        try:
            w = WeightSystem(tuple(parse_fraction(str(x)) for x in self.weights))
        except ValueError as exc:
            raise CorpusError(f"fixture {self.name!r}: {exc}") from exc
        if w.nvars != len(self.vars):
            raise CorpusError(f"fixture {self.name!r}: {w.nvars} weights for {len(self.vars)} variables")
        return w

    def window(self) -> Optional[tuple]:
        if self.max_degree is None:
            return None
        return Fraction(0), parse_fraction(str(self.max_degree))


@dataclass
class Corpus:
    fixtures: dict
    schema_version: int = SCHEMA_VERSION

    def get(self, name: str) -> FixtureRecord:
        try:
            return self.fixtures[name]
        except KeyError:
            raise UnknownFixture(f"unknown fixture {name!r}") from None

    def __iter__(self):
        return iter(self.fixtures[k] for k in sorted(self.fixtures))

    def __len__(self) -> int:
        return len(self.fixtures)

    def names(self) -> list:
        return sorted(self.fixtures)

    def to_dict(self) -> dict:
        return {"schema_version": self.schema_version, "fixtures": [fx.to_dict() for fx in self]}

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"


def parse_corpus(data: Union[dict, list]) -> Corpus:
    if isinstance(data, list):
        data = {"schema_version": SCHEMA_VERSION, "fixtures": data}
    if not isinstance(data, dict):
        raise CorpusError("corpus must be an object with a 'fixtures' list")
    unknown = set(data) - {"schema_version", "fixtures"}
    if unknown:
        raise CorpusError(f"unknown top-level fields {sorted(unknown)}")
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise CorpusError(f"unsupported schema_version {version!r}")
    fixtures = {}
    for entry in data.get("fixtures", []) or []:
        rec = FixtureRecord.from_dict(entry)
        if rec.name in fixtures:
            raise CorpusError(f"duplicate fixture name {rec.name!r}")
        fixtures[rec.name] = rec
    for rec in fixtures.values():
        for s in rec.ts_summands or []:
            if s not in fixtures:
                raise CorpusError(f"fixture {rec.name!r}: unknown summand {s!r}")
    return Corpus(fixtures, version)


def load_corpus(path: Union[str, Path, None] = None) -> Corpus:
    """Load a corpus file, or the bundled corpus when no path is given."""
    if path is None:
        text = resources.files("hypersing").joinpath("data/corpus.json").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text) if text.strip() else {"fixtures": []}
    except json.JSONDecodeError as exc:
        raise CorpusError(f"corpus is not valid JSON: {exc}") from exc
    return parse_corpus(data)
