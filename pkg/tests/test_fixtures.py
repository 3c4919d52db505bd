from __future__ import annotations

import json
import math
from fractions import Fraction as F

import pytest

from hypersing.fixtures import TAGS, Corpus, CorpusError, UnknownFixture, load_corpus, parse_corpus
from hypersing.spectrum import SpectrumPoly


def entry(**over):
    base = {"name": "a", "poly": "x^2", "vars": ["x"], "expected": {"mu": 1}, "provenance": {"mu": TAGS[1]}}
    base.update(over)
    return base


def test_bundled_corpus_loads(corpus):
    assert len(corpus) >= 15
    assert corpus.names() == sorted(corpus.names())
    fx = corpus.get("x6y5x3y3")
    assert fx.semi_qh and fx.expected["mu"] == 20 and fx.expected["alpha_tilde"] == F(11, 30)
    assert isinstance(fx.expected["spectrum"], SpectrumPoly)
    assert corpus.get("smooth").expected["alpha_tilde"] == math.inf
    assert corpus.get("h").ts_summands == ["x6y5x3y3", "z5w3"]


def test_every_value_has_a_tag(corpus):
    for fx in corpus:
        assert set(fx.expected) == set(fx.provenance), fx.name
        assert all(tag.split(":")[0] in TAGS for tag in fx.provenance.values())


def test_round_trip(corpus):
    again = parse_corpus(json.loads(corpus.dumps()))
    assert again.dumps() == corpus.dumps()
    for fx in corpus:
        assert again.get(fx.name).expected == fx.expected


def test_unknown_fixture(corpus):
    with pytest.raises(UnknownFixture):
        corpus.get("missing")


@pytest.mark.parametrize("bad,fragment", [
    (entry(colour="red"), "unknown fields"),
    (entry(expected={"mu": 1, "nu": 2}, provenance={"mu": TAGS[1], "nu": TAGS[1]}), "unknown expected"),
    (entry(provenance={}), "without provenance"),
    (entry(provenance={"mu": TAGS[1], "tau": TAGS[1]}), "absent values"),
    (entry(provenance={"mu": "folklore"}), "must start with"),
    (entry(expected={"k_min": "inf"}, provenance={"k_min": TAGS[1]}), "infinity"),
    (entry(expected={"mu": 1.5}), "integer"),
    (entry(poly="x^"), "fixture 'a'"),
    (entry(weights=["1/2", "1/3"]), "weights"),
    ({"poly": "x", "vars": ["x"]}, "missing fields"),
])
def test_validation_errors(bad, fragment):
    with pytest.raises(CorpusError, match=fragment):
        parse_corpus([bad])


def test_corpus_level_errors():
    with pytest.raises(CorpusError, match="duplicate"):
        parse_corpus([entry(), entry()])
    with pytest.raises(CorpusError, match="summand"):
        parse_corpus([entry(ts_summands=["b"])])
    with pytest.raises(CorpusError, match="schema_version"):
        parse_corpus({"schema_version": 99, "fixtures": []})
    with pytest.raises(CorpusError, match="top-level"):
        parse_corpus({"fixtures": [], "extra": 1})


def test_load_from_path(tmp_path):
    path = tmp_path / "c.json"
    path.write_text("")
    assert len(load_corpus(path)) == 0
    path.write_text("{")
    with pytest.raises(CorpusError):
        load_corpus(path)
    path.write_text(json.dumps({"fixtures": [entry()]}))
    assert isinstance(load_corpus(path), Corpus)
