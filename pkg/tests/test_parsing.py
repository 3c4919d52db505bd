from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypersing.parsing import ParseError, parse
from hypersing.poly import Ring, to_string

R = Ring("x,y")


@pytest.mark.parametrize("text, expected", [
    ("x^2+y^2", "x^2 + y^2"),
    ("-x", "-x"),
    ("2*x*y - 3/4*y", "2*x*y - 3/4*y"),
    ("(x+y)^2 - x^2", "2*x*y + y^2"),
    ("-x^2", "-x^2"),
    ("x*(y+1)", "x*y + x"),
    ("  x  ", "x"),
])
def test_parses(text, expected):
    assert to_string(parse(text, R)) == expected


@pytest.mark.parametrize("text, fragment", [
    ("", "empty"),
    ("x^-1", "negative exponent"),
    ("2x", "implicit multiplication"),
    ("x y", "implicit multiplication"),
    ("x^2^3", "chained"),
    ("z", "unknown variable"),
    ("(x+y", "expected ')'"),
    ("x/y", "rational literals"),
    ("1/0", "zero denominator"),
    ("x+", "end of input"),
    ("x # y", "unexpected character"),
    ("x^y", "exponent"),
])
def test_rejects(text, fragment):
    with pytest.raises(ParseError) as info:
        parse(text, R)
    assert fragment in info.value.message


def test_error_position():
    with pytest.raises(ParseError) as info:
        parse("x + 2y", R)
    assert info.value.pos == 5


@st.composite
def expressions(draw, depth=0):
    if depth > 2 or draw(st.booleans()):
        return draw(st.sampled_from(["x", "y", "1", "2", "3/4", "0"]))
    op = draw(st.sampled_from(["+", "-", "*", "^", "neg", "paren"]))
    a = draw(expressions(depth=depth + 1))
    if op == "^":
        return f"({a})^{draw(st.integers(0, 3))}"
    if op == "neg":
        return f"-({a})"
    if op == "paren":
        return f"({a})"
    b = draw(expressions(depth=depth + 1))
    return f"({a}){op}({b})"


@given(expressions())
def test_fuzz_round_trip(text):
    f = parse(text, R)
    assert parse(to_string(f), R) == f


@given(st.text(alphabet="xy0123456789+-*^/() ", max_size=12))
def test_fuzz_never_crashes(text):
    try:
        parse(text, R)
    except ParseError:
        pass
