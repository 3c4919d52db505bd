from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypersing.poly import (MonomialOrder, MPoly, Ring, RingMismatchError, WeightSystem, euler_identity_check,
                            find_weights, is_quasi_homogeneous, parse_fraction, parse_poly, partials, to_string,
                            weighted_part, weighted_valuation)

R = Ring("x,y,z")

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(exps, coeffs, max_size=5).map(lambda d: MPoly(R, d))


def test_ring_from_string_and_list():
    assert Ring("x, y").names == Ring(["x", "y"]).names == ("x", "y")
    with pytest.raises(ValueError):
        Ring("x,x")


def test_basic_arithmetic(xy):
    x, y = xy.gens()
    f = (x + y) ** 2
    assert f == x * x + 2 * x * y + y * y
    assert (f - f).is_zero()
    assert to_string(f) == "x^2 + 2*x*y + y^2"
    assert f.total_degree() == 2
    assert f.evaluate([1, 2]) == 9


def test_cross_ring_operations_raise():
    a = Ring("x").gens()[0]
    b = Ring("y").gens()[0]
    with pytest.raises(RingMismatchError):
        a + b


def test_canonical_string():
    f = parse_poly("x^3*y^3+y^5+x^6", Ring("x,y"))
    assert to_string(f) == "x^6 + x^3*y^3 + y^5"
    assert to_string(parse_poly("-1/2*x*y^3", Ring("x,y"))) == "-1/2*x*y^3"
    assert to_string(Ring("x").zero()) == "0"


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(polys)
def test_string_round_trip(f):
    assert parse_poly(to_string(f), R) == f


@given(polys, polys)
def test_leibniz_rule(f, g):
    for i in range(3):
        assert (f * g).diff(i) == f.diff(i) * g + f * g.diff(i)


def test_weight_system_validation():
    w = WeightSystem.parse("1/6,1/5")
    assert w.total == Fraction(11, 30)
    assert w.int_weights() == (5, 6) and w.scale() == 30
    with pytest.raises(ValueError):
        WeightSystem((0, 1))
    with pytest.raises(ValueError):
        parse_fraction("0.5")


def test_quasi_homogeneity(xy):
    f = parse_poly("x^6+y^5+x^3*y^3", xy)
    w = WeightSystem((Fraction(1, 6), Fraction(1, 5)))
    assert not is_quasi_homogeneous(f, w)
    assert weighted_part(f, w, 1) == parse_poly("x^6+y^5", xy)
    assert weighted_valuation(f, w) == 1
    assert find_weights(f) is None
    assert find_weights(parse_poly("x^2*y+y^3", xy)).weights == (Fraction(1, 3), Fraction(1, 3))


def test_euler_identity():
    f = parse_poly("x^2+y^3+z^5", R)
    w = find_weights(f)
    assert euler_identity_check(f, w)
    with pytest.raises(ValueError):
        euler_identity_check(parse_poly("x^2+y^3+z^7+x*y*z", R), w)


def test_find_weights_fills_absent_variables():
    w = find_weights(parse_poly("x*y", R))
    assert w.weights == (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))


def test_orders():
    w = WeightSystem.standard(2)
    glob = MonomialOrder.global_order(w)
    loc = MonomialOrder.local_order(w)
    assert glob.leading([(1, 0), (2, 0), (0, 1)]) == (2, 0)
    assert loc.leading([(1, 0), (2, 0), (0, 1)]) == (1, 0)


def test_linear_substitution_preserves_partials_count(xy):
    f = parse_poly("x^2+y^3", xy)
    g = f.substitute_linear([[1, 1], [0, 1]])
    assert g == parse_poly("(x+y)^2+y^3", xy)
    assert len(partials(g)) == 2
