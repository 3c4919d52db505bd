from __future__ import annotations

from fractions import Fraction

from hypersing.poly import Ring, WeightSystem, parse_poly
from hypersing.truncated import (certified_truncation, global_member, local_graded_dims, local_quotient_dim,
                                 monomials_up_to)

XY = Ring("x,y")


def test_monomials_up_to_counts():
    assert len(monomials_up_to(WeightSystem.standard(2), Fraction(2))) == 6
    w = WeightSystem((Fraction(1, 2), Fraction(1, 3)))
    assert (2, 0) in monomials_up_to(w, Fraction(1))
    assert (2, 1) not in monomials_up_to(w, Fraction(1))


def test_maximal_ideal_power():
    x, y = XY.gens()
    assert local_quotient_dim([x * x, x * y, y * y]) == 3
    assert local_graded_dims([x * x, x * y, y * y], WeightSystem.standard(2)) == {0: 1, 1: 2}


def test_no_certificate_for_non_zero_dimensional_ideal():
    x, _ = XY.gens()
    assert certified_truncation([x], cap=Fraction(6)) is None
    assert local_quotient_dim([x], cap=Fraction(6)) == float("inf")


def test_global_member_is_a_bounded_search():
    f = parse_poly("x^2-y", XY)
    assert global_member(parse_poly("x^3-x*y", XY), [f], 3)
    assert not global_member(parse_poly("x^3-x*y", XY), [f], 2)
    assert not global_member(parse_poly("x", XY), [f], 6)
