from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hypersing import ideal as ideal_mod
from hypersing.ideal import (codimension, groebner, jacobian_ideal, krull_dimension, milnor_number,
                             mora_normal_form, standard_basis_local, tjurina_ideal, tjurina_number)
from hypersing.poly import MonomialOrder, Ring, WeightSystem, parse_poly
from hypersing.truncated import local_graded_dims, local_member, local_quotient_dim
from randideals import member_by_oracle, random_ideal, random_poly

XY = Ring("x,y")
GLOBAL2 = MonomialOrder.global_order(WeightSystem.standard(2))
LOCAL2 = MonomialOrder.local_order(WeightSystem.standard(2))


def P(text, ring=XY):
    return parse_poly(text, ring)


def test_textbook_reduced_basis():
    gb = groebner([P("x^3-2*x*y"), P("x^2*y-2*y^2+x")], GLOBAL2)
    assert [str(g) for g in gb.generators] == ["x^2", "x*y", "y^2 - 1/2*x"]
    assert gb.contains(P("x^2*y"))
    assert not gb.contains(P("y"))


def test_unit_ideal():
    gb = groebner([P("x*y-1"), P("x")], GLOBAL2)
    assert gb.is_unit_ideal()
    assert krull_dimension([P("x*y-1"), P("x")]) == -1


def test_order_kinds_are_enforced():
    with pytest.raises(ValueError):
        groebner([P("x")], LOCAL2)
    with pytest.raises(ValueError):
        standard_basis_local([P("x")], GLOBAL2)


def test_local_units_are_invertible():
    # x + x^2 = x(1 + x) generates (x) in the local ring but not globally
    assert standard_basis_local([P("x+x^2")], LOCAL2).contains(P("x"))
    assert not groebner([P("x+x^2")], GLOBAL2).contains(P("x"))


def test_global_and_local_milnor_algebras_differ_for_semi_qh():
    f = P("x^6+y^5+x^3*y^3")
    glob = groebner(jacobian_ideal(f), GLOBAL2).quotient_basis()
    assert glob.dimension == 23
    assert milnor_number(f) == 20
    assert tjurina_number(f) == 18


@pytest.mark.parametrize("text, mu, tau", [
    ("x^2+y^3", 2, 2),
    ("x^3+y^4", 6, 6),
    ("x^2*y+y^3", 4, 4),
    ("x^4+y^5+x^2*y^3", 12, None),
    ("x^6+y^5+x^3*y^3", 20, 18),
    ("x^3+x*y^3", 7, 7),
    ("x^3+x*y^4", 10, 10),
])
def test_milnor_and_tjurina_numbers_against_truncated_oracle(text, mu, tau):
    f = P(text)
    assert milnor_number(f) == mu == local_quotient_dim(jacobian_ideal(f))
    t = tjurina_number(f)
    assert t == local_quotient_dim(tjurina_ideal(f))
    if tau is not None:
        assert t == tau


def test_non_isolated_is_infinite():
    f = parse_poly("y1*y2", Ring("y1,y2,y3"))
    assert milnor_number(f) == float("inf")
    assert codimension(tjurina_ideal(f)) == 2


def test_krull_dimension():
    R3 = Ring("x,y,z")
    assert krull_dimension([parse_poly("x*y", R3)]) == 2
    assert krull_dimension([parse_poly("x", R3), parse_poly("y", R3)]) == 1
    assert krull_dimension([parse_poly(s, R3) for s in ("x", "y", "z")]) == 0
    assert codimension([parse_poly("x*y", R3), parse_poly("x*z", R3)]) == 1


def test_weighted_graded_tjurina_basis_matches_oracle(semi_qh):
    f, w = semi_qh
    sb = standard_basis_local(tjurina_ideal(f), MonomialOrder.local_order(w))
    mora = {}
    for m in sb.quotient_basis().monomials:
        v = w.valuation(m)
        mora[v] = mora.get(v, 0) + 1
    assert mora == local_graded_dims(tjurina_ideal(f), w)


def test_power_membership_semi_qh_against_oracle(semi_qh):
    f, _ = semi_qh
    J = jacobian_ideal(f)
    sb = standard_basis_local(J, LOCAL2)
    for k, expected in ((1, False), (2, True)):
        assert sb.contains(f ** k) == expected == local_member(f ** k, J)


def test_mora_normal_form_detects_membership():
    f = P("x^6+y^5+x^3*y^3")
    sb = standard_basis_local(jacobian_ideal(f), LOCAL2)
    assert mora_normal_form(f * f, sb.generators, LOCAL2).is_zero()
    assert not mora_normal_form(f, sb.generators, LOCAL2).is_zero()


@given(st.lists(st.integers(-2, 2), min_size=4, max_size=4).filter(lambda a: a[0] * a[3] - a[1] * a[2] != 0))
def test_milnor_number_is_coordinate_invariant(a):
    f = P("x^3+x*y^3")
    g = f.substitute_linear([[a[0], a[1]], [a[2], a[3]]])
    assert milnor_number(g) == milnor_number(f) == 7
    assert tjurina_number(g) == tjurina_number(f)


def test_reduced_basis_is_permutation_invariant():
    rng = random.Random(7)
    for _ in range(30):
        ring, gens = random_ideal(rng)
        order = MonomialOrder.global_order(WeightSystem.standard(ring.nvars))
        shuffled = gens[:]
        rng.shuffle(shuffled)
        assert groebner(gens, order).generators == groebner(shuffled, order).generators


def test_membership_agrees_with_bounded_oracle():
    rng = random.Random(11)
    for _ in range(40):
        ring, gens = random_ideal(rng)
        gb = groebner(gens, MonomialOrder.global_order(WeightSystem.standard(ring.nvars)))
        for g in gb.generators:
            assert member_by_oracle(g, gens, 1)
        h = random_poly(rng, ring, 4, 4)
        nf = gb.normal_form(h)
        assert member_by_oracle(h - nf, gens, 1)
        if nf:
            assert not member_by_oracle(h, gens, 1, 8)


def test_disk_cache_round_trip(tmp_path, monkeypatch):
    monkeypatch.setenv(ideal_mod.CACHE_ENV, str(tmp_path))
    f = P("x^6+y^5+x^3*y^3")
    first = standard_basis_local(jacobian_ideal(f), LOCAL2)
    files = list(tmp_path.glob("basis-v1-*.json"))
    assert len(files) == 1
    second = standard_basis_local(jacobian_ideal(f), LOCAL2)
    assert first.generators == second.generators


def test_weighted_local_order_gives_same_dimension(semi_qh):
    f, w = semi_qh
    assert milnor_number(f, w) == milnor_number(f) == 20
    assert Fraction(sum(w.weights)) == Fraction(11, 30)
