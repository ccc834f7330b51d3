from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import laminar_multicurves
from skeinquot.algebra import alt_rep, basis_reps, curve, lie, mul
from skeinquot.geom import Multicurve, add_kink, realize, stack
from skeinquot.laurent import A, A_PLUS_1
from skeinquot.quotient import (
    QuotClass2,
    f3_test,
    ftype_sum_check,
    h_class,
    lambda_map,
    lift,
    link_class,
    nf2,
    pair_class,
    rho_map,
    triple_class,
    unit_class,
    word_class,
)
from skeinquot.reduce import SkeinElement


def test_basis_reps_are_unit_vectors():
    b = 4
    for n, x in basis_reps(b):
        c = nf2(x)
        if n.kind == "scalar":
            assert c == unit_class()
        elif n.kind == "h":
            assert c == h_class()
        elif n.kind == "pair":
            assert c == pair_class(*n.idx)
        else:
            assert c == triple_class(*n.idx)


def test_word_class_examples():
    assert word_class([1]) == pair_class(1, 1, Fraction(1, 2))
    assert word_class([1, 2]) == QuotClass2(pairs={(1, 1): Fraction(1, 2), (2, 2): Fraction(1, 2), (1, 2): 1})
    c = word_class([1, 2, 3])
    assert c.triples == {(1, 2, 3): 1}
    assert word_class([]) == QuotClass2()


@pytest.mark.parametrize("b", [1, 2, 3, 4, 5])
def test_word_route_equals_curve_route(b):
    for r in range(1, b + 1):
        for s in combinations(range(1, b + 1), r):
            assert nf2(curve(b, *s)) == unit_class(-2) + word_class(s)


def test_bracket_of_pairs_lands_in_image_of_lambda():
    x = lie(alt_rep(3, (1, 2)), alt_rep(3, (2, 3)))
    assert nf2(x) == triple_class(1, 2, 3, 4)
    assert f3_test(x)
    assert not f3_test(alt_rep(3, (1, 2)))


def test_scalars():
    b = 2
    assert nf2(SkeinElement.scalar(b, A_PLUS_1 ** 2)) == QuotClass2()
    assert nf2(SkeinElement.scalar(b, A)) == unit_class(-1) + h_class(1)


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_lift_roundtrip(u, h, p, t):
    c = QuotClass2(u, h, {(1, 2): p, (3, 3): u}, {(1, 2, 3): t})
    assert nf2(lift(c, 3)) == c
    assert QuotClass2.from_json(c.to_json()) == c


def test_class_json_errors():
    with pytest.raises(ValueError):
        QuotClass2.from_json({"pairs": {"1,2,3": "1"}})
    with pytest.raises(ValueError):
        QuotClass2(pairs={(2, 1): 1})


def test_lambda_and_rho():
    assert lambda_map(2, 1, 3) == triple_class(1, 2, 3, -1)
    assert lambda_map(1, 1, 2).is_zero()
    assert rho_map((2, 1)) == pair_class(1, 2)
    assert rho_map("unit") == h_class()


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("members", [(1, 2), (1, 3), (1, 2, 3)])
def test_link_class_kink_invariance(members, sign):
    d = realize(Multicurve.of([members]), 3)
    base = link_class(d)
    k1 = add_kink(d, 0, 0, sign)
    assert link_class(k1) == base
    assert link_class(add_kink(k1, 0, 2, sign)) == base


def test_link_class_of_knot_is_curve_class():
    d = realize(Multicurve.of([(1, 3)]), 3)
    assert link_class(d) == word_class((1, 3))


def test_link_class_of_two_component_link():
    d = stack(realize(Multicurve.of([(1, 2)]), 3), realize(Multicurve.of([(2, 3)]), 3))
    x = mul(curve(3, 1, 2), curve(3, 2, 3))
    assert link_class(d) == nf2(x.scale(Fraction(1, 4)))


def test_finite_type_sums_vanish():
    ms = laminar_multicurves(3, 3)
    assert len(ms) > 20
    for m in ms:
        assert ftype_sum_check(m, 2, 3).is_zero()


def test_ftype_needs_enough_components():
    with pytest.raises(ValueError):
        ftype_sum_check(Multicurve.of([(1,)]), 1, 2)
