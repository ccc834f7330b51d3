from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from skeinquot.algebra import (
    NamedBasisRep,
    alt_rep,
    basis_rep,
    basis_reps,
    commutator,
    commutator_identities,
    curve,
    eps,
    lie,
    mul,
    mul_many,
    power,
    scalar,
    sigma,
)
from skeinquot.laurent import A, DELTA, ONE, LaurentPoly
from skeinquot.reduce import SkeinElement

B = 3
subsets = [s for r in (1, 2, 3) for s in combinations(range(1, B + 1), r)]
subset = st.sampled_from(subsets)
coeff = st.sampled_from([ONE, A, LaurentPoly({-1: 2}), LaurentPoly({0: 1, 2: -1})])


@st.composite
def elements(draw):
    terms = draw(st.lists(st.tuples(subset, coeff), min_size=1, max_size=2))
    out = SkeinElement(B, {})
    for s, p in terms:
        out = out + curve(B, *s).scale(p)
    return out


def test_empty_curve_is_delta():
    assert curve(3) == scalar(3, DELTA)


def test_disjoint_curves_commute():
    assert mul(curve(4, 1, 2), curve(4, 3, 4)) == mul(curve(4, 3, 4), curve(4, 1, 2))
    assert mul(curve(4, 1, 2), curve(4, 3, 4)) == SkeinElement.multicurve(4, [(1, 2), (3, 4)])


@given(elements(), elements())
def test_augmentation_is_multiplicative(x, y):
    assert eps(mul(x, y)) == eps(x) * eps(y)


@given(elements(), elements(), elements())
def test_associativity(x, y, z):
    assert mul(mul(x, y), z) == mul(x, mul(y, z))


@given(elements(), elements())
def test_bracket_antisymmetric(x, y):
    assert lie(x, y) == lie(y, x).scale(-1)


@given(elements(), elements(), elements())
def test_jacobi(x, y, z):
    j = lie(x, lie(y, z)) + lie(y, lie(z, x)) + lie(z, lie(x, y))
    assert j.is_zero()


@pytest.mark.parametrize("c", [(1,), (2,), (3,), (1, 2, 3)])
@pytest.mark.parametrize("s", subsets)
def test_boundary_parallel_curves_are_central(c, s):
    assert commutator(curve(B, *c), curve(B, *s)).is_zero()


def test_sigma_equals_bracket():
    x, y = curve(3, 1, 2), curve(3, 2, 3)
    assert sigma(x, y) == lie(x, y)
    assert not lie(x, y).is_zero()


def test_power_and_mul_many():
    x = curve(3, 1, 2)
    assert power(x, 3) == mul_many([x, x, x])
    assert power(x, 0) == scalar(3, 1)
    with pytest.raises(ValueError):
        power(x, -1)


def test_different_disks_rejected():
    with pytest.raises(ValueError):
        mul(curve(2, 1), curve(3, 1))


def test_basis_reps():
    reps = basis_reps(4)
    assert len(reps) == 2 + 10 + 4
    for n, x in reps:
        if n.kind != "scalar":
            assert eps(x) == 0
    assert basis_rep(NamedBasisRep("pair", (2, 2)), 3) == (curve(3, 2) - curve(3)).scale(2)
    assert alt_rep(3, (1, 2)) == curve(3, 1, 2) - curve(3, 1) - curve(3, 2) + curve(3)
    with pytest.raises(ValueError):
        NamedBasisRep("triple", (2, 1, 3))
    with pytest.raises(ValueError):
        basis_rep(NamedBasisRep("pair", (1, 5)), 4)


def test_corrected_commutator_identities_hold():
    ids = {(i.name, i.form): i for i in commutator_identities(4)}
    assert ids[("sum", "corrected")].holds
    assert ids[("difference", "corrected")].holds


def test_reference_sum_identity_misses_one_copy_of_the_four_point_term():
    ids = {(i.name, i.form): i for i in commutator_identities(4)}
    s = ids[("sum", "reference")]
    gap = s.lhs - s.rhs
    assert gap == alt_rep(4, (1, 2, 3, 4)).scale(LaurentPoly({2: 1, -2: 1}))
