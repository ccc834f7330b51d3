from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from skeinquot.geom import (
    EMPTY,
    Diagram,
    GeneralPositionFailure,
    Multicurve,
    SubsetCurve,
    add_kink,
    canonical_curve,
    cyclic_reduce,
    enclosed_set,
    find_intersections,
    free_reduce,
    invert,
    is_laminar,
    is_standard,
    polyline_word,
    realize,
    stack,
    translate,
)

letters = st.sampled_from([1, -1, 2, -2, 3, -3, 4, -4])
words = st.lists(letters, max_size=8)


def test_free_and_cyclic_reduction():
    assert free_reduce([1, 2, -2, -1, 3]) == (3,)
    assert cyclic_reduce([1, 2, 3, -1]) == (2, 3)
    assert invert((1, 2, -3)) == (3, -2, -1)


@given(words, st.integers(0, 7))
def test_canonical_curve_is_conjugacy_and_inversion_invariant(w, k):
    c = canonical_curve(w)
    if w:
        k %= len(w)
        assert canonical_curve(w[k:] + w[:k]) == c
    assert canonical_curve(invert(w)) == c
    assert canonical_curve(c) == c


def test_standard_curves():
    assert canonical_curve((3, 1, 2)) == (1, 2, 3)
    assert is_standard((1, 2, 3))
    assert not is_standard(canonical_curve((1, 2, 3, -2)))
    assert enclosed_set((1, 2, 3)) == frozenset({1, 2, 3})
    assert is_laminar([frozenset({1, 2}), frozenset({1, 2, 3}), frozenset({4})])
    assert not is_laminar([frozenset({1, 2}), frozenset({2, 3})])


def test_subset_curve_and_multicurve():
    with pytest.raises(ValueError):
        SubsetCurve(frozenset())
    m = Multicurve.of([(2, 3), (1,), (1, 2, 3)])
    assert m.components == ((1,), (2, 3), (1, 2, 3))
    assert m.max_index() == 3
    assert len(EMPTY) == 0
    with pytest.raises(ValueError):
        Multicurve.of([(1, -1)])


@pytest.mark.parametrize("members", [(1,), (2,), (1, 2), (1, 3), (2, 4), (1, 2, 3, 4), (1, 3, 4)])
def test_realized_subset_curve_reads_its_word(members):
    d = realize(Multicurve.of([members]), 4)
    assert len(d.strands) == 1 and not d.over
    assert canonical_curve(polyline_word(d.strands[0], 4)) == tuple(members)


def test_laminar_multicurve_realizes_without_crossings():
    m = Multicurve.of([(1, 2, 3), (1, 2), (1,), (3,), (4,)])
    d = realize(m, 4)
    assert d.crossings() == []
    got = sorted((canonical_curve(polyline_word(s, 4)) for s in d.strands), key=lambda c: (len(c), c))
    assert tuple(got) == m.components


def test_stack_puts_first_argument_on_top():
    top = realize(Multicurve.of([(1, 2)]), 3)
    bot = realize(Multicurve.of([(2, 3)]), 3)
    d = stack(top, bot)
    assert len(d.crossings()) == 2
    for c in d.crossings():
        assert c.over[0] == 0 and c.under[0] == 1


def test_intersections_of_two_squares():
    sq1 = ((F(0), F(0)), (F(2), F(0)), (F(2), F(2)), (F(0), F(2)))
    sq2 = translate((sq1,), (F(1), F(1)))[0]
    hits = find_intersections((sq1, sq2), 0)
    assert sorted(h[0] for h in hits) == [(F(1), F(2)), (F(2), F(1))]


def test_ray_through_vertex_rejected():
    poly = ((F(1), F(1)), (F(2), F(1)), (F(2), F(2)))
    with pytest.raises(GeneralPositionFailure):
        find_intersections((poly,), 2)


def test_diagram_json_roundtrip():
    d = stack(realize(Multicurve.of([(1, 3)]), 3), realize(Multicurve.of([(2,)]), 3))
    d = add_kink(d, 0, 1, 1)
    e = Diagram.from_json(d.to_json())
    assert e.strands == d.strands
    assert e.over == d.over
    assert e.writhe() == d.writhe()


def test_diagram_json_rejects_missing_decoration():
    d = stack(realize(Multicurve.of([(1, 2)]), 3), realize(Multicurve.of([(2, 3)]), 3))
    obj = d.to_json()
    obj["over"] = obj["over"][:1]
    with pytest.raises(ValueError, match="decoration"):
        Diagram.from_json(obj)


def test_kink_changes_writhe_by_sign():
    d = realize(Multicurve.of([(1, 2)]), 2)
    assert add_kink(d, 0, 0, 1).writhe() == 1
    assert add_kink(d, 0, 0, -1).writhe() == -1
