"""Classes modulo the square of the augmentation ideal.

Every element has a normal form in the small quotient spanned by the unit,
h = A + 1, the symmetric pairs <i,j> and the alternating triples <i,j,k>.
Curves can be classified either by resolving them or straight from their
word in the ray generators; both routes agree.
"""

from __future__ import annotations

from skeinquot.algebra import curve, lie, mul
from skeinquot.geom import Multicurve, add_kink, realize
from skeinquot.quotient import ftype_sum_check, link_class, nf2, unit_class, word_class

b = 4
for s in [(1,), (1, 3), (1, 2, 4)]:
    via_curve = nf2(curve(b, *s))
    via_word = unit_class(-2) + word_class(s)
    print(f"c{''.join(map(str, s))}: {via_curve}   word route agrees: {via_curve == via_word}")

x = mul(curve(3, 1, 2), curve(3, 2, 3))
print("class of c12 c23:", nf2(x))
print("class of [c12, c23]:", nf2(lie(curve(3, 1, 2), curve(3, 2, 3))))

d = realize(Multicurve.of([(1, 3)]), 3)
print("writhe-corrected class ignores kinks:", link_class(add_kink(d, 0, 0, 1)) == link_class(d))

m = Multicurve.of([(1,), (2, 3), (1, 2, 3)])
print("alternating sub-multicurve sum of", m, "vanishes:", ftype_sum_check(m, 2, 3).is_zero())
