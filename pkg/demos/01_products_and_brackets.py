"""Stacking curves on a punctured disk and resolving the crossings.

Two subset curves on three punctures, c12 and c23, overlap around puncture 2.
Their product is computed by drawing c12 above c23 and resolving both
crossings with the Kauffman bracket. One resolution produces a curve that is
not a subset curve, so it appears as a word in the ray generators.
"""

from __future__ import annotations

from skeinquot.algebra import commutator, curve, eps, lie, mul
from skeinquot.geom import clasp_diagram
from skeinquot.reduce import bracket_s3
from skeinquot.theta import K_L

c12, c23 = curve(3, 1, 2), curve(3, 2, 3)

print("c12 * c23 =", mul(c12, c23))
print("c23 * c12 =", mul(c23, c12))
print("bracket [c12, c23] =", lie(c12, c23))
print("augmentation of the product:", eps(mul(c12, c23)))

# a curve around every puncture is boundary parallel, hence central
print("c123 commutes with c12:", commutator(curve(3, 1, 2, 3), c12).is_zero())

print()
print("clasp closures, evaluated in the 3-sphere:")
for n in range(4):
    print(f"  n={n}: {bracket_s3(clasp_diagram(n))}   matches K(L_n): {bracket_s3(clasp_diagram(n)) == K_L(n)}")
