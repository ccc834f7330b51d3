"""Dehn twists as exponentials of a bracket, and relations among them.

A Dehn twist along a subset curve acts on the skein algebra. Modulo the
square of the augmentation ideal it equals exp(sigma(L(c))) for an explicit
series L. The same elements combined with the Baker-Campbell-Hausdorff
product satisfy the pure braid relations and the lantern relation.
"""

from __future__ import annotations

from skeinquot.algebra import curve
from skeinquot.series import (
    RELATION_FAMILIES,
    L_of,
    dehn_verify,
    lantern_check,
    relation_instances,
    zeta_check,
)

print("L(c12) to budget 4:", L_of((1, 2), 4, b=3).value)
for sign in (1, -1):
    r = dehn_verify((1, 2), curve(3, 2, 3), sign)
    print(f"{r.name}: geometry {r.lhs}  formula {r.rhs}  {r.verdict}")

for fam in RELATION_FAMILIES:
    inst = relation_instances(fam, 4)
    ok = all(r.equal for name, w, t in inst for r in zeta_check(name, w, t, 4))
    print(f"relation family {fam}: {len(inst)} instances, {'PASS' if ok else 'FAIL'}")
print("lantern:", lantern_check().verdict)
