"""The evaluation theta and the pairing it induces.

theta adds a full twist at each puncture and evaluates in the plane. The
pairing theta(xy) is symmetric, and on the basis representatives it vanishes
to a predictable order at A = -1. The leading coefficients there are what
makes the quotient basis independent.
"""

from __future__ import annotations

from skeinquot.algebra import NamedBasisRep, basis_rep, curve
from skeinquot.laurent import lp_val_aplus1
from skeinquot.theta import (
    divisibility_certificate,
    four_point_defect,
    gram,
    standard_tests,
    theta_pair_closed_form,
    theta_pairing,
)

print("theta(c12 c23) =", theta_pairing(curve(4, 1, 2), curve(4, 2, 3)))
print("closed form     =", theta_pair_closed_form((1, 2), (2, 3)))

g = gram(3)
print(f"pairing matrix on {len(g.labels)} basis reps for b=3 matches the closed form: {g.closed_form_ok}")
for u in (NamedBasisRep("pair", (1, 2)), NamedBasisRep("triple", (1, 2, 3))):
    v = theta_pairing(basis_rep(u, 3), basis_rep(u, 3))
    print(f"  theta({u}^2) vanishes to order {lp_val_aplus1(v)} at A = -1")

cert = divisibility_certificate(four_point_defect(4), 5, standard_tests(4, products=False))
print("four-point defect, degree 5:", cert.verdict, f"({len(cert.entries)} tests, a necessary condition only)")
