"""
Quotients of the S3 coinvariant algebra
=======================================

For a x + b y with a^2 - ab + b^2 = 0 the quotient of C by the ideal it
generates is a three dimensional uniserial module, free over both rank-one
invariant subalgebras.  Over Q(w) with w^2 = w - 1 there are two such lines.
"""
from __future__ import annotations

from twocat.findim import (
    coinvariant_algebra, dual_numbers, identity_bimodule_report, kernel_determinant, mab_isomorphic,
    reduce_monomial, verify_mab,
)
from twocat.scalars import FieldSpec

C = coinvariant_algebra()
print(C.names)
print("x^2 z =", reduce_monomial(2, 0, 1), "  y z =", reduce_monomial(0, 1, 1))

K = FieldSpec.quadratic(1, -1)
w = K.theta
for a, b in ((1, 1), (1, w), (1, 1 - w)):
    print((a, str(b)), "det =", kernel_determinant(a, b))

for b in (w, 1 - w):
    r = verify_mab(1, b)
    print(str(b), r.checks, r.details["stable_end_dim"])

print("(1,w) ~ (1,1-w):", mab_isomorphic(1, w, 1, 1 - w))
print("(1,w) ~ (2,2w): ", mab_isomorphic(1, w, 2, 2 * w))

# for k[x]/(x^2), multiplication by x on the identity bimodule factors
# through a projective bimodule, leaving a one dimensional stable End
rep = identity_bimodule_report(dual_numbers())
print(rep)
