"""
Positive elements with a polynomial identity
============================================

In the middle cell of B2 the element with weights 1 on s, t, sts, tst and
sqrt 2 on st, ts squares to a multiple of itself.  The search routine finds
such elements from the Perron vector of the cell's truncated action.
"""
from __future__ import annotations

from twocat import ConeElement, GoodnessWitness, cell_algebra_of, search_goodness, verify_goodness
from twocat.formats import load_bundled_table
from twocat.scalars import sqrt_field

b2 = load_bundled_table("b2-soergel.tbl")
K = sqrt_field(2)
T = K.theta
alg = cell_algebra_of(b2, "s")
print("cell basis:", alg.basis)

x = ConeElement(alg, {"s": 1, "t": 1, "sts": 1, "tst": 1, "st": T, "ts": T}, K)
print("x*x =", x * x)

w = GoodnessWitness(x, 2, 1, 1, {1: 8 + 4 * T})
print(w.relation_text(), "->", verify_goodness(w).ok)

# a wrong coefficient leaves a residual
bad = GoodnessWitness(x, 2, 1, 1, {1: K(8, 3)})
print("residual:", {F: str(v) for F, v in verify_goodness(bad).residual.items()})

# I2(5): the all-ones element has no identity of this shape, Perron finds one
i25 = load_bundled_table("i2-5-soergel.tbl")
mid = cell_algebra_of(i25, "s")
print("ones:", search_goodness(mid, ("ones",)))
found = search_goodness(mid, ("perron",))
print("perron:", found.relation_text())
print({F: str(found.x[F]) for F in mid.basis})
