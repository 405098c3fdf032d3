"""
Extensions between cell 2-representations
=========================================

Build the projective-functor table of the zigzag algebra with two vertices,
glue projectives to an extra module, and certify that certain extensions
cannot exist.
"""
from __future__ import annotations

import json

from twocat.builders import (
    CartanData, SignatureInput, build_ca_table, build_cell_rep, build_identity_rep,
    build_signature_extension,
)
from twocat.cone import cell_algebra, search_goodness
from twocat.tworep import (
    apex, cross_extension_certificate, dext_filters, recheck_certificate, self_extension_bruteforce,
    self_extension_certificate,
)

c = CartanData(((2, 1), (1, 2)), selfinjective=True)
t = build_ca_table(c)
print("F12 o F21 =", t.compose("F12", "F21"))

# the gluing set theta depends only on which simples occur in the module
for dv in ((1, 0), (0, 1), (1, 1)):
    _, ses = build_signature_extension(SignatureInput(c, dv), t)
    print(dv, sorted(ses.theta))
    print("   ", [(f.check, f.status) for f in dext_filters(ses.K, ses.N, ses.theta)])

N = build_cell_rep(c, t)
w = search_goodness(cell_algebra(t, apex(N)))
print("witness:", w.relation_text())

cert = self_extension_certificate(N, w)
print(cert.conclusion)
print(json.dumps(cert.hypotheses, indent=1))

K0 = build_identity_rep(c, t)
cross = cross_extension_certificate(K0, N, search_goodness(cell_algebra(t, apex(K0))))
print(cross.conclusion, recheck_certificate(cross.to_dict(), t))

# brute force: every 0..2 block X gluing N to itself breaks the identity unless X = 0
res = self_extension_bruteforce(N, w, 2)
print(res["tried"], "blocks tried, nonzero solutions:", res["counterexamples"])
