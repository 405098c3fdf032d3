"""
Cells and diagrams of dihedral Soergel tables
=============================================

Load the bundled A2 table, recover its cells, and draw the principal
2-representation as a decorated Hasse diagram.
"""
from __future__ import annotations

from twocat import cell_structure, diagram, principal_rep
from twocat.formats import emit_dot, load_bundled_table

a2 = load_bundled_table("a2-soergel.tbl")

# composition is row o column, so st * ts means theta_s o theta_t o theta_t o theta_s
print("st o ts =", a2.compose("st", "ts"))

for kind in ("left", "right", "twosided"):
    cs = cell_structure(a2, kind)
    print(kind, [set(c) for c in cs.cells])

# the principal action groups generators into the four left cells;
# each Hasse edge is labelled by the generators realizing it
d = diagram(principal_rep(a2))
for src, dst, dec in d.edge_sets():
    print(sorted(src), "->", sorted(dst), "via", sorted(dec))

print(emit_dot(d, "A2"))

# B2 and I2(5) each have three two-sided cells; the middle one is large
for name in ("b2-soergel.tbl", "i2-5-soergel.tbl"):
    t = load_bundled_table(name)
    print(name, [len(c) for c in cell_structure(t, "twosided").cells])
