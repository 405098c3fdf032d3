from __future__ import annotations

from hypothesis import given, strategies as st

from twocat.builders import CartanData, build_ca_table, build_da_table, da_cells_check
from twocat.cells import (
    cell_structure, is_cell_order_consistent, is_idempotent_cell, is_strongly_regular, preorder,
)


def _cells(t, kind):
    return sorted(sorted(c) for c in cell_structure(t, kind).cells)


def test_a2_left_cells(a2):
    assert _cells(a2, "left") == sorted([["e"], ["s", "ts"], ["st", "t"], ["sts"]])


def test_a2_right_cells(a2):
    assert _cells(a2, "right") == sorted([["e"], ["s", "st"], ["t", "ts"], ["sts"]])


def test_a2_two_sided_order(a2):
    cs = cell_structure(a2, "twosided")
    assert len(cs.cells) == 3
    e, mid, top = cs.cell_of("e"), cs.cell_of("s"), cs.cell_of("sts")
    assert cs.leq(e, mid) and cs.leq(mid, top) and not cs.leq(top, e)


def test_dihedral_two_sided(b2, i25):
    for t, mid in ((b2, 6), (i25, 8)):
        cs = cell_structure(t, "twosided")
        assert sorted(map(len, cs.cells)) == [1, 1, mid]
        assert all(is_idempotent_cell(t, c)[0] for c in cs.cells)


def test_a2_middle_cell_strongly_regular(a2):
    assert is_strongly_regular(a2, cell_structure(a2, "twosided").cell("s"))[0]


def test_b2_middle_cell_not_strongly_regular(b2):
    ok, why = is_strongly_regular(b2, cell_structure(b2, "twosided").cell("s"))
    assert not ok and why


def test_ca_cells(zz3):
    t = build_ca_table(zz3)
    assert _cells(t, "left") == [["F11", "F21", "F31"], ["F12", "F22", "F32"], ["F13", "F23", "F33"],
                                 ["id"]]
    J = cell_structure(t, "twosided").cell("F11")
    assert len(J) == 9 and is_strongly_regular(t, J)[0]


def test_da_cells_form_diamond(dual):
    info = da_cells_check(build_da_table(dual))
    assert info["diamond"]
    assert len(info["cells"]) == 4


def test_preorder_is_reflexive(a2):
    up = preorder(a2, "left")
    assert all(F in up[F] for F in a2.names)


def test_order_consistent(a2, b2):
    assert is_cell_order_consistent(a2) and is_cell_order_consistent(b2)


@given(st.integers(1, 3).flatmap(lambda n: st.lists(
    st.lists(st.integers(0, 2), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_ca_cell_counts(dims):
    for i in range(len(dims)):
        dims[i][i] = max(dims[i][i], 1)
    t = build_ca_table(CartanData(tuple(map(tuple, dims))))
    assert len(cell_structure(t, "left").cells) == len(dims) + 1
    assert len(cell_structure(t, "twosided").cells) == 2
