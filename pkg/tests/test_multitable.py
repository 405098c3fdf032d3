from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from twocat.builders import CartanData, build_ca_table, dihedral_soergel_table
from twocat.errors import NoStar, NotComposable, UnknownGen
from twocat.multitable import Gen, MultiTable, compose, star_cell_compat, validate

from middle_cell_tables import B2, B2_COLS, I5, I5_COLS


def _parse_entry(text: str) -> dict:
    out = {}
    for part in text.split("+"):
        bits = part.split()
        m, H = (int(bits[0]), bits[1]) if len(bits) == 2 else (1, bits[0])
        out[H] = out.get(H, 0) + m
    return out


def _middle_block(t: MultiTable, rows: dict, cols: list[str], top: str):
    for F, entries in rows.items():
        for G, text in zip(cols, entries):
            got = {H: m for H, m in t.compose(F, G).items() if H != top}
            assert got == _parse_entry(text), (F, G)


def test_bundled_tables_valid(a2, b2, i25):
    for t in (a2, b2, i25):
        assert validate(t) == []


def test_a2_matches_kl_generation(a2):
    assert dihedral_soergel_table(3) == a2


def test_b2_middle_cell_products(b2):
    _middle_block(b2, B2, B2_COLS, "stst")


def test_i25_middle_cell_products(i25):
    _middle_block(i25, I5, I5_COLS, "ststs")


def test_a2_products(a2):
    assert compose(a2, "st", "ts") == {"sts": 2, "s": 2}
    assert compose(a2, "s", "ts") == {"sts": 1, "s": 1}
    assert compose(a2, "e", "sts") == {"sts": 1}


def test_corrupted_a2_reports_associativity(a2):
    bad = a2.replace("st", "ts", {"sts": 1})
    kinds = {v.kind for v in validate(bad)}
    assert "associativity" in kinds
    v = next(v for v in validate(bad) if v.kind == "associativity")
    assert len(v.witness) == 3 and "but" in v.message


def test_missing_entry_reported():
    t = MultiTable(["i"], [Gen("e", "i", "i"), Gen("F", "i", "i")], {"i": "e"},
                   {("e", "e"): {"e": 1}, ("e", "F"): {"F": 1}, ("F", "e"): {"F": 1}})
    assert [v.kind for v in validate(t)] == ["missing"]


def test_wrong_typing_reported():
    gens = [Gen("a", "i", "i"), Gen("b", "j", "j"), Gen("F", "i", "j")]
    table = {("a", "a"): {"a": 1}, ("b", "b"): {"b": 1}, ("F", "a"): {"F": 1}, ("b", "F"): {"F": 1},
             ("F", "F"): {"F": 1}}
    t = MultiTable(["i", "j"], gens, {"i": "a", "j": "b"}, table)
    assert any(v.kind == "typing" for v in validate(t))


def test_compose_errors(zz2):
    gens = [Gen("a", "i", "i"), Gen("b", "j", "j"), Gen("F", "i", "j")]
    table = {("a", "a"): {"a": 1}, ("b", "b"): {"b": 1}, ("F", "a"): {"F": 1}, ("b", "F"): {"F": 1}}
    two = MultiTable(["i", "j"], gens, {"i": "a", "j": "b"}, table)
    assert validate(two) == []
    with pytest.raises(NotComposable):
        compose(two, "F", "F")
    t = build_ca_table(zz2)
    with pytest.raises(UnknownGen):
        compose(t, "F11", "nope")


def test_star_checks(a2, zz2):
    assert star_cell_compat(a2) == []
    with pytest.raises(NoStar):
        star_cell_compat(build_ca_table(CartanData(zz2.dims, False)))
    broken = MultiTable(a2.objects, a2.gens, a2.identities, a2.table,
                        star={**a2.star, "st": "st", "ts": "ts"})
    assert validate(broken) == []  # st<->st is still a valid involution at the table level
    off = MultiTable(a2.objects, a2.gens, a2.identities, a2.table, star={**a2.star, "s": "t", "t": "s"})
    assert validate(off) == []
    assert star_cell_compat(off) == []


def test_ca_composition(zz2):
    t = build_ca_table(zz2)
    assert compose(t, "F12", "F21") == {"F11": 2}
    assert compose(t, "F12", "F11") == {"F11": 1}
    assert compose(t, "F11", "F11") == {"F11": 2}
    assert compose(t, "F12", "F22") == {"F12": 2}
    t3 = build_ca_table(CartanData(((2, 2), (1, 2)), False))
    assert compose(t3, "F11", "F21") == {"F11": 2}


cartan = st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.lists(st.lists(st.integers(0, 3), min_size=n, max_size=n), min_size=n, max_size=n),
    st.booleans()))


@given(cartan)
def test_ca_tables_associative(data):
    dims, si = data
    for i in range(len(dims)):
        dims[i][i] = max(dims[i][i], 1)
    t = build_ca_table(CartanData(tuple(map(tuple, dims)), si))
    assert validate(t) == []
