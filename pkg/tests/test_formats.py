from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from twocat.builders import BipartiteSpec, CartanData, build_ca_table, build_cell_rep
from twocat.cells import cell_structure
from twocat.errors import ParseError, SemanticError
from twocat.formats import (
    Report, bundled_files, emit_dot, load_bundled_algebra, load_bundled_table, parse_algebra,
    parse_combination, parse_dims, parse_graph, parse_rep, parse_table, print_algebra, print_dims,
    print_graph, print_rep, print_table,
)
from twocat.scalars import sqrt_field
from twocat.tworep import diagram, principal_rep

GOLDEN = Path(__file__).parent / "golden"

SMALL = """\
objects: i
gens: e:i->i, F:i->i
id i = e
F * F = 2 F
"""


def test_small_table():
    t = parse_table(SMALL)
    assert t.compose("F", "F") == {"F": 2}
    assert t.compose("e", "F") == {"F": 1}


@pytest.mark.parametrize("text,err,line", [
    (SMALL + "F * F = F\n", ParseError, 5),
    (SMALL.replace("F * F = 2 F", "F * G = F"), SemanticError, 4),
    (SMALL.replace("F * F = 2 F", "F * F = 2 Q"), SemanticError, 0),
    (SMALL.replace("F * F = 2 F", ""), SemanticError, 0),
    (SMALL.replace("F * F = 2 F", "F * F = 1/2 F"), ParseError, 4),
    (SMALL.replace("gens: e:i->i, F:i->i", "gens: e:i->i, F:i=>i"), ParseError, 2),
    (SMALL.replace("id i = e", "id j = e"), SemanticError, 3),
    (SMALL + "F ** F\n", ParseError, 5),
])
def test_table_diagnostics(text, err, line):
    with pytest.raises(err) as exc:
        parse_table(text)
    if line:
        assert exc.value.line == line


def test_duplicate_line_names_first():
    with pytest.raises(ParseError) as exc:
        parse_table(SMALL + "F * F = F\n")
    assert "line 4" in str(exc.value)


def test_bundled_tables_round_trip():
    for name in bundled_files():
        if name.endswith(".tbl"):
            t = load_bundled_table(name)
            assert parse_table(print_table(t)) == t


def test_bundled_algebras_round_trip():
    for name in bundled_files():
        if name.endswith(".alg"):
            A = load_bundled_algebra(name)
            B = parse_algebra(print_algebra(A))
            assert (A.names, A.struct, A.unit, A.generators) == (B.names, B.struct, B.unit, B.generators)


def test_algebra_bad_structure():
    text = "field: Q\nbasis: one x\nunit: one\none * one = one\none * x = x\nx * one = 2 x\n"
    with pytest.raises(SemanticError):
        parse_algebra(text)


def test_algebra_dim_mismatch():
    with pytest.raises(SemanticError):
        parse_algebra("dim: 3\nbasis: one x\nunit: one\none * one = one\n")


def test_rep_round_trip(zz2):
    N = build_cell_rep(zz2)
    text = print_rep(N, "zz")
    back = parse_rep(text, N.table)
    assert back == N


def test_rep_diagnostics(zz2):
    t = build_ca_table(zz2)
    with pytest.raises(SemanticError):
        parse_rep("table: x\nbasis i: a, b\nmat F11 = [[1,0]]\n", t)
    with pytest.raises(ParseError) as exc:
        parse_rep("table: x\nbasis i: a\nmat F11 = [[-1]]\n", t)
    assert exc.value.line == 3
    with pytest.raises(SemanticError):
        parse_rep("table: x\nbasis i: a\nmat G = [[1]]\n", t)


def test_rep_loads_bundled_table():
    r = parse_rep("table: a2-soergel.tbl\nbasis i: v\nmat s = [[2]]\nmat t = [[2]]\n"
                  "mat st = [[4]]\nmat ts = [[4]]\nmat sts = [[8]]\n")
    assert r.size == 1


def test_graph_round_trip():
    g = parse_graph("parts: v1 v2 | w1\nedge v1 w1 eta=1\nedge v2 w1 eta=1\n")
    assert g.edges == (("v1", "w1"), ("v2", "w1"))
    assert parse_graph(print_graph(g)) == g
    with pytest.raises(SemanticError):
        parse_graph("parts: v1 | w1\nedge w1 v1 eta=1\n")


def test_dims():
    c = parse_dims("selfinjective: true\n2 1\n1 2\n")
    assert c == CartanData(((2, 1), (1, 2)), True)
    assert parse_dims(print_dims(c)) == c
    with pytest.raises(ParseError):
        parse_dims("2 x\n")
    with pytest.raises(SemanticError):
        parse_dims("2 1\n")


def test_combination_with_field():
    K = sqrt_field(2)
    c = parse_combination("s + (T) st + 1/2 t - (1-T) sts", ["s", "t", "st", "sts"], K)
    assert c == {"s": 1, "st": K.theta, "t": K(1, 0) / 2, "sts": K(-1, 1)}


def test_golden_dot(a2, zz2):
    d = diagram(principal_rep(a2))
    assert emit_dot(d, "P") == (GOLDEN / "a2-principal.dot").read_text()
    assert emit_dot(d, "P", decorated=False) == (GOLDEN / "a2-principal-plain.dot").read_text()
    assert emit_dot(cell_structure(a2, "left"), "left") == (GOLDEN / "a2-left-cells.dot").read_text()
    dc = diagram(principal_rep(build_ca_table(zz2)))
    assert emit_dot(dc, "P") == (GOLDEN / "ca-zigzag2-principal.dot").read_text()


def test_report_json():
    r = Report("x")
    r.add("a", True, {"v": sqrt_field(2).theta})
    r.add("b", False)
    assert not r.ok
    assert r.lines() == ["PASS  a", "FAIL  b"]
    assert '"v": "T"' in r.to_json()


names = st.sampled_from(["s", "t", "st", "ts", "sts"])


@given(st.dictionaries(names, st.integers(1, 9), min_size=1))
def test_table_line_round_trip(rhs):
    body = " + ".join(f"{m} {H}" for H, m in rhs.items())
    assert parse_combination(body, ["s", "t", "st", "ts", "sts"], integral=True) == rhs


@given(st.lists(st.lists(st.integers(0, 3), min_size=2, max_size=2), min_size=2, max_size=2), st.booleans())
def test_dims_round_trip(rows, si):
    rows[0][0] = max(rows[0][0], 1)
    rows[1][1] = max(rows[1][1], 1)
    c = CartanData(tuple(map(tuple, rows)), si)
    assert parse_dims(print_dims(c)) == c
    t = build_ca_table(c)
    assert parse_table(print_table(t)) == t
