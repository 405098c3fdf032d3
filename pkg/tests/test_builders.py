from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from twocat.builders import (
    BipartiteSpec, CartanData, SignatureInput, build_bimodule_extension, build_bipartite_rep,
    build_ca_table, build_da_table, build_signature_extension, da_bruteforce_check, da_cells_check,
    da_names, dihedral_elements, dihedral_soergel_table, left_cell_ca, signature_theta,
)
from twocat.cells import cell_structure
from twocat.errors import PreconditionError, SemanticError
from twocat.findim import dual_numbers
from twocat.multitable import compose, validate
from twocat.suite import graph_selfcheck
from twocat.tworep import dext_filters, diagram, validate_rep


def test_cartan_rejects_bad_data():
    for dims in ((), ((1, 2),), ((0,),), ((1, -1), (0, 1))):
        with pytest.raises(ValueError):
            CartanData(dims)


def test_signature_theta(zz2):
    _, ses = build_signature_extension(SignatureInput(zz2, (1, 0)))
    assert ses.theta == left_cell_ca(zz2, 1) == {"F11", "F21"}
    t = build_ca_table(zz2)
    J = set(cell_structure(t, "twosided").cell("F11"))
    for dv in ((1, 1), (3, 2)):
        _, ses = build_signature_extension(SignatureInput(zz2, dv), t)
        assert ses.theta == J


def test_signature_rep_shape(zz2):
    r, ses = build_signature_extension(SignatureInput(zz2, (2, 1)))
    assert r.labels == ("P1", "P2", "M")
    assert r.mats["F12"][0] == [1, 2, 1]
    assert ses.sub_basis == ("P1", "P2")


def test_signature_input_validation(zz2):
    with pytest.raises(ValueError):
        SignatureInput(zz2, (0, 0))
    with pytest.raises(ValueError):
        SignatureInput(zz2, (1,))


def test_bipartite_example(zz2):
    g = BipartiteSpec(("v1", "v2"), ("w1",), (("v1", "w1"), ("v2", "w1")), {("v1", "w1"): 1, ("v2", "w1"): 1})
    r = build_bipartite_rep(zz2, g)
    assert validate_rep(r) == []
    assert graph_selfcheck(zz2, g)
    d = diagram(r)
    assert len(d.hasse) == 2


def test_bipartite_rejects_mixed_eta(zz2):
    g = BipartiteSpec(("v1", "v2"), ("w1",), (("v1", "w1"), ("v2", "w1")), {("v1", "w1"): 1, ("v2", "w1"): 2})
    with pytest.raises(SemanticError):
        build_bipartite_rep(zz2, g)


def test_da_table(dual, zz2):
    for c in (dual, zz2):
        t = build_da_table(c)
        assert validate(t) == []
        info = da_cells_check(t)
        assert info["diamond"]
    names = da_names(2)
    assert len(names["F"]) == 16 and "F12_21" in names["F"]
    t = build_da_table(zz2)
    assert compose(t, "G12", "G21") == {"G11": 2}
    assert compose(t, "H12", "H21") == {"H22": 2}
    assert compose(t, "H11", "H12") == {"H11": 1}


def test_da_matches_bimodule_dimensions():
    assert da_bruteforce_check(dual_numbers()) == []


def test_bimodule_extension(zz2):
    r, ses, info = build_bimodule_extension(zz2, [[2, 1], [1, 2]])
    assert info["m_right"] == [[1, 0], [0, 1]] == info["m_left"]
    assert info["meets_all"]
    assert r.mats["F12_21"][r.index("P11")][r.index("M")] == 2
    assert r.mats["F11_21"][r.index("P11")][r.index("M")] == 1


def test_bimodule_extension_zero_rows(zz3):
    D = [[0, 0, 0], [0, 1, 2], [0, 2, 4]]
    _, ses, info = build_bimodule_extension(zz3, D)
    assert info["m_right"] == [[0, 0, 0], [0, 0, 1], [0, 0, 2]]
    assert not any(F.startswith("G") and F.endswith("1") for F in ses.theta)


def test_bimodule_extension_rejects_non_integral(zz2):
    with pytest.raises(PreconditionError):
        build_bimodule_extension(zz2, [[1, 0], [0, 0]])


def test_dihedral_elements():
    assert dihedral_elements(3) == ["e", "s", "t", "st", "ts", "sts"]
    assert len(dihedral_elements(5)) == 10
    assert validate(dihedral_soergel_table(4)) == []


@st.composite
def bipartite(draw):
    n = draw(st.integers(1, 3))
    dims = [[draw(st.integers(0, 2)) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        dims[i][i] = max(dims[i][i], 1)
    p0 = tuple(f"v{i}" for i in range(draw(st.integers(1, 6))))
    p1 = tuple(f"w{i}" for i in range(draw(st.integers(1, 6))))
    eta_w = {w: draw(st.integers(1, n)) for w in p1}
    edges = tuple(sorted(draw(st.sets(st.tuples(st.sampled_from(p0), st.sampled_from(p1)), min_size=1))))
    return CartanData(tuple(map(tuple, dims))), BipartiteSpec(p0, p1, edges, {e: eta_w[e[1]] for e in edges})


@given(bipartite())
def test_bipartite_diagram_is_graph(data):
    c, g = data
    r = build_bipartite_rep(c, g)
    assert validate_rep(r) == []
    assert graph_selfcheck(c, g)


@st.composite
def signature_inputs(draw):
    n = draw(st.integers(1, 3))
    dims = [[draw(st.integers(0, 2)) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        dims[i][i] = max(dims[i][i], 1)
    dv = [draw(st.integers(0, 2)) for _ in range(n)]
    if not any(dv):
        dv[draw(st.integers(0, n - 1))] = 1
    return SignatureInput(CartanData(tuple(map(tuple, dims)), draw(st.booleans())), tuple(dv))


@given(signature_inputs())
def test_signature_theta_two_routes(s):
    r, ses = build_signature_extension(s)
    assert validate_rep(r) == []
    assert ses.theta == signature_theta(s.cartan, s.dimvec)


@given(signature_inputs())
def test_filters_pass_on_signature_extensions(s):
    _, ses = build_signature_extension(s)
    assert all(f.status == "pass" for f in dext_filters(ses.K, ses.N, ses.theta))


@st.composite
def bimodule_inputs(draw):
    n = draw(st.integers(1, 2))
    d = [[draw(st.integers(0, 1)) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        d[i][i] = draw(st.integers(1, 2))
    X = [[draw(st.integers(0, 2)) for _ in range(n)] for _ in range(n)]
    if not any(map(any, X)):
        X[0][0] = 1
    # D = d X d makes both D d^-1 and d^-1 D non-negative integral
    dX = [[sum(d[i][k] * X[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    D = [[sum(dX[i][k] * d[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return CartanData(tuple(map(tuple, d)), True), D


@given(bimodule_inputs())
def test_bimodule_extensions_functorial(data):
    c, D = data
    try:
        r, ses, _ = build_bimodule_extension(c, D)
    except PreconditionError:
        return  # singular Cartan matrix
    assert validate_rep(r) == []
    assert all(f.status == "pass" for f in dext_filters(ses.K, ses.N, ses.theta))
