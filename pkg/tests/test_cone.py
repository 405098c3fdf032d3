from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from twocat.cells import cell_structure
from twocat.cone import (
    ConeElement, GoodnessWitness, cell_algebra, cell_algebra_of, cone_mul, element_relation,
    search_goodness, verify_goodness, witness_from_dict, witness_to_dict,
)
from twocat.errors import MalformedWitness, NotInCone
from twocat.formats import bundled_path
from twocat.scalars import QQ, sqrt_field


def _b2_x(b2):
    K = sqrt_field(2)
    alg = cell_algebra_of(b2, "s")
    T = K.theta
    return ConeElement(alg, {"s": 1, "t": 1, "sts": 1, "tst": 1, "st": T, "ts": T}, K)


def _i25_y(i25):
    alg = cell_algebra_of(i25, "s")
    h = Fraction(1, 2)
    return ConeElement(alg, {"s": h, "t": h, "stst": h, "tsts": h, "st": 1, "ts": 1, "sts": 1, "tst": 1})


def test_b2_square(b2):
    x = _b2_x(b2)
    K = x.spec
    assert x * x == x.scale(8 + 4 * K.theta)
    assert verify_goodness(GoodnessWitness(x, 2, 1, 1, {1: 8 + 4 * K.theta}))


def test_i25_cube(i25):
    y = _i25_y(i25)
    assert y.power(3) == y.power(2).scale(15) + y.scale(5)
    assert verify_goodness(GoodnessWitness(y, 3, 2, 1, {2: 15, 1: 5}))


def test_i25_all_ones_has_no_identity(i25):
    alg = cell_algebra_of(i25, "s")
    assert search_goodness(alg, ("ones",)) is None


def test_bundled_witnesses(b2, i25):
    for t, name in ((b2, "b2-witness.json"), (i25, "i2-5-witness.json")):
        d = json.loads(bundled_path(name).read_text())
        w = witness_from_dict(cell_algebra(t, d["cell"]), d)
        assert verify_goodness(w)
        assert witness_to_dict(witness_from_dict(w.x.algebra, witness_to_dict(w))) == witness_to_dict(w)


def test_wrong_coefficient_gives_residual(b2):
    x = _b2_x(b2)
    res = verify_goodness(GoodnessWitness(x, 2, 1, 1, {1: x.spec(8, 3)}))
    assert not res.ok and res.residual
    assert set(res.residual) <= set(x.algebra.basis)


def test_perron_finds_b2(b2):
    w = search_goodness(cell_algebra_of(b2, "s"), ("perron",))
    assert w is not None and verify_goodness(w)
    assert w.n == 2


def test_perron_finds_i25(i25):
    w = search_goodness(cell_algebra_of(i25, "s"), ("perron",))
    assert w is not None and verify_goodness(w)


def test_a2_ones_is_good(a2):
    w = search_goodness(cell_algebra_of(a2, "s"))
    assert w is not None and verify_goodness(w)


def test_top_cell_truncation(a2):
    alg = cell_algebra_of(a2, "s")
    x = ConeElement(alg, {"st": 1})
    # st * st = 2 sts + st; sts lies above the cell and is dropped
    assert (x * x).coeffs == {"st": 1}


def test_not_in_cone(b2):
    alg = cell_algebra_of(b2, "s")
    x = ConeElement(alg, {"s": 1})
    with pytest.raises(NotInCone):
        verify_goodness(GoodnessWitness(x, 2, 1, 1, {1: 1}))


@pytest.mark.parametrize("n,k,l,a", [(1, 1, 1, {1: 1}), (2, 1, 1, {1: -1}), (3, 2, 1, {2: 1}),
                                     (2, 1, 1, {0: 1, 1: 1})])
def test_malformed_witness(b2, n, k, l, a):
    x = _b2_x(b2)
    with pytest.raises(MalformedWitness):
        GoodnessWitness(x, n, k, l, a)


def test_element_relation_b2(b2):
    x = _b2_x(b2)
    K = x.spec
    assert element_relation(x) == {2: K.one, 1: -(8 + 4 * K.theta)}


def test_star_orbits(a2):
    assert sorted(cell_algebra_of(a2, "s").star_orbits()) == [("s",), ("st", "ts"), ("t",)]


positive = st.fractions(min_value=Fraction(1, 8), max_value=8, max_denominator=8)


@given(positive, st.integers(0, 3))
def test_witness_scaling(lam, b):
    from twocat.formats import load_bundled_table
    t = _TABLES.setdefault("b2", load_bundled_table("b2-soergel.tbl"))
    K = sqrt_field(2)
    x = _b2_x(t)
    w = GoodnessWitness(x, 2, 1, 1, {1: 8 + 4 * K.theta})
    c = K(lam, Fraction(b, 4))
    assert verify_goodness(w.scaled(c))


@given(st.lists(positive, min_size=4, max_size=4), st.lists(positive, min_size=4, max_size=4))
def test_truncated_product_associative(u, v):
    from twocat.formats import load_bundled_table
    t = _TABLES.setdefault("a2", load_bundled_table("a2-soergel.tbl"))
    alg = cell_algebra_of(t, "s")
    x = ConeElement(alg, dict(zip(alg.basis, u)))
    y = ConeElement(alg, dict(zip(alg.basis, v)))
    assert cone_mul(cone_mul(x, y), x) == cone_mul(x, cone_mul(y, x))


_TABLES: dict = {}
