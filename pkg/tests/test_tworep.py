from __future__ import annotations

import json

import pytest

from twocat.builders import CartanData, build_ca_table, build_cell_rep, build_identity_rep
from twocat.cone import cell_algebra, search_goodness
from twocat.errors import HypothesisFailed, NotActionClosed, PreconditionError
from twocat.tworep import (
    RepMatrices, apex, cell_rep, check_positivity, cross_extension_certificate, dext_filters, diagram,
    direct_sum, is_transitive, principal_rep, recheck_certificate, rep_equivalence, rep_from_dict,
    rep_to_dict, self_extension_bruteforce, self_extension_certificate, ses_split, validate_rep,
)


def _edges(d):
    return sorted((sorted(a), sorted(b), sorted(c)) for a, b, c in d.edge_sets())


def _setup(c):
    t = build_ca_table(c)
    N = build_cell_rep(c, t)
    return t, N, search_goodness(cell_algebra(t, apex(N)))


def test_a2_principal_diagram(a2):
    d = diagram(principal_rep(a2))
    assert sorted(map(sorted, d.classes)) == [["e"], ["s", "ts"], ["st", "t"], ["sts"]]
    assert _edges(d) == sorted([
        (["e"], ["s", "ts"], ["s", "ts"]),
        (["e"], ["st", "t"], ["st", "t"]),
        (["s", "ts"], ["sts"], ["s", "st", "sts", "ts"]),
        (["st", "t"], ["sts"], ["st", "sts", "t", "ts"]),
    ])


def test_ca_principal_diagram_is_a_star(zz3):
    d = diagram(principal_rep(build_ca_table(zz3)))
    edges = _edges(d)
    assert len(edges) == 3
    for j, (src, dst, dec) in enumerate(sorted(edges, key=lambda e: e[1]), start=1):
        assert src == ["id"]
        assert dst == [f"F{i}{j}" for i in range(1, 4)] == dec


def test_cell_rep_matrices(zz2):
    N = build_cell_rep(zz2)
    assert N.mats["F12"] == [[1, 2], [0, 0]]
    assert N.mats["F21"] == [[0, 0], [2, 1]]
    assert validate_rep(N) == []


def test_cell_rep_matches_generic_subquotient(zz2):
    t = build_ca_table(zz2)
    generic = cell_rep(t, ["F11", "F21"])
    assert rep_equivalence(generic, build_cell_rep(zz2, t)) is not None


def test_apex_and_transitivity(a2, zz2):
    N = cell_rep(a2, ["s", "ts"])
    assert set(apex(N)) == {"s", "t", "st", "ts"}
    assert is_transitive(N)
    assert check_positivity(N, apex(N))
    assert apex(build_identity_rep(zz2)) == ("id",)
    assert not is_transitive(principal_rep(a2))


def test_validate_rep_catches_bad_matrix(zz2):
    N = build_cell_rep(zz2)
    mats = dict(N.mats)
    mats["F11"] = [[1, 0], [0, 0]]
    bad = RepMatrices(N.table, N.basis, mats)
    assert validate_rep(bad)


def test_direct_sum_diagram(a2):
    r = direct_sum(cell_rep(a2, ["s", "ts"]), cell_rep(a2, ["t", "st"]))
    d = diagram(r)
    assert len(d.classes) == 2 and d.hasse == []


def test_rep_dict_round_trip(zz2):
    N = build_cell_rep(zz2)
    back = rep_from_dict(N.table, json.loads(json.dumps(rep_to_dict(N))))
    assert back == N


def test_ses_split_principal(a2):
    P = principal_rep(a2)
    ses = ses_split(P, ["sts"])
    assert ses.K.size == 1 and ses.N.size == 5
    assert "s" in ses.theta and "e" not in ses.theta
    with pytest.raises(NotActionClosed):
        ses_split(P, ["e"])


def test_dext_filters(zz2):
    t, N, _ = _setup(zz2)
    K0 = build_identity_rep(zz2, t)
    res = {f.check: f.status for f in dext_filters(N, N, {"F11"})}
    assert set(res.values()) == {"pass"}
    res = {f.check: f for f in dext_filters(N, N, {"id"})}
    assert res["no-identity"].status == "fail" and res["no-identity"].witness == ["id"]
    res = {f.check: f.status for f in dext_filters(K0, N, {"F11"})}
    assert res["below-sub-apex"] == "fail"


def test_self_extension_certificate(dual, zz2):
    for c in (dual, zz2):
        t, N, w = _setup(c)
        cert = self_extension_certificate(N, w)
        assert cert.kind == "self-extension" and "empty" in cert.conclusion
        assert [h["clause"] for h in cert.hypotheses] == ["a", "b", "c", "d"]
        assert recheck_certificate(json.loads(json.dumps(cert.to_dict())), t)


def test_cross_extension_certificate(zz2):
    t, N, _ = _setup(zz2)
    K = build_identity_rep(zz2, t)
    wK = search_goodness(cell_algebra(t, apex(K)))
    cert = cross_extension_certificate(K, N, wK)
    assert cert.conclusion == "Dext(C_L1, C_L0) is empty"
    assert recheck_certificate(cert.to_dict(), t)


def test_cross_extension_needs_star(zz2):
    c = CartanData(zz2.dims, False)
    t, N, _ = _setup(c)
    K = build_identity_rep(c, t)
    with pytest.raises(PreconditionError):
        cross_extension_certificate(K, N, search_goodness(cell_algebra(t, apex(K))))


def test_cross_extension_wrong_direction(zz2):
    t, N, w = _setup(zz2)
    K = build_identity_rep(zz2, t)
    with pytest.raises(HypothesisFailed) as exc:
        cross_extension_certificate(N, K, w)
    assert exc.value.clause == "b"


def test_tampered_certificate_fails_recheck(zz2):
    t, N, w = _setup(zz2)
    d = self_extension_certificate(N, w).to_dict()
    d["witness"]["a"] = {"1": "7"}
    assert not recheck_certificate(d, t)


def test_bruteforce_only_zero(dual, zz2):
    for c in (dual, zz2):
        _, N, w = _setup(c)
        res = self_extension_bruteforce(N, w, 2)
        assert res["ok"] and res["solutions"] == [[[0] * N.size for _ in range(N.size)]]
        assert res["tried"] == 3 ** (N.size ** 2)
