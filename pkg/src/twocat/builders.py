"""Tables and representations for the standard families.

* C_A: projective functors for a basic self-injective algebra A, from its
  Cartan data dims[t][u] = dim e_t A e_u.
* D_A: left-projective, right-projective and E-projective functors over
  A-A-bimodules (the composition rules are derived in docs/da_table.md).
* dihedral Soergel tables, computed from the Kazhdan-Lusztig basis at v = 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .cells import cell_structure
from .errors import PreconditionError, SemanticError
from .multitable import Gen, MultiTable, validate
from .tworep import RepMatrices, SesDecomposition, ses_split, validate_rep

OBJ = "i"


@dataclass(frozen=True)
class CartanData:
    dims: tuple[tuple[int, ...], ...]
    selfinjective: bool = False

    def __post_init__(self):
        dims = tuple(tuple(int(x) for x in row) for row in self.dims)
        object.__setattr__(self, "dims", dims)
        n = len(dims)
        if n == 0:
            raise ValueError("Cartan data needs at least one idempotent")
        if any(len(row) != n for row in dims):
            raise ValueError("Cartan matrix must be square")
        if any(x < 0 for row in dims for x in row):
            raise ValueError("Cartan entries must be non-negative")
        if any(dims[t][t] < 1 for t in range(n)):
            raise ValueError("Cartan diagonal entries must be positive")

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def dim_algebra(self) -> int:
        return sum(map(sum, self.dims))


@dataclass(frozen=True)
class SignatureInput:
    cartan: CartanData
    dimvec: tuple[int, ...]
    label: str = "M"

    def __post_init__(self):
        object.__setattr__(self, "dimvec", tuple(int(x) for x in self.dimvec))
        if len(self.dimvec) != self.cartan.n:
            raise ValueError("dimvec length must equal n")
        if any(x < 0 for x in self.dimvec) or not any(self.dimvec):
            raise ValueError("dimvec must be non-negative and nonzero")

    @property
    def signature(self) -> frozenset[int]:
        return frozenset(t + 1 for t, d in enumerate(self.dimvec) if d > 0)


@dataclass(frozen=True)
class BipartiteSpec:
    part0: tuple[str, ...]
    part1: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    eta: Mapping[tuple[str, str], int] = field(default_factory=dict)

    def validate(self, n: int) -> None:
        if set(self.part0) & set(self.part1):
            raise SemanticError("the two vertex parts overlap")
        seen: dict[str, int] = {}
        for v, w in self.edges:
            if v not in self.part0 or w not in self.part1:
                raise SemanticError(f"edge ({v}, {w}) does not go from part 0 to part 1")
            e = self.eta.get((v, w))
            if e is None or not 1 <= e <= n:
                raise SemanticError(f"edge ({v}, {w}) needs eta in 1..{n}")
            if seen.setdefault(w, e) != e:
                raise SemanticError(f"edges into {w} carry different eta values")


def _name(prefix: str, s: int, t: int, n: int) -> str:
    return f"{prefix}{s}{t}" if n <= 9 else f"{prefix}{s}_{t}"


def ca_name(s: int, t: int, n: int) -> str:
    return _name("F", s, t, n)


def left_cell_ca(c: CartanData, j: int) -> frozenset[str]:
    """L_j = {F_ij : i}, the left cell with second index j."""
    return frozenset(ca_name(i, j, c.n) for i in range(1, c.n + 1))


# C_A ---------------------------------------------------------------------

def build_ca_table(c: CartanData) -> MultiTable:
    """F_st o F_uv = dims[t][u] F_sv, plus the identity."""
    n = c.n
    idx = range(1, n + 1)
    names = ["id"] + [ca_name(s, t, n) for s in idx for t in idx]
    gens = [Gen(F, OBJ, OBJ) for F in names]
    table: dict = {}
    for F in names:
        table[("id", F)] = {F: 1}
        table[(F, "id")] = {F: 1}
    for s in idx:
        for t in idx:
            for u in idx:
                for v in idx:
                    m = c.dims[t - 1][u - 1]
                    table[(ca_name(s, t, n), ca_name(u, v, n))] = {ca_name(s, v, n): m} if m else {}
    star = {"id": "id"}
    for s in idx:
        for t in idx:
            star[ca_name(s, t, n)] = ca_name(t, s, n)
    # the star exists because C_A is weakly fiat; that needs A self-injective
    return MultiTable([OBJ], gens, {OBJ: "id"}, table, star if c.selfinjective else None,
                      name=f"C_A(n={n})")


def build_cell_rep(c: CartanData, table: MultiTable | None = None) -> RepMatrices:
    """Action on indecomposable projectives P_1..P_n: F_st P_u = P_s^dims[t][u]."""
    t = table or build_ca_table(c)
    n = c.n
    basis = [(f"P{u}", OBJ) for u in range(1, n + 1)]
    mats = {}
    for s in range(1, n + 1):
        for tt in range(1, n + 1):
            M = [[0] * n for _ in range(n)]
            M[s - 1] = list(c.dims[tt - 1])
            mats[ca_name(s, tt, n)] = M
    r = RepMatrices(t, basis, mats, "C_L1")
    _assert_valid(r)
    return r


def build_identity_rep(c: CartanData, table: MultiTable | None = None) -> RepMatrices:
    """The rank-one representation on which only the identity acts nontrivially."""
    t = table or build_ca_table(c)
    return RepMatrices(t, [("L0", OBJ)], {"id": [[1]]}, "C_L0")


def signature_theta(c: CartanData, dimvec: Sequence[int]) -> frozenset[str]:
    """Union of the left cells L_j over j with dimvec[j] > 0 (read off dimvec only)."""
    out: set[str] = set()
    for j, d in enumerate(dimvec, start=1):
        if d > 0:
            out |= left_cell_ca(c, j)
    return frozenset(out)


def build_signature_extension(s: SignatureInput, table: MultiTable | None = None
                              ) -> tuple[RepMatrices, SesDecomposition]:
    """Projectives P_1..P_n plus one extra object M with F_st M = P_s^dimvec[t]."""
    c = s.cartan
    t = table or build_ca_table(c)
    n = c.n
    basis = [(f"P{u}", OBJ) for u in range(1, n + 1)] + [(s.label, OBJ)]
    mats = {}
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            M = [[0] * (n + 1) for _ in range(n + 1)]
            M[a - 1][:n] = list(c.dims[b - 1])
            M[a - 1][n] = s.dimvec[b - 1]
            mats[ca_name(a, b, n)] = M
    r = RepMatrices(t, basis, mats, f"M_{s.label}")
    _assert_valid(r)
    return r, ses_split(r, [f"P{u}" for u in range(1, n + 1)])


def build_bipartite_rep(c: CartanData, g: BipartiteSpec, table: MultiTable | None = None) -> RepMatrices:
    """Objects M_v (v in part 0) and X_{j,w} (w in part 1, j = 1..n).

    F_st X_{u,w} = dims[t][u] X_{s,w};  F_st M_v = sum of X_{s,w} over the
    edges (v, w) with eta(v, w) = t.
    """
    n = c.n
    g.validate(n)
    t = table or build_ca_table(c)
    basis = [(f"M_{v}", OBJ) for v in g.part0]
    basis += [(f"X{j}_{w}", OBJ) for w in g.part1 for j in range(1, n + 1)]
    pos = {l: i for i, (l, _) in enumerate(basis)}
    size = len(basis)
    mats = {}
    for s in range(1, n + 1):
        for tt in range(1, n + 1):
            M = [[0] * size for _ in range(size)]
            for w in g.part1:
                for u in range(1, n + 1):
                    m = c.dims[tt - 1][u - 1]
                    if m:
                        M[pos[f"X{s}_{w}"]][pos[f"X{u}_{w}"]] = m
            for v, w in g.edges:
                if g.eta[(v, w)] == tt:
                    M[pos[f"X{s}_{w}"]][pos[f"M_{v}"]] += 1
            mats[ca_name(s, tt, n)] = M
    r = RepMatrices(t, basis, mats, "X_Gamma")
    _assert_valid(r)
    return r


# D_A ---------------------------------------------------------------------

def da_names(n: int) -> dict[str, list[str]]:
    idx = range(1, n + 1)
    G = [_name("G", s, t, n) for s in idx for t in idx]
    H = [_name("H", u, v, n) for u in idx for v in idx]
    F = [f"F{s}{t}_{u}{v}" if n <= 9 else f"F{s}_{t}__{u}_{v}"
         for s in idx for t in idx for u in idx for v in idx]
    return {"id": ["id"], "G": G, "H": H, "F": F}


def build_da_table(c: CartanData) -> MultiTable:
    """Composition table of {id, G_st, H_uv, F_(st,uv)}; see docs/da_table.md."""
    n = c.n
    d = c.dims
    idx = list(range(1, n + 1))
    G = lambda s, t: _name("G", s, t, n)  # noqa: E731
    H = lambda u, v: _name("H", u, v, n)  # noqa: E731
    F = lambda s, t, u, v: (f"F{s}{t}_{u}{v}" if n <= 9 else f"F{s}_{t}__{u}_{v}")  # noqa: E731
    # every generator as (left pair or None, right pair or None)
    parts: dict[str, tuple] = {"id": (None, None)}
    for s in idx:
        for t in idx:
            parts[G(s, t)] = ((s, t), None)
            parts[H(s, t)] = (None, (s, t))
    for s in idx:
        for t in idx:
            for u in idx:
                for v in idx:
                    parts[F(s, t, u, v)] = ((s, t), (u, v))
    name_of = {p: nm for nm, p in parts.items()}

    def compose(x, y):
        # x o y, y applied first: left components compose, right components compose in reverse
        (lx, rx), (ly, ry) = parts[x], parts[y]
        mult = 1
        if lx and ly:
            mult *= d[lx[1] - 1][ly[0] - 1]
            left = (lx[0], ly[1])
        else:
            left = lx or ly
        if rx and ry:
            # X (x) P_ry then (x) P_rx: e_{ry.v} A e_{rx.u}
            mult *= d[ry[1] - 1][rx[0] - 1]
            right = (ry[0], rx[1])
        else:
            right = rx or ry
        return {name_of[(left, right)]: mult} if mult else {}

    names = list(parts)
    gens = [Gen(x, OBJ, OBJ) for x in names]
    table = {(x, y): compose(x, y) for x in names for y in names}
    star = {}
    for x, (l, r) in parts.items():
        star[x] = name_of[((l[1], l[0]) if l else None, (r[1], r[0]) if r else None)]
    return MultiTable([OBJ], gens, {OBJ: "id"}, table, star, name=f"D_A(n={n})")


def da_cells_check(t: MultiTable) -> dict:
    """Two-sided cells {id} < {G..}, {H..} < {F..} with a diamond Hasse diagram."""
    cs = cell_structure(t, "twosided")
    kinds = []
    for cell in cs.cells:
        k = {F[0] if F != "id" else "id" for F in cell}
        kinds.append("".join(sorted(k)))
    pos = {k: i for i, k in enumerate(kinds)}
    ok = sorted(kinds) == sorted(["id", "G", "H", "F"])
    if ok:
        want = {(pos["id"], pos["G"]), (pos["id"], pos["H"]), (pos["G"], pos["F"]), (pos["H"], pos["F"])}
        ok = set(cs.hasse) == want
    return {"cells": cs.cells, "kinds": kinds, "hasse": cs.hasse, "diamond": ok}


def _inverse_int(M: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            raise PreconditionError("Cartan matrix is singular")
        A[c], A[p] = A[p], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def _nonneg_int_matrix(M, what: str) -> list[list[int]]:
    out = []
    for row in M:
        r = []
        for x in row:
            if Fraction(x).denominator != 1 or x < 0:
                raise PreconditionError(f"{what} is not a non-negative integer matrix: {x}")
            r.append(int(x))
        out.append(r)
    return out


def build_bimodule_extension(c: CartanData, D: Sequence[Sequence[int]], table: MultiTable | None = None
                     ) -> tuple[RepMatrices, SesDecomposition, dict]:
    """E-projectives P_(a,b) = A e_a (x) e_b A plus one bimodule M with D[t][u] = dim e_t M e_u.

    e_t M as a right module is sum_b (e_b A)^m[t][b] with m = D dims^-1, and
    M e_u as a left module is sum_a (A e_a)^m'[a][u] with m' = dims^-1 D;
    both must be non-negative integer matrices.
    """
    n = c.n
    d = c.dims
    D = [[int(x) for x in row] for row in D]
    if len(D) != n or any(len(row) != n for row in D):
        raise PreconditionError("D must be n x n")
    if not any(any(row) for row in D):
        raise PreconditionError("D = 0 describes the zero module")
    inv = _inverse_int(d)
    m = _nonneg_int_matrix([[sum(Fraction(D[t][k]) * inv[k][b] for k in range(n)) for b in range(n)]
                            for t in range(n)], "D dims^-1")
    mp = _nonneg_int_matrix([[sum(inv[a][k] * D[k][u] for k in range(n)) for u in range(n)]
                             for a in range(n)], "dims^-1 D")
    t = table or build_da_table(c)
    names = da_names(n)
    idx = range(1, n + 1)
    P = lambda a, b: f"P{a}{b}" if n <= 9 else f"P{a}_{b}"  # noqa: E731
    basis = [(P(a, b), OBJ) for a in idx for b in idx] + [("M", OBJ)]
    pos = {l: i for i, (l, _) in enumerate(basis)}
    size = len(basis)
    Mi = pos["M"]
    mats = {}

    def blank():
        return [[0] * size for _ in range(size)]

    for s in idx:
        for tt in idx:
            M = blank()
            for a in idx:
                for b in idx:
                    M[pos[P(s, b)]][pos[P(a, b)]] += d[tt - 1][a - 1]
            for b in idx:
                M[pos[P(s, b)]][Mi] += m[tt - 1][b - 1]
            mats[_name("G", s, tt, n)] = M
    for u in idx:
        for v in idx:
            M = blank()
            for a in idx:
                for b in idx:
                    M[pos[P(a, v)]][pos[P(a, b)]] += d[b - 1][u - 1]
            for a in idx:
                M[pos[P(a, v)]][Mi] += mp[a - 1][u - 1]
            mats[_name("H", u, v, n)] = M
    for s in idx:
        for tt in idx:
            for u in idx:
                for v in idx:
                    M = blank()
                    for a in idx:
                        for b in idx:
                            M[pos[P(s, v)]][pos[P(a, b)]] += d[tt - 1][a - 1] * d[b - 1][u - 1]
                    M[pos[P(s, v)]][Mi] += D[tt - 1][u - 1]
                    nm = f"F{s}{tt}_{u}{v}" if n <= 9 else f"F{s}_{tt}__{u}_{v}"
                    mats[nm] = M
    r = RepMatrices(t, basis, mats, "M_E")
    _assert_valid(r)
    ses = ses_split(r, [l for l, _ in basis[:-1]])
    cs = cell_structure(t, "twosided")
    left = cell_structure(t, "left")
    per_cell = {}
    for cell in cs.cells:
        kind = cell[0][0] if cell[0] != "id" else "id"
        hit = sorted(F for F in cell if F in ses.theta)
        lcells = sorted({left.cell_of(F) for F in hit})
        per_cell[kind] = {"gens": hit, "left_cells": [list(left.cells[i]) for i in lcells]}
    info = {"m_right": m, "m_left": mp, "theta_by_cell": per_cell,
            "meets_all": all(per_cell[k]["gens"] for k in ("G", "H", "F"))}
    assert set(names["G"]) | set(names["H"]) | set(names["F"]) | {"id"} == set(t.names)
    return r, ses, info


def _assert_valid(r: RepMatrices) -> None:
    bad = validate_rep(r)
    if bad:
        raise AssertionError(f"built representation violates functoriality: {bad[:3]}")


# brute-force check of the D_A rules on bimodules ------------------------------

def da_bruteforce_check(A, test_objects=None) -> list[str]:
    """Compare every D_A composition rule with dimensions of iterated tensor products.

    Each generator acts on A-A-bimodules: G_st(X) = P_st (x)_A X,
    H_uv(X) = X (x)_A P_uv, F = G o H.  For each pair (x, y) and each test
    bimodule X, dim and top dimension of x(y(X)) must equal those of the
    predicted sum.  Returns mismatch descriptions (empty iff consistent).
    """
    from .findim import cartan_matrix, projective_bimodule, regular_bimodule, tensor_over

    dims = cartan_matrix(A)
    c = CartanData(dims)
    t = build_da_table(c)
    n = c.n
    E = A.idempotents
    P = {(s, u): projective_bimodule(A, E[s - 1], E[u - 1], f"P{s}{u}")
         for s in range(1, n + 1) for u in range(1, n + 1)}
    if test_objects is None:
        test_objects = [regular_bimodule(A)]

    parts = {}
    for nm in t.names:
        if nm == "id":
            parts[nm] = (None, None)
        elif nm[0] == "G":
            parts[nm] = ((int(nm[1]), int(nm[2])), None)
        elif nm[0] == "H":
            parts[nm] = (None, (int(nm[1]), int(nm[2])))
        else:
            l, r = nm[1:].split("_")
            parts[nm] = ((int(l[0]), int(l[1])), (int(r[0]), int(r[1])))
    if n > 9:
        raise ValueError("brute-force check supports n <= 9")

    cache: dict = {}

    def apply(nm, X, key):
        k = (nm, key)
        if k not in cache:
            l, r = parts[nm]
            Y = X
            if r:
                Y = tensor_over(Y, P[r])
            if l:
                Y = tensor_over(P[l], Y)
            cache[k] = Y
        return cache[k]

    out = []
    for ti, X in enumerate(test_objects):
        base = {nm: apply(nm, X, ti) for nm in t.names}
        for x in t.names:
            for y in t.names:
                Y = base[y]
                Z = apply(x, Y, (ti, y))
                pred_dim = sum(m * base[h].dim for h, m in t.table[(x, y)].items())
                pred_top = sum(m * base[h].top_dim() for h, m in t.table[(x, y)].items())
                if Z.dim != pred_dim or Z.top_dim() != pred_top:
                    out.append(f"{x} o {y} on test object {ti}: dim {Z.dim}/{pred_dim}, "
                               f"top {Z.top_dim()}/{pred_top}")
    return out


# dihedral Soergel tables ------------------------------------------------------

def dihedral_elements(m: int) -> list[str]:
    """e, s, t, st, ts, ... , longest element spelled from s."""
    out = ["e"]
    for length in range(1, m):
        for first in "st":
            out.append(_alt(first, length))
    out.append(_alt("s", m))
    return out


def _alt(first: str, length: int) -> str:
    other = "t" if first == "s" else "s"
    return "".join(first if i % 2 == 0 else other for i in range(length))


def _dihedral_mult(m: int):
    w0 = _alt("s", m)

    def canon(w: str) -> str:
        if len(w) == m:
            return w0
        return w or "e"

    def left_letter(x: str, w: str) -> str:
        if w == "e":
            return x
        if w == w0:
            return canon(_alt("t" if x == "s" else "s", m - 1))
        if w[0] == x:
            return canon(w[1:])
        return canon(x + w)

    def mult(u: str, w: str) -> str:
        if u == "e":
            return w
        for x in reversed(u):
            w = left_letter(x, w)
        return w

    return mult


def dihedral_soergel_table(m: int, star: bool = True) -> MultiTable:
    """Indecomposable Soergel bimodules of I2(m) at v = 1.

    All Kazhdan-Lusztig polynomials of a dihedral group equal 1, so
    C_w = sum_{y <= w} y with y <= w iff y = w or l(y) < l(w).  Products of
    C's are expanded in group elements and peeled off from the top.
    """
    if m < 2:
        raise ValueError("need m >= 2")
    els = dihedral_elements(m)
    mult = _dihedral_mult(m)
    length = {w: (0 if w == "e" else len(w)) for w in els}

    def kl(w: str) -> dict[str, int]:
        return {y: 1 for y in els if y == w or length[y] < length[w]}

    def expand(a: dict, b: dict) -> dict:
        out: dict[str, int] = {}
        for x, p in a.items():
            for y, q in b.items():
                z = mult(x, y)
                out[z] = out.get(z, 0) + p * q
        return out

    def decompose(vec: dict) -> dict[str, int]:
        vec = {k: v for k, v in vec.items() if v}
        res: dict[str, int] = {}
        while vec:
            top = max(vec, key=lambda w: (length[w], els.index(w)))
            c = vec[top]
            res[top] = res.get(top, 0) + c
            for y, k in kl(top).items():
                vec[y] = vec.get(y, 0) - c * k
                if not vec[y]:
                    del vec[y]
        if any(v < 0 for v in res.values()):
            raise AssertionError("negative KL coefficient")
        return res

    table = {(a, b): decompose(expand(kl(a), kl(b))) for a in els for b in els}
    inv = {}
    for w in els:
        rev = w[::-1] if w != "e" else "e"
        inv[w] = rev if rev in length else _alt("s", m)
    name = {2: "A1xA1", 3: "A2", 4: "B2", 6: "G2"}.get(m, f"I2({m})")
    return MultiTable([OBJ], [Gen(w, OBJ, OBJ) for w in els], {OBJ: "e"}, table,
                      inv if star else None, name=f"{name} Soergel")
