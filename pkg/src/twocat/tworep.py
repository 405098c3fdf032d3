"""Finitary 2-representations at the level of action matrices.

A :class:`RepMatrices` assigns to every generator F a non-negative
integer matrix ``mats[F]`` on the basis of indecomposable objects, with
``mats[F][Y][X]`` the multiplicity of Y in F X.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .cells import CellStructure, cell_structure, is_idempotent_cell, preorder
from .cone import GoodnessWitness, cell_algebra, verify_goodness, witness_from_dict, witness_to_dict
from .errors import (HypothesisFailed, MalformedWitness, NonUniqueMaximal, NotActionClosed,
                     NotInCone, NotTransitive, PreconditionError)
from .linalg import matmul
from .multitable import MultiTable, Violation
from .scalars import Scalar


class RepMatrices:
    """Action matrices of every generator on a labelled basis.

    ``basis`` is a sequence of (label, object) pairs.  A matrix entry
    linking labels of the wrong objects must be zero (checked by
    :func:`validate_rep`).
    """

    def __init__(self, table: MultiTable, basis: Sequence[tuple[str, str]],
                 mats: Mapping[str, Sequence[Sequence[int]]], name: str = ""):
        self.table = table
        self.basis = tuple((str(l), str(o)) for l, o in basis)
        self.labels = tuple(l for l, _ in self.basis)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate basis labels")
        self._pos = {l: i for i, l in enumerate(self.labels)}
        n = len(self.basis)
        self.mats = {}
        for F in table.names:
            M = mats.get(F)
            if M is None:
                M = _identity_on(self, table, F) if table.is_identity(F) else [[0] * n for _ in range(n)]
            self.mats[F] = [list(r) for r in M]
        extra = set(mats) - set(table.names)
        if extra:
            raise ValueError(f"matrices for unknown generators {sorted(extra)}")
        self.name = name

    @property
    def size(self) -> int:
        return len(self.basis)

    def index(self, label: str) -> int:
        return self._pos[label]

    def obj(self, label: str) -> str:
        return self.basis[self._pos[label]][1]

    def entry(self, F: str, Y: str, X: str) -> int:
        return self.mats[F][self._pos[Y]][self._pos[X]]

    def restrict(self, labels: Sequence[str], name: str = "") -> "RepMatrices":
        idx = [self._pos[l] for l in labels]
        mats = {F: [[M[i][j] for j in idx] for i in idx] for F, M in self.mats.items()}
        return RepMatrices(self.table, [self.basis[i] for i in idx], mats, name)

    def permuted(self, order: Sequence[str]) -> "RepMatrices":
        return self.restrict(order, self.name)

    def relabel(self, mapping: Mapping[str, str]) -> "RepMatrices":
        basis = [(mapping.get(l, l), o) for l, o in self.basis]
        return RepMatrices(self.table, basis, self.mats, self.name)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RepMatrices):
            return NotImplemented
        return self.basis == other.basis and self.mats == other.mats

    __hash__ = None

    def __repr__(self) -> str:
        return f"<RepMatrices {self.name} on {list(self.labels)}>"


def _identity_on(r: RepMatrices, t: MultiTable, F: str) -> list[list[int]]:
    obj = t.source(F)
    n = len(r.basis)
    return [[1 if i == j and r.basis[i][1] == obj else 0 for j in range(n)] for i in range(n)]


def validate_rep(r: RepMatrices) -> list[Violation]:
    t = r.table
    n = r.size
    out = []
    for F, M in r.mats.items():
        if len(M) != n or any(len(row) != n for row in M):
            out.append(Violation("shape", (F,), f"matrix of {F} is not {n}x{n}"))
            return out
        for i, row in enumerate(M):
            for j, x in enumerate(row):
                if not isinstance(x, int) or x < 0:
                    out.append(Violation("entry", (F, r.labels[i], r.labels[j]),
                                         f"entry {x!r} of {F} is not a non-negative integer"))
                elif x and (r.basis[j][1] != t.source(F) or r.basis[i][1] != t.target(F)):
                    out.append(Violation("typing", (F, r.labels[i], r.labels[j]),
                                         f"{F} maps {r.labels[j]} to {r.labels[i]} across the wrong objects"))
    for obj, e in t.identities.items():
        if r.mats[e] != _identity_on(r, t, e):
            out.append(Violation("identity", (e,), f"{e} does not act as the identity on object {obj}"))
    for F, G in t.composable_pairs():
        lhs = matmul(r.mats[F], r.mats[G])
        rhs = [[0] * n for _ in range(n)]
        for H, m in t.table.get((F, G), {}).items():
            MH = r.mats[H]
            for i in range(n):
                for j in range(n):
                    rhs[i][j] += m * MH[i][j]
        if lhs != rhs:
            out.append(Violation("functoriality", (F, G),
                                 f"[{F}][{G}] differs from the matrix of {F} * {G}"))
    return out


# action preorder and diagram -----------------------------------------------

def action_preorder(r: RepMatrices) -> dict[str, frozenset[str]]:
    """X -> set of all Y reachable from X (Y a summand of some F_1 ... F_k X)."""
    n = r.size
    step = {X: {r.labels[i] for F, M in r.mats.items() for i in range(n) if M[i][r.index(X)]}
            for X in r.labels}
    out = {}
    for X in r.labels:
        seen = {X}
        work = [X]
        while work:
            Y = work.pop()
            for Z in step[Y]:
                if Z not in seen:
                    seen.add(Z)
                    work.append(Z)
        out[X] = frozenset(seen)
    return out


@dataclass
class RepDiagram:
    classes: list[tuple[str, ...]]
    hasse: list[tuple[int, int]]  # (i, j): class i acts onto class j, a cover
    decorations: dict[tuple[int, int], frozenset[str]] = field(default_factory=dict)

    def class_of(self, label: str) -> int:
        for i, c in enumerate(self.classes):
            if label in c:
                return i
        raise KeyError(label)

    def edge_sets(self) -> list[tuple[frozenset, frozenset, frozenset]]:
        """Edges as (source labels, target labels, decoration) for comparisons."""
        return sorted(((frozenset(self.classes[i]), frozenset(self.classes[j]), self.decorations[(i, j)])
                       for i, j in self.hasse), key=lambda e: (sorted(e[0]), sorted(e[1])))


def diagram(r: RepMatrices) -> RepDiagram:
    reach = action_preorder(r)
    classes: list[tuple[str, ...]] = []
    seen: set[str] = set()
    for X in r.labels:
        if X in seen:
            continue
        c = tuple(Y for Y in r.labels if Y in reach[X] and X in reach[Y])
        seen.update(c)
        classes.append(c)
    k = len(classes)
    above = {(i, j) for i in range(k) for j in range(k)
             if i != j and classes[j][0] in reach[classes[i][0]]}
    hasse = [(i, j) for i, j in sorted(above)
             if not any((i, m) in above and (m, j) in above for m in range(k))]
    deco = {}
    for i, j in hasse:
        src = [r.index(X) for X in classes[i]]
        dst = [r.index(Y) for Y in classes[j]]
        deco[(i, j)] = frozenset(F for F, M in r.mats.items()
                                 if any(M[y][x] for x in src for y in dst))
    return RepDiagram(classes, hasse, deco)


def is_transitive(r: RepMatrices) -> bool:
    reach = action_preorder(r)
    full = set(r.labels)
    return all(reach[X] == full for X in r.labels)


def surviving_cells(r: RepMatrices, cs: CellStructure | None = None) -> list[int]:
    """Indices of two-sided cells containing some F with a nonzero matrix."""
    if cs is None:
        cs = cell_structure(r.table, "twosided")
    return [i for i, c in enumerate(cs.cells) if any(any(any(row) for row in r.mats[F]) for F in c)]


def apex(r: RepMatrices) -> tuple[str, ...]:
    if not is_transitive(r):
        raise NotTransitive("apex needs a transitive representation")
    t = r.table
    cs = cell_structure(t, "twosided")
    alive = surviving_cells(r, cs)
    top = cs.maximal(alive)
    if len(top) != 1:
        raise NonUniqueMaximal(f"surviving cells {[cs.cells[i] for i in top]} have no unique maximum")
    J = top[0]
    ok, _ = is_idempotent_cell(t, cs.cells[J])
    if not ok:
        raise NonUniqueMaximal(f"apex {cs.cells[J]} is not idempotent")
    dead = set(range(len(cs.cells))) - set(alive)
    for i in dead:
        for j in range(len(cs.cells)):
            if cs.leq(i, j) and j not in dead:
                raise NonUniqueMaximal(f"annihilated cells do not form an upper set: {cs.cells[i]} <= {cs.cells[j]}")
    return cs.cells[J]


def check_positivity(r: RepMatrices, J: Iterable[str]) -> bool:
    if not is_transitive(r):
        raise PreconditionError("positivity needs a transitive representation")
    J = tuple(J)
    if set(apex(r)) != set(J):
        raise PreconditionError(f"{J} is not the apex")
    n = r.size
    total = [[sum(r.mats[F][i][j] for F in J) for j in range(n)] for i in range(n)]
    return all(x > 0 for row in total for x in row)


# short exact sequences -------------------------------------------------------

@dataclass
class SesDecomposition:
    rep: RepMatrices
    sub_basis: tuple[str, ...]
    K: RepMatrices
    N: RepMatrices
    theta: frozenset[str]

    @property
    def quotient_basis(self) -> tuple[str, ...]:
        return tuple(l for l in self.rep.labels if l not in set(self.sub_basis))


def ses_split(r: RepMatrices, sub: Iterable[str]) -> SesDecomposition:
    sub_set = set(sub)
    unknown = sub_set - set(r.labels)
    if unknown:
        raise KeyError(f"unknown labels {sorted(unknown)}")
    sub_l = tuple(l for l in r.labels if l in sub_set)
    rest = tuple(l for l in r.labels if l not in sub_set)
    for F, M in r.mats.items():
        for X in sub_l:
            for Y in rest:
                if M[r.index(Y)][r.index(X)]:
                    raise NotActionClosed(F, X, Y)
    theta = frozenset(F for F, M in r.mats.items()
                      if any(M[r.index(Y)][r.index(X)] for X in rest for Y in sub_l))
    return SesDecomposition(r, sub_l, r.restrict(sub_l, "K"), r.restrict(rest, "N"), theta)


@dataclass
class FilterResult:
    check: str
    status: str  # "pass" or "fail"
    witness: object = None


def dext_filters(K: RepMatrices, N: RepMatrices, theta: Iterable[str]) -> list[FilterResult]:
    """Necessary conditions on a set theta of gluing 1-morphisms.

    Any failure proves that no short exact sequence with sub K and
    quotient N realizes theta.
    """
    t = K.table
    theta = set(theta)
    cs = cell_structure(t, "twosided")
    JK = cs.index(apex(K))
    JN = cs.index(apex(N))
    out = []

    ids = sorted(F for F in theta if t.is_identity(F))
    out.append(FilterResult("no-identity", "fail" if ids else "pass", ids or None))

    # idempotent case: each F in theta sits below J_K or below J_N
    bad = []
    if is_idempotent_cell(t, cs.cells[JK])[0] and is_idempotent_cell(t, cs.cells[JN])[0]:
        bad = sorted(F for F in theta if not (cs.leq(cs.cell_of(F), JK) or cs.leq(cs.cell_of(F), JN)))
    out.append(FilterResult("below-an-apex", "fail" if bad else "pass", bad or None))

    if t.star is not None:
        bad = sorted(F for F in theta if not cs.leq(cs.cell_of(F), JK))
        out.append(FilterResult("below-sub-apex", "fail" if bad else "pass", bad or None))
        bad = sorted(F for F in theta if cs.cell_of(F) != cs.cell_of(t.star.get(F, F)))
        out.append(FilterResult("star-in-cell", "fail" if bad else "pass", bad or None))

    meets = not theta or any(cs.cell_of(F) == JK for F in theta)
    out.append(FilterResult("meets-sub-apex", "pass" if meets else "fail",
                            None if meets else sorted(theta)))
    return out


# certificates ------------------------------------------------------------

@dataclass
class Certificate:
    kind: str
    hypotheses: list[dict]
    conclusion: str
    witness: dict
    reps: dict  # name -> serialised RepMatrices

    def to_dict(self) -> dict:
        return {"kind": self.kind, "hypotheses": self.hypotheses, "conclusion": self.conclusion,
                "witness": self.witness, "reps": self.reps,
                "note": "certifies emptiness only; Dext itself is not computed"}


def rep_to_dict(r: RepMatrices) -> dict:
    return {"basis": [list(b) for b in r.basis], "mats": {F: M for F, M in r.mats.items()}}


def rep_from_dict(t: MultiTable, d: Mapping) -> RepMatrices:
    return RepMatrices(t, [tuple(b) for b in d["basis"]], d["mats"])


def _x_matrix(N: RepMatrices, w: GoodnessWitness):
    n = N.size
    spec = w.spec
    X = [[spec.zero] * n for _ in range(n)]
    for F, c in w.x.coeffs.items():
        M = N.mats[F]
        for i in range(n):
            for j in range(n):
                if M[i][j]:
                    X[i][j] = X[i][j] + c * M[i][j]
    return X


def _poly_at(w: GoodnessWitness, X):
    """x^n + sum_{j>k} a_j x^j - sum_{l<=j<=k} a_j x^j at a matrix."""
    n = len(X)
    spec = w.spec
    powers = {1: X}
    for j in range(2, w.n + 1):
        powers[j] = matmul(powers[j - 1], X)
    total = [[spec.zero] * n for _ in range(n)]
    for j, c in w.polynomial().items():
        P = powers[j]
        for r in range(n):
            for s in range(n):
                if P[r][s]:
                    total[r][s] = total[r][s] + c * P[r][s]
    return total


def self_extension_certificate(N: RepMatrices, w: GoodnessWitness) -> Certificate:
    """Emptiness of Dext(N, N) for a transitive N whose apex carries a goodness witness."""
    t = N.table
    if not is_transitive(N):
        raise PreconditionError("N must be transitive")
    J = apex(N)
    hyps = []
    if set(J) != set(w.x.algebra.basis):
        raise HypothesisFailed("a", f"witness lives on {list(w.x.algebra.basis)} but apex is {list(J)}")
    try:
        res = verify_goodness(w)
    except NotInCone as exc:
        raise HypothesisFailed("a", str(exc)) from None
    if not res.ok:
        raise HypothesisFailed("a", f"goodness identity fails, residual {res.residual}")
    hyps.append({"clause": "a", "check": "goodness identity", "status": "pass"})
    cs = cell_structure(t, "twosided")
    for c in cs.cells:
        ok, _ = is_idempotent_cell(t, c)
        if not ok:
            raise HypothesisFailed("b", f"cell {list(c)} is not idempotent")
    hyps.append({"clause": "b", "check": "all two-sided cells idempotent", "status": "pass"})
    X = _x_matrix(N, w)
    if not all(x.sign() > 0 for row in X for x in row):
        raise HypothesisFailed("c", "x_N has a non-positive entry")
    hyps.append({"clause": "c", "check": "x_N strictly positive", "status": "pass"})
    P = _poly_at(w, X)
    if any(x for row in P for x in row):
        raise HypothesisFailed("d", "x_N does not satisfy the goodness identity")
    hyps.append({"clause": "d", "check": "identity holds for x_N", "status": "pass"})
    return Certificate("self-extension", hyps, f"Dext({N.name or 'N'}, {N.name or 'N'}) is empty",
                       witness_to_dict(w), {"N": rep_to_dict(N)})


def self_extension_bruteforce(N: RepMatrices, w: GoodnessWitness, bound: int = 2) -> dict:
    """Try every off-diagonal block X with entries in [0, bound].

    x_M = [[x_N, X], [0, x_N]] satisfies the goodness identity only for
    X = 0 if the semi-simplicity argument is sound.
    """
    XN = _x_matrix(N, w)
    n = N.size
    spec = w.spec
    zero = spec.zero
    solutions = []
    tried = 0
    for entries in itertools.product(range(bound + 1), repeat=n * n):
        tried += 1
        Xb = [list(entries[i * n:(i + 1) * n]) for i in range(n)]
        big = [[zero] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            for j in range(n):
                big[i][j] = XN[i][j]
                big[n + i][n + j] = XN[i][j]
                big[i][n + j] = spec.coerce(Xb[i][j])
        P = _poly_at(w, big)
        if not any(x for row in P for x in row):
            solutions.append(Xb)
    counter = [X for X in solutions if any(any(r) for r in X)]
    return {"tried": tried, "solutions": solutions, "counterexamples": counter,
            "ok": counter == [] and [[0] * n for _ in range(n)] in solutions}


def cross_extension_certificate(K: RepMatrices, N: RepMatrices, wK: GoodnessWitness) -> Certificate:
    """Emptiness of Dext(N, K) from goodness of J_K, J_K <= J_N and a left-cell condition."""
    t = K.table
    if t.star is None:
        raise PreconditionError("the table needs a star map")
    if not is_transitive(K) or not is_transitive(N):
        raise PreconditionError("K and N must be transitive")
    cs = cell_structure(t, "twosided")
    JK, JN = apex(K), apex(N)
    hyps = []
    if set(JK) != set(wK.x.algebra.basis):
        raise HypothesisFailed("a", f"witness lives on {list(wK.x.algebra.basis)} but J_K is {list(JK)}")
    try:
        res = verify_goodness(wK)
    except NotInCone as exc:
        raise HypothesisFailed("a", str(exc)) from None
    if not res.ok:
        raise HypothesisFailed("a", f"goodness identity fails, residual {res.residual}")
    hyps.append({"clause": "a", "check": "J_K good", "status": "pass"})
    if not cs.leq(cs.index(JK), cs.index(JN)):
        raise HypothesisFailed("b", f"J_K = {list(JK)} is not below J_N = {list(JN)}")
    hyps.append({"clause": "b", "check": "J_K <= J_N", "status": "pass"})
    left = cell_structure(t, "left")
    lk = sorted({left.cell_of(F) for F in JK})
    ln = sorted({left.cell_of(F) for F in JN})
    for L in ln:
        if not any(left.leq(Lp, L) for Lp in lk):
            raise HypothesisFailed("c", f"no left cell in J_K lies below {list(left.cells[L])}")
    hyps.append({"clause": "c", "check": "every left cell of J_N dominates one of J_K", "status": "pass"})
    return Certificate("cross-extension", hyps, f"Dext({N.name or 'N'}, {K.name or 'K'}) is empty",
                       witness_to_dict(wK), {"K": rep_to_dict(K), "N": rep_to_dict(N)})


def recheck_certificate(cert: Mapping, t: MultiTable) -> bool:
    """Re-run a certificate from its serialised witness and representations."""
    reps = {k: rep_from_dict(t, v) for k, v in cert["reps"].items()}
    try:
        if cert["kind"] == "self-extension":
            N = reps["N"]
            w = witness_from_dict(cell_algebra(t, apex(N)), cert["witness"])
            self_extension_certificate(N, w)
        elif cert["kind"] == "cross-extension":
            K, N = reps["K"], reps["N"]
            w = witness_from_dict(cell_algebra(t, apex(K)), cert["witness"])
            cross_extension_certificate(K, N, w)
        else:
            return False
    except (HypothesisFailed, PreconditionError, MalformedWitness, NotInCone):
        return False
    return True


# constructions ---------------------------------------------------------------

def principal_rep(t: MultiTable, obj: str | None = None) -> RepMatrices:
    """Regular action on generators with source ``obj`` (all generators if None)."""
    basis = [(G, t.target(G)) for G in t.names if obj is None or t.source(G) == obj]
    labels = [b[0] for b in basis]
    pos = {G: i for i, G in enumerate(labels)}
    n = len(labels)
    mats = {}
    for F in t.names:
        M = [[0] * n for _ in range(n)]
        for G in labels:
            if t.composable(F, G):
                for H, m in t.table.get((F, G), {}).items():
                    M[pos[H]][pos[G]] += m
        mats[F] = M
    return RepMatrices(t, basis, mats, f"P_{obj}" if obj else "P")


def cell_rep(t: MultiTable, L: Iterable[str], name: str = "") -> RepMatrices:
    """Subquotient of the principal action on the left cell L.

    Everything >=_L L spans a subrepresentation; the part strictly above
    L is again closed, and the quotient has basis L.
    """
    L = tuple(L)
    left = cell_structure(t, "left")
    L = left.cells[left.index(L)]
    pos = {G: i for i, G in enumerate(L)}
    n = len(L)
    mats = {}
    for F in t.names:
        M = [[0] * n for _ in range(n)]
        for G in L:
            if t.composable(F, G):
                for H, m in t.table.get((F, G), {}).items():
                    if H in pos:
                        M[pos[H]][pos[G]] += m
        mats[F] = M
    return RepMatrices(t, [(G, t.target(G)) for G in L], mats, name or f"C_{L[0]}")


def direct_sum(r1: RepMatrices, r2: RepMatrices, tags: tuple[str, str] = ("1", "2")) -> RepMatrices:
    if r1.table is not r2.table and r1.table != r2.table:
        raise PreconditionError("summands over different tables")
    basis = [(f"{l}.{tags[0]}", o) for l, o in r1.basis] + [(f"{l}.{tags[1]}", o) for l, o in r2.basis]
    n1, n2 = r1.size, r2.size
    mats = {}
    for F in r1.table.names:
        M = [[0] * (n1 + n2) for _ in range(n1 + n2)]
        for i in range(n1):
            for j in range(n1):
                M[i][j] = r1.mats[F][i][j]
        for i in range(n2):
            for j in range(n2):
                M[n1 + i][n1 + j] = r2.mats[F][i][j]
        mats[F] = M
    return RepMatrices(r1.table, basis, mats, f"{r1.name}+{r2.name}")


def rep_equivalence(r1: RepMatrices, r2: RepMatrices) -> dict[str, str] | None:
    """A bijection of labels carrying every matrix of r1 onto r2, found by backtracking."""
    if r1.size != r2.size or set(r1.mats) != set(r2.mats):
        return None
    n = r1.size
    gens = list(r1.mats)

    def signature(r, i):
        return (r.basis[i][1],
                tuple(sorted((F, r.mats[F][i][i], sum(r.mats[F][i]), sum(row[i] for row in r.mats[F]))
                             for F in gens)))

    sig1 = [signature(r1, i) for i in range(n)]
    sig2 = [signature(r2, i) for i in range(n)]
    if sorted(sig1) != sorted(sig2):
        return None
    perm: list[int] = []
    used = [False] * n

    def consistent(k: int, j: int) -> bool:
        for a in range(k):
            b = perm[a]
            for F in gens:
                if r1.mats[F][k][a] != r2.mats[F][j][b] or r1.mats[F][a][k] != r2.mats[F][b][j]:
                    return False
        return True

    def search(k: int) -> bool:
        if k == n:
            return True
        for j in range(n):
            if not used[j] and sig1[k] == sig2[j] and consistent(k, j):
                used[j] = True
                perm.append(j)
                if search(k + 1):
                    return True
                perm.pop()
                used[j] = False
        return False

    if not search(0):
        return None
    return {r1.labels[i]: r2.labels[perm[i]] for i in range(n)}


def x_matrix_entries(N: RepMatrices, w: GoodnessWitness) -> list[list[Scalar]]:
    """x_N = sum_F c_F [F] for the witness element."""
    return _x_matrix(N, w)
