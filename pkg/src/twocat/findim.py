"""Finite-dimensional algebras and modules over Q or a quadratic field.

Algebras are given by structure constants, modules by the action
matrices of the algebra basis.  Field elements are ``Fraction`` over Q
(the fast path) and :class:`~twocat.scalars.Scalar` over a quadratic
field; :func:`native` converts between the two.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import NotLocal, NotSubalgebra, PreconditionError, TwoCatError
from .linalg import Echelon, coordinates, det, nullspace_sparse, span_basis
from .scalars import QQ, FieldSpec, Scalar

Vector = list
Matrix = list


def native(spec: FieldSpec, x):
    """Field element in the internal representation of ``spec``."""
    if spec.is_rational:
        if isinstance(x, Scalar):
            return x.to_fraction()
        return Fraction(x)
    return spec.coerce(x)


def to_scalar(spec: FieldSpec, x) -> Scalar:
    return spec.coerce(x)


class FinDimAlgebra:
    """Associative unital algebra with basis ``names``.

    ``struct[i][j]`` is the sparse product b_i * b_j (dict index -> coefficient).
    ``generators`` is a list of vectors generating the algebra; module
    morphisms only need to commute with these.
    """

    def __init__(
        self,
        field: FieldSpec,
        names: Sequence[str],
        struct: Sequence[Sequence[Mapping[int, object]]],
        unit: Sequence,
        idempotents: Sequence[Sequence] | None = None,
        generators: Sequence[Sequence] | None = None,
        name: str = "",
    ):
        self.field = field
        self.names = tuple(names)
        d = len(self.names)
        self.struct = [[{k: native(field, c) for k, c in struct[i][j].items() if c}
                        for j in range(d)] for i in range(d)]
        self.unit = [native(field, c) for c in unit]
        self.idempotents = [[native(field, c) for c in e] for e in (idempotents or [])]
        if generators is None:
            generators = [self.basis_vector(i) for i in range(d)]
        self.generators = [[native(field, c) for c in g] for g in generators]
        self.name = name
        self._left: dict[int, Matrix] = {}

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def zero(self):
        return native(self.field, 0)

    @property
    def one(self):
        return native(self.field, 1)

    def basis_vector(self, i: int) -> Vector:
        v = [native(self.field, 0)] * len(self.names)
        v[i] = native(self.field, 1)
        return v

    def vec(self, coeffs: Mapping[str, object]) -> Vector:
        """Vector from a map basis name -> coefficient."""
        v = [self.zero] * self.dim
        for nm, c in coeffs.items():
            v[self.names.index(nm)] += native(self.field, c)
        return v

    def mul(self, u: Sequence, v: Sequence) -> Vector:
        out = [self.zero] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            row = self.struct[i]
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in row[j].items():
                    out[k] += ab * c
        return out

    def left_matrix(self, i: int) -> Matrix:
        """Matrix of left multiplication by b_i on the regular module."""
        if i not in self._left:
            d = self.dim
            M = [[self.zero] * d for _ in range(d)]
            for j in range(d):
                for k, c in self.struct[i][j].items():
                    M[k][j] = c
            self._left[i] = M
        return self._left[i]

    def check(self) -> list[str]:
        """Violated axioms (associativity, unit, idempotents); empty iff fine."""
        out = []
        d = self.dim
        e = [self.basis_vector(i) for i in range(d)]
        for i in range(d):
            if self.mul(self.unit, e[i]) != e[i] or self.mul(e[i], self.unit) != e[i]:
                out.append(f"unit law fails on {self.names[i]}")
        for i in range(d):
            for j in range(d):
                ij = self.mul(e[i], e[j])
                for k in range(d):
                    if self.mul(ij, e[k]) != self.mul(e[i], self.mul(e[j], e[k])):
                        out.append(f"associativity fails on ({self.names[i]}, {self.names[j]}, {self.names[k]})")
        if self.idempotents:
            total = [self.zero] * d
            for a, ea in enumerate(self.idempotents):
                total = [x + y for x, y in zip(total, ea)]
                for b, eb in enumerate(self.idempotents):
                    want = ea if a == b else [self.zero] * d
                    if self.mul(ea, eb) != want:
                        out.append(f"idempotents {a}, {b} are not orthogonal idempotents")
            if total != self.unit:
                out.append("idempotents do not sum to the unit")
        return out

    def extend(self, spec: FieldSpec) -> "FinDimAlgebra":
        """Same structure constants viewed over a larger field."""
        if spec == self.field:
            return self
        if not self.field.is_rational:
            raise TwoCatError("only algebras over Q can be extended")
        return FinDimAlgebra(spec, self.names, self.struct, self.unit,
                             self.idempotents, self.generators, self.name)

    def opposite(self) -> "FinDimAlgebra":
        d = self.dim
        struct = [[self.struct[j][i] for j in range(d)] for i in range(d)]
        return FinDimAlgebra(self.field, self.names, struct, self.unit, self.idempotents,
                             self.generators, (self.name + "^op") if self.name else "")

    def regular_module(self) -> "FDModule":
        return FDModule(self, self.dim, [self.left_matrix(i) for i in range(self.dim)])

    def center(self) -> list[Vector]:
        """Basis of the center: elements commuting with every generator."""
        d = self.dim
        eqs = []
        for g in self.generators:
            for k in range(d):
                row = {}
                for i in range(d):
                    # coefficient of b_k in b_i g - g b_i
                    ei = self.basis_vector(i)
                    c = self.mul(ei, g)[k] - self.mul(g, ei)[k]
                    if c:
                        row[i] = c
                if row:
                    eqs.append(row)
        return [[v.get(i, self.zero) for i in range(d)]
                for v in nullspace_sparse(eqs, d, self.one)]

    def __repr__(self) -> str:
        return f"<FinDimAlgebra {self.name or ''} dim {self.dim} over {self.field}>"


def trace_form(A: FinDimAlgebra) -> Matrix:
    """T[i][j] = trace of left multiplication by b_i b_j."""
    d = A.dim
    tr = [sum((A.struct[k][m].get(m, A.zero) for m in range(d)), A.zero) for k in range(d)]
    return [[sum((c * tr[k] for k, c in A.struct[i][j].items()), A.zero) for j in range(d)]
            for i in range(d)]


def radical(A: FinDimAlgebra) -> list[Vector]:
    """Jacobson radical via the trace form (characteristic zero)."""
    T = trace_form(A)
    d = A.dim
    # x in rad iff sum_i x_i T[i][j] = 0 for all j
    eqs = [{i: T[i][j] for i in range(d) if T[i][j]} for j in range(d)]
    basis = nullspace_sparse([e for e in eqs if e], d, A.one)
    return span_basis([[v.get(i, A.zero) for i in range(d)] for v in basis], d, A.zero)


class FDModule:
    """Left module: ``action[i]`` is the matrix of basis element b_i."""

    def __init__(self, algebra: FinDimAlgebra, dim: int, action: Sequence[Matrix], name: str = ""):
        self.algebra = algebra
        self.dim = dim
        self.action = [[list(r) for r in M] for M in action]
        self.name = name
        self._gen_cache: list[Matrix] | None = None

    def act(self, u: Sequence) -> Matrix:
        """Matrix of an arbitrary algebra element."""
        A = self.algebra
        M = [[A.zero] * self.dim for _ in range(self.dim)]
        for i, c in enumerate(u):
            if not c:
                continue
            for r, row in enumerate(self.action[i]):
                Mr = M[r]
                for s, x in enumerate(row):
                    if x:
                        Mr[s] += c * x
        return M

    def generator_matrices(self) -> list[Matrix]:
        if self._gen_cache is None:
            self._gen_cache = [self.act(g) for g in self.algebra.generators]
        return self._gen_cache

    def apply(self, u: Sequence, m: Sequence) -> Vector:
        return _matvec(self.act(u), m)

    def check(self) -> list[str]:
        A = self.algebra
        out = []
        eye = [[A.one if i == j else A.zero for j in range(self.dim)] for i in range(self.dim)]
        if self.act(A.unit) != eye:
            out.append("unit does not act as the identity")
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = _matmul(self.action[i], self.action[j])
                rhs = self.act(A.mul(A.basis_vector(i), A.basis_vector(j)))
                if lhs != rhs:
                    out.append(f"action of {A.names[i]}*{A.names[j]} is not the product")
        return out

    def __repr__(self) -> str:
        return f"<FDModule {self.name} dim {self.dim}>"


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    from .linalg import matmul
    return matmul(A, B)


def _zero_like(*mats):
    for M in mats:
        for row in M:
            for x in row:
                return x - x
    return Fraction(0)


def _matvec(M: Matrix, v: Sequence) -> Vector:
    zero = _zero_like(M) if M else Fraction(0)
    out = []
    for row in M:
        s = zero
        for a, b in zip(row, v):
            if a and b:
                s += a * b
        out.append(s)
    return out


# morphisms --------------------------------------------------------------

def hom_space(M: FDModule, N: FDModule) -> list[Matrix]:
    """Basis of Hom_A(M, N) as N.dim x M.dim matrices."""
    if M.algebra is not N.algebra and M.algebra.names != N.algebra.names:
        raise PreconditionError("modules over different algebras")
    m, n = M.dim, N.dim
    A = M.algebra
    eqs = []
    for RM, RN in zip(M.generator_matrices(), N.generator_matrices()):
        # (RN phi - phi RM)[r][c] = sum_k RN[r][k] phi[k][c] - sum_k phi[r][k] RM[k][c]
        RN_rows = [{k: x for k, x in enumerate(row) if x} for row in RN]
        RM_cols = [{k: RM[k][c] for k in range(m) if RM[k][c]} for c in range(m)]
        for r in range(n):
            for c in range(m):
                eq: dict[int, object] = {}
                for k, x in RN_rows[r].items():
                    idx = k * m + c
                    eq[idx] = eq.get(idx, 0) + x
                for k, x in RM_cols[c].items():
                    idx = r * m + k
                    eq[idx] = eq.get(idx, 0) - x
                eq = {i: v for i, v in eq.items() if v}
                if eq:
                    eqs.append(eq)
    sols = nullspace_sparse(eqs, m * n, A.one)
    return [[[v.get(r * m + c, A.zero) for c in range(m)] for r in range(n)] for v in sols]


def end_dim(M: FDModule) -> int:
    return len(hom_space(M, M))


def projective_factoring_maps(M: FDModule) -> list[Matrix]:
    """Basis of the endomorphisms of M factoring through the regular module."""
    A = M.algebra
    reg = A.regular_module()
    fs = hom_space(M, reg)
    ech = Echelon()
    basis = []
    d = M.dim
    acts = M.action
    for mvec_idx in range(d):
        # g_m : A -> M, b_j -> b_j . m
        G = [[acts[j][r][mvec_idx] for j in range(A.dim)] for r in range(d)]
        for f in fs:
            comp = _matmul(G, f)
            flat = {i: x for i, x in enumerate(x for row in comp for x in row) if x}
            if ech.add(flat):
                basis.append(comp)
    return basis


def stable_end_dim(M: FDModule) -> int:
    """dim End(M) minus the dimension of maps factoring through a projective."""
    return end_dim(M) - len(projective_factoring_maps(M))


# sub and quotient modules ------------------------------------------------

def submodule_closure(M: FDModule, vectors: Sequence[Vector]) -> list[Vector]:
    """Reduced basis of the submodule generated by ``vectors``."""
    A = M.algebra
    ech = Echelon()
    work = [list(v) for v in vectors]
    gens = M.generator_matrices()
    while work:
        v = work.pop()
        if ech.add({i: x for i, x in enumerate(v) if x}):
            for G in gens:
                work.append(_matvec(G, v))
    return ech.basis(M.dim, A.zero)


def restrict(M: FDModule, basis: Sequence[Vector], name: str = "") -> FDModule:
    """The submodule spanned by ``basis`` (assumed closed), in that basis."""
    A = M.algebra
    action = []
    for R in M.action:
        cols = []
        for v in basis:
            c = coordinates(basis, _matvec(R, v))
            if c is None:
                raise PreconditionError("span is not a submodule")
            cols.append(c)
        k = len(basis)
        action.append([[cols[j][i] for j in range(k)] for i in range(k)])
    return FDModule(A, len(basis), action, name)


def quotient(M: FDModule, sub_basis: Sequence[Vector], name: str = "") -> FDModule:
    """M / span(sub_basis), on the coordinates that are not pivots of sub_basis."""
    A = M.algebra
    ech = Echelon()
    for v in sub_basis:
        ech.add({i: x for i, x in enumerate(v) if x})
    keep = [i for i in range(M.dim) if i not in ech.rows]
    pos = {c: i for i, c in enumerate(keep)}
    action = []
    for R in M.action:
        Q = [[A.zero] * len(keep) for _ in keep]
        for j, c in enumerate(keep):
            col = {r: R[r][c] for r in range(M.dim) if R[r][c]}
            red = ech.reduce(col)
            for r, x in red.items():
                Q[pos[r]][j] = x
        action.append(Q)
    return FDModule(A, len(keep), action, name)


def quotient_by_cyclic(M: FDModule, v: Sequence) -> tuple[FDModule, FDModule]:
    """K = A.v and Q = M / K."""
    K_basis = submodule_closure(M, [list(v)]) if any(v) else []
    return restrict(M, K_basis, "K"), quotient(M, K_basis, "Q")


def radical_filtration(M: FDModule) -> list[int]:
    """Dimensions of the layers rad^i M / rad^{i+1} M until zero."""
    A = M.algebra
    rad = radical(A)
    rad_mats = [M.act(r) for r in rad]
    layers = []
    current = [[A.one if i == j else A.zero for i in range(M.dim)] for j in range(M.dim)]
    while current:
        nxt = span_basis([_matvec(R, v) for R in rad_mats for v in current], M.dim, A.zero)
        layers.append(len(current) - len(nxt))
        current = nxt
    return layers


def is_uniserial(M: FDModule) -> bool:
    """All radical layers one-dimensional."""
    return all(d == 1 for d in radical_filtration(M))


# subalgebras ------------------------------------------------------------

def subalgebra_structure(A: FinDimAlgebra, basis: Sequence[Vector]) -> FinDimAlgebra:
    """The subalgebra with the given basis, as an algebra in its own right."""
    span = span_basis(basis, A.dim, A.zero)
    if len(span) != len(basis):
        raise NotSubalgebra("subalgebra basis is linearly dependent")
    if coordinates(basis, A.unit) is None:
        raise NotSubalgebra("subalgebra does not contain the unit")
    k = len(basis)
    struct = []
    for i in range(k):
        row = []
        for j in range(k):
            c = coordinates(basis, A.mul(basis[i], basis[j]))
            if c is None:
                raise NotSubalgebra("subalgebra is not closed under multiplication")
            row.append({m: x for m, x in enumerate(c) if x})
        struct.append(row)
    unit = coordinates(basis, A.unit)
    return FinDimAlgebra(A.field, [f"s{i}" for i in range(k)], struct, unit)


def free_over_local_subalgebra(M: FDModule, S_basis: Sequence[Vector]) -> bool:
    A = M.algebra
    S = subalgebra_structure(A, S_basis)
    rad_S = radical(S)
    if S.dim - len(rad_S) != 1:
        raise NotLocal(f"subalgebra has semisimple quotient of dimension {S.dim - len(rad_S)}")
    if M.dim % S.dim:
        return False
    # rad(S) inside A, then rad(S).M
    rad_in_A = [[sum((c * S_basis[i][m] for i, c in enumerate(r) if c), A.zero) for m in range(A.dim)]
                for r in rad_S]
    mats = [M.act(r) for r in rad_in_A]
    eye = [[A.one if i == j else A.zero for i in range(M.dim)] for j in range(M.dim)]
    image = span_basis([_matvec(R, v) for R in mats for v in eye], M.dim, A.zero)
    return M.dim - len(image) == M.dim // S.dim


# tensor products --------------------------------------------------------

def tensor_algebra(A: FinDimAlgebra, B: FinDimAlgebra) -> FinDimAlgebra:
    """A (x) B with basis a_i (x) b_j at index i * dim B + j."""
    if A.field != B.field:
        raise PreconditionError("tensor factors over different fields")
    da, db = A.dim, B.dim
    names = [f"{a}|{b}" for a in A.names for b in B.names]
    struct = []
    for i in range(da):
        for j in range(db):
            row = []
            for k in range(da):
                for l in range(db):
                    prod = {}
                    for p, c in A.struct[i][k].items():
                        for q, e in B.struct[j][l].items():
                            prod[p * db + q] = c * e
                    row.append(prod)
            struct.append(row)
    unit = [a * b for a in A.unit for b in B.unit]
    gens = []
    for g in A.generators:
        gens.append([a * b for a in g for b in B.unit])
    for h in B.generators:
        gens.append([a * b for a in A.unit for b in h])
    idems = [[a * b for a in ea for b in eb] for ea in A.idempotents for eb in B.idempotents]
    return FinDimAlgebra(A.field, names, struct, unit, idems or None, gens,
                         f"{A.name}(x){B.name}")


def enveloping_algebra(A: FinDimAlgebra) -> FinDimAlgebra:
    """E = A (x) A^op; E-modules are A-A-bimodules via (a (x) b).m = a m b."""
    return tensor_algebra(A, A.opposite())


@dataclass
class Bimodule:
    """A-A-bimodule: ``left[i]`` and ``right[i]`` are the actions of basis b_i."""

    algebra: FinDimAlgebra
    dim: int
    left: list
    right: list  # right[i] is the matrix of m -> m b_i
    name: str = ""

    def check(self) -> list[str]:
        A = self.algebra
        out = []
        for i in range(A.dim):
            for j in range(A.dim):
                if _matmul(self.left[i], self.right[j]) != _matmul(self.right[j], self.left[i]):
                    out.append(f"left {A.names[i]} and right {A.names[j]} do not commute")
                prod = A.mul(A.basis_vector(i), A.basis_vector(j))
                if _matmul(self.left[i], self.left[j]) != _combine(A, self.left, prod, self.dim):
                    out.append(f"left action not multiplicative on {A.names[i]}, {A.names[j]}")
                # m b_i b_j = (m b_i) b_j
                if _matmul(self.right[j], self.right[i]) != _combine(A, self.right, prod, self.dim):
                    out.append(f"right action not multiplicative on {A.names[i]}, {A.names[j]}")
        return out

    def as_module(self, E: FinDimAlgebra | None = None) -> FDModule:
        """The same space as a left module over the enveloping algebra."""
        A = self.algebra
        if E is None:
            E = enveloping_algebra(A)
        action = []
        for i in range(A.dim):
            for j in range(A.dim):
                action.append(_matmul(self.left[i], self.right[j]))
        return FDModule(E, self.dim, action, self.name)

    def top_dim(self) -> int:
        """dim of M / (rad(A) M + M rad(A))."""
        A = self.algebra
        rad = radical(A)
        mats = [_combine(A, self.left, r, self.dim) for r in rad]
        mats += [_combine(A, self.right, r, self.dim) for r in rad]
        eye = [[A.one if i == j else A.zero for i in range(self.dim)] for j in range(self.dim)]
        image = span_basis([_matvec(R, v) for R in mats for v in eye], self.dim, A.zero)
        return self.dim - len(image)


def _combine(A: FinDimAlgebra, mats: Sequence[Matrix], u: Sequence, dim: int) -> Matrix:
    M = [[A.zero] * dim for _ in range(dim)]
    for i, c in enumerate(u):
        if c:
            for r in range(dim):
                for s in range(dim):
                    x = mats[i][r][s]
                    if x:
                        M[r][s] += c * x
    return M


def regular_bimodule(A: FinDimAlgebra) -> Bimodule:
    right = []
    for i in range(A.dim):
        R = [[A.zero] * A.dim for _ in range(A.dim)]
        for j in range(A.dim):
            for k, c in A.struct[j][i].items():
                R[k][j] = c
        right.append(R)
    return Bimodule(A, A.dim, [A.left_matrix(i) for i in range(A.dim)], right, "A")


def projective_bimodule(A: FinDimAlgebra, e: Sequence, f: Sequence, name: str = "") -> Bimodule:
    """A e (x) f A for idempotents e, f."""
    left_basis = span_basis([A.mul(A.basis_vector(i), e) for i in range(A.dim)], A.dim, A.zero)
    right_basis = span_basis([A.mul(f, A.basis_vector(i)) for i in range(A.dim)], A.dim, A.zero)
    p, q = len(left_basis), len(right_basis)
    left, right = [], []
    for i in range(A.dim):
        bi = A.basis_vector(i)
        L = [[A.zero] * (p * q) for _ in range(p * q)]
        R = [[A.zero] * (p * q) for _ in range(p * q)]
        for a in range(p):
            ca = coordinates(left_basis, A.mul(bi, left_basis[a]))
            for b in range(q):
                cb = coordinates(right_basis, A.mul(right_basis[b], bi))
                for a2, x in enumerate(ca):
                    if x:
                        L[a2 * q + b][a * q + b] = x
                for b2, x in enumerate(cb):
                    if x:
                        R[a * q + b2][a * q + b] = x
        left.append(L)
        right.append(R)
    return Bimodule(A, p * q, left, right, name)


def tensor_over(X: Bimodule, Y: Bimodule) -> Bimodule:
    """X (x)_A Y, presented as a quotient of X (x)_k Y."""
    A = X.algebra
    dx, dy = X.dim, Y.dim
    ech = Echelon()
    gen_right = [_combine(A, X.right, g, dx) for g in A.generators]
    gen_left = [_combine(A, Y.left, g, dy) for g in A.generators]
    for Rg, Lg in zip(gen_right, gen_left):
        for x in range(dx):
            for y in range(dy):
                rel: dict[int, object] = {}
                for x2 in range(dx):
                    c = Rg[x2][x]
                    if c:
                        rel[x2 * dy + y] = rel.get(x2 * dy + y, 0) + c
                for y2 in range(dy):
                    c = Lg[y2][y]
                    if c:
                        rel[x * dy + y2] = rel.get(x * dy + y2, 0) - c
                rel = {k: v for k, v in rel.items() if v}
                if rel:
                    ech.add(rel)
    keep = [i for i in range(dx * dy) if i not in ech.rows]
    pos = {c: i for i, c in enumerate(keep)}
    k = len(keep)
    left, right = [], []
    for i in range(A.dim):
        L = [[A.zero] * k for _ in range(k)]
        R = [[A.zero] * k for _ in range(k)]
        for j, c in enumerate(keep):
            x, y = divmod(c, dy)
            colL = {}
            for x2 in range(dx):
                v = X.left[i][x2][x]
                if v:
                    colL[x2 * dy + y] = v
            for r, v in ech.reduce(colL).items():
                L[pos[r]][j] = v
            colR = {}
            for y2 in range(dy):
                v = Y.right[i][y2][y]
                if v:
                    colR[x * dy + y2] = v
            for r, v in ech.reduce(colR).items():
                R[pos[r]][j] = v
        left.append(L)
        right.append(R)
    return Bimodule(A, k, left, right, f"{X.name}(x){Y.name}")


# the coinvariant algebra of S3 -------------------------------------------

COINVARIANT_BASIS = ("one", "x", "y", "x2", "xy", "x2y")
_MONO = {(0, 0): 0, (1, 0): 1, (0, 1): 2, (2, 0): 3, (1, 1): 4, (2, 1): 5}


def reduce_monomial(i: int, j: int, k: int = 0) -> dict[tuple[int, int], Fraction]:
    """x^i y^j z^k in C[x,y,z]/(e1,e2,e3) on the basis x^a y^b, (a,b) in the basis.

    z = -x-y removes z; then y^2 -> -x^2 - xy and x^3 -> 0 until normal.
    """
    poly = {(i, j): Fraction(1)}
    for _ in range(k):  # multiply by -(x + y)
        nxt: dict = {}
        for (a, b), c in poly.items():
            for key in ((a + 1, b), (a, b + 1)):
                nxt[key] = nxt.get(key, 0) - c
        poly = {m: c for m, c in nxt.items() if c}
    done: dict = {}
    work = list(poly.items())
    while work:
        (a, b), c = work.pop()
        if not c:
            continue
        if a >= 3:
            continue
        if b >= 2:
            work.append(((a + 2, b - 2), -c))
            work.append(((a + 1, b - 1), -c))
            continue
        done[(a, b)] = done.get((a, b), 0) + c
    return {m: c for m, c in done.items() if c}


def coinvariant_by_reduction(spec: FieldSpec = QQ) -> FinDimAlgebra:
    """The coinvariant algebra built from monomial reduction alone."""
    exps = list(_MONO)
    struct = []
    for a1, b1 in exps:
        row = []
        for a2, b2 in exps:
            red = reduce_monomial(a1 + a2, b1 + b2)
            row.append({_MONO[m]: c for m, c in red.items()})
        struct.append(row)
    unit = [1, 0, 0, 0, 0, 0]
    gens = [[0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]]
    gens = [unit] + gens
    return FinDimAlgebra(spec, COINVARIANT_BASIS, struct, unit, generators=gens, name="C")


def coinvariant_algebra(spec: FieldSpec = QQ) -> FinDimAlgebra:
    """The coinvariant algebra loaded from the bundled table file."""
    from .formats import load_bundled_algebra

    A = load_bundled_algebra("coinvariant-s3.alg")
    return A.extend(spec)


def coinvariant_subalgebras(C: FinDimAlgebra) -> dict[str, list[Vector]]:
    """C^s = span{1, x+y, xy} and C^t = span{1, x, x^2}."""
    return {
        "s": [C.vec({"one": 1}), C.vec({"x": 1, "y": 1}), C.vec({"xy": 1})],
        "t": [C.vec({"one": 1}), C.vec({"x": 1}), C.vec({"x2": 1})],
    }


def kernel_determinant(a, b, C: FinDimAlgebra | None = None) -> Scalar:
    """Determinant of the degree-4 part of C.(a x + b y) on the basis x^2, xy.

    The rows are the coordinates of x.v and y.v; the closed form is
    a^2 - ab + b^2.
    """
    spec = _spec_of(a, b)
    if C is None:
        C = coinvariant_algebra(spec)
    else:
        C = C.extend(spec) if C.field != spec else C
    v = C.vec({"x": a, "y": b})
    rows = []
    for gen in ("x", "y"):
        p = C.mul(C.vec({gen: 1}), v)
        rows.append([p[C.names.index("x2")], p[C.names.index("xy")]])
    return spec.coerce(det(rows))


def _spec_of(*xs) -> FieldSpec:
    spec = QQ
    for x in xs:
        if isinstance(x, Scalar) and not x.spec.is_rational:
            spec = x.spec
    return spec


def m_ab(a, b, C: FinDimAlgebra | None = None) -> tuple[FDModule, FDModule]:
    """(K_{a,b}, M_{a,b}): the submodule C.(ax+by) of C and the quotient."""
    spec = _spec_of(a, b)
    if C is None:
        C = coinvariant_algebra(spec)
    C = C.extend(spec) if C.field != spec else C
    reg = C.regular_module()
    return quotient_by_cyclic(reg, C.vec({"x": a, "y": b}))


@dataclass
class MabReport:
    a: Scalar
    b: Scalar
    determinant: Scalar
    precondition: bool
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.precondition and bool(self.checks) and all(self.checks.values())


def verify_mab(a, b) -> MabReport:
    """Check M_{a,b} = C / C(ax + by): uniserial of dimension 3, free over
    C^s and over C^t, one-dimensional stable End.

    The checks only run when a, b are nonzero and a^2 - ab + b^2 = 0.
    """
    spec = _spec_of(a, b)
    a, b = spec.coerce(a), spec.coerce(b)
    C = coinvariant_algebra(spec)
    d = kernel_determinant(a, b, C)
    pre = (not d) and bool(a) and bool(b)
    rep = MabReport(a, b, d, pre)
    if not pre:
        rep.details["reason"] = f"determinant {d} (need 0) with a, b nonzero"
        return rep
    K, M = m_ab(a, b, C)
    layers = radical_filtration(M)
    rep.details.update(dim_K=K.dim, dim_M=M.dim, radical_layers=layers)
    rep.checks["uniserial-dim-3"] = M.dim == 3 and layers == [1, 1, 1]
    subs = coinvariant_subalgebras(C)
    rep.checks["free-over-Cs"] = free_over_local_subalgebra(M, subs["s"])
    rep.checks["free-over-Ct"] = free_over_local_subalgebra(M, subs["t"])
    st = stable_end_dim(M)
    rep.details["end_dim"] = end_dim(M)
    rep.details["stable_end_dim"] = st
    rep.checks["stable-end-1"] = st == 1
    return rep


def k_subspace(a, b) -> list[Vector]:
    spec = _spec_of(a, b)
    C = coinvariant_algebra(spec)
    reg = C.regular_module()
    return submodule_closure(reg, [C.vec({"x": a, "y": b})])


def mab_isomorphic(a, b, a2, b2) -> bool:
    """M_{a,b} and M_{a2,b2} are isomorphic iff (a,b) is proportional to (a2,b2)
    iff K_{a,b} = K_{a2,b2}; both routes are computed and must agree."""
    spec = _spec_of(a, b, a2, b2)
    a, b, a2, b2 = (spec.coerce(t) for t in (a, b, a2, b2))
    C = coinvariant_algebra(spec)
    for p, q in ((a, b), (a2, b2)):
        if not p or not q or kernel_determinant(p, q, C):
            raise PreconditionError(f"({p}, {q}) does not satisfy a^2 - ab + b^2 = 0 with a, b nonzero")
    proportional = a * b2 == a2 * b
    same_k = k_subspace(a, b) == k_subspace(a2, b2)
    if proportional != same_k:
        raise TwoCatError("proportionality and K-subspace comparison disagree")
    return proportional


# small algebras ---------------------------------------------------------

def dual_numbers(spec: FieldSpec = QQ) -> FinDimAlgebra:
    """k[x]/(x^2)."""
    struct = [[{0: 1}, {1: 1}], [{1: 1}, {}]]
    return FinDimAlgebra(spec, ("one", "x"), struct, [1, 0], idempotents=[[1, 0]],
                         generators=[[1, 0], [0, 1]], name="k[x]/(x^2)")


def zigzag_algebra(n: int, spec: FieldSpec = QQ) -> FinDimAlgebra:
    """Zigzag algebra on the A_n graph (n >= 2).

    Basis: e_i, a_i: i -> i+1, b_i: i+1 -> i, loops c_i at i.  Products
    are path compositions, ``p * q`` meaning q first; b_i a_i = c_i,
    a_i b_i = c_{i+1}; every other path of length two or more vanishes.
    """
    if n < 2:
        raise ValueError("zigzag algebras need n >= 2; n = 1 is k[x]/(x^2)")
    names: list[str] = []
    src: dict[str, int] = {}
    tgt: dict[str, int] = {}
    for i in range(1, n + 1):
        names.append(f"e{i}")
        src[f"e{i}"] = tgt[f"e{i}"] = i
    for i in range(1, n):
        names.append(f"a{i}")
        src[f"a{i}"], tgt[f"a{i}"] = i, i + 1
        names.append(f"b{i}")
        src[f"b{i}"], tgt[f"b{i}"] = i + 1, i
    for i in range(1, n + 1):
        names.append(f"c{i}")
        src[f"c{i}"] = tgt[f"c{i}"] = i
    idx = {nm: k for k, nm in enumerate(names)}

    def product(p: str, q: str) -> str | None:
        # q first, then p
        if tgt[q] != src[p]:
            return None
        if p[0] == "e":
            return q
        if q[0] == "e":
            return p
        if p[0] == "b" and q[0] == "a" and p[1:] == q[1:]:
            return f"c{q[1:]}"
        if p[0] == "a" and q[0] == "b" and p[1:] == q[1:]:
            return f"c{int(q[1:]) + 1}"
        return None

    d = len(names)
    struct = [[{} for _ in range(d)] for _ in range(d)]
    for p in names:
        for q in names:
            r = product(p, q)
            if r is not None:
                struct[idx[p]][idx[q]] = {idx[r]: 1}
    unit = [1 if nm[0] == "e" else 0 for nm in names]
    idems = [[1 if k == idx[f"e{i}"] else 0 for k in range(d)] for i in range(1, n + 1)]
    gens = [[1 if k == idx[nm] else 0 for k in range(d)] for nm in names if nm[0] in "eab"]
    return FinDimAlgebra(spec, names, struct, unit, idems, gens, name=f"zigzag-{n}")


def cartan_matrix(A: FinDimAlgebra) -> list[list[int]]:
    """dims[t][u] = dim e_t A e_u for the declared idempotents."""
    out = []
    for et in A.idempotents:
        row = []
        for eu in A.idempotents:
            vecs = [A.mul(A.mul(et, A.basis_vector(i)), eu) for i in range(A.dim)]
            row.append(len(span_basis(vecs, A.dim, A.zero)))
        out.append(row)
    return out


def identity_bimodule_stable_end_dim(A: FinDimAlgebra) -> int:
    """Stable End of A as a module over A (x) A^op."""
    E = enveloping_algebra(A)
    return stable_end_dim(regular_bimodule(A).as_module(E))


def identity_bimodule_report(A: FinDimAlgebra) -> dict:
    """End of A as a bimodule is the center; report which central elements factor
    through a projective bimodule.  For k[x]/(x^2) multiplication by x is half of
    the composite A -> A (x) A -> A, 1 -> x(x)1 + 1(x)x -> 2x."""
    E = enveloping_algebra(A)
    M = regular_bimodule(A).as_module(E)
    fac = projective_factoring_maps(M)
    ech = Echelon()
    for f in fac:
        ech.add({i: x for i, x in enumerate(x for row in f for x in row) if x})
    central = []
    for z in A.center():
        L = [[A.mul(z, A.basis_vector(j))[i] for j in range(A.dim)] for i in range(A.dim)]
        flat = {i: x for i, x in enumerate(x for row in L for x in row) if x}
        central.append({"element": {A.names[i]: c for i, c in enumerate(z) if c},
                        "factors": ech.contains(flat)})
    return {"end_dim": end_dim(M), "factoring_dim": len(fac),
            "stable_end_dim": end_dim(M) - len(fac), "center": central}
