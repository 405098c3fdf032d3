"""Exact linear algebra over Fraction or Scalar entries.

Matrices are lists of rows.  Elimination works on sparse rows (dicts
column -> value) because most systems here are large and very sparse.
Nothing in this module knows which field it is working over; callers
pass ``one`` when a result needs a fresh unit.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Row = dict  # column index -> nonzero entry


def _inv(x):
    # plain ints would divide into floats
    if isinstance(x, int):
        return Fraction(1, x)
    return 1 / x


def to_sparse(rows: Iterable[Sequence]) -> list[Row]:
    return [{j: v for j, v in enumerate(r) if v} for r in rows]


class Echelon:
    """Incrementally maintained reduced row echelon basis.

    ``add`` reduces a new sparse vector against the basis and keeps it if
    it is independent; the basis stays fully reduced.
    """

    def __init__(self):
        self.rows: dict[int, Row] = {}  # pivot column -> row with 1 at pivot

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: Row) -> Row:
        v = dict(vec)
        for col in sorted(c for c in v if c in self.rows):
            c = v.get(col)
            if not c:
                continue
            for j, x in self.rows[col].items():
                nv = v.get(j, 0) - c * x
                if nv:
                    v[j] = nv
                else:
                    v.pop(j, None)
        return v

    def add(self, vec: Row) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        piv = min(v)
        inv = _inv(v[piv])
        v = {j: x * inv for j, x in v.items()}
        for prow in self.rows.values():
            c = prow.get(piv)
            if c:
                for j, x in v.items():
                    nv = prow.get(j, 0) - c * x
                    if nv:
                        prow[j] = nv
                    else:
                        prow.pop(j, None)
        self.rows[piv] = v
        return True

    def contains(self, vec: Row) -> bool:
        return not self.reduce(vec)

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis(self, ncols: int, zero=0) -> list[list]:
        out = []
        for piv in self.pivots():
            r = self.rows[piv]
            out.append([r.get(j, zero) for j in range(ncols)])
        return out


def rank(rows: Iterable[Sequence]) -> int:
    ech = Echelon()
    for r in to_sparse(rows):
        ech.add(r)
    return len(ech)


def sparse_rank(rows: Iterable[Row]) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return len(ech)


def nullspace_sparse(equations: Iterable[Row], ncols: int, one=Fraction(1)) -> list[Row]:
    """Basis of {x : eq . x = 0 for every equation}, as sparse vectors."""
    ech = Echelon()
    for eq in equations:
        if eq:
            ech.add(eq)
    pivots = set(ech.rows)
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = {free: one}
        for piv, row in ech.rows.items():
            c = row.get(free)
            if c:
                vec[piv] = -c
        basis.append(vec)
    return basis


def nullspace(mat: Sequence[Sequence], ncols: int | None = None, one=Fraction(1)) -> list[list]:
    """Right kernel of a dense matrix, as dense vectors."""
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    zero = one - one
    return [[v.get(j, zero) for j in range(ncols)]
            for v in nullspace_sparse(to_sparse(mat), ncols, one)]


def span_basis(vectors: Iterable[Sequence], ncols: int, zero=0) -> list[list]:
    """Reduced echelon basis of the span (canonical: equal spans give equal output)."""
    ech = Echelon()
    for v in to_sparse(vectors):
        ech.add(v)
    return ech.basis(ncols, zero)


def coordinates(basis: Sequence[Sequence], vec: Sequence) -> list | None:
    """Coefficients c with sum c_i basis_i = vec, or None if vec is outside the span.

    ``basis`` must be linearly independent.
    """
    k = len(basis)
    n = len(vec)
    # solve B^T c = vec
    eqs = []
    for j in range(n):
        row = {i: basis[i][j] for i in range(k) if basis[i][j]}
        if vec[j]:
            row[k] = -vec[j]
        if row:
            eqs.append(row)
    one = _one_like(vec, basis)
    sols = nullspace_sparse(eqs, k + 1, one)
    for s in sols:
        if s.get(k):
            inv = _inv(s[k])
            zero = one - one
            return [s.get(i, zero) * inv for i in range(k)]
    return None


def _one_like(*things):
    for t in things:
        for x in _flatten(t):
            if x:
                return x * _inv(x)
    return Fraction(1)


def _flatten(t):
    if isinstance(t, (list, tuple)):
        for x in t:
            yield from _flatten(x)
    elif isinstance(t, dict):
        yield from t.values()
    else:
        yield t


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    if not A:
        return []
    n, m = len(A), len(B[0]) if B else 0
    inner = len(B)
    out = []
    for i in range(n):
        Ai = A[i]
        row = [0] * m
        for k in range(inner):
            a = Ai[k]
            if not a:
                continue
            Bk = B[k]
            for j in range(m):
                b = Bk[j]
                if b:
                    row[j] = row[j] + a * b
        out.append(row)
    return out


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum((a * x for a, x in zip(row, v) if a and x), 0) for row in A]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(c, A):
    return [[c * a for a in r] for r in A]


def identity(n: int, one=1, zero=0) -> list[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None, zero=0) -> list[list]:
    return [[zero] * (n if m is None else m) for _ in range(n)]


def is_zero(A) -> bool:
    return not any(x for row in A for x in row)


def det(mat: Sequence[Sequence]):
    """Determinant by fraction-exact Gaussian elimination."""
    n = len(mat)
    if n == 0:
        return 1
    M = [list(r) for r in mat]
    result = None
    sign = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return M[0][0] - M[0][0]
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            sign = -sign
        p = M[c][c]
        result = p if result is None else result * p
        inv = _inv(p)
        for r in range(c + 1, n):
            f = M[r][c]
            if f:
                f = f * inv
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return result if sign > 0 else -result
