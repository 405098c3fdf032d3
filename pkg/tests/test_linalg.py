from __future__ import annotations

from fractions import Fraction

from hypothesis import given, strategies as st

from twocat.linalg import Echelon, coordinates, det, matmul, nullspace, rank, span_basis

small = st.integers(min_value=-4, max_value=4)
matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=1, max_size=5))


def test_rank_and_nullspace():
    M = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank(M) == 2
    ns = nullspace(M)
    assert len(ns) == 1
    assert all(sum(Fraction(a) * b for a, b in zip(row, ns[0])) == 0 for row in M)


def test_integer_pivots_stay_exact():
    ech = Echelon()
    ech.add({0: 3, 1: 1})
    assert ech.reduce({0: 1}) == {1: Fraction(-1, 3)}


def test_det():
    assert det([[2, 1], [1, 2]]) == 3
    assert det([[0, 1], [1, 0]]) == -1
    assert det([[1, 2], [2, 4]]) == 0


def test_coordinates():
    basis = [[1, 0, 1], [0, 1, 1]]
    assert coordinates(basis, [2, 3, 5]) == [2, 3]
    assert coordinates(basis, [0, 0, 1]) is None


@given(matrices)
def test_rank_nullity(M):
    n = len(M[0])
    assert rank(M) + len(nullspace(M, n)) == n


@given(matrices)
def test_span_basis_spans(M):
    n = len(M[0])
    B = span_basis(M, n)
    assert len(B) == rank(M)
    for row in M:
        assert coordinates(B, row) is not None


@given(matrices, matrices)
def test_matmul_associates_with_identity(A, B):
    n = len(A[0])
    I = [[int(i == j) for j in range(n)] for i in range(n)]
    assert matmul(A, I) == [[Fraction(x) for x in r] for r in A] or matmul(A, I) == A
