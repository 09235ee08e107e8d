import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from monodromy.snf import (
    SmithVerificationError,
    matmul,
    smith_normal_form,
    to_dense,
    to_sparse,
    transpose,
)


def sympy_factors(dense):
    m = Matrix(dense)
    if m.rows == 0 or m.cols == 0:
        return []
    return [abs(int(x)) for x in invariant_factors(m, domain=ZZ) if x != 0]


matrices = st.integers(0, 7).flatmap(
    lambda m: st.integers(0, 7).flatmap(
        lambda n: st.lists(
            st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m
        ).map(lambda rows: (rows, (m, n)))
    )
)

sparse_matrices = st.integers(1, 9).flatmap(
    lambda m: st.integers(1, 9).flatmap(
        lambda n: st.lists(
            st.lists(st.sampled_from([0, 0, 0, 0, 1, -1, 2, -3]), min_size=n, max_size=n),
            min_size=m, max_size=m,
        ).map(lambda rows: (rows, (m, n)))
    )
)


@given(matrices)
@settings(max_examples=300, deadline=None)
def test_diagonal_matches_sympy(case):
    dense, shape = case
    dec = smith_normal_form(to_sparse(dense), shape, verify=True)
    assert dec.diagonal == sympy_factors(dense)


@given(sparse_matrices)
@settings(max_examples=200, deadline=None)
def test_sparse_like_boundary_matrices(case):
    dense, shape = case
    dec = smith_normal_form(to_sparse(dense), shape, verify=True)
    assert dec.diagonal == sympy_factors(dense)


@given(matrices)
@settings(max_examples=100, deadline=None)
def test_unimodular_by_determinant(case):
    dense, (m, n) = case
    dec = smith_normal_form(to_sparse(dense), (m, n))
    if m:
        assert abs(Matrix(to_dense(dec.u, m)).det()) == 1
    if n:
        assert abs(Matrix(to_dense(dec.v, n)).det()) == 1
    product = matmul(matmul(dec.u, to_sparse(dense)), dec.v)
    assert product == dec.d_rows()


@pytest.mark.parametrize("dense,diagonal", [
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
    ([[2, 0], [0, 3]], [1, 6]),
    ([[0, 0], [0, 0]], []),
    ([[1, -1, 0], [0, 1, -1], [-1, 0, 1]], [1, 1]),
    ([[4]], [4]),
])
def test_known_forms(dense, diagonal):
    dec = smith_normal_form(dense, verify=True)
    assert dec.diagonal == diagonal
    assert dec.rank == len(diagonal)
    assert dec.torsion == [d for d in diagonal if d > 1]


def test_dense_and_sparse_agree():
    dense = [[0, 3, 0], [0, 0, 0], [6, 0, 9]]
    assert smith_normal_form(dense).diagonal == smith_normal_form(to_sparse(dense), (3, 3)).diagonal


def test_trailing_zero_columns_need_shape():
    dec = smith_normal_form([{0: 2}], (1, 4), verify=True)
    assert dec.diagonal == [2]
    assert len(dec.v) == 4


def test_verify_catches_tampering():
    a = to_sparse([[2, 4], [6, 8]])
    dec = smith_normal_form(a, (2, 2))
    dec.verify(a)
    dec.diagonal[0] += 1
    with pytest.raises(SmithVerificationError):
        dec.verify(a)


def test_verify_catches_non_unimodular():
    a = to_sparse([[1, 0], [0, 1]])
    dec = smith_normal_form(a, (2, 2))
    dec.u_inv = [{0: 2}, {1: 1}]
    with pytest.raises(SmithVerificationError):
        dec.verify(a)


def test_transpose_roundtrip():
    dense = [[1, 0, 2], [0, 0, 3]]
    rows = to_sparse(dense)
    assert to_dense(transpose(transpose(rows, 3), 2), 3) == dense


def test_large_sparse_matrix_is_fast():
    import random
    import time
    rng = random.Random(7)
    m, n = 600, 300
    rows = []
    for _ in range(m):
        row = {}
        for j in rng.sample(range(n), 3):
            row[j] = rng.choice([1, -1])
        rows.append(row)
    start = time.perf_counter()
    smith_normal_form(rows, (m, n), verify=True)
    assert time.perf_counter() - start < 20
