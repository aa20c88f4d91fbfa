from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from hurwitz_lab.linalg import SparseMatrix, echelon, in_span, nullspace, rank, rank_mod_p


def dense_rank(rows):
    """Plain Gaussian elimination over Q, as an independent oracle."""
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for j in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][j] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][j] != 0:
                f = m[i][j] / m[r][j]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


matrices = st.integers(1, 7).flatmap(
    lambda nr: st.integers(1, 7).flatmap(
        lambda nc: st.lists(st.lists(st.integers(-3, 3), min_size=nc, max_size=nc), min_size=nr, max_size=nr)
    )
)


@given(matrices)
def test_rank_matches_dense_oracle(rows):
    M = SparseMatrix.from_dense(rows)
    assert rank(M) == dense_rank(rows)
    assert rank(M.transpose()) == rank(M)


@given(matrices)
def test_nullspace_is_kernel(rows):
    M = SparseMatrix.from_dense(rows)
    basis = nullspace(M)
    assert len(basis) == M.ncols - rank(M)
    for v in basis:
        assert M.apply(v) == {}


@given(matrices)
def test_coordinate_roundtrip(rows):
    M = SparseMatrix.from_dense(rows)
    assert SparseMatrix.from_coordinate_text(M.to_coordinate_text()) == M


@given(matrices, st.lists(st.integers(-2, 2), min_size=7, max_size=7))
def test_span_membership(rows, coeffs):
    M = SparseMatrix.from_dense(rows)
    combo = M.apply({j: coeffs[j] for j in range(M.ncols) if coeffs[j]})
    assert in_span(M, [combo])
    ech = echelon(M.cols)
    assert ech.contains(combo)


def test_echelon_rejects_outside_vector():
    M = SparseMatrix.from_dense([[1, 0], [0, 0]])
    assert not echelon(M.cols).contains({1: 1})
    assert not in_span(M, [{1: 1}])


def test_rational_entries():
    M = SparseMatrix.from_dense([[Fraction(1, 2), 1], [1, 2]])
    assert rank(M) == 1
    assert M.to_coordinate_text().splitlines()[1] == "0 0 1/2"


def test_rank_mod_p_cross_check():
    rows = [[2, 4, 1], [1, 2, 0], [3, 6, 1]]
    M = SparseMatrix.from_dense(rows)
    assert rank_mod_p(M) == rank(M) == 2
    D = SparseMatrix.from_dense([[1, 1], [1, 3]])
    assert rank(D) == 2 and rank_mod_p(D, 2) == 1  # determinant 2


def test_algebra():
    A = SparseMatrix.from_dense([[1, 2], [0, 1]])
    B = SparseMatrix.from_dense([[0, 1], [1, 0]])
    assert (A @ B).to_dense() == [[2, 1], [1, 0]]
    assert (A - A).is_zero()
    assert A + B - B == A
    assert SparseMatrix.identity(2) @ A == A
