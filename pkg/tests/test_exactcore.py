from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sqtriplets.exactcore import (
    DegenerateSolutionError,
    EchelonSpace,
    RatMatrix,
    binom,
    nullspace,
    primitive_vector,
    rank,
    rref,
    solve,
    transition_matrix,
)


def test_binom_values():
    assert binom(3, -1) == 0
    assert binom(4, 2) == 6
    assert binom(-1, 2) == 1
    assert binom(2, 5) == 0


@given(st.integers(-10, 10), st.integers(0, 10))
def test_binom_upper_negation(x, p):
    assert binom(x, p) == (-1) ** p * binom(p - 1 - x, p)


@given(st.integers(-8, 8), st.integers(-8, 8), st.integers(0, 8))
def test_vandermonde(x, y, p):
    assert binom(x + y, p) == sum(binom(x, k) * binom(y, p - k) for k in range(p + 1))


def test_transition_matrix_small():
    assert transition_matrix(2).to_lists() == [[1, -1, 1], [2, -1, 0], [1, 0, 0]]
    A = transition_matrix(2)
    assert (A @ A).to_lists() == [[0, 0, 1], [0, -1, 2], [1, -1, 1]]
    assert transition_matrix(0).to_lists() == [[1]]


@pytest.mark.parametrize("n", range(13))
def test_cube(n):
    A = transition_matrix(n)
    assert A @ A @ A == RatMatrix.identity(n + 1) * (-1) ** n


def test_nullspace_examples():
    assert [primitive_vector(v) for v in nullspace(RatMatrix.from_rows([[3, -1]]))] == [[1, 3]]
    assert nullspace(RatMatrix.identity(3)) == []
    assert len(nullspace(RatMatrix(2, 2))) == 2
    assert len(nullspace(RatMatrix(0, 3))) == 3


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(
            st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


@given(matrices)
def test_nullspace_rank_nullity(rows):
    M = RatMatrix.from_rows(rows)
    basis = nullspace(M)
    assert all(not any(M.apply(v)) for v in basis)
    assert rank(M) + len(basis) == M.cols
    assert rank(M) == len(rref(M)[1])


@given(matrices)
def test_integer_rank_agrees(rows):
    M = RatMatrix.from_rows([[Fraction(x.numerator) for x in row] for row in rows])
    assert rank(M) == len(rref(M)[1])


@given(matrices, st.data())
def test_solve_consistent(rows, data):
    M = RatMatrix.from_rows(rows)
    x = data.draw(st.lists(st.integers(-3, 3), min_size=M.cols, max_size=M.cols))
    b = M.apply(x)
    y = solve(M, b)
    assert y is not None and M.apply(y) == b


def test_solve_inconsistent():
    assert solve(RatMatrix.from_rows([[1, 1], [1, 1]]), [1, 2]) is None


def test_primitive_vector():
    assert primitive_vector([Fraction(1, 2), Fraction(3, 2)]) == [1, 3]
    assert primitive_vector([-2, -6, -4]) == [1, 3, 2]
    assert primitive_vector([0, Fraction(5, 3)]) == [0, 1]
    with pytest.raises(DegenerateSolutionError):
        primitive_vector([0, 0])


def test_echelon_space():
    E = EchelonSpace(3)
    assert E.add([1, 1, 0])
    assert E.add([0, 1, 1])
    assert not E.add([1, 2, 1])
    assert E.contains([2, 0, -2])
    assert not E.contains([0, 0, 1])


def test_matrix_shapes():
    z = RatMatrix(0, 3)
    assert (RatMatrix(2, 0) @ z).shape == (2, 3)
    with pytest.raises(ValueError):
        RatMatrix(2, 2) @ RatMatrix(3, 1)
    assert RatMatrix.from_rows([[1, 2], [3, 4]]).T.to_lists() == [[1, 3], [2, 4]]
