from fractions import Fraction

import numpy as np
import pytest

from completability.algebraic_oracle import PRIMES
from completability.exact_linalg import (
    PrimeFieldScalar,
    RationalMatrix,
    bareiss_rank,
    feasible_nonneg,
    format_rational,
    is_prime,
    parse_rational,
    rank,
    rank_mod_p,
    solve_affine,
)


@pytest.mark.parametrize(
    "text, expected",
    [("3/6", Fraction(1, 2)), ("-4", Fraction(-4)), (" 7 ", Fraction(7)), (5, Fraction(5)), ("-2/3", Fraction(-2, 3))],
)
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["0.5", "1e3", "", "1/0", "abc", 0.5, True])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_format_rational():
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    assert format_rational(Fraction(8, 2)) == "4"
    assert parse_rational(format_rational(Fraction(22, 7))) == Fraction(22, 7)


def test_is_prime():
    assert all(is_prime(p) for p in PRIMES)
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert not is_prime(561)
    assert not is_prime((1 << 61) + 1)
    assert not is_prime(-7)


def test_prime_field_scalar():
    a = PrimeFieldScalar(10, 7)
    b = PrimeFieldScalar(5, 7)
    assert a.value == 3
    assert (a + b).value == 1
    assert (a - b).value == 5
    assert (a * b).value == 1
    assert (a * a.inverse()).value == 1
    assert PrimeFieldScalar(-1, 7).value == 6
    assert not PrimeFieldScalar(14, 7)
    assert PrimeFieldScalar(15, 7)
    with pytest.raises(ZeroDivisionError):
        PrimeFieldScalar(0, 7).inverse()
    with pytest.raises(ValueError):
        _ = a + PrimeFieldScalar(1, 11)


def test_rational_matrix_basics():
    matrix = RationalMatrix.from_rows([["1/2", 1], [0, "3"]])
    assert matrix.rows == 2 and matrix.cols == 2
    assert matrix[0, 0] == Fraction(1, 2)
    assert matrix.transpose().to_rows() == [[Fraction(1, 2), 0], [1, 3]]
    assert matrix.matmul(RationalMatrix.identity(2)) == matrix
    assert matrix.matvec([2, 1]) == [Fraction(2), Fraction(3)]
    assert matrix.column_subset([1]).to_rows() == [[1], [3]]
    assert RationalMatrix.from_rows([], cols=3).cols == 3


def test_rational_matrix_is_read_only():
    matrix = RationalMatrix.identity(2)
    with pytest.raises(ValueError):
        matrix.entries[0, 0] = Fraction(5)


def test_rational_matrix_rejects_ragged_rows():
    with pytest.raises(ValueError):
        RationalMatrix.from_rows([[1, 2], [3]])


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3),
        ([[1, 2], [2, 4]], 1),
        ([["1/2", "1/3"], [3, 2]], 1),
        ([[0, 0], [0, 0]], 0),
        ([[1, 1, 0], [0, 1, 1], [1, 0, -1]], 2),
    ],
)
def test_rank(rows, expected):
    assert rank(RationalMatrix.from_rows(rows)) == expected


def test_rank_mod_p():
    matrix = [[1, 2], [3, 4]]
    assert rank_mod_p(matrix, 2) == 1
    assert rank_mod_p(matrix, 5) == 2
    assert rank_mod_p([[7, 14], [-21, 0]], 7) == 0
    with pytest.raises(ValueError):
        rank_mod_p(matrix, 4)


def test_rank_mod_large_prime_matches_bareiss():
    rng = np.random.default_rng(7)
    for _ in range(50):
        rows = rng.integers(-3, 4, size=(4, 5)).tolist()
        assert rank_mod_p(rows, PRIMES[-1]) == bareiss_rank([list(row) for row in rows])


def test_solve_affine():
    solution = solve_affine(RationalMatrix.from_rows([[1, 1]]), [2])
    assert solution.particular == (Fraction(2), Fraction(0))
    assert solution.kernel == ((Fraction(-1), Fraction(1)),)


def test_solve_affine_inconsistent():
    assert solve_affine(RationalMatrix.from_rows([[1, 1], [1, 1]]), [1, 2]) is None


def test_solve_affine_unique():
    solution = solve_affine(RationalMatrix.from_rows([[2, 1], [1, -1]]), [3, 0])
    assert solution.particular == (Fraction(1), Fraction(1))
    assert solution.kernel == ()


def test_feasible_nonneg():
    matrix = RationalMatrix.from_rows([[1, 1]])
    assert feasible_nonneg(matrix, [-1], [0, 1]) is None

    witness = feasible_nonneg(matrix, [-1], [0])
    assert witness[0] >= 0
    assert witness[0] + witness[1] == -1

    difference = RationalMatrix.from_rows([[1, -1], [1, 1]])
    witness = feasible_nonneg(difference, ["3/2", "5/2"], [0, 1])
    assert witness == (Fraction(2), Fraction(1, 2))


def test_feasible_nonneg_without_rows():
    assert feasible_nonneg(RationalMatrix.zeros(0, 3), [], [0]) == (0, 0, 0)


def test_feasible_nonneg_rejects_bad_index():
    with pytest.raises(ValueError):
        feasible_nonneg(RationalMatrix.identity(2), [1, 1], [2])


@pytest.mark.parametrize("shape", [(3, 5), (5, 3), (4, 4), (6, 2)])
def test_rank_equals_rank_of_transpose(shape):
    rng = np.random.default_rng(sum(shape))
    for _ in range(20):
        numerators = rng.integers(-2, 3, size=shape)
        denominators = rng.integers(1, 4, size=shape)
        matrix = RationalMatrix.from_rows(
            [[Fraction(int(p), int(q)) for p, q in zip(row_p, row_q)] for row_p, row_q in zip(numerators, denominators)]
        )
        assert rank(matrix) == rank(matrix.transpose()) <= min(shape)
