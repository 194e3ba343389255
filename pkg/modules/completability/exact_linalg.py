"""
Exact linear algebra over the rationals and over prime fields.

Matrices are numpy object arrays of Fraction entries. Ranks are computed with fraction-free (Bareiss) elimination
on integer rows, affine systems are solved by Gauss-Jordan reduction, and nonnegative feasibility is decided by a
phase-one simplex with Bland's rule, so every answer is exact.

"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

_LOGGER = logging.getLogger(__name__)

Scalar = Union[int, Fraction, str]

_MILLER_RABIN_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def parse_rational(text: Scalar) -> Fraction:
    """Convert an int, Fraction or "p/q" string to a Fraction.

    Args:
        text: Value to convert

    Raises:
        ValueError: If the value is not an exact rational (floats are rejected)

    Returns:
        Reduced Fraction

    """
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"Expected an exact rational, got {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    stripped = str(text).strip()
    if not stripped or any(char in stripped for char in ".eE"):
        raise ValueError(f"Malformed rational {text!r}, expected p or p/q")
    try:
        return Fraction(stripped)
    except (ValueError, ZeroDivisionError) as ex:
        raise ValueError(f"Malformed rational {text!r}, expected p or p/q") from ex


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def is_prime(p: int) -> bool:
    """Deterministic Miller-Rabin test, exact for p < 3.3e24.

    Args:
        p: Integer to test

    Returns:
        True if p is prime

    """
    if p < 2:
        return False
    for base in _MILLER_RABIN_BASES:
        if p % base == 0:
            return p == base
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MILLER_RABIN_BASES:
        x = pow(base, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = pow(x, 2, p)
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeFieldScalar:
    value: int
    modulus: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    def _check(self, other: "PrimeFieldScalar") -> None:
        if other.modulus != self.modulus:
            raise ValueError(f"Moduli differ: {self.modulus} and {other.modulus}")

    def __add__(self, other: "PrimeFieldScalar") -> "PrimeFieldScalar":
        self._check(other)
        return PrimeFieldScalar((self.value + other.value) % self.modulus, self.modulus)

    def __sub__(self, other: "PrimeFieldScalar") -> "PrimeFieldScalar":
        self._check(other)
        return PrimeFieldScalar((self.value - other.value) % self.modulus, self.modulus)

    def __mul__(self, other: "PrimeFieldScalar") -> "PrimeFieldScalar":
        self._check(other)
        return PrimeFieldScalar((self.value * other.value) % self.modulus, self.modulus)

    def __bool__(self) -> bool:
        return self.value != 0

    def inverse(self) -> "PrimeFieldScalar":
        if self.value == 0:
            raise ZeroDivisionError("Zero has no inverse modulo p")
        return PrimeFieldScalar(pow(self.value, -1, self.modulus), self.modulus)


class RationalMatrix:
    """Rectangular matrix of exact rationals, immutable after construction."""

    def __init__(self, entries: np.ndarray):
        if entries.ndim != 2:
            raise ValueError(f"Expected a 2D array, got shape {entries.shape}")
        converted = np.empty(entries.shape, dtype=object)
        for index, value in np.ndenumerate(entries):
            converted[index] = parse_rational(value)
        converted.setflags(write=False)
        self._entries = converted

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], cols: Optional[int] = None) -> "RationalMatrix":
        """Build a matrix from nested rows.

        Args:
            rows: Row-major entries
            cols: Column count, needed only when there are no rows

        Raises:
            ValueError: If rows have different lengths

        Returns:
            The matrix

        """
        if not rows:
            return cls.zeros(0, cols or 0)
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ValueError("Rows have different lengths")
        entries = np.empty((len(rows), width), dtype=object)
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                entries[i, j] = value
        return cls(entries)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        entries = np.empty((rows, cols), dtype=object)
        entries.fill(Fraction(0))
        return cls(entries)

    @classmethod
    def identity(cls, size: int) -> "RationalMatrix":
        return cls.from_rows([[int(i == j) for j in range(size)] for i in range(size)], cols=size)

    @property
    def rows(self) -> int:
        return self._entries.shape[0]

    @property
    def cols(self) -> int:
        return self._entries.shape[1]

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        return self._entries[index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self._entries.shape == other.entries.shape and bool(np.all(self._entries == other.entries))

    def __hash__(self) -> int:
        return hash((self._entries.shape, tuple(self._entries.flat)))

    def __repr__(self) -> str:
        rows = ["[" + ", ".join(format_rational(value) for value in row) + "]" for row in self.to_rows()]
        return f"RationalMatrix([{', '.join(rows)}])"

    def to_rows(self) -> List[List[Fraction]]:
        return [list(row) for row in self._entries]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self._entries.T.copy())

    def column_subset(self, columns: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix(self._entries[:, list(columns)].reshape(self.rows, len(columns)))

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        if self.cols == 0:
            return RationalMatrix.zeros(self.rows, other.cols)
        return RationalMatrix(self._entries.dot(other.entries))

    def matvec(self, vector: Sequence[Scalar]) -> List[Fraction]:
        if len(vector) != self.cols:
            raise ValueError(f"Vector of length {len(vector)} does not match {self.cols} columns")
        values = [parse_rational(value) for value in vector]
        return [sum((entry * value for entry, value in zip(row, values)), Fraction(0)) for row in self._entries]


def _integer_rows(matrix: RationalMatrix) -> List[List[int]]:
    """Scale each row by the lcm of its denominators; row scaling preserves rank."""
    integer_rows = []
    for row in matrix.to_rows():
        scale = lcm(*(value.denominator for value in row)) if row else 1
        integer_rows.append([int(value * scale) for value in row])
    return integer_rows


def bareiss_rank(rows: List[List[int]]) -> int:
    """Rank of an integer matrix by fraction-free Gaussian elimination.

    Args:
        rows: Integer rows, consumed (modified in place)

    Returns:
        Rank over the rationals

    """
    if not rows:
        return 0
    height, width = len(rows), len(rows[0])
    rank = 0
    previous_pivot = 1
    for col in range(width):
        pivot_row = next((r for r in range(rank, height) if rows[r][col] != 0), None)
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][col]
        for r in range(rank + 1, height):
            factor = rows[r][col]
            rows[r] = [(pivot * rows[r][c] - factor * rows[rank][c]) // previous_pivot for c in range(width)]
        previous_pivot = pivot
        rank += 1
        if rank == height:
            break
    return rank


def rank(matrix: RationalMatrix) -> int:
    return bareiss_rank(_integer_rows(matrix))


def rank_mod_p(matrix: Union[np.ndarray, Sequence[Sequence[int]]], p: int) -> int:
    """Rank of an integer matrix over the field with p elements, eliminating on PrimeFieldScalar entries.

    Args:
        matrix: Integer entries (numpy array or nested sequences)
        p: Prime modulus

    Raises:
        ValueError: If p is not prime

    Returns:
        Rank modulo p

    """
    if not is_prime(p):
        raise ValueError(f"Modulus {p} is not prime")
    rows = [[PrimeFieldScalar(int(value), p) for value in row] for row in matrix]
    if not rows:
        return 0
    width = len(rows[0])
    rank_so_far = 0
    for col in range(width):
        pivot_row = next((r for r in range(rank_so_far, len(rows)) if rows[r][col]), None)
        if pivot_row is None:
            continue
        rows[rank_so_far], rows[pivot_row] = rows[pivot_row], rows[rank_so_far]
        inverse = rows[rank_so_far][col].inverse()
        pivot = [value * inverse for value in rows[rank_so_far]]
        rows[rank_so_far] = pivot
        for r in range(rank_so_far + 1, len(rows)):
            factor = rows[r][col]
            if factor:
                rows[r] = [value - factor * pivot_value for value, pivot_value in zip(rows[r], pivot)]
        rank_so_far += 1
        if rank_so_far == len(rows):
            break
    return rank_so_far


@dataclass(frozen=True)
class AffineSolution:
    particular: Tuple[Fraction, ...]
    kernel: Tuple[Tuple[Fraction, ...], ...]


def _reduced_row_echelon(augmented: List[List[Fraction]], cols: int) -> List[int]:
    """Gauss-Jordan reduction in place over the first `cols` columns.

    Args:
        augmented: Rows to reduce
        cols: Number of coefficient columns

    Returns:
        Pivot column of each nonzero row

    """
    pivots: List[int] = []
    row = 0
    for col in range(cols):
        pivot_row = next((r for r in range(row, len(augmented)) if augmented[r][col] != 0), None)
        if pivot_row is None:
            continue
        augmented[row], augmented[pivot_row] = augmented[pivot_row], augmented[row]
        pivot = augmented[row][col]
        augmented[row] = [value / pivot for value in augmented[row]]
        for r, other in enumerate(augmented):
            if r != row and other[col] != 0:
                factor = other[col]
                augmented[r] = [value - factor * pivot_value for value, pivot_value in zip(other, augmented[row])]
        pivots.append(col)
        row += 1
        if row == len(augmented):
            break
    return pivots


def solve_affine(matrix: RationalMatrix, rhs: Sequence[Scalar]) -> Optional[AffineSolution]:
    """Solve A x = b exactly.

    Args:
        matrix: Coefficient matrix A
        rhs: Right-hand side b

    Raises:
        ValueError: If b does not have one entry per row of A

    Returns:
        A particular solution (free variables set to zero) and a kernel basis, or None if inconsistent

    """
    if len(rhs) != matrix.rows:
        raise ValueError(f"Right-hand side has {len(rhs)} entries, matrix has {matrix.rows} rows")
    augmented = [row + [parse_rational(value)] for row, value in zip(matrix.to_rows(), rhs)]
    pivots = _reduced_row_echelon(augmented, matrix.cols)
    if any(all(value == 0 for value in row[:-1]) and row[-1] != 0 for row in augmented):
        return None
    particular = [Fraction(0)] * matrix.cols
    for row, col in enumerate(pivots):
        particular[col] = augmented[row][-1]
    kernel = []
    for free in (col for col in range(matrix.cols) if col not in pivots):
        vector = [Fraction(0)] * matrix.cols
        vector[free] = Fraction(1)
        for row, col in enumerate(pivots):
            vector[col] = -augmented[row][free]
        kernel.append(tuple(vector))
    return AffineSolution(particular=tuple(particular), kernel=tuple(kernel))


class _PhaseOneTableau:
    """Simplex tableau minimizing the sum of artificial variables, Bland's rule pivoting."""

    def __init__(self, rows: List[List[Fraction]], rhs: List[Fraction]):
        height, width = len(rows), len(rows[0]) if rows else 0
        self.width = width
        self.table = []
        for i, (row, value) in enumerate(zip(rows, rhs)):
            sign = -1 if value < 0 else 1
            artificials = [Fraction(int(k == i)) for k in range(height)]
            self.table.append([sign * entry for entry in row] + artificials + [sign * value])
        self.basis = [width + i for i in range(height)]
        total = width + height
        self.cost = [Fraction(0)] * width + [Fraction(1)] * height + [Fraction(0)]
        for row in self.table:
            self.cost = [c - r for c, r in zip(self.cost, row)]
        self.total = total
        self.pivots = 0

    def _pivot(self, row: int, col: int) -> None:
        pivot = self.table[row][col]
        self.table[row] = [value / pivot for value in self.table[row]]
        for r, other in enumerate(self.table):
            if r != row and other[col] != 0:
                factor = other[col]
                self.table[r] = [value - factor * p for value, p in zip(other, self.table[row])]
        factor = self.cost[col]
        self.cost = [value - factor * p for value, p in zip(self.cost, self.table[row])]
        self.basis[row] = col
        self.pivots += 1

    def solve(self) -> Fraction:
        while True:
            entering = next((col for col in range(self.total) if self.cost[col] < 0), None)
            if entering is None:
                return -self.cost[-1]
            candidates = [
                (self.table[r][-1] / self.table[r][entering], self.basis[r], r)
                for r in range(len(self.table))
                if self.table[r][entering] > 0
            ]
            # Phase one is bounded below by zero, so some row always qualifies.
            _, _, leaving = min(candidates)
            self._pivot(leaving, entering)

    def values(self) -> List[Fraction]:
        values = [Fraction(0)] * self.total
        for row, col in enumerate(self.basis):
            values[col] = self.table[row][-1]
        return values[: self.width]


def feasible_nonneg(
    matrix: RationalMatrix, rhs: Sequence[Scalar], nonneg_indices: Iterable[int]
) -> Optional[Tuple[Fraction, ...]]:
    """Find x with A x = b and x_i >= 0 for the given indices, or prove none exists.

    Free variables are split as x = x_plus - x_minus and a phase-one simplex with Bland's rule decides
    feasibility; the witness is deterministic for given inputs.

    Args:
        matrix: Coefficient matrix A
        rhs: Right-hand side b
        nonneg_indices: Column indices constrained to be nonnegative

    Raises:
        ValueError: If dimensions mismatch or an index is out of range

    Returns:
        Witness x, or None if infeasible

    """
    if len(rhs) != matrix.rows:
        raise ValueError(f"Right-hand side has {len(rhs)} entries, matrix has {matrix.rows} rows")
    nonneg: Set[int] = set(nonneg_indices)
    if any(not 0 <= index < matrix.cols for index in nonneg):
        raise ValueError(f"Nonnegative indices {sorted(nonneg)} outside 0..{matrix.cols - 1}")
    b = [parse_rational(value) for value in rhs]
    if matrix.rows == 0:
        return tuple(Fraction(0) for _ in range(matrix.cols))

    free = [col for col in range(matrix.cols) if col not in nonneg]
    rows = []
    for row in matrix.to_rows():
        rows.append(row + [-row[col] for col in free])
    tableau = _PhaseOneTableau(rows, b)
    infeasibility = tableau.solve()
    _LOGGER.debug("Phase one finished after %d pivots, residual %s", tableau.pivots, infeasibility)
    if infeasibility != 0:
        return None
    split = tableau.values()
    witness = split[: matrix.cols]
    for offset, col in enumerate(free):
        witness[col] -= split[matrix.cols + offset]
    return tuple(witness)
