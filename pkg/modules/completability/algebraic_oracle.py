"""
Randomized Jacobian-rank oracle, independent of the combinatorial criterion.

A pattern S is independent exactly when the coordinate projection onto S has a full-rank differential at a generic
point. Skew matrices of rank at most 2 are parameterized by x_ij = u_i v_j - u_j v_i, rectangular ones by A = a b with
a of size m x 2 and b of size 2 x n. The Jacobian is evaluated at random integer points and ranked modulo random large
primes: a full-rank trial proves independence, a rank deficit in every trial means dependence with high probability.

"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from completability.exact_linalg import RationalMatrix, rank_mod_p
from completability.graph_core import PatternGraph
from completability.matroid_decision import Model, translate_rect

_LOGGER = logging.getLogger(__name__)

ENTRY_BOUND = 1 << 20

# Largest primes below 2^50, ..., 2^62.
PRIMES = (
    (1 << 50) - 27,
    (1 << 51) - 129,
    (1 << 52) - 47,
    (1 << 53) - 111,
    (1 << 54) - 33,
    (1 << 55) - 55,
    (1 << 56) - 5,
    (1 << 57) - 13,
    (1 << 58) - 27,
    (1 << 59) - 55,
    (1 << 60) - 93,
    (1 << 61) - 1,
    (1 << 62) - 57,
)


@dataclass(frozen=True)
class ParamPoint:
    """Parameter values: u, v for skew matrices, or the factors a (m x 2) and b (2 x n) for rectangular ones."""

    model: Model
    u: Tuple[int, ...] = ()
    v: Tuple[int, ...] = ()
    a: Tuple[Tuple[int, int], ...] = ()
    b: Tuple[Tuple[int, ...], Tuple[int, ...]] = ((), ())

    def __post_init__(self) -> None:
        values = list(self.u) + list(self.v) + [x for row in self.a for x in row] + [x for row in self.b for x in row]
        if any(abs(value) > ENTRY_BOUND for value in values):
            raise ValueError(f"Parameter entries must lie in [-{ENTRY_BOUND}, {ENTRY_BOUND}]")

    @classmethod
    def from_factors(
        cls, u1: Sequence[int], u2: Sequence[int], v1: Sequence[int], v2: Sequence[int]
    ) -> "ParamPoint":
        """Rectangular point with A = u1 v1 - u2 v2.

        Args:
            u1: First column factor, length m
            u2: Second column factor, length m
            v1: First row factor, length n
            v2: Second row factor, length n

        Returns:
            Point with a = [u1 u2] and b = [v1; -v2]

        """
        return cls(
            model=Model.RECT,
            a=tuple((int(x), int(y)) for x, y in zip(u1, u2)),
            b=(tuple(int(x) for x in v1), tuple(-int(x) for x in v2)),
        )

    def parameter_count(self) -> int:
        if self.model is Model.RECT:
            return 2 * len(self.a) + 2 * len(self.b[0])
        return len(self.u) + len(self.v)


@dataclass(frozen=True)
class OracleResult:
    independent: bool
    size: int
    ranks: Tuple[int, ...]
    primes: Tuple[int, ...]


def _normalized_model(model: Model) -> Model:
    return Model.RECT if model is Model.RECT else Model.SKEW


def sample_point(model: Model, ambient: Sequence[int], rng: np.random.Generator) -> ParamPoint:
    """Uniform integer point in [-2^20, 2^20], redrawn until no factor vector is zero.

    Args:
        model: Variety to sample on
        ambient: (n,) for skew, (m, n) for rectangular
        rng: Random stream

    Returns:
        Parameter point

    """

    def draw(size: int) -> Tuple[int, ...]:
        while True:
            values = tuple(int(x) for x in rng.integers(-ENTRY_BOUND, ENTRY_BOUND, size=size, endpoint=True))
            if size == 0 or any(values):
                return values

    if _normalized_model(model) is Model.RECT:
        m, n = ambient
        first, second = draw(m), draw(m)
        return ParamPoint(model=Model.RECT, a=tuple(zip(first, second)), b=(draw(n), draw(n)))
    (n,) = ambient
    return ParamPoint(model=Model.SKEW, u=draw(n), v=draw(n))


def jacobian(model: Model, ambient: Sequence[int], pattern: Iterable[Sequence[int]], point: ParamPoint) -> np.ndarray:
    """Differential of the masked parameterization at a point.

    Skew parameters are ordered (u_1..u_n, v_1..v_n); rectangular ones (a_11, a_12, ..., a_m2, b_11..b_1n,
    b_21..b_2n).

    Args:
        model: Variety of the pattern
        ambient: (n,) for skew, (m, n) for rectangular
        pattern: Observed pairs (skew) or cells (rectangular)
        point: Evaluation point, on the same model

    Raises:
        ValueError: If the point does not match the model and ambient size

    Returns:
        Integer matrix (object dtype) with one row per observation

    """
    if _normalized_model(model) is not point.model:
        raise ValueError(f"Point sampled for {point.model.value} used for {model.value}")
    if point.model is Model.RECT:
        m, n = ambient
        if len(point.a) != m or len(point.b[0]) != n:
            raise ValueError(f"Point does not fit a {m} x {n} matrix")
        cells = [tuple(int(index) for index in cell) for cell in pattern]
        translate_rect(m, n, cells)
        matrix = np.zeros((len(cells), point.parameter_count()), dtype=object)
        for row, (i, j) in enumerate(cells):
            for k in range(2):
                matrix[row, 2 * (i - 1) + k] = point.b[k][j - 1]
                matrix[row, 2 * m + k * n + (j - 1)] = point.a[i - 1][k]
        return matrix
    (n,) = ambient
    if len(point.u) != n:
        raise ValueError(f"Point does not fit n = {n}")
    pairs = list(pattern)
    PatternGraph.from_pairs(n, pairs)
    matrix = np.zeros((len(pairs), 2 * n), dtype=object)
    for row, raw in enumerate(pairs):
        i, j = sorted(int(index) for index in raw)
        matrix[row, i - 1] = point.v[j - 1]
        matrix[row, j - 1] = -point.v[i - 1]
        matrix[row, n + i - 1] = -point.u[j - 1]
        matrix[row, n + j - 1] = point.u[i - 1]
    return matrix


def _trial(
    model: Model, ambient: Sequence[int], pattern: List[Sequence[int]], seed_sequence: np.random.SeedSequence
) -> Tuple[int, int]:
    rng = np.random.default_rng(seed_sequence)
    prime = PRIMES[int(rng.integers(len(PRIMES)))]
    point = sample_point(model, ambient, rng)
    return rank_mod_p(jacobian(model, ambient, pattern, point), prime), prime


def oracle_decide(
    model: Model,
    ambient: Sequence[int],
    pattern: Iterable[Sequence[int]],
    trials: int = 3,
    seed: int = 0,
    workers: Optional[int] = None,
) -> OracleResult:
    """Randomized independence test with one-sided error.

    Args:
        model: Variety of the pattern
        ambient: (n,) for skew and tree metrics, (m, n) for rectangular
        pattern: Observed pairs or cells
        trials: Number of random points, each with its own prime
        seed: Seed; trial streams are spawned from it deterministically
        workers: Run trials on this many threads when given

    Raises:
        ValueError: If trials < 1

    Returns:
        Verdict with the rank and prime of every trial

    """
    if trials < 1:
        raise ValueError(f"At least one trial is needed, got {trials}")
    observations = list(pattern)
    streams = np.random.SeedSequence(seed).spawn(trials)
    if workers:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            outcomes = list(executor.map(lambda stream: _trial(model, ambient, observations, stream), streams))
    else:
        outcomes = [_trial(model, ambient, observations, stream) for stream in streams]
    ranks = tuple(rank for rank, _ in outcomes)
    _LOGGER.debug("Jacobian ranks %s for %d observations", ranks, len(observations))
    return OracleResult(
        independent=max(ranks) == len(observations),
        size=len(observations),
        ranks=ranks,
        primes=tuple(prime for _, prime in outcomes),
    )


def rect_matrix(point: ParamPoint) -> RationalMatrix:
    a = np.array(point.a, dtype=object).reshape(len(point.a), 2)
    b = np.array(point.b, dtype=object).reshape(2, len(point.b[0]))
    return RationalMatrix(a.dot(b))


def skew_embedding(point: ParamPoint) -> RationalMatrix:
    """Skew-symmetric (m + n) x (m + n) matrix of rank at most 2 whose upper-right m x n block is A = u1 v1 - u2 v2.

    B = (u1; v2^T)(u2^T v1) - (u2; v1^T)(u1^T v2), with u1, u2 the columns of a, v1 the first row of b and v2 minus
    its second row.

    Args:
        point: Rectangular parameter point

    Raises:
        ValueError: If the point is not rectangular

    Returns:
        The block matrix B

    """
    if point.model is not Model.RECT:
        raise ValueError("The skew embedding needs rectangular factors")
    u1 = [row[0] for row in point.a]
    u2 = [row[1] for row in point.a]
    v1 = list(point.b[0])
    v2 = [-x for x in point.b[1]]
    left_first = np.array(u1 + v2, dtype=object)
    right_first = np.array(u2 + v1, dtype=object)
    left_second = np.array(u2 + v1, dtype=object)
    right_second = np.array(u1 + v2, dtype=object)
    size = len(u1) + len(v1)
    if size == 0:
        return RationalMatrix.zeros(0, 0)
    block = np.outer(left_first, right_first) - np.outer(left_second, right_second)
    return RationalMatrix(block.reshape(size, size))
