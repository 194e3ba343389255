"""
Decide a random observation pattern of a rank-2 m x n matrix, and confirm the verdict with the Jacobian oracle.

Cells are translated to pairs on m + n vertices (row i becomes vertex n + i, column j stays vertex j). The skew
embedding of a random rank-2 matrix is printed to show that its upper-right block is the matrix itself.
"""

import argparse

import numpy as np

from completability.algebraic_oracle import oracle_decide, rect_matrix, sample_point, skew_embedding
from completability.matroid_decision import Model, decide_rect


def _options() -> argparse.Namespace:
    """Function to read user arguments.

    Returns:
        Arguments from user

    """
    parser = argparse.ArgumentParser(description=__doc__)

    parser.add_argument("--m", type=int, default=3, help="Number of rows")
    parser.add_argument("--n", type=int, default=4, help="Number of columns")
    parser.add_argument("--density", type=float, default=0.6, help="Probability that a cell is observed")
    parser.add_argument("--seed", type=int, default=0, help="Random seed")

    return parser.parse_args()


def _main() -> None:
    user_options = _options()
    m, n = user_options.m, user_options.n
    rng = np.random.default_rng(user_options.seed)

    cells = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1) if rng.random() < user_options.density]
    print(f"Observed cells: {cells}")

    decision = decide_rect(m, n, cells)
    print(f"Independent: {decision.independent}")
    if decision.independent:
        print(f"Certificate: {decision.vertex_labels()}")

    oracle = oracle_decide(Model.RECT, (m, n), cells, trials=3, seed=user_options.seed)
    agrees = oracle.independent == decision.independent
    print(f"Jacobian ranks {list(oracle.ranks)} for {oracle.size} cells, oracle agrees: {agrees}")

    point = sample_point(Model.RECT, (m, n), rng)
    embedded = skew_embedding(point)
    print("Rank-2 matrix A:")
    print(rect_matrix(point))
    print("Skew embedding B:")
    print(embedded)
    print(f"Upper-right block equals A: {embedded.entries[:m, m:].tolist() == rect_matrix(point).entries.tolist()}")


if __name__ == "__main__":
    _main()
