"""
Evaluate the tree metric of a weighted caterpillar and check the four-point condition.

Edge weights are given in the edge order of Cat(n): the two edges of the {1, 2} cherry, then walking along the spine to
the {n - 1, n} cherry. Leaf edges may carry any rational weight, internal edges must be positive.
"""

import argparse

from completability.exact_linalg import format_rational
from completability.tree_space import WeightedXTree, cat_tree, four_point_check, path_matrix, tree_metric


def _options() -> argparse.Namespace:
    """Function to read user arguments.

    Returns:
        Arguments from user

    """
    parser = argparse.ArgumentParser(description=__doc__)

    parser.add_argument("--n", type=int, default=4, help="Number of leaves")
    parser.add_argument(
        "--weights",
        nargs="+",
        default=["-1", "1", "2", "2", "-3"],
        help="One rational weight per edge of Cat(n), e.g. -1 1 2 2 -3",
    )

    return parser.parse_args()


def _main() -> None:
    user_options = _options()

    tree = cat_tree(user_options.n)
    weighted = WeightedXTree(tree=tree, weights=tuple(user_options.weights))

    print("Edges of Cat(n) with their weights:")
    for edge, weight in zip(tree.edges, weighted.weights):
        print(f"  {edge}: {format_rational(weight)}")

    metric = tree_metric(weighted)
    print("Tree metric:")
    for (i, j), value in metric.values.items():
        print(f"  d({i},{j}) = {format_rational(value)}")

    result = four_point_check(metric)
    print(f"Four-point condition holds: {result.holds}")

    print("Path matrix (rows are edges, columns are pairs):")
    matrix = path_matrix(tree)
    print("  " + " ".join(f"{i}{j}" for i, j in matrix.pairs))
    for edge, row in zip(matrix.edges, matrix.matrix.to_rows()):
        print(f"  {' '.join(f'{int(value):2d}' for value in row)}  {edge}")


if __name__ == "__main__":
    _main()
