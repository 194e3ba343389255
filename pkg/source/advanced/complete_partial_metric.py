"""
Complete distances prescribed on some pairs of taxa to a full tree metric.

The values file has one `i j p/q` line per prescribed pair. If the pairs are independent, any values extend to a tree
metric; the sample prints the tree as a Newick string and the completed metric.
"""

import argparse
from pathlib import Path

from completability.completion import complete
from completability.exact_linalg import format_rational
from completability.formats import read_values
from completability.paths import get_data_file
from completability.tree_space import four_point_check, to_newick


def _options() -> argparse.Namespace:
    """Function to read user arguments.

    Returns:
        Arguments from user

    """
    parser = argparse.ArgumentParser(description=__doc__)

    parser.add_argument("--n", type=int, default=4, help="Number of taxa")
    parser.add_argument("--values", type=Path, required=False, help="Path to the prescribed values")

    return parser.parse_args()


def _main() -> None:
    user_options = _options()
    values_path = user_options.values or get_data_file("partial_4.values")

    print(f"Reading prescribed values from {values_path}")
    partial = read_values(values_path, user_options.n)

    result = complete(user_options.n, partial)
    if not result.independent:
        print("The prescribed pairs are dependent, values cannot be completed in general")
        return

    print(f"Topology found after {result.topologies_tried} attempt(s), caterpillar: {result.caterpillar_hit}")
    print(f"Tree: {to_newick(result.tree)}")
    print("Completed metric (* marks prescribed values):")
    for pair, value in result.metric.values.items():
        marker = "*" if pair in partial.values else " "
        print(f"  {marker} d{pair} = {format_rational(value)}")
    print(f"Four-point condition holds: {four_point_check(result.metric).holds}")


if __name__ == "__main__":
    _main()
