"""
Run the orientation search, binary-tree enumeration and the Jacobian oracle on the same patterns and compare them.

Exhaustive mode checks every subset of pairs of [n]; random mode keeps each pair with probability 1/2.
"""

import argparse

from completability.crosscheck import crosscheck
from completability.matroid_decision import Model
from completability.settings import Settings


def _options() -> argparse.Namespace:
    """Function to read user arguments.

    Returns:
        Arguments from user

    """
    parser = argparse.ArgumentParser(description=__doc__)

    parser.add_argument("--n", type=int, default=5, help="Number of vertices")
    parser.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive", help="Pattern family")
    parser.add_argument("--samples", type=int, default=1000, help="Number of random patterns")
    parser.add_argument("--seed", type=int, default=0, help="Random seed")

    return parser.parse_args()


def _main() -> None:
    user_options = _options()

    print(f"Cross-checking deciders on n = {user_options.n} ({user_options.mode})")
    report = crosscheck(
        Model.SKEW, (user_options.n,), user_options.mode, user_options.samples, Settings(seed=user_options.seed)
    )

    print(f"Patterns checked: {report.checked}")
    print(f"Independent patterns: {report.independent}")
    print(f"Disagreements: {report.disagreements}")
    for example in report.examples:
        print(f"  {example.edges}: search {example.search}, enumeration {example.enumeration}, oracle {example.oracle}")


if __name__ == "__main__":
    _main()
