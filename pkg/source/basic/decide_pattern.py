"""
Decide whether an observation pattern is independent for rank-2 skew-symmetric matrices, and check the certificate.

The pattern is read from an edge-list file with one `i j` pair per line. Without a file, the bundled K_{3,3} pattern
is used, which is (2,3)-sparse and still dependent.
"""

import argparse
from pathlib import Path

from completability.formats import read_edges
from completability.matroid_decision import decide_skew, verify_certificate
from completability.paths import get_data_file
from completability.settings import Settings


def _options() -> argparse.Namespace:
    """Function to read user arguments.

    Returns:
        Arguments from user

    """
    parser = argparse.ArgumentParser(description=__doc__)

    parser.add_argument("--n", type=int, default=6, help="Matrix size")
    parser.add_argument("--edges", type=Path, required=False, help="Path to the edge-list file")
    parser.add_argument("--no-prefilter", action="store_true", help="Go straight to the orientation search")

    return parser.parse_args()


def _main() -> None:
    user_options = _options()
    edges_path = user_options.edges or get_data_file("k33.edges")

    print(f"Reading pattern from {edges_path}")
    pairs = read_edges(edges_path, user_options.n)

    print(f"Deciding {len(pairs)} observed entries of a {user_options.n} x {user_options.n} skew matrix")
    decision = decide_skew(user_options.n, pairs, Settings(prefilter=not user_options.no_prefilter))

    if not decision.independent:
        if decision.laman_violation is not None:
            print(f"Dependent: the subgraph on {list(decision.laman_violation)} has too many edges")
        else:
            print("Dependent: every acyclic orientation has an alternating closed trail")
        print(f"Nodes explored: {decision.stats.nodes_explored}")
        return

    print(f"Independent, certificate order: {list(decision.certificate.sequence)}")
    print(f"Certificate verified: {verify_certificate(user_options.n, pairs, decision.certificate)}")
    print(f"Pattern in certificate coordinates: {decision.certificate.relabel(decision.edges)}")


if __name__ == "__main__":
    _main()
