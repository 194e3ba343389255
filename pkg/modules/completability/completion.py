"""
Complete prescribed distances on an independent pattern to a tree metric.

For an independent pattern every choice of values extends to a tree metric, because the closed cones of binary
topologies together project onto all of R^S. The search tries the caterpillar named by the certificate first and
then every binary topology, solving each as a nonnegative feasibility problem on the internal edge weights.

"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from completability.exact_linalg import RationalMatrix, feasible_nonneg
from completability.graph_core import Pair
from completability.matroid_decision import Decision, decide_tree_metric
from completability.settings import Settings
from completability.tree_space import (
    DissimilarityMap,
    WeightedXTree,
    XTree,
    binary_trees,
    cat_tree,
    check_enumeration_cap,
    contract_zero_edges,
    quartet_topology,
    relabel_leaves,
    star_tree,
    tree_metric,
)

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompletionResult:
    independent: bool
    decision: Decision
    tree: Optional[WeightedXTree] = None
    metric: Optional[DissimilarityMap] = None
    topology_index: Optional[int] = None
    caterpillar_hit: bool = False
    topologies_tried: int = 0


def feasible_in_topology(
    tree: XTree, pairs: Sequence[Pair], partial: DissimilarityMap
) -> Optional[Tuple[Fraction, ...]]:
    """Edge weights on a fixed topology, internal ones nonnegative, whose path sums match the prescribed values.

    Args:
        tree: Topology to try
        pairs: Pairs with prescribed values
        partial: Prescribed values

    Returns:
        One weight per edge of the tree, or None if the values lie outside the closed cone of the topology

    """
    rows = []
    for pair in pairs:
        on_path = set(tree.path_edges(*pair))
        rows.append([int(index in on_path) for index in range(len(tree.edges))])
    system = RationalMatrix.from_rows(rows, cols=len(tree.edges))
    return feasible_nonneg(system, [partial[pair] for pair in pairs], tree.internal_edge_indices())


def _candidate_topologies(n: int, decision: Decision, cap: int) -> Iterator[Tuple[int, XTree]]:
    if n == 3:
        yield 0, star_tree(3)
        return
    assert decision.certificate is not None
    placement = {position: vertex for position, vertex in enumerate(decision.certificate.sequence, start=1)}
    yield 0, relabel_leaves(cat_tree(n), placement)
    check_enumeration_cap(n, cap)
    for index, tree in enumerate(binary_trees(n), start=1):
        yield index, tree


def complete(n: int, partial: DissimilarityMap, settings: Optional[Settings] = None) -> CompletionResult:
    """Extend values prescribed on an independent pattern to a tree metric.

    Args:
        n: Number of taxa
        partial: Values on the pattern S (its domain)
        settings: Decision and enumeration settings

    Raises:
        ValueError: If n < 3, or the map lives on another n, or the caterpillar fails and n exceeds the cap
        RuntimeError: If no binary topology accommodates the values of an independent pattern

    Returns:
        The verdict, and for independent patterns a weighted tree whose metric agrees with the values on S

    """
    settings = settings or Settings()
    if n < 3:
        raise ValueError(f"Completion needs at least three taxa, got {n}")
    if partial.n != n:
        raise ValueError(f"Values are given on {partial.n} taxa, expected {n}")
    pairs = partial.domain()
    decision = decide_tree_metric(n, pairs, settings)
    if not decision.independent:
        return CompletionResult(independent=False, decision=decision)

    tried = 0
    for index, tree in _candidate_topologies(n, decision, settings.enumeration_cap):
        tried += 1
        weights = feasible_in_topology(tree, pairs, partial)
        if weights is None:
            if index == 0:
                _LOGGER.info("Certificate caterpillar cannot hold the values, falling back to enumeration")
            continue
        weighted = contract_zero_edges(tree, weights)
        _LOGGER.debug("Values fit topology %d after %d attempts", index, tried)
        return CompletionResult(
            independent=True,
            decision=decision,
            tree=weighted,
            metric=tree_metric(weighted),
            topology_index=index,
            caterpillar_hit=index == 0,
            topologies_tried=tried,
        )
    raise RuntimeError(
        f"No binary topology on {n} leaves realizes the values {dict(partial.values)} although the pattern is "
        f"independent (certificate {decision.certificate}); {tried} topologies tried"
    )


def quartets_match_topology(weighted: WeightedXTree, metric: DissimilarityMap) -> bool:
    """Each quartet ab|cd displayed by the tree has d_ab + d_cd < d_ac + d_bd = d_ad + d_bc; star quartets tie."""
    for quartet in itertools.combinations(range(1, metric.n + 1), 4):
        topology = quartet_topology(weighted.tree, quartet)
        if topology is None:
            i, j, k, l = quartet
            sums = {metric[(i, j)] + metric[(k, l)], metric[(i, k)] + metric[(j, l)], metric[(i, l)] + metric[(j, k)]}
            if len(sums) != 1:
                return False
            continue
        (a, b), (c, d) = topology
        inner = metric[(a, b)] + metric[(c, d)]
        crossing: List[Fraction] = [metric[(a, c)] + metric[(b, d)], metric[(a, d)] + metric[(b, c)]]
        if not inner < crossing[0] == crossing[1]:
            return False
    return True
