"""
Decide independence of observation patterns for rank-2 skew-symmetric matrices, rank-2 rectangular matrices and
tree metrics, with a vertex order as certificate whenever the pattern is independent.

All three models share one criterion: some acyclic orientation of G(S) has no alternating closed trail. Rectangular
cells are translated to pairs first, row i becoming vertex n + i and column j staying vertex j.

"""

import enum
import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from completability.graph_core import (
    Pair,
    PatternGraph,
    SearchStats,
    VertexOrder,
    has_alternating_closed_trail,
    laman_violation,
    orient,
    search,
)
from completability.settings import Settings
from completability.tree_space import binary_trees, check_enumeration_cap, tree_rank

_LOGGER = logging.getLogger(__name__)

Cell = Tuple[int, int]

RECT_CONVENTION = "row i -> vertex n + i, column j -> vertex j"


class Model(enum.Enum):
    SKEW = "skew"
    RECT = "rect"
    TREE_METRIC = "tree-metric"


@dataclass(frozen=True)
class Decision:
    model: Model
    ambient: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]
    independent: bool
    certificate: Optional[VertexOrder] = None
    prefilter: Optional[bool] = None
    laman_violation: Optional[Tuple[int, ...]] = None
    stats: SearchStats = field(default_factory=SearchStats)
    convention: Optional[str] = None

    def __post_init__(self) -> None:
        if self.independent != (self.certificate is not None):
            raise ValueError("A certificate must be present exactly when the pattern is independent")

    def vertex_labels(self) -> Optional[List[str]]:
        """Certificate vertices named as rows and columns, for rectangular decisions."""
        if self.model is not Model.RECT or self.certificate is None:
            return None
        columns = self.ambient[1]
        return [f"c{v}" if v <= columns else f"r{v - columns}" for v in self.certificate.sequence]


def _decide_pairs(model: Model, n: int, pairs: Iterable[Sequence[int]], settings: Settings) -> Decision:
    graph = PatternGraph.from_pairs(n, pairs)
    if settings.prefilter:
        violation = laman_violation(graph)
        if violation is not None:
            _LOGGER.info("Subgraph on %s breaks (2,3)-sparsity, pattern is dependent", violation)
            return Decision(
                model=model,
                ambient=(n,),
                edges=graph.edges,
                independent=False,
                prefilter=False,
                laman_violation=tuple(violation),
            )
    result = search(graph, parallel=settings.parallel, workers=settings.workers)
    return Decision(
        model=model,
        ambient=(n,),
        edges=graph.edges,
        independent=result.order is not None,
        certificate=result.order,
        prefilter=True if settings.prefilter else None,
        stats=result.stats,
    )


def decide_skew(n: int, pairs: Iterable[Sequence[int]], settings: Optional[Settings] = None) -> Decision:
    """Independence in the algebraic matroid of n x n skew-symmetric matrices of rank at most 2.

    Args:
        n: Matrix size
        pairs: Observed upper-triangular positions {i, j}
        settings: Search and prefilter settings

    Returns:
        Decision with a certificate when independent

    """
    return _decide_pairs(Model.SKEW, n, pairs, settings or Settings())


def decide_tree_metric(n: int, pairs: Iterable[Sequence[int]], settings: Optional[Settings] = None) -> Decision:
    """Whether arbitrary values on the pairs always extend to a tree metric on n taxa (same criterion as skew)."""
    return _decide_pairs(Model.TREE_METRIC, n, pairs, settings or Settings())


def translate_rect(m: int, n: int, cells: Iterable[Sequence[int]]) -> List[Pair]:
    """Map cells of an m x n matrix to pairs on [m + n].

    Args:
        m: Row count
        n: Column count
        cells: Observed (row, column) cells, 1-indexed

    Raises:
        ValueError: If a cell is out of range or repeated

    Returns:
        Pairs (j, n + i), one per cell, in input order

    """
    seen: Set[Cell] = set()
    pairs = []
    for raw in cells:
        i, j = (int(index) for index in raw)
        if not (1 <= i <= m and 1 <= j <= n):
            raise ValueError(f"Cell ({i}, {j}) is outside the {m} x {n} matrix")
        if (i, j) in seen:
            raise ValueError(f"Duplicate cell ({i}, {j})")
        seen.add((i, j))
        pairs.append((j, n + i))
    return pairs


def decide_rect(m: int, n: int, cells: Iterable[Sequence[int]], settings: Optional[Settings] = None) -> Decision:
    """Independence in the algebraic matroid of m x n matrices of rank at most 2.

    Args:
        m: Row count
        n: Column count
        cells: Observed (row, column) cells
        settings: Search and prefilter settings

    Returns:
        Decision over vertex set [m + n]; the certificate uses the rectangular numbering convention

    """
    cell_list = [tuple(int(index) for index in cell) for cell in cells]
    skew = _decide_pairs(Model.RECT, m + n, translate_rect(m, n, cell_list), settings or Settings())
    return Decision(
        model=Model.RECT,
        ambient=(m, n),
        edges=tuple(sorted(cell_list)),  # type: ignore
        independent=skew.independent,
        certificate=skew.certificate,
        prefilter=skew.prefilter,
        laman_violation=skew.laman_violation,
        stats=skew.stats,
        convention=RECT_CONVENTION,
    )


def decide(model: Model, ambient: Sequence[int], edges: Iterable[Sequence[int]], settings: Settings) -> Decision:
    if model is Model.RECT:
        m, n = ambient
        return decide_rect(m, n, edges, settings)
    (n,) = ambient
    if model is Model.SKEW:
        return decide_skew(n, edges, settings)
    return decide_tree_metric(n, edges, settings)


def verify_certificate(n: int, pairs: Iterable[Sequence[int]], order: VertexOrder) -> bool:
    """Check that the orientation given by the order has no alternating closed trail.

    Args:
        n: Vertex count
        pairs: Observed pairs
        order: Claimed certificate

    Raises:
        ValueError: If the order is not on n vertices

    Returns:
        True if the trail graph of the orientation is a forest

    """
    if order.n != n:
        raise ValueError(f"Order on {order.n} vertices given for n = {n}")
    return not has_alternating_closed_trail(orient(PatternGraph.from_pairs(n, pairs), order))


def verify_rect_certificate(m: int, n: int, cells: Iterable[Sequence[int]], order: VertexOrder) -> bool:
    return verify_certificate(m + n, translate_rect(m, n, cells), order)


def matroid_rank(
    n: int, pairs: Iterable[Sequence[int]], model: Model = Model.SKEW, cap: int = 8, rows: Optional[int] = None
) -> int:
    """Rank of the pattern: the largest rank of its path-matrix columns over all binary trees.

    Args:
        n: Vertex count (column count for rectangular patterns)
        pairs: Observed pairs, or cells for rectangular patterns
        model: Which variety the pattern lives on
        cap: Largest vertex count for which trees are enumerated
        rows: Row count, required for rectangular patterns

    Raises:
        ValueError: If a rectangular pattern has no row count, or the cap is exceeded

    Returns:
        Matroid rank

    """
    if model is Model.RECT:
        if rows is None:
            raise ValueError("Rectangular rank needs the row count")
        graph = PatternGraph.from_pairs(rows + n, translate_rect(rows, n, pairs))
    else:
        graph = PatternGraph.from_pairs(n, pairs)
    size = graph.n
    if size < 3:
        return len(graph.edges)
    check_enumeration_cap(size, cap)
    best = 0
    for tree in binary_trees(size):
        best = max(best, tree_rank(tree, graph.edges))
        if best == min(len(graph.edges), 2 * size - 3):
            break
    return best


def full_rank(model: Model, ambient: Sequence[int]) -> int:
    """Dimension of the variety, which is the rank of the full ground set.

    Args:
        model: Variety
        ambient: (n,) or (m, n)

    Returns:
        2n - 3 for skew matrices and tree metrics (n >= 2), 2(m + n) - 4 for rectangular matrices (m, n >= 2)

    """
    if model is Model.RECT:
        m, n = ambient
        return m * n if min(m, n) <= 2 else 2 * (m + n) - 4
    (n,) = ambient
    return 2 * n - 3 if n >= 2 else 0
