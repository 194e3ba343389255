"""
Leaf-labeled trees, their path matrices and the tree metrics they realize.

Trees are stored as edge lists over integer vertex ids: leaves are 1..n and internal vertices are n + 1, n + 2, ...
The row order of a path matrix is the edge order of the tree, which for Cat(n) and for enumerated trees is the order
in which the construction created the edges.

"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx
import numpy as np
from nptyping import Int8, NDArray, Shape
from scipy.special import factorial2

from completability.exact_linalg import RationalMatrix, Scalar, bareiss_rank, format_rational, parse_rational
from completability.graph_core import Pair, normalize_pair

_LOGGER = logging.getLogger(__name__)

Edge = Tuple[int, int]
Split = FrozenSet[int]
Quartet = Tuple[int, int, int, int]


def all_pairs(n: int) -> List[Pair]:
    return list(itertools.combinations(range(1, n + 1), 2))


@lru_cache(maxsize=None)
def pair_columns(n: int) -> Dict[Pair, int]:
    """Column of each pair in lexicographic order."""
    return {pair: column for column, pair in enumerate(all_pairs(n))}


@dataclass(frozen=True)
class XTree:
    n: int
    edges: Tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"A tree needs at least two leaves, got {self.n}")
        graph = self.to_networkx()
        if graph.number_of_edges() != len(self.edges):
            raise ValueError(f"Edges {list(self.edges)} repeat an edge")
        if not self.edges or not nx.is_tree(graph):
            raise ValueError(f"{len(self.edges)} edges on {graph.number_of_nodes()} vertices do not form a tree")
        leaves = sorted(v for v, degree in graph.degree if degree == 1)
        if leaves != list(range(1, self.n + 1)):
            raise ValueError(f"Leaves {leaves} are not labeled 1..{self.n}")
        if any(degree == 2 for _, degree in graph.degree):
            raise ValueError("Tree has a vertex of degree 2")

    def to_networkx(self) -> nx.Graph:
        """The tree as a graph whose edges carry their position in `edges` as "index"."""
        graph = nx.Graph()
        for index, (u, v) in enumerate(self.edges):
            graph.add_edge(u, v, index=index)
        return graph

    @cached_property
    def indicator(self) -> NDArray[Shape["E, P"], Int8]:  # type: ignore
        # Lives as long as the tree, so the trees held by binary_trees(n) keep theirs.
        graph = self.to_networkx()
        columns = pair_columns(self.n)
        indicator = np.zeros((len(self.edges), len(columns)), dtype=np.int8)
        for source in range(1, self.n + 1):
            walks = nx.single_source_shortest_path(graph, source)
            for target in range(source + 1, self.n + 1):
                walk = walks[target]
                rows = [graph.edges[step]["index"] for step in zip(walk, walk[1:])]
                indicator[rows, columns[(source, target)]] = 1
        indicator.setflags(write=False)
        return indicator

    def internal_vertices(self) -> List[int]:
        return sorted({v for edge in self.edges for v in edge if v > self.n})

    def is_internal_edge(self, index: int) -> bool:
        u, v = self.edges[index]
        return u > self.n and v > self.n

    def internal_edge_indices(self) -> List[int]:
        return [index for index in range(len(self.edges)) if self.is_internal_edge(index)]

    def path_edges(self, i: int, j: int) -> List[int]:
        column = pair_columns(self.n)[normalize_pair(i, j, self.n)]
        return [int(row) for row in np.flatnonzero(self.indicator[:, column])]


@dataclass(frozen=True)
class WeightedXTree:
    tree: XTree
    weights: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.weights) != len(self.tree.edges):
            raise ValueError(f"{len(self.weights)} weights for {len(self.tree.edges)} edges")
        object.__setattr__(self, "weights", tuple(parse_rational(w) for w in self.weights))
        for index in self.tree.internal_edge_indices():
            if self.weights[index] <= 0:
                raise ValueError(f"Internal edge {self.tree.edges[index]} has nonpositive weight {self.weights[index]}")


@dataclass(frozen=True)
class DissimilarityMap:
    n: int
    values: Mapping[Pair, Fraction]

    def __post_init__(self) -> None:
        normalized = {}
        for (i, j), value in self.values.items():
            normalized[normalize_pair(i, j, self.n)] = parse_rational(value)
        object.__setattr__(self, "values", dict(sorted(normalized.items())))

    @classmethod
    def from_vector(cls, n: int, vector: Sequence[Scalar]) -> "DissimilarityMap":
        pairs = all_pairs(n)
        if len(vector) != len(pairs):
            raise ValueError(f"Expected {len(pairs)} values for n = {n}, got {len(vector)}")
        return cls(n=n, values=dict(zip(pairs, (parse_rational(v) for v in vector))))

    def __getitem__(self, pair: Pair) -> Fraction:
        return self.values[normalize_pair(pair[0], pair[1], self.n)]

    def domain(self) -> List[Pair]:
        return list(self.values)

    def is_total(self) -> bool:
        return len(self.values) == self.n * (self.n - 1) // 2

    def restrict(self, pairs: Iterable[Pair]) -> "DissimilarityMap":
        return DissimilarityMap(n=self.n, values={pair: self[pair] for pair in pairs})

    def as_vector(self) -> List[Fraction]:
        return [self[pair] for pair in all_pairs(self.n)]


@dataclass(frozen=True)
class PathMatrix:
    """A_T: rows are the edges of the tree in edge order, columns the pairs in lexicographic order."""

    matrix: RationalMatrix
    edges: Tuple[Edge, ...]
    pairs: Tuple[Pair, ...]


@dataclass(frozen=True)
class FourPointResult:
    holds: bool
    violation: Optional[Quartet] = None


def star_tree(n: int) -> XTree:
    if n < 3:
        raise ValueError(f"A star tree needs at least three leaves, got {n}")
    return XTree(n=n, edges=tuple((leaf, n + 1) for leaf in range(1, n + 1)))


def cat_tree(n: int) -> XTree:
    """Canonical caterpillar Cat(n) with cherries {1, 2} and {n - 1, n}.

    The spine runs through internal vertices n + 1, ..., 2n - 2 and leaf k >= 3 hangs off spine vertex n + k - 1.
    Edges are created walking from the {1, 2} cherry to the {n - 1, n} cherry, which for n = 4 gives the rows
    leaf 1, leaf 2, internal, leaf 3, leaf 4.

    Args:
        n: Number of leaves

    Raises:
        ValueError: If n < 4

    Returns:
        Cat(n)

    """
    if n < 4:
        raise ValueError(f"Caterpillars need at least four leaves, got {n}")
    first = n + 1
    edges: List[Edge] = [(1, first), (2, first)]
    for k in range(3, n - 1):
        spine = n + k - 1
        edges.append((spine - 1, spine))
        edges.append((k, spine))
    last = 2 * n - 2
    edges.append((last - 1, last))
    edges.extend([(n - 1, last), (n, last)])
    return XTree(n=n, edges=tuple(edges))


def binary_tree_count(n: int) -> int:
    if n < 3:
        raise ValueError(f"Binary trees are counted for n >= 3, got {n}")
    return int(factorial2(2 * n - 5, exact=True))


def enumerate_binary_trees(n: int) -> Iterator[XTree]:
    """Every binary topology on leaves 1..n, built by inserting leaf k into each edge of a tree on 1..k - 1.

    Args:
        n: Number of leaves

    Raises:
        ValueError: If n < 3

    Yields:
        Binary X-trees, (2n - 5)!! of them, without repeats

    """
    if n < 3:
        raise ValueError(f"Binary trees need at least three leaves, got {n}")

    def insert(edges: List[Edge], leaf: int) -> Iterator[XTree]:
        if leaf > n:
            yield XTree(n=n, edges=tuple(edges))
            return
        new_vertex = n + leaf - 2
        for index in range(len(edges)):
            u, v = edges[index]
            extended = list(edges)
            extended[index] = (u, new_vertex)
            extended.extend([(new_vertex, v), (leaf, new_vertex)])
            yield from insert(extended, leaf + 1)

    yield from insert([(1, n + 1), (2, n + 1), (3, n + 1)], 4)


@lru_cache(maxsize=16)
def binary_trees(n: int) -> Tuple[XTree, ...]:
    return tuple(enumerate_binary_trees(n))


def relabel_leaves(tree: XTree, mapping: Mapping[int, int]) -> XTree:
    """Rename leaves with a permutation of 1..n; internal vertices keep their ids."""
    if sorted(mapping) != list(range(1, tree.n + 1)) or sorted(mapping.values()) != list(range(1, tree.n + 1)):
        raise ValueError("Leaf relabeling must be a permutation of 1..n")

    def rename(vertex: int) -> int:
        return mapping[vertex] if vertex <= tree.n else vertex

    return XTree(n=tree.n, edges=tuple((rename(u), rename(v)) for u, v in tree.edges))


def splits(tree: XTree) -> FrozenSet[Split]:
    """Leaf sets cut off by each edge, always taken on the side away from leaf 1."""
    graph = tree.to_networkx()
    result = set()
    for u, v in tree.edges:
        side = _leaves_beyond(graph, v, (u, v), tree.n)
        if 1 in side:
            side = _leaves_beyond(graph, u, (u, v), tree.n)
        result.add(frozenset(side))
    return frozenset(result)


def _leaves_beyond(graph: nx.Graph, start: int, cut: Edge, n: int) -> Set[int]:
    side = nx.node_connected_component(nx.restricted_view(graph, [], [cut]), start)
    return {v for v in side if v <= n}


def is_binary(tree: XTree) -> bool:
    return all(degree == 3 for v, degree in tree.to_networkx().degree if v > tree.n)


def count_cherries(tree: XTree) -> int:
    graph = tree.to_networkx()
    cherries = 0
    for vertex, degree in graph.degree:
        if vertex > tree.n and degree == 3:
            leaves = sum(1 for neighbour in graph[vertex] if neighbour <= tree.n)
            cherries += leaves * (leaves - 1) // 2
    return cherries


def is_caterpillar(tree: XTree) -> bool:
    return tree.n >= 4 and is_binary(tree) and count_cherries(tree) == 2


def path_indicator(tree: XTree) -> NDArray[Shape["E, P"], Int8]:  # type: ignore
    """Integer A_T, edges by lexicographically ordered pairs; read-only and cached on the tree."""
    return tree.indicator


def path_matrix(tree: XTree) -> PathMatrix:
    return PathMatrix(
        matrix=RationalMatrix(path_indicator(tree).astype(object)),
        edges=tree.edges,
        pairs=tuple(all_pairs(tree.n)),
    )


def tree_metric(weighted: WeightedXTree) -> DissimilarityMap:
    """Distances d_ij as sums of edge weights along the leaf-to-leaf paths, i.e. transpose(A_T) w."""
    tree = weighted.tree
    values = {
        pair: sum((weighted.weights[index] for index in tree.path_edges(*pair)), Fraction(0))
        for pair in all_pairs(tree.n)
    }
    return DissimilarityMap(n=tree.n, values=values)


def four_point_check(metric: DissimilarityMap) -> FourPointResult:
    """Check that for every quadruple the two largest of the three pairing sums are equal.

    Args:
        metric: Total dissimilarity map

    Raises:
        ValueError: If the map is partial

    Returns:
        Whether the condition holds, with the first violating quadruple otherwise

    """
    if not metric.is_total():
        raise ValueError("The four-point condition needs a value for every pair")
    for i, j, k, l in itertools.combinations(range(1, metric.n + 1), 4):
        sums = sorted(
            (
                metric[(i, j)] + metric[(k, l)],
                metric[(i, k)] + metric[(j, l)],
                metric[(i, l)] + metric[(j, k)],
            )
        )
        if sums[1] != sums[2]:
            return FourPointResult(holds=False, violation=(i, j, k, l))
    return FourPointResult(holds=True)


def quartet_topology(tree: XTree, quartet: Quartet) -> Optional[Tuple[Pair, Pair]]:
    """The pairing ab|cd of four leaves separated by some edge of the tree, or None for a star quartet."""
    leaves = set(quartet)
    for split in splits(tree):
        inside = leaves & split
        if len(inside) == 2:
            first = tuple(sorted(inside))
            second = tuple(sorted(leaves - inside))
            return tuple(sorted((first, second)))  # type: ignore
    return None


def tree_rank(tree: XTree, pairs: Iterable[Pair]) -> int:
    indicator = path_indicator(tree)
    columns = [pair_columns(tree.n)[normalize_pair(i, j, tree.n)] for i, j in pairs]
    return bareiss_rank([[int(value) for value in indicator[:, column]] for column in columns])


def tree_matroid_indep(tree: XTree, pairs: Sequence[Pair]) -> bool:
    return tree_rank(tree, pairs) == len(pairs)


def check_enumeration_cap(n: int, cap: int) -> None:
    if n > cap:
        raise ValueError(
            f"n = {n} exceeds the enumeration cap {cap} ({binary_tree_count(n)} binary trees); raise the cap to proceed"
        )


def tree_enum_oracle(n: int, pairs: Sequence[Pair], cap: int = 8) -> bool:
    """Decide independence as independence in M(T) for some binary tree T on n leaves.

    Args:
        n: Number of leaves
        pairs: Observed pairs
        cap: Largest n for which enumeration is allowed

    Raises:
        ValueError: If n < 3 or n exceeds the cap

    Returns:
        True if some binary tree matroid has the pairs independent

    """
    if n < 3:
        raise ValueError(f"Tree enumeration needs n >= 3, got {n}")
    check_enumeration_cap(n, cap)
    if len(pairs) > 2 * n - 3:
        return False
    return any(tree_matroid_indep(tree, pairs) for tree in binary_trees(n))


def standard_basis(n: int) -> List[Pair]:
    """Pairs 1j (j >= 2) and 2j (j >= 3): the first two rows of a rank-2 skew matrix, minus the forced entries."""
    if n < 2:
        raise ValueError(f"Need at least two vertices, got {n}")
    return [(1, j) for j in range(2, n + 1)] + [(2, j) for j in range(3, n + 1)]


def contract_zero_edges(tree: XTree, weights: Sequence[Scalar]) -> WeightedXTree:
    """Contract internal edges of weight zero and renumber internal vertices consecutively.

    Args:
        tree: Tree the weights live on
        weights: Weight per edge, internal weights nonnegative

    Raises:
        ValueError: If an internal weight is negative

    Returns:
        Weighted tree whose internal weights are all positive

    """
    values = [parse_rational(w) for w in weights]
    zero_edges = nx.Graph()
    zero_edges.add_nodes_from(v for edge in tree.edges for v in edge)
    for index in tree.internal_edge_indices():
        if values[index] < 0:
            raise ValueError(f"Internal edge {tree.edges[index]} has negative weight {values[index]}")
        if values[index] == 0:
            zero_edges.add_edge(*tree.edges[index])
    representative = {}
    for group in nx.connected_components(zero_edges):
        for vertex in group:
            representative[vertex] = min(group)
    kept = [
        (representative[u], representative[v], values[index])
        for index, (u, v) in enumerate(tree.edges)
        if not (tree.is_internal_edge(index) and values[index] == 0)
    ]
    renumber = {}
    for u, v, _ in kept:
        for vertex in (u, v):
            if vertex > tree.n and vertex not in renumber:
                renumber[vertex] = tree.n + 1 + len(renumber)
    edges = tuple((renumber.get(u, u), renumber.get(v, v)) for u, v, _ in kept)
    return WeightedXTree(tree=XTree(n=tree.n, edges=edges), weights=tuple(w for _, _, w in kept))


def to_newick(weighted: WeightedXTree) -> str:
    """Newick string with exact branch lengths, rooted at the neighbour of leaf 1; internal vertices unlabeled."""
    tree = weighted.tree
    graph = tree.to_networkx()
    root = next(iter(graph[1]))

    def length(u: int, v: int) -> str:
        return format_rational(weighted.weights[graph.edges[u, v]["index"]])

    def subtree(vertex: int, parent: int) -> str:
        if vertex <= tree.n:
            return str(vertex)
        children = sorted(
            (neighbour for neighbour in graph[vertex] if neighbour != parent),
            key=lambda child: min(_leaves_beyond(graph, child, (vertex, child), tree.n)),
        )
        return "(" + ",".join(f"{subtree(child, vertex)}:{length(vertex, child)}" for child in children) + ")"

    if root <= tree.n:
        return f"(1:0,{root}:{length(1, root)});"
    return subtree(root, 0) + ";"
