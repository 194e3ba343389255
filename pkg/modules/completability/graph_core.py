"""
Observation graphs G(S), acyclic orientations given by vertex orders, and alternating closed trails.

An alternating closed trail in an oriented graph is a closed trail in its trail graph, the bipartite graph with an
out-copy u+ and an in-copy v- per vertex and one edge {u+, v-} per arc u -> v. The search below looks for a vertex
order whose orientation has a forest as trail graph, placing one vertex at a time.

"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

import networkx as nx

from completability.union_find import UnionFind

_LOGGER = logging.getLogger(__name__)

Pair = Tuple[int, int]
TrailNode = Tuple[int, str]

OUT = "+"
IN = "-"


def normalize_pair(i: int, j: int, n: int) -> Pair:
    """Order a vertex pair and check it against the vertex set [n].

    Args:
        i: First vertex
        j: Second vertex
        n: Number of vertices

    Raises:
        ValueError: If the pair is a loop or leaves [n]

    Returns:
        The pair (min, max)

    """
    if i == j:
        raise ValueError(f"Loop at vertex {i} is not a valid observation")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"Pair ({i}, {j}) is outside the vertex set 1..{n}")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class PatternGraph:
    n: int
    edges: Tuple[Pair, ...]

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Sequence[int]]) -> "PatternGraph":
        """Build G(S) from observed pairs.

        Args:
            n: Number of vertices
            pairs: Observed pairs, in either orientation

        Raises:
            ValueError: If n is negative, or a pair is a loop, out of range or repeated

        Returns:
            The pattern graph with edges sorted

        """
        if n < 0:
            raise ValueError(f"Vertex count must be nonnegative, got {n}")
        seen: Set[Pair] = set()
        for raw in pairs:
            i, j = raw
            pair = normalize_pair(int(i), int(j), n)
            if pair in seen:
                raise ValueError(f"Duplicate pair {pair}")
            seen.add(pair)
        return cls(n=n, edges=tuple(sorted(seen)))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.n + 1))
        graph.add_edges_from(self.edges)
        return graph

    def adjacency(self) -> Dict[int, Set[int]]:
        graph = self.to_networkx()
        return {vertex: set(graph[vertex]) for vertex in graph}

    def touched_vertices(self) -> List[int]:
        return sorted({v for edge in self.edges for v in edge})

    def subgraph(self, edges: Iterable[Pair]) -> "PatternGraph":
        return PatternGraph.from_pairs(self.n, edges)


@dataclass(frozen=True)
class VertexOrder:
    """Vertices listed in placement order; the earlier endpoint of each edge is its tail."""

    sequence: Tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.sequence) != list(range(1, len(self.sequence) + 1)):
            raise ValueError(f"Order {list(self.sequence)} is not a permutation of 1..{len(self.sequence)}")

    @classmethod
    def identity(cls, n: int) -> "VertexOrder":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_positions(cls, positions: Sequence[int]) -> "VertexOrder":
        """Build the order from sigma, where positions[v - 1] is the 1-based position of vertex v.

        Args:
            positions: sigma(1), ..., sigma(n)

        Raises:
            ValueError: If positions is not a permutation

        Returns:
            The order

        """
        n = len(positions)
        if sorted(positions) != list(range(1, n + 1)):
            raise ValueError(f"Positions {list(positions)} are not a permutation of 1..{n}")
        sequence = [0] * n
        for vertex, position in enumerate(positions, start=1):
            sequence[position - 1] = vertex
        return cls(tuple(sequence))

    @property
    def n(self) -> int:
        return len(self.sequence)

    def positions(self) -> Dict[int, int]:
        return {vertex: position for position, vertex in enumerate(self.sequence, start=1)}

    def relabel(self, pairs: Iterable[Pair]) -> List[Pair]:
        """Apply sigma to every pair, giving the edges of H_n used by the certificate."""
        sigma = self.positions()
        return sorted(tuple(sorted((sigma[i], sigma[j]))) for i, j in pairs)  # type: ignore


@dataclass(frozen=True)
class OrientedGraph:
    n: int
    arcs: Tuple[Pair, ...]

    def to_networkx(self) -> nx.DiGraph:
        digraph = nx.DiGraph()
        digraph.add_nodes_from(range(1, self.n + 1))
        digraph.add_edges_from(self.arcs)
        return digraph


@dataclass(frozen=True)
class TrailGraph:
    edges: Tuple[Tuple[TrailNode, TrailNode], ...]


@dataclass
class SearchStats:
    nodes_explored: int = 0
    memo_hits: int = 0
    components: int = 0
    time_ms: float = 0.0

    def absorb(self, other: "SearchStats") -> None:
        self.nodes_explored += other.nodes_explored
        self.memo_hits += other.memo_hits


@dataclass
class SearchResult:
    order: Optional[VertexOrder]
    stats: SearchStats = field(default_factory=SearchStats)


def orient(graph: PatternGraph, order: VertexOrder) -> OrientedGraph:
    if order.n != graph.n:
        raise ValueError(f"Order on {order.n} vertices does not match graph on {graph.n}")
    sigma = order.positions()
    arcs = tuple((i, j) if sigma[i] < sigma[j] else (j, i) for i, j in graph.edges)
    return OrientedGraph(n=graph.n, arcs=arcs)


def trail_graph(digraph: OrientedGraph) -> TrailGraph:
    return TrailGraph(edges=tuple(((tail, OUT), (head, IN)) for tail, head in digraph.arcs))


def has_closed_trail(edges: Iterable[Tuple[Hashable, Hashable]]) -> bool:
    """A graph has a closed trail exactly when it is not a forest."""
    components = UnionFind()
    return any(not components.union(a, b) for a, b in edges)


def has_alternating_closed_trail(digraph: OrientedGraph) -> bool:
    return has_closed_trail(trail_graph(digraph).edges)


def is_acyclic(digraph: OrientedGraph) -> bool:
    return nx.is_directed_acyclic_graph(digraph.to_networkx())


def connected_components(graph: PatternGraph) -> List[List[int]]:
    return sorted(sorted(component) for component in nx.connected_components(graph.to_networkx()))


class _ComponentSearch:
    """Depth-first placement of the vertices of one connected component."""

    def __init__(self, vertices: List[int], adjacency: Dict[int, Set[int]]):
        self.vertices = vertices
        self.adjacency = adjacency
        self.trails = UnionFind()
        self.placed: List[int] = []
        self.placed_set: Set[int] = set()
        self.dead: Set[Tuple[FrozenSet[int], FrozenSet[FrozenSet[int]]]] = set()
        self.stats = SearchStats()

    def _remaining_degree(self, vertex: int) -> int:
        return sum(1 for neighbour in self.adjacency[vertex] if neighbour not in self.placed_set)

    def candidates(self) -> List[int]:
        unplaced = [v for v in self.vertices if v not in self.placed_set]
        return sorted(unplaced, key=lambda v: (-self._remaining_degree(v), v))

    def _state(self) -> Tuple[FrozenSet[int], FrozenSet[FrozenSet[int]]]:
        groups: Dict[Hashable, Set[int]] = {}
        for vertex in self.placed:
            if self._remaining_degree(vertex):
                groups.setdefault(self.trails.find((vertex, OUT)), set()).add(vertex)
        return frozenset(self.placed_set), frozenset(frozenset(group) for group in groups.values())

    def _place(self, vertex: int) -> bool:
        self.trails.add((vertex, OUT))
        for neighbour in self.adjacency[vertex]:
            if neighbour in self.placed_set and not self.trails.union((neighbour, OUT), (vertex, IN)):
                return False
        self.placed.append(vertex)
        self.placed_set.add(vertex)
        return True

    def _unplace(self, mark: int) -> None:
        vertex = self.placed.pop()
        self.placed_set.discard(vertex)
        self.trails.rollback(mark)

    def extend(self) -> bool:
        if len(self.placed) == len(self.vertices):
            return True
        state = self._state()
        if state in self.dead:
            self.stats.memo_hits += 1
            return False
        for vertex in self.candidates():
            self.stats.nodes_explored += 1
            mark = self.trails.snapshot()
            if not self._place(vertex):
                self.trails.rollback(mark)
                continue
            if self.extend():
                return True
            self._unplace(mark)
        self.dead.add(state)
        return False

    def run_from(self, first: int) -> Optional[List[int]]:
        self.stats.nodes_explored += 1
        self._place(first)
        if self.extend():
            return list(self.placed)
        return None


def _search_component(
    vertices: List[int], adjacency: Dict[int, Set[int]], executor: Optional[ThreadPoolExecutor]
) -> Tuple[Optional[List[int]], SearchStats]:
    first_choices = _ComponentSearch(vertices, adjacency).candidates()
    stats = SearchStats()

    def branch(first: int) -> Tuple[Optional[List[int]], SearchStats]:
        search = _ComponentSearch(vertices, adjacency)
        return search.run_from(first), search.stats

    if executor is None:
        for first in first_choices:
            order, branch_stats = branch(first)
            stats.absorb(branch_stats)
            if order is not None:
                return order, stats
        return None, stats

    # Every branch runs to completion; among successful ones the lexicographically least order wins.
    outcomes = list(executor.map(branch, first_choices))
    for _, branch_stats in outcomes:
        stats.absorb(branch_stats)
    found = [order for order, _ in outcomes if order is not None]
    return (min(found) if found else None), stats


def search(graph: PatternGraph, parallel: bool = False, workers: int = 4) -> SearchResult:
    """Look for a vertex order whose orientation of G(S) has no alternating closed trail.

    Connected components are searched independently and their orders concatenated, smallest component label
    first. Within a component the vertex with the most unplaced neighbours is placed first (ties by label), and
    states already known to be dead are skipped.

    Args:
        graph: Pattern graph G(S)
        parallel: Try every first placement of each component on worker threads and keep the lexicographically
            least order among those that succeed, so the answer does not depend on scheduling
        workers: Number of worker threads when parallel

    Returns:
        The order found (None if every acyclic orientation has an alternating closed trail) and search statistics

    """
    start = time.perf_counter()
    adjacency = graph.adjacency()
    components = connected_components(graph)
    stats = SearchStats(components=len(components))
    sequence: List[int] = []
    executor = ThreadPoolExecutor(max_workers=workers) if parallel else None
    try:
        for vertices in components:
            if len(vertices) == 1:
                sequence.extend(vertices)
                continue
            order, component_stats = _search_component(vertices, adjacency, executor)
            stats.absorb(component_stats)
            if order is None:
                _LOGGER.debug("Component %s admits no trail-free orientation", vertices)
                stats.time_ms = (time.perf_counter() - start) * 1000
                return SearchResult(order=None, stats=stats)
            sequence.extend(order)
    finally:
        if executor is not None:
            executor.shutdown()
    stats.time_ms = (time.perf_counter() - start) * 1000
    _LOGGER.debug("Search explored %d nodes with %d memo hits", stats.nodes_explored, stats.memo_hits)
    return SearchResult(order=VertexOrder(tuple(sequence)), stats=stats)


def search_trail_free_order(graph: PatternGraph) -> Optional[VertexOrder]:
    return search(graph).order


class _PebbleGame:
    """(2,3)-pebble game: two pebbles per vertex, an edge is accepted when four pebbles sit on its ends."""

    def __init__(self, n: int):
        self.pebbles = {v: 2 for v in range(1, n + 1)}
        self.out: Dict[int, Set[int]] = {v: set() for v in range(1, n + 1)}

    def _gather(self, target: int, pinned: int) -> bool:
        parent: Dict[int, int] = {}
        seen = {target, pinned}
        stack = [target]
        while stack:
            vertex = stack.pop()
            for successor in self.out[vertex]:
                if successor in seen:
                    continue
                seen.add(successor)
                parent[successor] = vertex
                if self.pebbles[successor] > 0:
                    self.pebbles[successor] -= 1
                    self.pebbles[target] += 1
                    step = successor
                    while step != target:
                        previous = parent[step]
                        self.out[previous].remove(step)
                        self.out[step].add(previous)
                        step = previous
                    return True
                stack.append(successor)
        return False

    def reach(self, roots: Iterable[int]) -> Set[int]:
        seen = set(roots)
        stack = list(seen)
        while stack:
            for successor in self.out[stack.pop()]:
                if successor not in seen:
                    seen.add(successor)
                    stack.append(successor)
        return seen

    def add_edge(self, u: int, v: int) -> bool:
        while self.pebbles[u] + self.pebbles[v] < 4:
            if not (self._gather(u, v) or self._gather(v, u)):
                return False
        source = u if self.pebbles[u] > 0 else v
        self.pebbles[source] -= 1
        self.out[source].add(v if source == u else u)
        return True


def laman_violation(graph: PatternGraph) -> Optional[List[int]]:
    """Find the vertices of a subgraph with k vertices and more than 2k - 3 edges.

    Args:
        graph: Pattern graph

    Returns:
        Sorted vertex set of a violating subgraph, or None if the graph is (2,3)-sparse

    """
    game = _PebbleGame(graph.n)
    for u, v in graph.edges:
        if not game.add_edge(u, v):
            return sorted(game.reach((u, v)))
    return None


def laman_sparse(graph: PatternGraph) -> bool:
    return laman_violation(graph) is None


def is_laman(graph: PatternGraph) -> bool:
    touched = len(graph.touched_vertices())
    return touched >= 2 and len(graph.edges) == 2 * touched - 3 and laman_sparse(graph)
