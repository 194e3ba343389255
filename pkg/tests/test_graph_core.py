import itertools

import pytest

from completability.graph_core import (
    IN,
    OUT,
    OrientedGraph,
    PatternGraph,
    VertexOrder,
    connected_components,
    has_alternating_closed_trail,
    has_closed_trail,
    is_acyclic,
    is_laman,
    laman_sparse,
    laman_violation,
    normalize_pair,
    orient,
    search,
    search_trail_free_order,
    trail_graph,
)
from completability.tree_space import all_pairs


def test_normalize_pair():
    assert normalize_pair(3, 1, 4) == (1, 3)
    with pytest.raises(ValueError):
        normalize_pair(2, 2, 4)
    with pytest.raises(ValueError):
        normalize_pair(0, 2, 4)
    with pytest.raises(ValueError):
        normalize_pair(1, 5, 4)


def test_pattern_graph_rejects_duplicates_in_either_orientation():
    with pytest.raises(ValueError):
        PatternGraph.from_pairs(3, [(1, 2), (2, 1)])


def test_pattern_graph():
    graph = PatternGraph.from_pairs(5, [(3, 2), (1, 2)])
    assert graph.edges == ((1, 2), (2, 3))
    assert graph.touched_vertices() == [1, 2, 3]
    assert graph.adjacency()[2] == {1, 3}
    assert graph.adjacency()[5] == set()


def test_vertex_order():
    order = VertexOrder((3, 1, 2))
    assert order.positions() == {3: 1, 1: 2, 2: 3}
    assert VertexOrder.from_positions([2, 3, 1]) == order
    assert order.relabel([(1, 3), (2, 3)]) == [(1, 2), (1, 3)]
    assert VertexOrder.identity(3).sequence == (1, 2, 3)
    with pytest.raises(ValueError):
        VertexOrder((1, 1, 2))
    with pytest.raises(ValueError):
        VertexOrder.from_positions([1, 3])


def test_orient_follows_order():
    graph = PatternGraph.from_pairs(3, [(1, 2), (2, 3), (1, 3)])
    digraph = orient(graph, VertexOrder((2, 3, 1)))
    assert digraph.arcs == ((2, 1), (3, 1), (2, 3))
    assert trail_graph(digraph).edges[0] == ((2, OUT), (1, IN))


def test_orient_rejects_wrong_size():
    with pytest.raises(ValueError):
        orient(PatternGraph.from_pairs(3, [(1, 2)]), VertexOrder.identity(4))


def test_every_order_gives_an_acyclic_orientation():
    graph = PatternGraph.from_pairs(4, all_pairs(4))
    for sequence in itertools.permutations(range(1, 5)):
        assert is_acyclic(orient(graph, VertexOrder(sequence)))


def test_is_acyclic_detects_cycle():
    assert not is_acyclic(OrientedGraph(n=3, arcs=((1, 2), (2, 3), (3, 1))))


def test_has_closed_trail():
    assert not has_closed_trail([("a", "b"), ("b", "c")])
    assert has_closed_trail([("a", "b"), ("b", "c"), ("c", "a")])


def test_triangle_identity_order_has_no_alternating_trail():
    graph = PatternGraph.from_pairs(3, [(1, 2), (1, 3), (2, 3)])
    assert not has_alternating_closed_trail(orient(graph, VertexOrder.identity(3)))


def test_four_cycle_with_alternating_orientation():
    # 1 -> 2 <- 3 -> 4 <- 1 alternates at every vertex
    graph = PatternGraph.from_pairs(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
    assert has_alternating_closed_trail(orient(graph, VertexOrder((1, 3, 2, 4))))
    assert not has_alternating_closed_trail(orient(graph, VertexOrder.identity(4)))


def test_k33_every_order_has_alternating_trail(k33_pairs):
    graph = PatternGraph.from_pairs(6, k33_pairs)
    orders = list(itertools.permutations(range(1, 7)))
    assert len(orders) == 720
    assert all(has_alternating_closed_trail(orient(graph, VertexOrder(order))) for order in orders)


def test_search_on_k33(k33_pairs):
    result = search(PatternGraph.from_pairs(6, k33_pairs))
    assert result.order is None
    assert result.stats.nodes_explored > 0


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_search_finds_order_for_standard_pattern(n):
    pairs = [(1, j) for j in range(2, n + 1)] + [(2, j) for j in range(3, n + 1)]
    graph = PatternGraph.from_pairs(n, pairs)
    order = search_trail_free_order(graph)
    assert order is not None
    assert not has_alternating_closed_trail(orient(graph, order))


def test_search_on_empty_graph():
    result = search(PatternGraph.from_pairs(4, []))
    assert result.order == VertexOrder.identity(4)
    assert result.stats.components == 4


def test_search_concatenates_components_smallest_label_first():
    graph = PatternGraph.from_pairs(6, [(4, 6), (1, 3)])
    order = search(graph).order
    assert order.sequence[:2] in ((1, 3), (3, 1))
    assert order.sequence[2] == 2
    assert set(order.sequence[3:5]) == {4, 6}
    assert order.sequence[5] == 5


def test_parallel_search_keeps_least_order():
    pairs = [(1, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5), (4, 6), (5, 6), (1, 6)]
    graph = PatternGraph.from_pairs(6, pairs)
    sequential = search(graph).order
    orders = {search(graph, parallel=True, workers=workers).order for workers in (1, 2, 3, 4)}
    assert len(orders) == 1
    (parallel,) = orders
    assert parallel.sequence <= sequential.sequence
    assert not has_alternating_closed_trail(orient(graph, parallel))


def test_parallel_search_reports_dependence(k33_pairs):
    assert search(PatternGraph.from_pairs(6, k33_pairs), parallel=True, workers=2).order is None


def test_connected_components():
    graph = PatternGraph.from_pairs(5, [(4, 5), (1, 2)])
    assert connected_components(graph) == [[1, 2], [3], [4, 5]]


def test_laman_on_k4():
    graph = PatternGraph.from_pairs(4, all_pairs(4))
    assert not laman_sparse(graph)
    assert laman_violation(graph) == [1, 2, 3, 4]


def test_k33_is_laman(k33_pairs):
    graph = PatternGraph.from_pairs(6, k33_pairs)
    assert laman_sparse(graph)
    assert is_laman(graph)


def test_is_laman_counts_edges():
    triangle = PatternGraph.from_pairs(4, [(1, 2), (1, 3), (2, 3)])
    path = PatternGraph.from_pairs(4, [(1, 2), (2, 3)])
    assert is_laman(triangle)
    assert not is_laman(path)
    assert laman_sparse(path)


def test_laman_violation_finds_dense_subgraph():
    # K4 on 3..6 hides inside an otherwise sparse graph
    pairs = [(1, 2), (2, 3)] + [pair for pair in itertools.combinations(range(3, 7), 2)]
    violation = laman_violation(PatternGraph.from_pairs(6, pairs))
    assert violation == [3, 4, 5, 6]
