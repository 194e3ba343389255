import itertools

import numpy as np
import pytest

from completability.graph_core import PatternGraph, VertexOrder, laman_sparse
from completability.matroid_decision import (
    RECT_CONVENTION,
    Decision,
    Model,
    decide,
    decide_rect,
    decide_skew,
    decide_tree_metric,
    full_rank,
    matroid_rank,
    translate_rect,
    verify_certificate,
    verify_rect_certificate,
)
from completability.settings import Settings
from completability.tree_space import all_pairs, cat_tree, relabel_leaves, tree_enum_oracle, tree_matroid_indep


def _subsets(ground):
    for size in range(len(ground) + 1):
        yield from itertools.combinations(ground, size)


def test_k33_is_dependent_after_prefilter(k33_pairs):
    decision = decide_skew(6, k33_pairs)
    assert not decision.independent
    assert decision.certificate is None
    assert decision.prefilter is True
    assert decision.laman_violation is None


def test_k4_is_caught_by_prefilter():
    decision = decide_skew(4, all_pairs(4))
    assert not decision.independent
    assert decision.prefilter is False
    assert decision.laman_violation == (1, 2, 3, 4)
    assert decision.stats.nodes_explored == 0


def test_k4_without_prefilter_is_still_dependent():
    decision = decide_skew(4, all_pairs(4), Settings(prefilter=False))
    assert not decision.independent
    assert decision.prefilter is None
    assert decision.stats.nodes_explored > 0


def test_triangle_certificate():
    decision = decide_skew(3, [(1, 2), (1, 3), (2, 3)])
    assert decision.independent
    assert verify_certificate(3, decision.edges, decision.certificate)


def test_tree_metric_decision_matches_skew():
    pairs = [(1, 2), (1, 3), (2, 3), (3, 4), (2, 4)]
    skew = decide_skew(4, pairs)
    tree = decide_tree_metric(4, pairs)
    assert tree.model is Model.TREE_METRIC
    assert tree.independent == skew.independent
    assert tree.certificate == skew.certificate


def test_decision_requires_certificate_iff_independent():
    with pytest.raises(ValueError):
        Decision(model=Model.SKEW, ambient=(3,), edges=(), independent=True)
    with pytest.raises(ValueError):
        Decision(model=Model.SKEW, ambient=(3,), edges=(), independent=False, certificate=VertexOrder.identity(3))


@pytest.mark.parametrize("n", [4, 5])
def test_search_agrees_with_enumeration_on_all_patterns(n):
    settings = Settings(prefilter=False)
    for pattern in _subsets(all_pairs(n)):
        decision = decide_skew(n, pattern, settings)
        assert decision.independent == tree_enum_oracle(n, pattern), pattern
        if decision.independent:
            assert verify_certificate(n, pattern, decision.certificate)


@pytest.mark.parametrize("n", [4, 5])
def test_matroid_axioms(n):
    ground = all_pairs(n)
    independent = {frozenset(pattern) for pattern in _subsets(ground) if decide_skew(n, pattern).independent}
    assert frozenset() in independent
    for family in independent:
        for element in family:
            assert family - {element} in independent
    for first, second in itertools.product(independent, repeat=2):
        if len(first) < len(second):
            assert any(first | {element} in independent for element in second - first)


def test_translate_rect():
    assert translate_rect(2, 3, [(1, 1), (2, 3)]) == [(1, 4), (3, 5)]
    with pytest.raises(ValueError):
        translate_rect(2, 3, [(3, 1)])
    with pytest.raises(ValueError):
        translate_rect(2, 3, [(1, 1), (1, 1)])


def test_rect_decision_labels():
    cells = [(1, 1), (1, 2), (2, 1)]
    decision = decide_rect(2, 2, cells)
    assert decision.independent
    assert decision.convention == RECT_CONVENTION
    assert decision.ambient == (2, 2)
    labels = decision.vertex_labels()
    assert sorted(labels) == ["c1", "c2", "r1", "r2"]
    assert verify_rect_certificate(2, 2, cells, decision.certificate)


def test_full_2x2_is_independent():
    # every 2 x 2 matrix has rank at most 2
    assert decide_rect(2, 2, itertools.product((1, 2), repeat=2)).independent


def test_full_3x3_is_dependent():
    cells = list(itertools.product((1, 2, 3), repeat=2))
    assert not decide_rect(3, 3, cells).independent


@pytest.mark.parametrize("dropped", list(itertools.product((1, 2, 3), repeat=2)))
def test_3x3_single_dropout_is_independent(dropped):
    cells = [cell for cell in itertools.product((1, 2, 3), repeat=2) if cell != dropped]
    assert decide_rect(3, 3, cells).independent


def test_decide_dispatch(k33_pairs):
    settings = Settings()
    assert decide(Model.SKEW, (6,), k33_pairs, settings).model is Model.SKEW
    assert decide(Model.TREE_METRIC, (6,), k33_pairs, settings).model is Model.TREE_METRIC
    assert decide(Model.RECT, (3, 3), [(1, 1)], settings).model is Model.RECT


def test_verify_certificate_rejects_wrong_size():
    with pytest.raises(ValueError):
        verify_certificate(4, [(1, 2)], VertexOrder.identity(3))


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_rank_of_all_pairs(n):
    assert matroid_rank(n, all_pairs(n)) == 2 * n - 3 == full_rank(Model.SKEW, (n,))


def test_rank_small_cases(k33_pairs):
    assert matroid_rank(2, [(1, 2)]) == 1
    assert matroid_rank(6, k33_pairs) == 8


def test_rect_rank():
    cells = list(itertools.product((1, 2, 3), repeat=2))
    assert matroid_rank(3, cells, Model.RECT, rows=3) == 8 == full_rank(Model.RECT, (3, 3))
    with pytest.raises(ValueError):
        matroid_rank(3, cells, Model.RECT)


def test_full_rank_small_rectangles():
    assert full_rank(Model.RECT, (1, 4)) == 4
    assert full_rank(Model.RECT, (2, 5)) == 10
    assert full_rank(Model.SKEW, (1,)) == 0


def _random_patterns(rng, n, count):
    ground = all_pairs(n)
    for _ in range(count):
        yield [pair for pair, keep in zip(ground, rng.random(len(ground)) < 0.5) if keep]


def _certificate_caterpillar(decision):
    placement = {position: vertex for position, vertex in enumerate(decision.certificate.sequence, start=1)}
    return relabel_leaves(cat_tree(len(placement)), placement)


@pytest.mark.parametrize("n", [4, 5])
def test_certificate_caterpillar_holds_every_independent_pattern(n):
    for pattern in _subsets(all_pairs(n)):
        decision = decide_skew(n, pattern)
        if decision.independent:
            assert tree_matroid_indep(_certificate_caterpillar(decision), list(pattern)), pattern


def test_certificate_caterpillar_holds_sampled_patterns_on_six():
    rng = np.random.default_rng(6)
    for pattern in _random_patterns(rng, 6, 300):
        decision = decide_skew(6, pattern)
        if decision.independent:
            assert tree_matroid_indep(_certificate_caterpillar(decision), pattern), pattern


@pytest.mark.parametrize("n", [5, 6])
def test_verdict_is_invariant_under_relabeling(n):
    rng = np.random.default_rng(n)
    for pattern in _random_patterns(rng, n, 100):
        permutation = [0] + [int(v) + 1 for v in rng.permutation(n)]
        relabeled = [(permutation[i], permutation[j]) for i, j in pattern]
        assert decide_skew(n, pattern).independent == decide_skew(n, relabeled).independent, pattern


@pytest.mark.parametrize("n", [4, 5])
def test_independent_patterns_are_laman_sparse(n):
    settings = Settings(prefilter=False)
    for pattern in _subsets(all_pairs(n)):
        if decide_skew(n, pattern, settings).independent:
            assert laman_sparse(PatternGraph.from_pairs(n, pattern)), pattern


def test_independence_survives_edge_deletion():
    rng = np.random.default_rng(11)
    for pattern in _random_patterns(rng, 6, 100):
        if not decide_skew(6, pattern).independent:
            continue
        for removed in pattern:
            smaller = [pair for pair in pattern if pair != removed]
            assert decide_skew(6, smaller).independent, (pattern, removed)
