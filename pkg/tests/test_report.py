from fractions import Fraction

from completability.matroid_decision import decide_rect, decide_skew
from completability.report import DecisionReport, decision_report, metric_entries
from completability.tree_space import DissimilarityMap


def test_decision_report_round_trips(k33_pairs):
    report = decision_report(decide_skew(6, k33_pairs))
    assert report.model == "skew"
    assert not report.independent
    assert report.certificate is None
    assert report.edges == [list(pair) for pair in k33_pairs]
    assert DecisionReport.model_validate_json(report.model_dump_json()) == report


def test_time_is_reported_only_on_request():
    decision = decide_skew(3, [(1, 2), (2, 3)])
    assert decision_report(decision).stats.time_ms is None
    assert decision_report(decision, timings=True).stats.time_ms is not None


def test_rect_report_carries_labels():
    report = decision_report(decide_rect(2, 2, [(1, 1), (2, 2)]))
    assert report.model == "rect"
    assert report.ambient == [2, 2]
    assert report.convention is not None
    assert sorted(report.certificate_labels) == ["c1", "c2", "r1", "r2"]


def test_metric_entries_are_exact():
    entries = metric_entries(DissimilarityMap(n=3, values={(1, 2): Fraction(1, 3), (2, 3): -2}))
    assert [(entry.i, entry.j, entry.value) for entry in entries] == [(1, 2, "1/3"), (2, 3, "-2")]
