"""
JSON reports written by the command-line interface.

Rationals are written as strings "p/q" (or "p"), so reports round-trip exactly through model_validate_json.

"""

from typing import List, Optional

from pydantic import BaseModel

from completability.exact_linalg import format_rational
from completability.matroid_decision import Decision
from completability.tree_space import DissimilarityMap


class StatsReport(BaseModel):
    nodes_explored: int
    memo_hits: int
    time_ms: Optional[float] = None


class DecisionReport(BaseModel):
    model: str
    ambient: List[int]
    edges: List[List[int]]
    independent: bool
    certificate: Optional[List[int]] = None
    certificate_labels: Optional[List[str]] = None
    convention: Optional[str] = None
    prefilter: Optional[bool] = None
    laman_violation: Optional[List[int]] = None
    stats: StatsReport


class CertificateReport(BaseModel):
    model: str
    ambient: List[int]
    edges: List[List[int]]
    order: List[int]
    valid: bool


class OracleReport(BaseModel):
    model: str
    ambient: List[int]
    edges: List[List[int]]
    independent: bool
    size: int
    ranks: List[int]
    primes: List[int]
    seed: int


class FourPointReport(BaseModel):
    n: int
    tree_metric: bool
    violation: Optional[List[int]] = None


class RankReport(BaseModel):
    model: str
    ambient: List[int]
    edges: List[List[int]]
    rank: int
    full_rank: int


class TreeEntry(BaseModel):
    splits: List[List[int]]
    cherries: int
    newick: Optional[str] = None


class TreesReport(BaseModel):
    n: int
    count: int
    trees: List[TreeEntry]


class MetricEntry(BaseModel):
    i: int
    j: int
    value: str


class CompletionReport(BaseModel):
    n: int
    independent: bool
    decision: DecisionReport
    newick: Optional[str] = None
    metric: Optional[List[MetricEntry]] = None
    edge_order: Optional[List[List[int]]] = None
    topology_index: Optional[int] = None
    caterpillar_hit: Optional[bool] = None
    topologies_tried: int = 0


class Disagreement(BaseModel):
    edges: List[List[int]]
    search: bool
    enumeration: Optional[bool] = None
    oracle: bool
    certificate_valid: Optional[bool] = None


class CrosscheckReport(BaseModel):
    model: str
    ambient: List[int]
    mode: str
    seed: int
    checked: int
    independent: int
    disagreements: int
    examples: List[Disagreement]


def decision_report(decision: Decision, timings: bool = False) -> DecisionReport:
    """Convert a decision, leaving out wall-clock time unless asked so that reports are reproducible.

    Args:
        decision: Decision to report
        timings: Include the search time

    Returns:
        The report

    """
    return DecisionReport(
        model=decision.model.value,
        ambient=list(decision.ambient),
        edges=[list(edge) for edge in decision.edges],
        independent=decision.independent,
        certificate=list(decision.certificate.sequence) if decision.certificate else None,
        certificate_labels=decision.vertex_labels(),
        convention=decision.convention,
        prefilter=decision.prefilter,
        laman_violation=list(decision.laman_violation) if decision.laman_violation else None,
        stats=StatsReport(
            nodes_explored=decision.stats.nodes_explored,
            memo_hits=decision.stats.memo_hits,
            time_ms=round(decision.stats.time_ms, 3) if timings else None,
        ),
    )


def metric_entries(metric: DissimilarityMap) -> List[MetricEntry]:
    return [MetricEntry(i=i, j=j, value=format_rational(value)) for (i, j), value in metric.values.items()]
