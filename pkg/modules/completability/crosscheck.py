"""
Run the orientation search, binary-tree enumeration and the Jacobian oracle on the same patterns and collect any
disagreement, together with certificates that fail verification.

"""

import logging
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from completability.algebraic_oracle import oracle_decide
from completability.matroid_decision import Model, decide_rect, decide_skew, translate_rect, verify_certificate
from completability.report import CrosscheckReport, Disagreement
from completability.settings import Settings
from completability.tree_space import all_pairs, tree_enum_oracle

_LOGGER = logging.getLogger(__name__)

MAX_EXAMPLES = 20


def _patterns(ground: List[Tuple[int, int]], mode: str, samples: int, seed: int) -> Iterator[List[Tuple[int, int]]]:
    if mode == "exhaustive":
        for mask in range(1 << len(ground)):
            yield [element for bit, element in enumerate(ground) if mask >> bit & 1]
    elif mode == "random":
        rng = np.random.default_rng(seed)
        for _ in range(samples):
            chosen = rng.random(len(ground)) < 0.5
            yield [element for element, keep in zip(ground, chosen) if keep]
    else:
        raise ValueError(f"Unknown crosscheck mode {mode!r}, expected 'exhaustive' or 'random'")


def crosscheck(
    model: Model, ambient: Sequence[int], mode: str, samples: int, settings: Settings
) -> CrosscheckReport:
    """Compare all deciders on every pattern of the chosen family.

    Skew and tree-metric patterns are subsets of the pairs of [n]. Rectangular patterns are subsets of the cells of
    an m x n matrix; for them the rectangular oracle is also compared with the skew oracle on the translated pairs.
    Enumeration takes part when the vertex count is within the enumeration cap.

    Args:
        model: Variety of the patterns
        ambient: (n,) or (m, n)
        mode: "exhaustive" (all subsets) or "random" (each element kept with probability 1/2)
        samples: Number of random patterns
        settings: Seed, trials, cap and search settings

    Returns:
        Counts and up to MAX_EXAMPLES disagreeing patterns

    """
    if model is Model.RECT:
        m, n = ambient
        ground = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
        size = m + n
    else:
        (n,) = ambient
        ground = all_pairs(n)
        size = n
    enumerate_trees = 3 <= size <= settings.enumeration_cap
    # The prefilter would answer some patterns without searching.
    search_settings = settings.replace(prefilter=False)

    checked = independent = disagreements = 0
    examples: List[Disagreement] = []
    for index, pattern in enumerate(_patterns(ground, mode, samples, settings.seed)):
        oracle_seed = settings.seed * 1_000_003 + index
        if model is Model.RECT:
            pairs = translate_rect(m, n, pattern)
            decision = decide_rect(m, n, pattern, search_settings)
            oracle = oracle_decide(Model.RECT, (m, n), pattern, settings.trials, oracle_seed).independent
            embedded = oracle_decide(Model.SKEW, (size,), pairs, settings.trials, oracle_seed).independent
            oracle_agrees = oracle == embedded
        else:
            pairs = pattern
            decision = decide_skew(n, pattern, search_settings)
            oracle = oracle_decide(Model.SKEW, (n,), pattern, settings.trials, oracle_seed).independent
            oracle_agrees = True
        enumeration = tree_enum_oracle(size, pairs, settings.enumeration_cap) if enumerate_trees else None
        certificate_valid = (
            verify_certificate(size, pairs, decision.certificate) if decision.certificate is not None else None
        )

        checked += 1
        independent += int(decision.independent)
        verdicts = {decision.independent, oracle} | ({enumeration} if enumeration is not None else set())
        if len(verdicts) > 1 or not oracle_agrees or certificate_valid is False:
            disagreements += 1
            _LOGGER.warning("Deciders disagree on %s", pattern)
            if len(examples) < MAX_EXAMPLES:
                examples.append(
                    Disagreement(
                        edges=[list(element) for element in pattern],
                        search=decision.independent,
                        enumeration=enumeration,
                        oracle=oracle,
                        certificate_valid=certificate_valid,
                    )
                )
    _LOGGER.info("Checked %d patterns, %d independent, %d disagreements", checked, independent, disagreements)
    return CrosscheckReport(
        model=model.value,
        ambient=list(ambient),
        mode=mode,
        seed=settings.seed,
        checked=checked,
        independent=independent,
        disagreements=disagreements,
        examples=examples,
    )

