"""
Command-line interface: decide, certify, cross-check and complete observation patterns.

Every subcommand prints one JSON report on standard output. Exit code 0 means the command ran (the verdict is in the
JSON), 1 means crosscheck found a disagreement or an internal guarantee broke, 2 means the input was rejected.

"""

import argparse
import itertools
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel

from completability.algebraic_oracle import oracle_decide
from completability.completion import complete
from completability.crosscheck import crosscheck
from completability.formats import parse_order, read_cells, read_edges, read_metric, read_values
from completability.matroid_decision import (
    Model,
    decide,
    full_rank,
    matroid_rank,
    verify_certificate,
    verify_rect_certificate,
)
from completability.report import (
    CertificateReport,
    CompletionReport,
    FourPointReport,
    OracleReport,
    RankReport,
    TreeEntry,
    TreesReport,
    decision_report,
    metric_entries,
)
from completability.settings import Settings, load_settings
from completability.tree_space import (
    WeightedXTree,
    all_pairs,
    binary_trees,
    check_enumeration_cap,
    count_cherries,
    four_point_check,
    splits,
    to_newick,
)

_LOGGER = logging.getLogger(__name__)

_MODELS = {"skew": Model.SKEW, "rect": Model.RECT, "tree": Model.TREE_METRIC}


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="Seed for the random oracle and random crosscheck patterns")
    common.add_argument("--trials", type=int, help="Number of random Jacobian evaluations")
    common.add_argument("--cap", dest="enumeration_cap", type=int, help="Largest n for binary-tree enumeration")
    common.add_argument(
        "--no-prefilter",
        dest="prefilter",
        action="store_const",
        const=False,
        help="Skip the (2,3)-sparsity check before the orientation search",
    )
    common.add_argument(
        "--parallel", action="store_const", const=True, help="Use worker threads in the search and the oracle"
    )
    common.add_argument("--workers", type=int, help="Number of worker threads with --parallel")
    common.add_argument("--timings", action="store_const", const=True, help="Report wall-clock search time")
    common.add_argument("--config", type=Path, help="YAML file overriding the bundled default settings")
    common.add_argument("--verbose", action="store_true", help="Log progress to standard error")
    return common


def _add_ambient(parser: argparse.ArgumentParser, rows: bool) -> None:
    parser.add_argument("--n", type=int, required=True, help="Number of vertices (columns for rectangular patterns)")
    if rows:
        parser.add_argument("--m", type=int, help="Number of rows, required for rectangular patterns")


def _options() -> argparse.ArgumentParser:
    """Build the argument parser.

    Returns:
        Parser with one subparser per command

    """
    common = _common_options()
    parser = argparse.ArgumentParser(prog="completability", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True, help="Command")

    decide_parser = commands.add_parser("decide", help="Decide independence of a pattern")
    decide_models = decide_parser.add_subparsers(dest="model", required=True, help="Variety")
    for name in _MODELS:
        model_parser = decide_models.add_parser(name, parents=[common], help=f"{name} pattern")
        _add_ambient(model_parser, rows=name == "rect")
        model_parser.add_argument("--edges", type=Path, required=True, help="Edge-list (or cell-list) file")

    certificate_parser = commands.add_parser("certificate", help="Certificate tools")
    certificate_commands = certificate_parser.add_subparsers(dest="action", required=True, help="Action")
    verify_parser = certificate_commands.add_parser("verify", parents=[common], help="Check a vertex order")
    verify_parser.add_argument("--model", choices=["skew", "rect", "tree"], default="skew", help="Variety")
    _add_ambient(verify_parser, rows=True)
    verify_parser.add_argument("--edges", type=Path, required=True, help="Edge-list (or cell-list) file")
    verify_parser.add_argument("--order", required=True, help="Vertices in placement order, e.g. 3,1,2")

    oracle_parser = commands.add_parser("oracle", parents=[common], help="Randomized Jacobian-rank test")
    oracle_parser.add_argument("model", nargs="?", choices=list(_MODELS), default="skew", help="Variety")
    _add_ambient(oracle_parser, rows=True)
    oracle_parser.add_argument("--edges", type=Path, required=True, help="Edge-list (or cell-list) file")

    complete_parser = commands.add_parser("complete", parents=[common], help="Complete values to a tree metric")
    _add_ambient(complete_parser, rows=False)
    complete_parser.add_argument("--values", type=Path, required=True, help="File of prescribed values 'i j p/q'")

    rank_parser = commands.add_parser("rank", parents=[common], help="Matroid rank by tree enumeration")
    _add_ambient(rank_parser, rows=True)
    rank_source = rank_parser.add_mutually_exclusive_group(required=True)
    rank_source.add_argument("--edges", type=Path, help="Edge-list (or cell-list) file")
    rank_source.add_argument("--all", action="store_true", help="Use every pair (or every cell)")

    trees_parser = commands.add_parser("trees", help="Tree tools")
    trees_commands = trees_parser.add_subparsers(dest="action", required=True, help="Action")
    enumerate_parser = trees_commands.add_parser("enumerate", parents=[common], help="List binary trees")
    _add_ambient(enumerate_parser, rows=False)
    enumerate_parser.add_argument("--newick", action="store_true", help="Also print unit-length Newick strings")

    fourpoint_parser = commands.add_parser("fourpoint", parents=[common], help="Check the four-point condition")
    fourpoint_parser.add_argument("--metric", type=Path, required=True, help="Metric file")

    crosscheck_parser = commands.add_parser("crosscheck", parents=[common], help="Compare all deciders")
    crosscheck_parser.add_argument("--model", choices=["skew", "rect"], default="skew", help="Variety")
    _add_ambient(crosscheck_parser, rows=True)
    crosscheck_parser.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive", help="Patterns")
    crosscheck_parser.add_argument("--samples", type=int, default=1000, help="Number of random patterns")

    return parser


def _ambient(model: Model, options: argparse.Namespace) -> Tuple[int, ...]:
    if options.n < 1:
        raise ValueError(f"--n must be positive, got {options.n}")
    if model is not Model.RECT:
        return (options.n,)
    if getattr(options, "m", None) is None:
        raise ValueError("Rectangular patterns need --m")
    if options.m < 1:
        raise ValueError(f"--m must be positive, got {options.m}")
    return (options.m, options.n)


def _read_pattern(model: Model, ambient: Sequence[int], path: Path) -> List[Tuple[int, int]]:
    if model is Model.RECT:
        return read_cells(path, *ambient)
    return read_edges(path, ambient[0])


def _settings(options: argparse.Namespace) -> Settings:
    return load_settings(options.config).replace(
        seed=options.seed,
        trials=options.trials,
        enumeration_cap=options.enumeration_cap,
        prefilter=options.prefilter,
        parallel=options.parallel,
        workers=options.workers,
        timings=options.timings,
    )


def _decide(options: argparse.Namespace, settings: Settings) -> Tuple[BaseModel, int]:
    model = _MODELS[options.model]
    ambient = _ambient(model, options)
    decision = decide(model, ambient, _read_pattern(model, ambient, options.edges), settings)
    return decision_report(decision, settings.timings), 0


def _certificate(options: argparse.Namespace, settings: Settings) -> Tuple[BaseModel, int]:
    model = _MODELS[options.model]
    ambient = _ambient(model, options)
    pattern = _read_pattern(model, ambient, options.edges)
    order = parse_order(options.order, sum(ambient))
    if model is Model.RECT:
        valid = verify_rect_certificate(ambient[0], ambient[1], pattern, order)
    else:
        valid = verify_certificate(ambient[0], pattern, order)
    _LOGGER.debug("Certificate %s checked with seed %d", order.sequence, settings.seed)
    report = CertificateReport(
        model=model.value,
        ambient=list(ambient),
        edges=[list(element) for element in pattern],
        order=list(order.sequence),
        valid=valid,
    )
    return report, 0


def _oracle(options: argparse.Namespace, settings: Settings) -> Tuple[BaseModel, int]:
    model = _MODELS[options.model]
    ambient = _ambient(model, options)
    pattern = _read_pattern(model, ambient, options.edges)
    result = oracle_decide(
        model, ambient, pattern, settings.trials, settings.seed, settings.workers if settings.parallel else None
    )
    report = OracleReport(
        model=model.value,
        ambient=list(ambient),
        edges=[list(element) for element in pattern],
        independent=result.independent,
        size=result.size,
        ranks=list(result.ranks),
        primes=list(result.primes),
        seed=settings.seed,
    )
    return report, 0


def _complete(options: argparse.Namespace, settings: Settings) -> Tuple[BaseModel, int]:
    partial = read_values(options.values, options.n)
    result = complete(options.n, partial, settings)
    report = CompletionReport(
        n=options.n, independent=result.independent, decision=decision_report(result.decision, settings.timings)
    )
    if result.tree is None or result.metric is None:
        return report, 0
    completed = report.model_copy(
        update={
            "newick": to_newick(result.tree),
            "metric": metric_entries(result.metric),
            "edge_order": [list(edge) for edge in result.tree.tree.edges],
            "topology_index": result.topology_index,
            "caterpillar_hit": result.caterpillar_hit,
            "topologies_tried": result.topologies_tried,
        }
    )
    return completed, 0


def _rank(options: argparse.Namespace, settings: Settings) -> Tuple[BaseModel, int]:
    model = Model.RECT if getattr(options, "m", None) is not None else Model.SKEW
    ambient = _ambient(model, options)
    if options.all:
        if model is Model.RECT:
            pattern = list(itertools.product(range(1, ambient[0] + 1), range(1, ambient[1] + 1)))
        else:
            pattern = all_pairs(ambient[0])
    else:
        pattern = _read_pattern(model, ambient, options.edges)
    rows = ambient[0] if model is Model.RECT else None
    rank = matroid_rank(ambient[-1], pattern, model, settings.enumeration_cap, rows)
    report = RankReport(
        model=model.value,
        ambient=list(ambient),
        edges=[list(element) for element in pattern],
        rank=rank,
        full_rank=full_rank(model, ambient),
    )
    return report, 0


def _trees(options: argparse.Namespace, settings: Settings) -> Tuple[BaseModel, int]:
    check_enumeration_cap(options.n, settings.enumeration_cap)
    entries = []
    for tree in binary_trees(options.n):
        entries.append(
            TreeEntry(
                splits=sorted(sorted(split) for split in splits(tree)),
                cherries=count_cherries(tree),
                newick=(
                    to_newick(WeightedXTree(tree=tree, weights=tuple(1 for _ in tree.edges)))
                    if options.newick
                    else None
                ),
            )
        )
    return TreesReport(n=options.n, count=len(entries), trees=entries), 0


def _fourpoint(options: argparse.Namespace, _: Settings) -> Tuple[BaseModel, int]:
    metric = read_metric(options.metric)
    result = four_point_check(metric)
    report = FourPointReport(
        n=metric.n, tree_metric=result.holds, violation=list(result.violation) if result.violation else None
    )
    return report, 0


def _crosscheck(options: argparse.Namespace, settings: Settings) -> Tuple[BaseModel, int]:
    model = _MODELS[options.model]
    ambient = _ambient(model, options)
    if options.samples < 1:
        raise ValueError(f"--samples must be positive, got {options.samples}")
    report = crosscheck(model, ambient, options.mode, options.samples, settings)
    return report, 1 if report.disagreements else 0


_COMMANDS = {
    "decide": _decide,
    "certificate": _certificate,
    "oracle": _oracle,
    "complete": _complete,
    "rank": _rank,
    "trees": _trees,
    "fourpoint": _fourpoint,
    "crosscheck": _crosscheck,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and print its JSON report.

    Args:
        argv: Arguments without the program name

    Returns:
        Exit code

    """
    try:
        options = _options().parse_args(argv)
    except SystemExit as ex:
        return int(ex.code or 0)

    try:
        settings = _settings(options)
        logging.basicConfig(
            level=logging.DEBUG if options.verbose else settings.log_level.upper(),
            stream=sys.stderr,
            format="%(levelname)s %(name)s: %(message)s",
        )
        report, code = _COMMANDS[options.command](options, settings)
    except ValueError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    except RuntimeError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1

    print(report.model_dump_json(indent=2))
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
