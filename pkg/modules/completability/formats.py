"""
Read edge lists, rectangular cell lists, prescribed values and full metrics from whitespace-separated text files.

Every file is 1-indexed, one record per line, with `#` starting a comment. Problems are reported with the file name
and line number.

"""

from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Set, Tuple

from completability.exact_linalg import parse_rational
from completability.graph_core import Pair, VertexOrder, normalize_pair
from completability.tree_space import DissimilarityMap, all_pairs


class InputError(ValueError):
    def __init__(self, message: str, source: str, line: Optional[int] = None):
        self.source = source
        self.line = line
        location = f"{source}:{line}" if line is not None else source
        super().__init__(f"{location}: {message}")


def _records(path: Path) -> Iterator[Tuple[int, List[str]]]:
    if not path.exists():
        raise InputError("file not found", str(path))
    try:
        data = path.read_bytes()
    except OSError as ex:
        raise InputError(f"cannot read file ({ex.strerror or ex})", str(path)) from ex
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as ex:
        line = data[: ex.start].count(b"\n") + 1
        raise InputError(f"invalid UTF-8 byte 0x{data[ex.start]:02x}", str(path), line) from ex
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if content:
            yield number, content.split()


def _integers(tokens: List[str], count: int, source: str, line: int) -> List[int]:
    if len(tokens) < count:
        raise InputError(f"expected {count} integers, got {' '.join(tokens)!r}", source, line)
    try:
        return [int(token) for token in tokens[:count]]
    except ValueError as ex:
        raise InputError(f"expected integers, got {' '.join(tokens[:count])!r}", source, line) from ex


def _pair(tokens: List[str], n: int, seen: Dict[Pair, int], source: str, line: int) -> Pair:
    i, j = _integers(tokens, 2, source, line)
    try:
        pair = normalize_pair(i, j, n)
    except ValueError as ex:
        raise InputError(str(ex), source, line) from ex
    if pair in seen:
        raise InputError(f"pair {pair[0]} {pair[1]} repeats line {seen[pair]}", source, line)
    seen[pair] = line
    return pair


def _rational(token: str, source: str, line: int) -> Fraction:
    try:
        return parse_rational(token)
    except ValueError as ex:
        raise InputError(str(ex), source, line) from ex


def read_edges(path: Path, n: int) -> List[Pair]:
    """Read `i j` pairs on vertex set [n].

    Args:
        path: Edge-list file
        n: Number of vertices

    Raises:
        InputError: On extra tokens, malformed integers, loops, out-of-range vertices or repeated pairs

    Returns:
        Pairs (i < j) in file order

    """
    seen: Dict[Pair, int] = {}
    pairs = []
    for line, tokens in _records(path):
        if len(tokens) != 2:
            raise InputError(f"expected 'i j', got {' '.join(tokens)!r}", str(path), line)
        pairs.append(_pair(tokens, n, seen, str(path), line))
    return pairs


def read_cells(path: Path, m: int, n: int) -> List[Tuple[int, int]]:
    """Read `i j` cells meaning row i, column j of an m x n matrix.

    Args:
        path: Cell-list file
        m: Row count
        n: Column count

    Raises:
        InputError: On malformed lines, out-of-range cells or repeated cells

    Returns:
        Cells in file order

    """
    seen: Set[Tuple[int, int]] = set()
    cells = []
    for line, tokens in _records(path):
        if len(tokens) != 2:
            raise InputError(f"expected 'i j', got {' '.join(tokens)!r}", str(path), line)
        i, j = _integers(tokens, 2, str(path), line)
        if not (1 <= i <= m and 1 <= j <= n):
            raise InputError(f"cell ({i}, {j}) is outside the {m} x {n} matrix", str(path), line)
        if (i, j) in seen:
            raise InputError(f"cell ({i}, {j}) is repeated", str(path), line)
        seen.add((i, j))
        cells.append((i, j))
    return cells


def read_values(path: Path, n: int) -> DissimilarityMap:
    """Read prescribed distances `i j p/q`.

    Args:
        path: Values file
        n: Number of taxa

    Raises:
        InputError: On malformed lines, bad pairs or malformed rationals

    Returns:
        Partial dissimilarity map whose domain is the listed pairs

    """
    seen: Dict[Pair, int] = {}
    values = {}
    for line, tokens in _records(path):
        if len(tokens) != 3:
            raise InputError(f"expected 'i j p/q', got {' '.join(tokens)!r}", str(path), line)
        pair = _pair(tokens, n, seen, str(path), line)
        values[pair] = _rational(tokens[2], str(path), line)
    return DissimilarityMap(n=n, values=values)


def read_metric(path: Path) -> DissimilarityMap:
    """Read a full metric: a header line `n`, then `i j p/q` for every pair.

    Args:
        path: Metric file

    Raises:
        InputError: On a missing or malformed header, malformed lines, or missing pairs

    Returns:
        Total dissimilarity map

    """
    records = _records(path)
    header = next(records, None)
    if header is None:
        raise InputError("empty metric file, expected a header line with n", str(path))
    line, tokens = header
    if len(tokens) != 1:
        raise InputError(f"expected a header line with n, got {' '.join(tokens)!r}", str(path), line)
    (n,) = _integers(tokens, 1, str(path), line)
    if n < 1:
        raise InputError(f"n must be positive, got {n}", str(path), line)
    seen: Dict[Pair, int] = {}
    values = {}
    for line, tokens in records:
        if len(tokens) != 3:
            raise InputError(f"expected 'i j p/q', got {' '.join(tokens)!r}", str(path), line)
        pair = _pair(tokens, n, seen, str(path), line)
        values[pair] = _rational(tokens[2], str(path), line)
    missing = [pair for pair in all_pairs(n) if pair not in values]
    if missing:
        listed = ", ".join(f"{i} {j}" for i, j in missing)
        raise InputError(f"missing values for pairs {listed}", str(path), line)
    return DissimilarityMap(n=n, values=values)


def parse_order(text: str, n: int) -> VertexOrder:
    """Parse a comma-separated placement order such as `3,1,2`.

    Vertices left out are placed after the listed ones, in increasing order, so `1,2,3` is a valid order on four
    vertices.

    Args:
        text: The order
        n: Number of vertices

    Raises:
        InputError: If the text has malformed, repeated or out-of-range vertices

    Returns:
        Vertex order

    """
    try:
        listed = [int(token) for token in text.split(",")]
    except ValueError as ex:
        raise InputError(f"expected comma-separated integers, got {text!r}", "--order") from ex
    outside = [v for v in listed if not 1 <= v <= n]
    if outside:
        raise InputError(f"vertices {outside} are outside 1..{n}", "--order")
    if len(set(listed)) != len(listed):
        raise InputError(f"order {listed} repeats a vertex", "--order")
    remaining = sorted(set(range(1, n + 1)) - set(listed))
    return VertexOrder(tuple(listed + remaining))
