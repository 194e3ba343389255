import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "modules"))

# pylint: disable=wrong-import-position
from completability.tree_space import WeightedXTree, XTree, cat_tree  # noqa: E402

K33_PAIRS = [(1, 4), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6)]

# Cat(4) edge order: leaf 1, leaf 2, internal edge, leaf 3, leaf 4
CAT4_WEIGHTS = (-1, 1, 2, 2, -3)
CAT4_METRIC = (0, 3, -2, 5, 0, -1)


def pytest_configure(config: pytest.Config) -> None:
    config.addinivalue_line("markers", "slow: acceptance-size runs")


@pytest.fixture
def k33_pairs():
    return list(K33_PAIRS)


@pytest.fixture
def cat4() -> XTree:
    return cat_tree(4)


@pytest.fixture
def weighted_cat4(cat4: XTree) -> WeightedXTree:
    return WeightedXTree(tree=cat4, weights=CAT4_WEIGHTS)


@pytest.fixture
def write_file(tmp_path: Path):
    def write(name: str, content: str) -> Path:
        path = tmp_path / name
        path.write_text(content, encoding="utf-8")
        return path

    return write
