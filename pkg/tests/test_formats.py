from fractions import Fraction

import pytest

from completability.formats import InputError, parse_order, read_cells, read_edges, read_metric, read_values
from completability.paths import get_data_file


def test_read_bundled_k33(k33_pairs):
    assert read_edges(get_data_file("k33.edges"), 6) == k33_pairs


def test_read_edges_skips_comments_and_blank_lines(write_file):
    path = write_file("pattern.edges", "# header\n\n2 1  # reversed\n3 1\n")
    assert read_edges(path, 3) == [(1, 2), (1, 3)]


def test_read_edges_reports_duplicates_with_line(write_file):
    path = write_file("pattern.edges", "1 2\n# comment\n2 1\n")
    with pytest.raises(InputError) as info:
        read_edges(path, 3)
    assert info.value.line == 3
    assert info.value.source == str(path)
    assert "repeats line 1" in str(info.value)


@pytest.mark.parametrize(
    "content, line",
    [
        ("1 2\n1 5\n", 2),
        ("1 1\n", 1),
        ("1 2 3\n", 1),
        ("1 x\n", 1),
        ("1\n", 1),
    ],
)
def test_read_edges_rejects(write_file, content, line):
    with pytest.raises(InputError) as info:
        read_edges(write_file("bad.edges", content), 4)
    assert info.value.line == line


def test_missing_file(tmp_path):
    with pytest.raises(InputError):
        read_edges(tmp_path / "absent.edges", 3)


def test_directory_is_reported_as_input_error(tmp_path):
    with pytest.raises(InputError) as info:
        read_edges(tmp_path, 3)
    assert info.value.source == str(tmp_path)
    assert "cannot read" in str(info.value)


def test_invalid_utf8_reports_line(tmp_path):
    path = tmp_path / "binary.edges"
    path.write_bytes(b"1 2\n\xff\xfe 3\n")
    with pytest.raises(InputError) as info:
        read_edges(path, 3)
    assert info.value.line == 2
    assert str(info.value).startswith(f"{path}:2: ")


def test_input_error_is_a_value_error():
    assert issubclass(InputError, ValueError)


def test_read_cells(write_file):
    path = write_file("cells.txt", "1 3\n2 1\n")
    assert read_cells(path, 2, 3) == [(1, 3), (2, 1)]
    with pytest.raises(InputError):
        read_cells(write_file("outside.txt", "3 1\n"), 2, 3)
    with pytest.raises(InputError):
        read_cells(write_file("twice.txt", "1 1\n1 1\n"), 2, 3)


def test_read_values(write_file):
    partial = read_values(write_file("values.txt", "1 2 3/4\n2 3 -2\n"), 3)
    assert partial.values == {(1, 2): Fraction(3, 4), (2, 3): Fraction(-2)}


def test_read_values_rejects_decimals(write_file):
    with pytest.raises(InputError) as info:
        read_values(write_file("values.txt", "1 2 1\n1 3 0.5\n"), 3)
    assert info.value.line == 2


def test_read_bundled_metric():
    metric = read_metric(get_data_file("tree_metric_4.metric"))
    assert metric.n == 4
    assert metric.as_vector() == [0, 3, -2, 5, 0, -1]


def test_read_metric_reports_missing_pairs(write_file):
    with pytest.raises(InputError) as info:
        read_metric(write_file("partial.metric", "3\n1 2 1\n1 3 1\n"))
    assert "2 3" in str(info.value)


@pytest.mark.parametrize("content", ["", "# only a comment\n", "3 4\n", "x\n", "0\n"])
def test_read_metric_rejects_bad_header(write_file, content):
    with pytest.raises(InputError):
        read_metric(write_file("bad.metric", content))


def test_parse_order():
    assert parse_order("3,1,2", 3).sequence == (3, 1, 2)
    assert parse_order("1,2,3", 4).sequence == (1, 2, 3, 4)
    assert parse_order("4", 4).sequence == (4, 1, 2, 3)


@pytest.mark.parametrize("text", ["1,1,2", "a,b", "0,1", "5", ""])
def test_parse_order_rejects(text):
    with pytest.raises(InputError):
        parse_order(text, 4)
