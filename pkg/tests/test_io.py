import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from resilient_spanners.generators import cycle
from resilient_spanners.graph import INF, Graph
from resilient_spanners.io import (
    ParseError,
    Report,
    emit_report,
    format_number,
    jsonable,
    parse_edge_list,
    parse_report,
    read_graph,
    serialize_edge_list,
    write_graph,
)


def test_parse_unit_edge_list_with_comments():
    g, meta = parse_edge_list("# family=cycle params=3\n0 1\n\n1 2\n  2 0  \n")
    assert g == cycle(3)
    assert meta == {"family": "cycle", "params": "3"}


def test_header_fixes_vertex_count():
    g, _ = parse_edge_list("n 5\n0 1\n")
    assert g.n == 5 and g.m == 1
    g, _ = parse_edge_list("n 3\n")
    assert (g.n, g.m) == (3, 0)


def test_empty_input_is_the_empty_graph():
    g, meta = parse_edge_list("")
    assert (g.n, g.m, meta) == (0, 0, {})


def test_decimal_weights_parse_exactly():
    g, _ = parse_edge_list("0 1 0.1\n1 2 2.50\n0 2 7/3\n")
    assert g.weight(0, 1) == Fraction(1, 10)
    assert g.weight(1, 2) == Fraction(5, 2)
    assert g.weight(0, 2) == Fraction(7, 3)


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("0 1\n1 1\n", 2, "self-loop"),
        ("0 1\n1 0\n", 2, "duplicate"),
        ("0 1 -2\n", 1, "non-positive"),
        ("0 1 0\n", 1, "non-positive"),
        ("0 1\nx 2\n", 2, "integers"),
        ("0 1 2 3\n", 1, "expected"),
        ("n 2\n0 5\n", 2, "out of range"),
        ("0 1\nn 4\n", 2, "header"),
        ("n two\n", 1, "malformed"),
        ("0 -1\n", 1, "non-negative"),
        ("# ok\n0 1 abc\n", 2, "not a finite number"),
        ("0 1 inf\n", 1, "not a finite number"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_edge_list(text)
    assert info.value.line == line
    assert fragment in str(info.value)
    assert str(info.value).startswith(f"line {line}:")


@given(graphs())
def test_serialization_round_trip(g):
    text = serialize_edge_list(g, {"seed": 3})
    again, meta = parse_edge_list(text)
    assert again == g
    assert meta == {"seed": "3"}
    assert serialize_edge_list(again, meta) == text


def test_fractional_weights_round_trip():
    g = Graph(3, [(0, 1, Fraction(1, 3)), (1, 2, Fraction(1, 8)), (0, 2, 2)])
    text = serialize_edge_list(g)
    assert "0 1 1/3" in text and "1 2 0.125" in text
    assert parse_edge_list(text)[0] == g


def test_file_helpers(tmp_path):
    p = tmp_path / "g.txt"
    write_graph(p, cycle(4), {"family": "cycle"})
    g, meta = read_graph(p)
    assert g == cycle(4) and meta["family"] == "cycle"


@pytest.mark.parametrize(
    "value, text",
    [(3, "3"), (Fraction(5, 2), "2.5"), (Fraction(-1, 8), "-0.125"), (Fraction(1, 3), "1/3"),
     (Fraction(6, 3), "2"), (INF, "inf"), (Fraction(1, 20), "0.05")],
)
def test_format_number(value, text):
    assert format_number(value) == text


@given(st.fractions(min_value=Fraction(1, 1000)))
def test_format_number_is_exact(q):
    assert Fraction(format_number(q)) == q


def test_jsonable_conversions():
    assert jsonable({(0, 1): INF, "x": Fraction(3, 1)}) == {"0-1": "inf", "x": 3}
    assert jsonable({3, 1, 2}) == [1, 2, 3]
    assert jsonable((Fraction(1, 2),)) == [0.5]
    with pytest.raises(TypeError):
        jsonable(object())


def test_report_round_trip_and_timing_exclusion():
    r = Report("fragility", input={"path": "g.txt"}, sizes={"edges": 5},
               details={"fragility": {(0, 1): INF, (1, 2): 4}}, timings={"fragility": 0.25})
    text = emit_report(r)
    data = json.loads(text)
    assert data["details"]["fragility"] == {"0-1": "inf", "1-2": 4}
    assert data["schema_version"] == 1
    assert parse_report(text) == r
    other = Report("fragility", input={"path": "g.txt"}, sizes={"edges": 5},
                   details={"fragility": {(0, 1): INF, (1, 2): 4}}, timings={"fragility": 9.0})
    assert other.without_timings() == r.without_timings()
    assert other != r


def test_report_rejects_unknown_schema():
    data = json.loads(emit_report(Report("x")))
    data["schema_version"] = 99
    with pytest.raises(ParseError):
        parse_report(json.dumps(data))
