from __future__ import annotations

import json

import pytest

from chartground.figure import (
    ChartType,
    MalformedDocument,
    UnsupportedFigure,
    parse_figure_spec,
    serialize_figure_spec,
    validate_figure_spec,
)
from chartground.fixtures import fixture_suite, write_fixture_suite


def test_chart_type_enum_is_closed():
    assert len(list(ChartType)) == 30
    with pytest.raises(ValueError):
        ChartType("ridgeline")


def test_parse_minimal_bar_document():
    doc = {"data": [{"type": "bar", "name": "A", "x": ["Q1"], "y": [3]}], "layout": {}}
    parsed = parse_figure_spec(doc)
    assert len(parsed.figure.traces) == 1
    trace = parsed.figure.traces[0]
    assert trace.chart_type is ChartType.BAR
    assert trace.fields["x"] == ("Q1",)
    assert trace.fields["y"] == (3.0,)
    assert not parsed.rejections


def test_parse_empty_generated_document():
    parsed = parse_figure_spec({"data": [], "layout": {}}, source="generated")
    assert parsed.figure.traces == ()


def test_unknown_trace_type_is_rejected_not_fatal():
    doc = {
        "data": [
            {"type": "ridgeline", "x": [1], "y": [2]},
            {"type": "bar", "name": "A", "x": ["Q1"], "y": [3]},
        ],
        "layout": {},
    }
    parsed = parse_figure_spec(doc)
    assert len(parsed.figure.traces) == 1
    assert parsed.rejections == [
        {"index": 0, "type": "ridgeline", "reason": "unknown trace type"}
    ]


def test_ground_truth_requires_recognizable_traces():
    with pytest.raises(UnsupportedFigure):
        parse_figure_spec({"data": [{"type": "nope"}], "layout": {}}, source="ground_truth")


def test_malformed_documents_raise():
    with pytest.raises(MalformedDocument):
        parse_figure_spec(b"not json{")
    with pytest.raises(MalformedDocument):
        parse_figure_spec({"layout": {}})
    with pytest.raises(MalformedDocument):
        parse_figure_spec({"data": {}, "layout": {}})


def test_non_finite_numbers_become_null_and_are_noted():
    doc = json.loads('{"data": [{"type": "scatter", "x": [1, NaN], "y": [2, 3]}], "layout": {}}')
    parsed = parse_figure_spec(doc)
    assert parsed.figure.traces[0].fields["x"] == (1.0, None)
    assert any("non-finite" in n for n in parsed.notes)


def test_missing_trace_names_autofill_by_index():
    doc = {
        "data": [
            {"type": "scatter", "x": [1], "y": [1]},
            {"type": "bar", "name": "  ", "x": ["a"], "y": [1]},
        ],
        "layout": {},
    }
    parsed = parse_figure_spec(doc)
    assert parsed.figure.traces[0].name == "trace0"
    assert parsed.figure.traces[1].name == "trace1"


def test_validate_reports_ragged_arrays():
    doc = {"data": [{"type": "bar", "x": ["a", "b", "c"], "y": [1, 2]}], "layout": {}}
    violations = validate_figure_spec(parse_figure_spec(doc).figure)
    assert [v.kind for v in violations] == ["RaggedArrays"]
    assert violations[0].trace_index == 0


def test_validate_accepts_well_formed_candlestick():
    doc = {
        "data": [{
            "type": "candlestick",
            "name": "tick",
            "x": ["d1", "d2", "d3", "d4", "d5"],
            "open": [1, 2, 3, 4, 5],
            "high": [2, 3, 4, 5, 6],
            "low": [0, 1, 2, 3, 4],
            "close": [1.5, 2.5, 3.5, 4.5, 5.5],
        }],
        "layout": {},
    }
    assert validate_figure_spec(parse_figure_spec(doc).figure) == []


def test_validate_reports_unresolved_subplot():
    doc = {
        "data": [{"type": "bar", "x": ["a"], "y": [1], "subplot": "s9"}],
        "layout": {"subplots": [{"id": "s1", "domain": [0, 1, 0, 1]}]},
    }
    violations = validate_figure_spec(parse_figure_spec(doc).figure)
    assert [v.kind for v in violations] == ["UnresolvedSubplot"]


def test_fixture_suite_covers_all_types_and_round_trips():
    suite = fixture_suite()
    assert set(suite) == {t.value for t in ChartType}
    for name, doc in suite.items():
        parsed = parse_figure_spec(doc, source="ground_truth")
        assert not parsed.rejections, name
        assert validate_figure_spec(parsed.figure) == [], name
        reparsed = parse_figure_spec(
            serialize_figure_spec(parsed.figure), source="ground_truth"
        )
        assert reparsed.figure == parsed.figure, name


def test_write_fixture_suite(tmp_path):
    paths = write_fixture_suite(tmp_path)
    assert len(paths) == 30
    for p in paths:
        assert p.suffix == ".json"
        parsed = parse_figure_spec(p.read_bytes(), source="ground_truth")
        assert parsed.figure.traces
