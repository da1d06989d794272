from __future__ import annotations

import random

import numpy as np
import pytest

from chartground.figure import parse_figure_spec
from chartground.fixtures import fixture_suite, sample_document
from chartground.figure import ChartType
from chartground.report import (
    DimensionMismatch,
    SampleBundle,
    ZeroVector,
    aggregate,
    clip_similarity,
    dominant_chart_type,
    read_embedding,
    score_sample,
    write_embedding,
)


def _figure(doc, source="generated"):
    return parse_figure_spec(doc, source=source).figure


def _self_bundle(name="bar", with_embeddings=False, sample_id="s1"):
    doc = fixture_suite()[name]
    gt = _figure(doc, "ground_truth")
    gen = _figure(doc, "generated")
    embeddings = None
    if with_embeddings:
        vec = np.array([0.3, 0.4, 0.5])
        embeddings = (vec, vec.copy())
    return SampleBundle(
        id=sample_id, gt_figure=gt, gen_figure=gen, gen_status="ok",
        embeddings=embeddings,
    )


def test_clip_similarity_examples():
    v = np.array([1.0, 2.0, 3.0])
    assert clip_similarity(v, v) == pytest.approx(100.0)
    assert clip_similarity(np.array([1.0, 0.0]), np.array([0.0, 1.0])) == 0.0
    assert clip_similarity(v, -v) == 0.0


def test_clip_similarity_errors():
    with pytest.raises(DimensionMismatch):
        clip_similarity(np.ones(3), np.ones(4))
    with pytest.raises(ZeroVector):
        clip_similarity(np.zeros(3), np.ones(3))


def test_embedding_file_round_trip(tmp_path):
    path = tmp_path / "vec.emb"
    write_embedding(str(path), [0.25, -1.5, 3.0])
    raw = path.read_bytes()
    assert raw.startswith(b"3\n")
    assert len(raw) == 2 + 12
    got = read_embedding(str(path))
    assert got.tolist() == [0.25, -1.5, 3.0]


def test_self_comparison_scores_100():
    report = score_sample(_self_bundle(with_embeddings=True))
    assert report.passed
    assert report.overall == pytest.approx(100.0)
    assert report.clip == pytest.approx(100.0)
    assert report.structure.text.avg == 1.0
    assert report.data_fidelity["strict"].iou == 1.0


def test_exec_error_zeroes_everything():
    doc = fixture_suite()["bar"]
    bundle = SampleBundle(
        id="s", gt_figure=_figure(doc, "ground_truth"),
        gen_figure=None, gen_status="exec_error",
    )
    report = score_sample(bundle)
    assert not report.passed
    assert report.overall == 0.0
    assert report.structure.color == 0.0
    assert report.data_fidelity["high"].f1 == 0.0
    assert report.structure.text.title == 0.0  # reference has a title


def test_bundle_invariant_enforced():
    doc = fixture_suite()["bar"]
    with pytest.raises(ValueError):
        SampleBundle(id="s", gt_figure=_figure(doc), gen_figure=None, gen_status="ok")
    with pytest.raises(ValueError):
        SampleBundle(
            id="s", gt_figure=_figure(doc), gen_figure=_figure(doc),
            gen_status="timeout",
        )


def test_overall_without_embeddings_averages_five_components():
    report = score_sample(_self_bundle(with_embeddings=False))
    assert report.clip is None
    assert report.overall == pytest.approx(100.0)


def test_overall_equal_weights_is_arithmetic_mean():
    rng = random.Random(71)
    suite = fixture_suite()
    names = sorted(suite)
    for _ in range(20):
        ref_doc = suite[rng.choice(names)]
        gen_doc = suite[rng.choice(names)]
        gt = _figure(ref_doc, "ground_truth")
        gen = _figure(gen_doc, "generated")
        vec_a = np.array([rng.random() + 0.1 for _ in range(4)])
        vec_b = np.array([rng.random() + 0.1 for _ in range(4)])
        bundle = SampleBundle(
            id="s", gt_figure=gt, gen_figure=gen, gen_status="ok",
            embeddings=(vec_a, vec_b),
        )
        report = score_sample(bundle)
        t = report.structure.text
        components = []
        if any(v is not None for v in (t.legend, t.title, t.axis_label, t.annotations)):
            components.append(t.avg)
        components += [
            report.structure.color,
            report.structure.chart_type,
            report.structure.layout,
            report.data_fidelity["slight"].iou,
            report.clip / 100.0,
        ]
        assert report.overall == pytest.approx(
            100.0 * sum(components) / len(components), abs=1e-9
        )


def test_overall_monotone_in_weights_shift():
    # weighting data higher must not raise the score of a data-poor sample
    ref = _figure(fixture_suite()["bar"], "ground_truth")
    gen_doc = {
        "data": [{"type": "bar", "name": "revenue", "x": ["Q1", "Q2", "Q3"],
                  "y": [999.0, 999.0, 999.0], "colors": ["#2ca02c"]}],
        "layout": fixture_suite()["bar"]["layout"],
    }
    gen = _figure(gen_doc)
    bundle = SampleBundle(id="s", gt_figure=ref, gen_figure=gen, gen_status="ok")
    base = score_sample(bundle)
    data_heavy = score_sample(bundle, weights={"data": 10.0})
    assert data_heavy.overall < base.overall


def test_aggregate_pass_rate_and_zero_contribution():
    reports = [
        score_sample(_self_bundle(sample_id="a")),
        score_sample(_self_bundle(sample_id="b")),
        score_sample(
            SampleBundle(
                id="c", gt_figure=_figure(fixture_suite()["bar"], "ground_truth"),
                gen_figure=None, gen_status="timeout",
            )
        ),
    ]
    types = [ChartType.BAR, ChartType.BAR, ChartType.BAR]
    bench = aggregate(reports, types)
    assert bench.aggregates["pass_rate"] == pytest.approx(66.67, abs=0.01)
    assert bench.aggregates["overall"] == pytest.approx(200.0 / 3.0, abs=1e-9)
    assert bench.per_type["bar"]["count"] == 3.0


def test_aggregate_is_permutation_invariant():
    reports = [
        score_sample(_self_bundle(sample_id="a")),
        score_sample(
            SampleBundle(
                id="b", gt_figure=_figure(fixture_suite()["pie"], "ground_truth"),
                gen_figure=None, gen_status="exec_error",
            )
        ),
        score_sample(_self_bundle("line", sample_id="c")),
    ]
    types = [ChartType.BAR, ChartType.PIE, ChartType.LINE]
    base = aggregate(reports, types).aggregates
    flipped = aggregate(list(reversed(reports)), list(reversed(types))).aggregates
    assert base == flipped


def test_single_type_corpus_per_type_equals_corpus():
    reports = [score_sample(_self_bundle(sample_id=f"s{i}")) for i in range(3)]
    bench = aggregate(reports, [ChartType.BAR] * 3)
    assert bench.per_type["bar"] == bench.aggregates


def test_dominant_chart_type():
    doc = {
        "data": [
            {"type": "scatter", "x": [1], "y": [1]},
            {"type": "bar", "x": ["a"], "y": [1]},
            {"type": "bar", "x": ["b"], "y": [2]},
        ],
        "layout": {},
    }
    assert dominant_chart_type(_figure(doc)) is ChartType.BAR
    assert dominant_chart_type(_figure(sample_document(ChartType.PIE))) is ChartType.PIE
