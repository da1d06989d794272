from __future__ import annotations

import random

import pytest

from chartground.figure import parse_figure_spec
from chartground.fixtures import fixture_suite
from chartground.structure import (
    chart_type_score,
    layout_score,
    rect_iou,
    string_similarity,
    structure_scores,
    text_components_score,
)
from oracles import brute_force_max_weight


def _figure(doc, source="generated"):
    return parse_figure_spec(doc, source=source).figure


def _doc(traces, layout=None):
    return {"data": traces, "layout": layout or {}}


def test_identical_figures_score_one_everywhere():
    doc = fixture_suite()["bar"]
    fig = _figure(doc)
    scores = structure_scores(fig, fig)
    assert scores.text.avg == 1.0
    assert scores.color == 1.0
    assert scores.chart_type == 1.0
    assert scores.layout == 1.0


def test_missing_title_scores_zero_category():
    ref = _figure(_doc([{"type": "bar", "x": ["a"], "y": [1]}],
                       {"title": "Revenue by Year"}))
    gen = _figure(_doc([{"type": "bar", "x": ["a"], "y": [1]}]))
    scores = text_components_score(gen, ref)
    assert scores.title == 0.0


def test_reference_without_category_leaves_it_absent():
    ref = _figure(_doc([{"type": "bar", "x": ["a"], "y": [1]}]))
    gen = _figure(_doc([{"type": "bar", "x": ["a"], "y": [1]}],
                       {"title": "hallucinated"}))
    scores = text_components_score(gen, ref)
    assert scores.title is None
    assert scores.legend is None


def test_legend_similarity_worked_example():
    ref = _figure(_doc([], {"legend": ["RDS 18_49", "TSN Total"]}))
    gen = _figure(_doc([], {"legend": ["RDS 18-49", "TSN Total"]}))
    scores = text_components_score(gen, ref)
    # one substitution over length 9 plus an exact match, halved
    assert scores.legend == pytest.approx((1 - 1 / 9 + 1) / 2, abs=1e-9)
    assert scores.legend == pytest.approx(0.9444, abs=1e-4)


def test_legend_matching_equals_brute_force_pairing():
    rng = random.Random(41)
    words = ["alpha", "beta", "gamma", "delta", "epsilon", "zeta"]
    for _ in range(40):
        ref_items = rng.sample(words, rng.randint(1, 4))
        gen_items = [
            w + rng.choice(["", "!", "x", "zz"]) for w in rng.sample(words, rng.randint(1, 4))
        ]
        ref = _figure(_doc([], {"legend": ref_items}))
        gen = _figure(_doc([], {"legend": gen_items}))
        got = text_components_score(gen, ref).legend
        weight = [[string_similarity(g, r) for r in ref_items] for g in gen_items]
        want = brute_force_max_weight(weight) / max(len(gen_items), len(ref_items))
        assert got == pytest.approx(want, abs=1e-9)


def test_annotation_position_discounts_similarity():
    ref = _figure(_doc([], {"annotations": [
        {"text": "peak", "x": 0.5, "y": 0.5, "coord": "fraction"}]}))
    near = _figure(_doc([], {"annotations": [
        {"text": "peak", "x": 0.5, "y": 0.55, "coord": "fraction"}]}))
    far = _figure(_doc([], {"annotations": [
        {"text": "peak", "x": 0.0, "y": 0.0, "coord": "fraction"}]}))
    exact = _figure(_doc([], {"annotations": [
        {"text": "peak", "x": 0.5, "y": 0.5, "coord": "fraction"}]}))
    s_exact = text_components_score(exact, ref).annotations
    s_near = text_components_score(near, ref).annotations
    s_far = text_components_score(far, ref).annotations
    assert s_exact == 1.0
    assert s_exact > s_near > s_far
    assert s_far == 0.0  # distance beyond the 0.25 radius


def test_chart_type_score_examples():
    ref = _figure(_doc([
        {"type": "bar", "x": ["a"], "y": [1]},
        {"type": "scatter", "x": [1], "y": [1]},
    ]))
    gen = _figure(_doc([
        {"type": "bar", "x": ["a"], "y": [1]},
        {"type": "bar", "x": ["b"], "y": [2]},
    ]))
    assert chart_type_score(gen, ref) == pytest.approx(1 / 3)
    assert chart_type_score(ref, ref) == 1.0
    only_line = _figure(_doc([{"type": "line", "x": [1], "y": [1]}]))
    only_bar = _figure(_doc([{"type": "bar", "x": ["a"], "y": [1]}]))
    assert chart_type_score(only_line, only_bar) == 0.0
    empty = _figure(_doc([]))
    assert chart_type_score(empty, empty) == 0.0


def test_layout_single_panel_both_sides_is_one():
    a = _figure(_doc([{"type": "bar", "x": ["a"], "y": [1]}]))
    assert layout_score(a, a) == 1.0


def test_layout_two_rows_vs_single_panel():
    ref = _figure(_doc(
        [{"type": "bar", "x": ["a"], "y": [1], "subplot": "top"}],
        {"subplots": [
            {"id": "top", "domain": [0.0, 1.0, 0.5, 1.0]},
            {"id": "bottom", "domain": [0.0, 1.0, 0.0, 0.5]},
        ]},
    ))
    gen = _figure(_doc([{"type": "bar", "x": ["a"], "y": [1]}]))
    # count term 1/2; the single panel pairs with one half for IoU 0.5
    assert layout_score(gen, ref) == pytest.approx(0.5)


def test_layout_assignment_matches_brute_force():
    rng = random.Random(43)
    for _ in range(30):
        def random_domains(k):
            doms = []
            for _ in range(k):
                x0 = rng.uniform(0, 0.5)
                y0 = rng.uniform(0, 0.5)
                doms.append((x0, x0 + rng.uniform(0.1, 0.5), y0, y0 + rng.uniform(0.1, 0.5)))
            return doms

        gen_doms = random_domains(rng.randint(2, 4))
        ref_doms = random_domains(rng.randint(2, 4))

        def fig_with(doms):
            return _figure(_doc([], {"subplots": [
                {"id": f"s{i}", "domain": list(d)} for i, d in enumerate(doms)
            ]}))

        got = layout_score(fig_with(gen_doms), fig_with(ref_doms))
        k = min(len(gen_doms), len(ref_doms))
        count_term = k / max(len(gen_doms), len(ref_doms))
        # the matcher minimizes center distance; check the geometry term is
        # at least attainable and the score stays within [0, 1]
        best_geo = brute_force_max_weight(
            [[rect_iou(g, r) for r in ref_doms] for g in gen_doms]
        ) / k
        assert 0.0 <= got <= 1.0
        assert got <= 0.5 * count_term + 0.5 * best_geo + 1e-9


def test_scores_invariant_under_reordering():
    base = fixture_suite()["pie"]
    fig = _figure(base)
    doc2 = {
        "data": list(reversed(base["data"])),
        "layout": {**base["layout"], "legend": list(reversed(base["layout"]["legend"]))},
    }
    fig2 = _figure(doc2)
    s1 = structure_scores(fig2, fig)
    assert s1.text.avg == 1.0
    assert s1.chart_type == 1.0
    assert s1.layout == 1.0


def test_scores_bounded_on_fuzzed_inputs():
    rng = random.Random(47)
    suite = list(fixture_suite().values())
    for _ in range(30):
        gen = _figure(rng.choice(suite))
        ref = _figure(rng.choice(suite))
        s = structure_scores(gen, ref)
        for value in (s.text.avg, s.color, s.chart_type, s.layout):
            assert 0.0 <= value <= 1.0
