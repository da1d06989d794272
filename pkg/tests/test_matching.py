from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chartground.extract import TupleSet
from chartground.matching import (
    FidelityMetrics,
    MatchResult,
    Tolerance,
    coerce_number,
    fidelity_metrics,
    field_match,
    levenshtein,
    match_tuple_sets,
    match_tuples,
)
from oracles import brute_force_max_matching


def test_tolerance_bindings_are_fixed():
    assert (Tolerance.STRICT.j_max, Tolerance.STRICT.e_max) == (0, 0.0)
    assert (Tolerance.SLIGHT.j_max, Tolerance.SLIGHT.e_max) == (3, 0.05)
    assert (Tolerance.HIGH.j_max, Tolerance.HIGH.e_max) == (5, 0.10)


def test_levenshtein_basics():
    assert levenshtein("", "") == 0
    assert levenshtein("abc", "abc") == 0
    assert levenshtein("GD29", "GD 29") == 1
    assert levenshtein("kitten", "sitting") == 3


@given(st.text(max_size=12), st.text(max_size=12))
@settings(max_examples=200, deadline=None)
def test_levenshtein_metric_properties(a, b):
    d = levenshtein(a, b)
    assert d == levenshtein(b, a)
    assert (d == 0) == (a == b)
    assert d <= max(len(a), len(b))


def test_coerce_number_normalizations():
    assert coerce_number("58,000") == 58000.0
    assert coerce_number("$1,234.5") == 1234.5
    assert coerce_number("12%") == 12.0
    assert coerce_number("-10,000.0") == -10000.0
    assert coerce_number("1e3") == 1000.0
    assert coerce_number("AL29") is None
    assert coerce_number("") is None
    assert coerce_number("12,34") is None


def test_field_match_string_examples():
    assert field_match("GD29", "GD 29", Tolerance.SLIGHT)
    assert not field_match("GD29", "GD 29", Tolerance.STRICT)
    assert field_match("GD29", "gd29", Tolerance.SLIGHT, case_insensitive=True)


def test_field_match_numeric_examples():
    # 4% relative error against the 100,000 ground-truth value
    assert field_match(104000.0, 100000.0, Tolerance.SLIGHT)
    assert not field_match(104000.0, 100000.0, Tolerance.STRICT)
    assert field_match(104000.0, 100000.0, Tolerance.HIGH)


def test_field_match_mixed_kind_coercion():
    assert field_match("58,000", 58000.0, Tolerance.STRICT)
    assert field_match("$58,000", 58000.0, Tolerance.STRICT)
    assert not field_match("about 58k", 58000.0, Tolerance.HIGH)


def test_field_match_zero_ground_truth_uses_absolute_bound():
    assert field_match(0.04, 0.0, Tolerance.SLIGHT)
    assert not field_match(0.06, 0.0, Tolerance.SLIGHT)
    assert not field_match(0.01, 0.0, Tolerance.STRICT)


def test_field_match_null_matches_nothing():
    assert not field_match(None, None, Tolerance.HIGH)
    assert not field_match(None, 1.0, Tolerance.HIGH)
    assert not field_match("a", None, Tolerance.HIGH)


@given(st.floats(allow_nan=False, allow_infinity=False, width=32))
@settings(max_examples=200, deadline=None)
def test_field_match_numeric_reflexive(x):
    for level in Tolerance:
        assert field_match(float(x), float(x), level)


@given(st.text(max_size=30))
@settings(max_examples=200, deadline=None)
def test_field_match_string_reflexive(s):
    for level in Tolerance:
        assert field_match(s, s, level)


def _tset(tuples, arity):
    return TupleSet(chart_type=None, arity=arity, tuples=list(tuples))


def test_identity_matching_at_every_level():
    tuples = [("a", 1.0, 2.0), ("b", 2.0, 3.0), ("a", 1.0, 2.0)]
    for level in Tolerance:
        m = match_tuple_sets(_tset(tuples, 3), _tset(tuples, 3), level)
        assert m.n_m == m.n_p == m.n_gt == 3


def test_empty_prediction_matches_nothing():
    m = match_tuple_sets(_tset([], 3), _tset([("a", 1.0, 2.0)], 3), Tolerance.HIGH)
    assert (m.n_m, m.n_p, m.n_gt) == (0, 0, 1)


def test_arity_mismatch_scores_zero_with_note():
    m = match_tuple_sets(
        _tset([("a", 1.0)], 2), _tset([("a", 1.0, 2.0)], 3), Tolerance.HIGH
    )
    assert m.n_m == 0
    assert "arity mismatch" in m.note


def _random_tuple(rng: random.Random) -> tuple:
    name = rng.choice(["a", "b", "c"])
    return (name, float(rng.randint(0, 5)), rng.choice(["x", "xy", "xyz"]))


def _perturb(rng: random.Random, t: tuple) -> tuple:
    name, num, text = t
    if rng.random() < 0.5:
        num = num * (1 + rng.choice([0.0, 0.03, 0.08, 0.2]))
    if rng.random() < 0.5:
        text = text + rng.choice(["", "!", "!!!", "!!!!!!"])
    return (name, num, text)


def test_matching_equals_brute_force_on_random_instances():
    rng = random.Random(97)
    for _ in range(200):
        gt = [_random_tuple(rng) for _ in range(rng.randint(0, 6))]
        pred = [_perturb(rng, t) for t in gt[: rng.randint(0, len(gt))]]
        pred += [_random_tuple(rng) for _ in range(rng.randint(0, 3))]
        rng.shuffle(pred)
        for level in Tolerance:
            adjacency = [
                [
                    all(field_match(p[k], q[k], level) for k in range(3))
                    for q in gt
                ]
                for p in pred
            ]
            expected = brute_force_max_matching(adjacency) if pred and gt else 0
            got = match_tuples(pred, gt, level)
            assert got.n_m == expected


def test_matching_cardinality_invariant_under_permutation():
    rng = random.Random(101)
    gt = [_random_tuple(rng) for _ in range(6)]
    pred = [_perturb(rng, t) for t in gt[:4]] + [_random_tuple(rng)]
    base = match_tuples(pred, gt, Tolerance.SLIGHT).n_m
    for _ in range(10):
        p2, g2 = list(pred), list(gt)
        rng.shuffle(p2)
        rng.shuffle(g2)
        assert match_tuples(p2, g2, Tolerance.SLIGHT).n_m == base


def test_tolerance_monotonicity_fuzzed():
    rng = random.Random(103)
    for _ in range(300):
        gt = [_random_tuple(rng) for _ in range(rng.randint(1, 5))]
        pred = [_perturb(rng, t) for t in gt] + [
            _random_tuple(rng) for _ in range(rng.randint(0, 2))
        ]
        n_strict = match_tuples(pred, gt, Tolerance.STRICT).n_m
        n_slight = match_tuples(pred, gt, Tolerance.SLIGHT).n_m
        n_high = match_tuples(pred, gt, Tolerance.HIGH).n_m
        assert n_strict <= n_slight <= n_high


def test_assignment_is_injective_both_sides():
    rng = random.Random(107)
    gt = [_random_tuple(rng) for _ in range(5)]
    pred = [_perturb(rng, t) for t in gt]
    m = match_tuples(pred, gt, Tolerance.HIGH)
    lefts = [i for i, _ in m.assignment]
    rights = [j for _, j in m.assignment]
    assert len(set(lefts)) == len(lefts) == m.n_m
    assert len(set(rights)) == len(rights) == m.n_m


def test_fidelity_formula_examples():
    m = fidelity_metrics(MatchResult(2, 3, 4))
    assert m.precision == pytest.approx(2 / 3, abs=1e-4)
    assert m.recall == pytest.approx(0.5)
    assert m.f1 == pytest.approx(0.5714, abs=1e-4)
    assert m.iou == pytest.approx(0.4)
    perfect = fidelity_metrics(MatchResult(5, 5, 5))
    assert perfect == FidelityMetrics(1.0, 1.0, 1.0, 1.0)
    zero = fidelity_metrics(MatchResult(0, 4, 4))
    assert zero == FidelityMetrics(0.0, 0.0, 0.0, 0.0)


def test_fidelity_vacuous_agreement_and_zero_denominators():
    assert fidelity_metrics(MatchResult(0, 0, 0)) == FidelityMetrics(1.0, 1.0, 1.0, 1.0)
    m = fidelity_metrics(MatchResult(0, 0, 3))
    assert m == FidelityMetrics(0.0, 0.0, 0.0, 0.0)


def test_iou_f1_identity_and_swap_symmetry():
    rng = random.Random(109)
    for _ in range(1000):
        n_p = rng.randint(0, 40)
        n_gt = rng.randint(0, 40)
        n_m = rng.randint(0, min(n_p, n_gt))
        result = MatchResult(n_m, n_p, n_gt)
        m = fidelity_metrics(result)
        if m.f1 > 0:
            assert m.iou == pytest.approx(m.f1 / (2 - m.f1), abs=1e-12)
        swapped = fidelity_metrics(result.swapped())
        assert swapped.precision == pytest.approx(m.recall, abs=1e-12)
        assert swapped.recall == pytest.approx(m.precision, abs=1e-12)
        assert swapped.f1 == pytest.approx(m.f1, abs=1e-12)
        assert swapped.iou == pytest.approx(m.iou, abs=1e-12)
