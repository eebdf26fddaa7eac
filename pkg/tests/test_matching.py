import pytest
from hypothesis import given, strategies as st

from labeleval import (
    MatchResult,
    VocabularyMismatchError,
    aggregate,
    audit_records,
    match_image,
    match_sets,
    metrics_from_tallies,
)
from labeleval.model import BoundingBox, ObjectLabel, corners_to_center
from conftest import label, label_set, random_label, rng_for
from oracles import greedy_match_ref, optimal_tp


def from_corners(x0, y0, x1, y1, class_index=0, confidence=None):
    return ObjectLabel(
        box=corners_to_center(x0, y0, x1, y1),
        class_index=class_index,
        confidence=confidence,
    )


class TestMatchImage:
    def test_identity(self):
        refs = [label(10 * i, 10, 5, 5, class_index=i % 2) for i in range(4)]
        preds = [
            ObjectLabel(box=r.box, class_index=r.class_index, confidence=1.0)
            for r in refs
        ]
        result = match_image(preds, refs, 0.5)
        assert (result.tp, result.fp, result.fn) == (4, 0, 0)

    def test_class_mismatch_is_fp_and_fn(self):
        ref = label(5, 5, 4, 4, class_index=1)
        pred = label(5, 5, 4, 4, class_index=0, confidence=0.9)
        result = match_image([pred], [ref], 0.5)
        assert (result.tp, result.fp, result.fn) == (0, 1, 1)

    def test_greedy_two_predictions_share_two_references(self):
        # On a common 0..10 vertical extent, IoU of [0,a] vs [0,b] is a/b.
        r1 = from_corners(0, 0, 100, 10)
        r2 = from_corners(0, 0, 90 / 0.55, 10)
        p1 = from_corners(0, 0, 60, 10, confidence=0.9)   # IoU 0.6 with r1
        p2 = from_corners(0, 0, 90, 10, confidence=0.8)   # 0.9 with r1, 0.55 with r2
        result = match_image([p1, p2], [r1, r2], 0.5, record_pairs=True)
        assert (result.tp, result.fp, result.fn) == (2, 0, 0)
        assert [(pi, ri) for pi, ri, _ in result.pairs] == [(0, 0), (1, 1)]
        assert optimal_tp([p1, p2], [r1, r2], 0.5) == 2

    def test_strict_iou_threshold(self):
        # IoU exactly 0.5 must not match.
        ref = from_corners(0, 0, 10, 10)
        pred = from_corners(0, 0, 10, 5, confidence=0.9)
        assert match_image([pred], [ref], 0.5).tp == 0
        assert match_image([pred], [ref], 0.49).tp == 1

    def test_one_reference_matched_at_most_once(self):
        ref = from_corners(0, 0, 10, 10)
        preds = [
            from_corners(0, 0, 10, 10, confidence=0.9),
            from_corners(0, 0, 10, 10, confidence=0.8),
        ]
        result = match_image(preds, [ref], 0.5)
        assert (result.tp, result.fp, result.fn) == (1, 1, 0)

    def test_missing_confidences_rank_by_input_order(self):
        ref = from_corners(0, 0, 10, 10)
        first = from_corners(0, 0, 10, 9)
        second = from_corners(0, 0, 10, 10)
        result = match_image([first, second], [ref], 0.5, record_pairs=True)
        assert result.pairs == ((0, 0, pytest.approx(0.9)),)

    def test_iou_tie_breaks_to_lower_reference_index(self):
        refs = [from_corners(0, 0, 10, 10), from_corners(0, 0, 10, 10)]
        pred = from_corners(0, 0, 10, 10, confidence=0.9)
        result = match_image([pred], refs, 0.5, record_pairs=True)
        assert result.pairs[0][1] == 0

    def test_reference_permutation_invariant_tallies(self):
        rng = rng_for(3)
        for _ in range(50):
            preds = [random_label(rng) for _ in range(6)]
            refs = [random_label(rng) for _ in range(6)]
            base = match_image(preds, refs, 0.5)
            shuffled = list(refs)
            rng.shuffle(shuffled)
            again = match_image(preds, shuffled, 0.5)
            assert (base.tp, base.fp, base.fn) == (again.tp, again.fp, again.fn)

    def test_tally_conservation(self):
        rng = rng_for(4)
        for _ in range(100):
            preds = [random_label(rng) for _ in range(int(rng.integers(0, 9)))]
            refs = [random_label(rng) for _ in range(int(rng.integers(0, 9)))]
            r = match_image(preds, refs, 0.5)
            assert r.tp + r.fp == len(preds)
            assert r.tp + r.fn == len(refs)
            per_class_sum = tuple(
                sum(v[i] for v in r.per_class.values()) for i in range(3)
            )
            assert per_class_sum == (r.tp, r.fp, r.fn)

    def test_scale_invariance(self):
        rng = rng_for(5)
        for _ in range(30):
            preds = [random_label(rng) for _ in range(5)]
            refs = [random_label(rng) for _ in range(5)]
            base = match_image(preds, refs, 0.5)
            s = 7.25
            scale = lambda lb: ObjectLabel(
                box=BoundingBox(
                    lb.box.cx * s, lb.box.cy * s, lb.box.w * s, lb.box.h * s
                ),
                class_index=lb.class_index,
                confidence=lb.confidence,
            )
            scaled = match_image(
                [scale(p) for p in preds], [scale(r) for r in refs], 0.5
            )
            assert (base.tp, base.fp, base.fn) == (scaled.tp, scaled.fp, scaled.fn)

    def test_agrees_with_reference_implementation(self):
        rng = rng_for(6)
        for _ in range(200):
            preds = [random_label(rng) for _ in range(int(rng.integers(0, 9)))]
            refs = [random_label(rng) for _ in range(int(rng.integers(0, 9)))]
            ours = match_image(preds, refs, 0.5, record_pairs=True)
            tp, fp, fn, pairs = greedy_match_ref(preds, refs, 0.5)
            assert (ours.tp, ours.fp, ours.fn) == (tp, fp, fn)
            assert sorted((pi, ri) for pi, ri, _ in ours.pairs) == pairs

    def test_never_beats_optimal_assignment(self):
        rng = rng_for(7)
        for _ in range(200):
            preds = [random_label(rng) for _ in range(int(rng.integers(0, 9)))]
            refs = [random_label(rng) for _ in range(int(rng.integers(0, 9)))]
            assert match_image(preds, refs, 0.5).tp <= optimal_tp(preds, refs, 0.5)


class TestAggregate:
    def test_empty(self):
        r = aggregate([])
        assert (r.tp, r.fp, r.fn) == (0, 0, 0)

    def test_sums(self):
        r = aggregate(
            [
                MatchResult(tp=1, fp=0, fn=0, per_class={0: (1, 0, 0)}),
                MatchResult(tp=0, fp=1, fn=2, per_class={0: (0, 1, 1), 1: (0, 0, 1)}),
            ]
        )
        assert (r.tp, r.fp, r.fn) == (1, 1, 2)
        assert r.per_class == {0: (1, 1, 1), 1: (0, 0, 1)}

    def test_permutation_invariant(self):
        parts = [
            MatchResult(tp=i, fp=i * 2, fn=i % 3, per_class={i: (i, 0, 0)})
            for i in range(5)
        ]
        forward = aggregate(parts)
        backward = aggregate(reversed(parts))
        assert forward == backward


class TestMetrics:
    def test_perfect(self):
        p = metrics_from_tallies(MatchResult(tp=1, fp=0, fn=0))
        assert (p.precision, p.recall, p.f1) == (1.0, 1.0, 1.0)

    def test_zero_convention(self):
        p = metrics_from_tallies(MatchResult(tp=0, fp=0, fn=0))
        assert (p.precision, p.recall, p.f1) == (0.0, 0.0, 0.0)

    def test_empty_predictions_do_not_score_precision(self):
        p = metrics_from_tallies(MatchResult(tp=0, fp=0, fn=5))
        assert (p.precision, p.recall, p.f1) == (0.0, 0.0, 0.0)

    def test_known_triple(self):
        # precision 0.596, recall 0.893 -> f1 = 2PR/(P+R) ~ 0.715
        p, r = 0.596, 0.893
        assert 2 * p * r / (p + r) == pytest.approx(0.715, abs=5e-4)

    @given(
        st.integers(min_value=0, max_value=10000),
        st.integers(min_value=0, max_value=10000),
        st.integers(min_value=0, max_value=10000),
    )
    def test_f1_dual_form_identity(self, tp, fp, fn):
        point = metrics_from_tallies(MatchResult(tp=tp, fp=fp, fn=fn))
        if point.precision + point.recall > 0:
            harmonic = (
                2 * point.precision * point.recall
                / (point.precision + point.recall)
            )
            assert point.f1 == pytest.approx(harmonic, abs=1e-12)
        else:
            assert point.f1 == 0.0


class TestMatchSets:
    def test_vocabulary_mismatch(self):
        a = label_set({"x": [label(1, 1, 2, 2, confidence=0.5)]}, n_classes=2)
        b = label_set({"x": [label(1, 1, 2, 2)]}, n_classes=3)
        with pytest.raises(VocabularyMismatchError):
            match_sets(a, b)

    def test_images_union_is_covered(self):
        preds = label_set({"x": [label(5, 5, 4, 4, confidence=0.9)], "y": []})
        refs = label_set({"x": [], "z": [label(5, 5, 4, 4)]})
        r = match_sets(preds, refs)
        assert (r.tp, r.fp, r.fn) == (0, 1, 1)

    def test_audit_records_shape(self):
        shared = label(5, 5, 4, 4, confidence=0.8)
        preds = label_set({"x": [shared]})
        refs = label_set({"x": [label(5, 5, 4, 4)]})
        records = audit_records(preds, refs)
        assert records == [
            {
                "image_id": "x",
                "prediction_index": 0,
                "reference_index": 0,
                "iou": 1.0,
            }
        ]
