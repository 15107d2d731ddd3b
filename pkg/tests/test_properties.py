"""Property-based tests for the measure invariants."""

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from sqfr import (
    GroupedScores,
    csqfr,
    discard_curve,
    evaluate_component,
    gini_coefficient,
    lwm_aggregate,
    mdg,
    relevant_thresholds,
    sqfr,
)

# zero or comfortably normal floats: scaling by c in [1e-3, 1e3] must not
# underflow the inputs themselves
finite_scores = st.one_of(
    st.just(0.0), st.floats(min_value=1e-6, max_value=1000.0, allow_nan=False)
)
aggregate_values = st.lists(finite_scores, min_size=2, max_size=12)


def grouped_strategy(max_groups=5, max_size=30, integers=False):
    base = (
        st.integers(min_value=0, max_value=100).map(float)
        if integers
        else st.floats(min_value=0.0, max_value=100.0, allow_nan=False)
    )
    group = st.lists(base, min_size=1, max_size=max_size)
    return st.lists(group, min_size=2, max_size=max_groups).map(
        lambda gs: GroupedScores("q", {f"g{i}": g for i, g in enumerate(gs)})
    )


def gini_literal(values):
    """The defining double loop over all ordered pairs, self-pairs included.

    Normalized by 2*n*sum, which equals the defining 2*n^2*mean exactly but
    avoids the subnormal underflow of computing the mean first.
    """
    values = list(map(float, values))
    n = len(values)
    s = sum(values)
    if s == 0:
        return 0.0
    total = sum(abs(a - b) for a in values for b in values)
    return (n / (n - 1)) * total / (2 * n * s)


def mdg_recount(grouped, thresholds):
    """Direct recount of the discard gap over every (group, threshold) pair."""
    gaps = []
    for t in thresholds:
        fractions = [
            sum(1 for q in scores if q < t) / len(scores)
            for scores in grouped.groups.values()
        ]
        gaps.append(max(fractions) - min(fractions))
    return sum(gaps) / len(gaps)


class TestGiniProperties:
    @given(aggregate_values)
    @settings(max_examples=300)
    def test_matches_literal_double_loop(self, values):
        assert gini_coefficient(values) == pytest.approx(gini_literal(values), rel=1e-12, abs=1e-15)

    @given(aggregate_values, st.floats(min_value=1e-3, max_value=1e3))
    @settings(max_examples=300)
    def test_scale_invariance(self, values, c):
        scaled = [c * v for v in values]
        assert gini_coefficient(scaled) == pytest.approx(gini_coefficient(values), rel=1e-12, abs=1e-15)

    @given(aggregate_values, st.floats(min_value=0.1, max_value=500.0))
    @settings(max_examples=300)
    def test_translation_strictly_decreases(self, values, shift):
        before = gini_coefficient(values)
        after = gini_coefficient([v + shift for v in values])
        if before == 0.0:
            assert after == 0.0
        else:
            assert after < before

    @given(aggregate_values)
    @settings(max_examples=300)
    def test_result_in_unit_interval(self, values):
        assert 0.0 <= gini_coefficient(values) <= 1.0


class TestRateProperties:
    @given(st.floats(min_value=0.0, max_value=1.0))
    def test_cubing_dominance(self, gc):
        plain, cubed = sqfr(gc), csqfr(gc)
        assert cubed <= plain
        if 0.0 < plain < 1.0:
            assert cubed < plain
        else:
            assert cubed == plain


class TestMeasureProperties:
    @given(grouped_strategy())
    @settings(max_examples=150, deadline=None)
    def test_all_measures_in_unit_interval(self, grouped):
        for score in evaluate_component(grouped):
            assert 0.0 <= score.value <= 1.0

    @given(grouped_strategy(), st.randoms(use_true_random=False))
    @settings(max_examples=150, deadline=None)
    def test_group_permutation_invariance(self, grouped, rnd):
        labels = list(grouped.groups)
        rnd.shuffle(labels)
        permuted = GroupedScores(grouped.component_id, {l: grouped.groups[l] for l in labels})
        original = {s.measure: s.value for s in evaluate_component(grouped)}
        shuffled = {s.measure: s.value for s in evaluate_component(permuted)}
        assert original == shuffled

    @given(grouped_strategy(max_groups=4, max_size=15), st.integers(min_value=2, max_value=5))
    @settings(max_examples=100, deadline=None)
    def test_equal_distributions_are_perfectly_fair(self, grouped, copies):
        scores = grouped.groups["g0"]
        equal = GroupedScores("q", {f"g{i}": scores.copy() for i in range(copies)})
        assert all(s.value == 1.0 for s in evaluate_component(equal))

    @given(grouped_strategy(integers=True))
    @settings(max_examples=150, deadline=None)
    def test_lwm_within_each_groups_range(self, grouped):
        pooled_max = float(grouped.union().max())
        for label, value in lwm_aggregate(grouped).values.items():
            g = grouped.groups[label]
            if np.all(g == pooled_max):
                assert value == pooled_max
            else:
                assert g.min() - 1e-9 <= value <= g.max() + 1e-9


class TestDiscardProperties:
    @given(grouped_strategy(integers=True))
    @settings(max_examples=150, deadline=None)
    def test_fractions_monotone_in_threshold(self, grouped):
        ts = relevant_thresholds(grouped)
        assume(ts.size > 0)
        for fr in discard_curve(grouped, ts).fractions.values():
            assert np.all(np.diff(fr) >= 0)
            assert np.all((fr >= 0) & (fr <= 1))

    @given(grouped_strategy(max_groups=3, integers=True))
    @settings(max_examples=150, deadline=None)
    def test_mdg_matches_recount(self, grouped):
        ts = relevant_thresholds(grouped)
        assume(ts.size > 0)
        got = mdg(discard_curve(grouped, ts))
        assert got == pytest.approx(mdg_recount(grouped, ts), rel=1e-12, abs=1e-15)

    @given(grouped_strategy(max_groups=2, integers=True))
    @settings(max_examples=150, deadline=None)
    def test_pooled_interior_group_never_changes_mdg(self, grouped):
        ts = relevant_thresholds(grouped)
        assume(ts.size > 0)
        labels = list(grouped.groups)
        pooled = np.concatenate([grouped.groups[l] for l in labels])
        widened = GroupedScores("q", {**grouped.groups, "interior": pooled})
        assert mdg(discard_curve(widened, ts)) == mdg(discard_curve(grouped, ts))

    @given(grouped_strategy(integers=True), st.floats(min_value=0.25, max_value=3.0))
    @settings(max_examples=150, deadline=None)
    def test_threshold_sequence_bounds(self, grouped, step):
        pooled = grouped.union()
        ts = relevant_thresholds(grouped, step=step)
        if pooled.min() == pooled.max():
            assert ts.size == 0
        else:
            assert ts[0] > pooled.min()
            assert ts[-1] == pooled.max()
            assert np.all(np.diff(ts) > 0)


class TestMedianConvention:
    @given(st.lists(st.floats(min_value=0, max_value=100, allow_nan=False), min_size=2, max_size=20))
    @settings(max_examples=150)
    def test_even_counts_average_middle_pair(self, values):
        assume(len(values) % 2 == 0)
        ordered = sorted(values)
        mid = len(values) // 2
        expected = (ordered[mid - 1] + ordered[mid]) / 2
        gs = GroupedScores("q", {"A": values, "B": [1.0]})
        from sqfr import median_aggregate

        assert median_aggregate(gs).values["A"] == pytest.approx(expected)
        assert math.isfinite(expected)
