import pytest
from hypothesis import given, strategies as st

from avcheck.errors import EmptyInput, MissingSystem
from avcheck.evaluation import LabeledScore, auc
from avcheck.fusion import NormalizationStats, apply_minmax, fit_minmax, fuse
from avcheck.interchange import Label


class TestFitMinmax:
    def test_observed_extremes(self):
        stats = fit_minmax([0.1, 0.5, 0.9], "SCFD", "DemoSet")
        assert (stats.min, stats.max) == (0.1, 0.9)
        assert stats.population == "DemoSet"

    def test_degenerate_population(self):
        stats = fit_minmax([0.4, 0.4], "SCFD", "DemoSet")
        assert stats.min == stats.max == 0.4

    def test_single_score(self):
        stats = fit_minmax([0.7], "TCFD", "DemoSet")
        assert stats.min == stats.max == 0.7

    def test_empty_rejected(self):
        with pytest.raises(EmptyInput):
            fit_minmax([], "SCFD", "DemoSet")

    def test_inverted_stats_rejected(self):
        with pytest.raises(ValueError):
            NormalizationStats(system="SCFD", min=1.0, max=0.0, population="x")


class TestApplyMinmax:
    def test_midpoint(self):
        stats = NormalizationStats("SCFD", 0.1, 0.9, "x")
        assert apply_minmax(0.5, stats) == pytest.approx(0.5)

    def test_clamps_below(self):
        stats = NormalizationStats("SCFD", 0.1, 0.9, "x")
        assert apply_minmax(0.05, stats) == 0.0

    def test_clamps_above(self):
        stats = NormalizationStats("SCFD", 0.1, 0.9, "x")
        assert apply_minmax(0.95, stats) == 1.0

    def test_degenerate_returns_half(self):
        stats = NormalizationStats("SCFD", 0.7, 0.7, "x")
        assert apply_minmax(0.7, stats) == 0.5

    @given(
        st.floats(-100, 100),
        st.floats(-100, 100),
        st.floats(-50, 50),
        st.floats(0.001, 10),
    )
    def test_monotone_in_score(self, low, high, score, step):
        if low > high:
            low, high = high, low
        stats = NormalizationStats("SCFD", low, high, "x")
        assert apply_minmax(score, stats) <= apply_minmax(score + step, stats)

    @given(st.floats(-1e6, 1e6))
    def test_always_in_unit_interval(self, score):
        stats = NormalizationStats("SCFD", -1.0, 1.0, "x")
        assert 0.0 <= apply_minmax(score, stats) <= 1.0


class TestFuse:
    def test_plain_average(self):
        assert fuse({"SCFD": 0.2, "TCFD": 0.5, "CCFD": 0.8}) == pytest.approx(0.5)

    def test_unanimity(self):
        assert fuse({"SCFD": 1.0, "TCFD": 1.0, "CCFD": 1.0}) == 1.0

    def test_direct_mean(self):
        assert fuse({"SCFD": 0.0, "TCFD": 0.0, "CCFD": 0.9}) == pytest.approx(0.3)

    def test_missing_system_named(self):
        with pytest.raises(MissingSystem, match="TCFD"):
            fuse({"SCFD": 0.5, "CCFD": 0.5})
        with pytest.raises(MissingSystem, match="SCFD, TCFD"):
            fuse({"CCFD": 0.5})

    @given(st.floats(0, 1), st.floats(0, 1), st.floats(0, 1))
    def test_symmetric_and_bounded(self, a, b, c):
        base = fuse({"SCFD": a, "TCFD": b, "CCFD": c})
        assert fuse({"SCFD": b, "TCFD": c, "CCFD": a}) == pytest.approx(base)
        assert min(a, b, c) - 1e-12 <= base <= max(a, b, c) + 1e-12


class TestRankInvariance:
    @given(
        st.lists(
            st.integers(-10_000_000, 10_000_000).map(lambda k: k / 1e6),
            min_size=2,
            max_size=20,
            unique=True,
        ),
        st.integers(min_value=1, max_value=3),
    )
    def test_minmax_preserves_auc(self, scores, split):
        # Normalizing with fitted min-max cannot change any ranking, so the
        # AUC of normalized scores equals the AUC of the raw scores even
        # after a strictly increasing transform of the raw values.
        if split >= len(scores):
            return
        transformed = [x**3 + 2 * x for x in scores]  # strictly increasing
        labels = [Label.GENUINE] * split + [Label.FAKE] * (len(scores) - split)

        def labeled(values):
            return [
                LabeledScore(video_id=str(i), label=lbl, score=v)
                for i, (lbl, v) in enumerate(zip(labels, values))
            ]

        stats = fit_minmax(transformed, "SCFD", "x")
        normalized = [apply_minmax(v, stats) for v in transformed]
        assert auc(labeled(normalized)) == pytest.approx(auc(labeled(scores)))
