import math
import random

import pytest
from hypothesis import given, strategies as st

from avcheck.errors import DegenerateLabels, EmptyInput, ValidationError
from avcheck.evaluation import (
    LabeledScore,
    aggregate_mean_std,
    auc,
    emit_report,
    robustness_matrix,
    subset_breakdown,
    system_score,
)
from avcheck.fusion import NormalizationStats
from avcheck.interchange import (
    Label,
    ManifestEntry,
    Modality,
    PerturbationTag,
    ScoreRecord,
)

from oracles import auc_pair_counting, mean_and_population_std


def labeled(pairs):
    return [
        LabeledScore(video_id=f"v{i}", label=Label(lbl), score=s)
        for i, (lbl, s) in enumerate(pairs)
    ]


class TestAuc:
    def test_perfect_separation(self):
        scores = labeled(
            [("genuine", 0.9), ("genuine", 0.8), ("fake", 0.1), ("fake", 0.2)]
        )
        assert auc(scores) == 1.0

    def test_tie_convention(self):
        assert auc(labeled([("genuine", 0.5), ("fake", 0.5)])) == 0.5

    def test_three_quarters(self):
        # Pairs: (0.9 vs 0.5) win, (0.9 vs 0.1) win, (0.3 vs 0.5) loss,
        # (0.3 vs 0.1) win -> 3/4.
        scores = labeled(
            [("genuine", 0.9), ("genuine", 0.3), ("fake", 0.5), ("fake", 0.1)]
        )
        assert auc_pair_counting(scores) == 0.75
        assert auc(scores) == 0.75

    def test_single_class_rejected(self):
        with pytest.raises(DegenerateLabels):
            auc(labeled([("genuine", 0.5), ("genuine", 0.6)]))
        with pytest.raises(DegenerateLabels):
            auc(labeled([("fake", 0.5)]))

    def test_nonfinite_score_rejected(self):
        with pytest.raises(ValidationError):
            LabeledScore(video_id="v", label=Label.FAKE, score=math.nan)

    def test_matches_pair_counting_randomized(self):
        rng = random.Random(20240917)
        for _ in range(300):
            n = rng.randint(2, 12)
            pairs = [
                (rng.choice(["genuine", "fake"]), rng.choice([0.0, 0.25, 0.5, 0.75, 1.0]))
                for _ in range(n)
            ]
            labels = {lbl for lbl, _ in pairs}
            if labels != {"genuine", "fake"}:
                continue
            scores = labeled(pairs)
            assert auc(scores) == auc_pair_counting(scores)

    @given(
        st.lists(
            st.tuples(
                st.sampled_from(["genuine", "fake"]),
                st.integers(0, 8).map(lambda k: k / 8),
            ),
            min_size=2,
            max_size=12,
        )
    )
    def test_matches_pair_counting_property(self, pairs):
        if {lbl for lbl, _ in pairs} != {"genuine", "fake"}:
            return
        scores = labeled(pairs)
        assert auc(scores) == auc_pair_counting(scores)

    def test_label_flip_complements_when_no_ties(self):
        scores = labeled(
            [("genuine", 0.9), ("genuine", 0.3), ("fake", 0.5), ("fake", 0.1)]
        )
        flipped = [
            LabeledScore(
                video_id=s.video_id,
                label=Label.FAKE if s.label == Label.GENUINE else Label.GENUINE,
                score=s.score,
            )
            for s in scores
        ]
        assert auc(flipped) == pytest.approx(1.0 - auc(scores))

    def test_invariant_under_increasing_transform(self):
        scores = labeled(
            [("genuine", 0.9), ("genuine", 0.3), ("fake", 0.5), ("fake", 0.1)]
        )
        transformed = [
            LabeledScore(s.video_id, s.label, math.tanh(3.0 * s.score)) for s in scores
        ]
        assert auc(transformed) == auc(scores)


class TestAggregateMeanStd:
    def test_published_row_one(self):
        row = [0.9924, 0.9481, 0.7741, 0.7167, 0.9686, 0.9687, 0.9656, 0.9110]
        mean, std = aggregate_mean_std(row)
        assert mean == pytest.approx(0.9056, abs=5e-4)
        assert std == pytest.approx(0.0961, abs=5e-4)

    def test_published_row_two(self):
        row = [0.6880, 0.9575, 0.8403, 0.8424, 0.9522, 0.9472, 0.9412, 0.9315]
        mean, std = aggregate_mean_std(row)
        assert mean == pytest.approx(0.8875, abs=5e-4)
        assert std == pytest.approx(0.0877, abs=5e-4)

    def test_constant_row(self):
        assert aggregate_mean_std([0.5, 0.5, 0.5]) == (0.5, 0.0)

    def test_empty_rejected(self):
        with pytest.raises(EmptyInput):
            aggregate_mean_std([])

    @given(st.lists(st.floats(0, 1), min_size=1, max_size=12))
    def test_matches_first_principles(self, row):
        mean, std = aggregate_mean_std(row)
        expected_mean, expected_std = mean_and_population_std(row)
        assert mean == pytest.approx(expected_mean)
        assert std == pytest.approx(expected_std)


def entry(video_id, label, dataset="DS", mode=None, technique=None, perturbation=None):
    from avcheck.interchange import DeepfakeMode, Technique

    return ManifestEntry(
        video_id=video_id,
        label=Label(label),
        dataset=dataset,
        frame_count=10,
        fps=25.0,
        paths={},
        deepfake_mode=None if mode is None else DeepfakeMode(mode),
        technique=None if technique is None else Technique(technique),
        perturbation=perturbation,
    )


def record(video_id, dataset="DS", scfd=None, tcfd=None, wer=None, fused=None, normalized=None):
    raw = {}
    if scfd is not None:
        raw["SCFD"] = scfd
    if tcfd is not None:
        raw["TCFD"] = tcfd
    if wer is not None:
        raw["CCFD_WER"] = wer
    return ScoreRecord(
        video_id=video_id,
        dataset=dataset,
        raw=raw,
        normalized=normalized or {},
        fused=fused,
    )


class TestSystemScore:
    def test_prefers_normalized(self):
        r = record("v", scfd=0.9, normalized={"SCFD": 0.4})
        assert system_score(r, "SCFD") == 0.4

    def test_raw_fallback_corrects_wer_orientation(self):
        r = record("v", wer=0.25)
        assert system_score(r, "CCFD") == 0.75

    def test_infinite_wer_maps_to_zero(self):
        r = record("v", wer=math.inf)
        assert system_score(r, "CCFD") == 0.0

    def test_fusion_requires_fused(self):
        assert system_score(record("v", scfd=0.5), "Fusion") is None
        assert system_score(record("v", fused=0.5), "Fusion") == 0.5


class TestSubsetBreakdown:
    def test_two_subsets_make_two_columns(self):
        entries = [
            entry("g1", "genuine"),
            entry("g2", "genuine"),
            entry("f1", "fake", mode="RVFA"),
            entry("f2", "fake", mode="FVRA", technique="WL"),
        ]
        records = [
            record("g1", scfd=0.9),
            record("g2", scfd=0.8),
            record("f1", scfd=0.1),
            record("f2", scfd=0.95),
        ]
        table = subset_breakdown(records, entries)
        assert table.subsets == ["DS/RVFA", "DS/FVRA/WL"]
        assert table.rows["SCFD"]["DS/RVFA"] == 1.0
        assert table.rows["SCFD"]["DS/FVRA/WL"] == 0.0

    def test_whole_dataset_column_for_untagged_fakes(self):
        entries = [
            entry("g1", "genuine", dataset="Tim"),
            entry("f1", "fake", dataset="Tim"),
        ]
        records = [record("g1", dataset="Tim", scfd=0.9), record("f1", dataset="Tim", scfd=0.2)]
        table = subset_breakdown(records, entries)
        assert table.subsets == ["Tim"]
        assert table.rows["SCFD"]["Tim"] == 1.0

    def test_degenerate_subset_is_absent_cell_with_note(self):
        entries = [
            entry("g1", "genuine"),
            entry("f1", "fake", mode="RVFA"),
            entry("f2", "fake", mode="FVRA", technique="GAN"),
        ]
        # f2 has no SCFD score, so DS/FVRA/GAN is degenerate for SCFD.
        records = [
            record("g1", scfd=0.9),
            record("f1", scfd=0.1),
            record("f2", tcfd=0.5),
        ]
        table = subset_breakdown(records, entries)
        assert "DS/FVRA/GAN" not in table.rows["SCFD"]
        assert any("DS/FVRA/GAN" in note for note in table.notes)

    def test_mean_std_over_present_cells(self):
        entries = [
            entry("g1", "genuine"),
            entry("g2", "genuine"),
            entry("f1", "fake", mode="RVFA"),
            entry("f2", "fake", mode="FVRA", technique="WL"),
        ]
        records = [
            record("g1", scfd=0.9),
            record("g2", scfd=0.8),
            record("f1", scfd=0.85),  # AUC 0.5 against {0.9, 0.8}
            record("f2", scfd=0.1),  # AUC 1.0
        ]
        table = subset_breakdown(records, entries)
        mean, std = aggregate_mean_std([0.5, 1.0])
        assert table.mean["SCFD"] == pytest.approx(mean)
        assert table.std["SCFD"] == pytest.approx(std)

    def test_missing_manifest_entry_rejected(self):
        with pytest.raises(ValidationError, match="ghost"):
            subset_breakdown([record("ghost", scfd=0.5)], [entry("g1", "genuine")])

    def test_column_order_follows_mode_then_technique(self):
        entries = [
            entry("g", "genuine"),
            entry("a", "fake", mode="FVFA", technique="GAN_WL"),
            entry("b", "fake", mode="FVRA", technique="GAN"),
            entry("c", "fake", mode="RVFA"),
            entry("d", "fake", mode="FVRA", technique="WL"),
        ]
        records = [record(v, scfd=s) for v, s in [("g", 0.9), ("a", 0.1), ("b", 0.2), ("c", 0.3), ("d", 0.4)]]
        table = subset_breakdown(records, entries)
        assert table.subsets == ["DS/RVFA", "DS/FVRA/WL", "DS/FVRA/GAN", "DS/FVFA/GAN_WL"]


def video_tag(kind, level):
    from avcheck.interchange import VIDEO_PERTURBATION_GRID

    return PerturbationTag(
        modality=Modality.VIDEO,
        kind=kind,
        level=level,
        parameter_value=VIDEO_PERTURBATION_GRID[(kind, level)][1],
    )


def audio_tag(noise_type, snr):
    return PerturbationTag(modality=Modality.AUDIO, kind=noise_type, snr_db=snr)


class TestRobustnessMatrix:
    def build(self, cell_aucs, include_baseline_in_stats=False, with_baseline=True):
        """One genuine + 10 fakes per cell; genuine outranks k of 10 fakes."""
        entries, records = [], []
        if with_baseline:
            entries += [entry("base-g", "genuine"), entry("base-f", "fake")]
            records += [record("base-g", scfd=0.9), record("base-f", scfd=0.1)]
        for i, (tag, target) in enumerate(cell_aucs):
            wins = round(target * 10)
            gid = f"c{i}-g"
            entries.append(entry(gid, "genuine", perturbation=tag))
            records.append(record(gid, scfd=0.5))
            for j in range(10):
                fid = f"c{i}-f{j}"
                entries.append(entry(fid, "fake", perturbation=tag))
                records.append(record(fid, scfd=0.1 if j < wins else 0.9))
        return records, entries

    def test_identical_cells_zero_std(self):
        cells = [(video_tag("blur", level), 0.8) for level in (1, 2, 3)]
        records, entries = self.build(cells)
        matrix = robustness_matrix(records, entries)
        mean, std = matrix.modality_stats["SCFD"]["video"]
        assert mean == pytest.approx(0.8)
        assert std == 0.0

    def test_three_cells_mean_and_std(self):
        cells = [
            (video_tag("blur", 1), 0.9),
            (video_tag("noise", 1), 0.8),
            (video_tag("contrast", 1), 0.7),
        ]
        records, entries = self.build(cells)
        matrix = robustness_matrix(records, entries)
        expected_mean, expected_std = mean_and_population_std([0.9, 0.8, 0.7])
        mean, std = matrix.modality_stats["SCFD"]["video"]
        assert mean == pytest.approx(expected_mean)
        assert std == pytest.approx(expected_std)
        assert std == pytest.approx(0.0816, abs=5e-5)

    def test_full_video_grid_has_twelve_columns(self):
        cells = [
            (video_tag(kind, level), 0.8)
            for kind in ("blur", "noise", "contrast", "compression")
            for level in (1, 2, 3)
        ]
        records, entries = self.build(cells)
        matrix = robustness_matrix(records, entries)
        video_cells = [c for c in matrix.cell_order if c.startswith("video/")]
        assert len(video_cells) == 12
        assert video_cells[0] == "video/blur/level1"
        assert video_cells[-1] == "video/compression/level3"

    def test_audio_cells_keyed_by_type_and_snr(self):
        cells = [(audio_tag("white", snr), 0.7) for snr in (12.5, 2.5, -7.5)]
        records, entries = self.build(cells)
        matrix = robustness_matrix(records, entries)
        audio_cells = [c for c in matrix.cell_order if c.startswith("audio/")]
        assert audio_cells == [
            "audio/white/snr+12.5dB",
            "audio/white/snr+2.5dB",
            "audio/white/snr-7.5dB",
        ]
        assert "audio" in matrix.modality_stats["SCFD"]

    def test_missing_baseline_noted(self):
        cells = [(video_tag("blur", 1), 0.8)]
        records, entries = self.build(cells, with_baseline=False)
        matrix = robustness_matrix(records, entries)
        assert any("baseline" in note for note in matrix.notes)
        assert "SCFD" not in matrix.baseline

    def test_baseline_included_in_stats_when_asked(self):
        cells = [(video_tag("blur", 1), 0.8), (video_tag("blur", 2), 0.6)]
        records, entries = self.build(cells)
        excl = robustness_matrix(records, entries)
        incl = robustness_matrix(records, entries, include_baseline_in_stats=True)
        assert excl.baseline["SCFD"] == 1.0
        assert excl.modality_stats["SCFD"]["video"][0] == pytest.approx(0.7)
        assert incl.modality_stats["SCFD"]["video"][0] == pytest.approx((0.8 + 0.6 + 1.0) / 3)

    def test_degenerate_cell_reported_absent(self):
        tag = video_tag("noise", 2)
        entries = [
            entry("g", "genuine"),
            entry("f", "fake"),
            entry("pf", "fake", perturbation=tag),  # no genuine in this cell
        ]
        records = [record("g", scfd=0.9), record("f", scfd=0.1), record("pf", scfd=0.2)]
        matrix = robustness_matrix(records, entries)
        assert "video/noise/level2" not in matrix.cells["SCFD"]
        assert any("video/noise/level2" in note for note in matrix.notes)


class TestEmitReport:
    def sample_table(self):
        entries = [
            entry("g1", "genuine"),
            entry("g2", "genuine"),
            entry("f1", "fake", mode="RVFA"),
            entry("f2", "fake", mode="FVRA", technique="WL"),
        ]
        records = [
            record("g1", scfd=0.9),
            record("g2", scfd=0.8),
            record("f1", scfd=0.1),
            record("f2", tcfd=0.5),
        ]
        table = subset_breakdown(records, entries)
        matrix = robustness_matrix(records, entries)
        return table, matrix

    def test_deterministic_bytes(self, tmp_path):
        table, matrix = self.sample_table()
        stats = [NormalizationStats("SCFD", 0.1, 0.9, "DS")]
        first = emit_report(table, matrix, stats, ["w1"], tmp_path / "a", fmt="both")
        second = emit_report(table, matrix, stats, ["w1"], tmp_path / "b", fmt="both")
        for f, s in zip(first, second):
            assert f.read_bytes() == s.read_bytes()
        # and rerunning into the same directory is idempotent
        third = emit_report(table, matrix, stats, ["w1"], tmp_path / "a", fmt="both")
        for f, t in zip(first, third):
            assert f.read_bytes() == t.read_bytes()

    def test_absent_cell_rendered_with_footnote(self, tmp_path):
        table, matrix = self.sample_table()
        (report_txt,) = emit_report(table, matrix, out_dir=tmp_path, fmt="human")
        text = report_txt.read_text()
        assert "—" in text
        assert "degenerate" in text

    def test_empty_report_rejected(self, tmp_path):
        with pytest.raises(EmptyInput):
            emit_report(None, None, out_dir=tmp_path)

    def test_machine_format_round_trips(self, tmp_path):
        import json

        table, matrix = self.sample_table()
        (report_jsonl,) = emit_report(table, matrix, out_dir=tmp_path, fmt="machine")
        lines = report_jsonl.read_text().splitlines()
        header = json.loads(lines[0])
        assert header["schema"] == "avcheck/report/v1"
        records = [json.loads(line) for line in lines[1:]]
        kinds = {r["record"] for r in records}
        assert "auc_cell" in kinds
        assert "auc_summary" in kinds
        cell = next(r for r in records if r["record"] == "auc_cell")
        assert set(cell) == {"record", "system", "subset", "auc"}

    def test_unknown_format_rejected(self, tmp_path):
        table, matrix = self.sample_table()
        with pytest.raises(ValueError):
            emit_report(table, matrix, out_dir=tmp_path, fmt="yaml")
