import json
import math

import pytest

from avcheck.errors import ParseError, SchemaError, ValidationError
from avcheck.interchange import (
    SCHEMA_EMBEDDINGS,
    SCHEMA_MANIFEST,
    SCHEMA_SYNC,
    SCHEMA_TRANSCRIPTS,
    DeepfakeMode,
    EmbeddingFrameSeries,
    Label,
    ManifestEntry,
    Modality,
    PerturbationConfig,
    PerturbationTag,
    ScoreRecord,
    SyncScoreSeries,
    Technique,
    TranscriptPair,
    load_frontend_outputs,
    load_manifest,
    load_score_records,
    read_file_header,
    save_manifest,
    save_score_records,
    save_sync_file,
    save_transcripts_file,
    save_embeddings_file,
)


def write_jsonl(path, schema, records, header_extra=None):
    lines = [json.dumps({"schema": schema, **(header_extra or {})})]
    lines.extend(json.dumps(r) for r in records)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def manifest_record(video_id="v1", label="genuine", **overrides):
    record = {
        "video_id": video_id,
        "label": label,
        "dataset": "DemoSet",
        "frame_count": 100,
        "fps": 25.0,
        "paths": {},
    }
    record.update(overrides)
    return record


class TestManifestLoading:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "manifest.jsonl"
        write_jsonl(
            path,
            SCHEMA_MANIFEST,
            [
                manifest_record("v1"),
                manifest_record(
                    "v2",
                    label="fake",
                    deepfake_mode="FVRA",
                    technique="GAN",
                    perturbation={
                        "modality": "video",
                        "kind": "blur",
                        "level": 2,
                        "parameter_value": 2.0,
                    },
                ),
            ],
        )
        entries = load_manifest(path)
        assert len(entries) == 2
        assert entries[0].label == Label.GENUINE
        assert entries[1].deepfake_mode == DeepfakeMode.FVRA
        assert entries[1].technique == Technique.GAN
        assert entries[1].perturbation.kind == "blur"

        out = tmp_path / "copy.jsonl"
        save_manifest(entries, out)
        assert load_manifest(out) == entries

    def test_duplicate_video_id(self, tmp_path):
        path = tmp_path / "manifest.jsonl"
        write_jsonl(path, SCHEMA_MANIFEST, [manifest_record("dup"), manifest_record("dup")])
        with pytest.raises(ValidationError, match="dup"):
            load_manifest(path)

    def test_genuine_with_technique_rejected(self, tmp_path):
        path = tmp_path / "manifest.jsonl"
        write_jsonl(path, SCHEMA_MANIFEST, [manifest_record(technique="WL")])
        with pytest.raises(ValidationError, match="technique"):
            load_manifest(path)

    def test_genuine_with_mode_none_accepted(self, tmp_path):
        path = tmp_path / "manifest.jsonl"
        write_jsonl(
            path,
            SCHEMA_MANIFEST,
            [manifest_record(deepfake_mode="none", technique="none")],
        )
        entries = load_manifest(path)
        assert entries[0].deepfake_mode is None
        assert entries[0].technique is None

    def test_unknown_enum_value(self, tmp_path):
        path = tmp_path / "manifest.jsonl"
        write_jsonl(path, SCHEMA_MANIFEST, [manifest_record(label="fake", deepfake_mode="XYZ")])
        with pytest.raises(ValidationError, match="XYZ"):
            load_manifest(path)

    def test_unknown_key_strict_vs_lax(self, tmp_path):
        path = tmp_path / "manifest.jsonl"
        write_jsonl(path, SCHEMA_MANIFEST, [manifest_record(extra_key=1)])
        with pytest.raises(ValidationError, match="extra_key"):
            load_manifest(path, strict=True)
        entries = load_manifest(path, strict=False)
        assert entries[0].video_id == "v1"

    def test_malformed_line_has_locus(self, tmp_path):
        path = tmp_path / "manifest.jsonl"
        path.write_text(
            json.dumps({"schema": SCHEMA_MANIFEST}) + "\n{not json\n", encoding="utf-8"
        )
        with pytest.raises(ParseError, match="2"):
            load_manifest(path)

    def test_wrong_schema_header(self, tmp_path):
        path = tmp_path / "manifest.jsonl"
        write_jsonl(path, "avcheck/other/v1", [manifest_record()])
        with pytest.raises(ParseError, match="schema"):
            load_manifest(path)

    def test_negative_fps_rejected(self, tmp_path):
        path = tmp_path / "manifest.jsonl"
        write_jsonl(path, SCHEMA_MANIFEST, [manifest_record(fps=-5)])
        with pytest.raises(ValidationError, match="fps"):
            load_manifest(path)

    def test_relative_paths_resolved_against_manifest_dir(self, tmp_path):
        nested = tmp_path / "data"
        nested.mkdir()
        path = nested / "manifest.jsonl"
        write_jsonl(
            path, SCHEMA_MANIFEST, [manifest_record(paths={"sync": "sync.jsonl"})]
        )
        entries = load_manifest(path)
        assert entries[0].paths["sync"] == str(nested / "sync.jsonl")

    def test_loads_are_idempotent(self, tmp_path):
        path = tmp_path / "manifest.jsonl"
        write_jsonl(path, SCHEMA_MANIFEST, [manifest_record()])
        before = path.read_bytes()
        first = load_manifest(path)
        second = load_manifest(path)
        assert first == second
        assert path.read_bytes() == before


class TestPerturbationConfig:
    def test_grid_is_exactly_four_kinds_by_three_levels(self):
        config = PerturbationConfig()
        cells = config.video_cells()
        assert len(cells) == 12
        assert {kind for kind, _ in cells} == {"blur", "noise", "contrast", "compression"}
        assert {level for _, level in cells} == {1, 2, 3}

    def test_parameter_values(self):
        config = PerturbationConfig()
        assert [config.parameter("blur", level)[1] for level in (1, 2, 3)] == [0.1, 2.0, 5.0]
        assert [config.parameter("noise", level)[1] for level in (1, 2, 3)] == [0.01, 0.05, 0.1]
        assert [config.parameter("contrast", level)[1] for level in (1, 2, 3)] == [0.8, 1.2, 2.0]
        assert [config.parameter("compression", level)[1] for level in (1, 2, 3)] == [33.0, 40.0, 47.0]

    def test_audio_cells_are_types_times_snrs(self):
        config = PerturbationConfig()
        cells = config.audio_cells()
        assert len(cells) == 12
        assert {snr for _, snr in cells} == {12.5, 2.5, -7.5}

    def test_unknown_cell_rejected(self):
        config = PerturbationConfig()
        with pytest.raises(ValidationError):
            config.parameter("sharpen", 1)
        with pytest.raises(ValidationError):
            config.parameter("blur", 4)

    def test_tag_parameter_must_match_grid(self):
        with pytest.raises(ValidationError, match="sigma"):
            ManifestEntry(
                video_id="v",
                label=Label.FAKE,
                dataset="D",
                frame_count=10,
                fps=25.0,
                paths={},
                perturbation=PerturbationTag(
                    modality=Modality.VIDEO, kind="blur", level=3, parameter_value=4.0
                ),
            )

    def test_audio_tag_snr_must_be_known(self):
        with pytest.raises(ValidationError, match="SNR"):
            ManifestEntry(
                video_id="v",
                label=Label.FAKE,
                dataset="D",
                frame_count=10,
                fps=25.0,
                paths={},
                perturbation=PerturbationTag(
                    modality=Modality.AUDIO, kind="white", snr_db=3.0
                ),
            )

    def test_audio_noise_type_is_free_string(self):
        tag = PerturbationTag(modality=Modality.AUDIO, kind="cafeteria-chatter", snr_db=2.5)
        assert tag.cell_key() == "audio/cafeteria-chatter/snr+2.5dB"


class TestFrontendOutputs:
    def entry(self, tmp_path, **paths):
        return ManifestEntry(
            video_id="v1",
            label=Label.GENUINE,
            dataset="D",
            frame_count=10,
            fps=25.0,
            paths={k: str(tmp_path / v) for k, v in paths.items()},
        )

    def test_only_transcripts_present(self, tmp_path):
        save_transcripts_file(
            [TranscriptPair("v1", ("HELLO",), ("HELLO",))], tmp_path / "t.jsonl"
        )
        outputs = load_frontend_outputs(self.entry(tmp_path, transcripts="t.jsonl"))
        assert outputs.transcripts is not None
        assert outputs.embeddings is None
        assert outputs.sync is None

    def test_dim_mismatch_cites_frame_index(self, tmp_path):
        path = tmp_path / "e.jsonl"
        frames = [{"audio": [1.0, 0.0], "video": [1.0, 0.0]}] * 7 + [
            {"audio": [1.0], "video": [1.0, 0.0]}
        ]
        write_jsonl(
            path,
            SCHEMA_EMBEDDINGS,
            [{"video_id": "v1", "dim": 2, "frames": frames}],
        )
        with pytest.raises(SchemaError, match="frame 7"):
            load_frontend_outputs(self.entry(tmp_path, embeddings="e.jsonl"))

    def test_single_record_file_with_wrong_id(self, tmp_path):
        save_sync_file(
            [SyncScoreSeries(video_id="other", scores=(0.5,) * 6)], tmp_path / "s.jsonl"
        )
        with pytest.raises(SchemaError, match="other"):
            load_frontend_outputs(self.entry(tmp_path, sync="s.jsonl"))

    def test_absent_from_shared_file_is_absent(self, tmp_path):
        save_transcripts_file(
            [
                TranscriptPair("a", ("X",), ("X",)),
                TranscriptPair("b", ("Y",), ("Y",)),
            ],
            tmp_path / "t.jsonl",
        )
        outputs = load_frontend_outputs(self.entry(tmp_path, transcripts="t.jsonl"))
        assert outputs.transcripts is None

    def test_sync_length_must_match_frame_count(self, tmp_path):
        # frame_count 10, window 5, stride 1 -> 6 windows expected
        save_sync_file(
            [SyncScoreSeries(video_id="v1", scores=(0.5,) * 4)], tmp_path / "s.jsonl"
        )
        with pytest.raises(SchemaError, match="implies 6"):
            load_frontend_outputs(self.entry(tmp_path, sync="s.jsonl"))

    def test_kind_filter_skips_unwanted_files(self, tmp_path):
        entry = self.entry(tmp_path, embeddings="missing.jsonl")
        outputs = load_frontend_outputs(entry, kinds=("transcripts",))
        assert outputs == (None, None, None)
        with pytest.raises(OSError):
            load_frontend_outputs(entry)

    def test_missing_file_raises_oserror(self, tmp_path):
        with pytest.raises(OSError):
            load_frontend_outputs(self.entry(tmp_path, transcripts="absent.jsonl"))

    def test_duplicate_record_in_kind_file(self, tmp_path):
        write_jsonl(
            tmp_path / "t.jsonl",
            SCHEMA_TRANSCRIPTS,
            [
                {"video_id": "v1", "reference_tokens": ["A"], "hypothesis_tokens": ["A"]},
                {"video_id": "v1", "reference_tokens": ["B"], "hypothesis_tokens": ["B"]},
            ],
        )
        with pytest.raises(SchemaError, match="duplicate"):
            load_frontend_outputs(self.entry(tmp_path, transcripts="t.jsonl"))

    def test_token_with_whitespace_rejected(self, tmp_path):
        write_jsonl(
            tmp_path / "t.jsonl",
            SCHEMA_TRANSCRIPTS,
            [{"video_id": "v1", "reference_tokens": ["A B"], "hypothesis_tokens": []}],
        )
        with pytest.raises(SchemaError, match="whitespace"):
            load_frontend_outputs(self.entry(tmp_path, transcripts="t.jsonl"))

    def test_empty_token_lists_are_representable(self, tmp_path):
        save_transcripts_file([TranscriptPair("v1", (), ())], tmp_path / "t.jsonl")
        outputs = load_frontend_outputs(self.entry(tmp_path, transcripts="t.jsonl"))
        assert outputs.transcripts.reference_tokens == ()

    def test_nonfinite_sync_score_rejected(self, tmp_path):
        write_jsonl(
            tmp_path / "s.jsonl",
            SCHEMA_SYNC,
            [{"video_id": "v1", "window_len": 5, "stride": 1, "scores": [0.1, float("nan")]}],
        )
        with pytest.raises((SchemaError, ValueError)):
            load_frontend_outputs(self.entry(tmp_path, sync="s.jsonl"))

    def test_frontend_round_trips(self, tmp_path):
        pair = TranscriptPair("v1", ("HELLO", "WORLD"), ("HELLO",))
        series = EmbeddingFrameSeries(
            "v1", 2, (((1.0, 0.5), (0.25, -0.125)), ((0.0, 1.0), (1.0, 0.0)))
        )
        sync = SyncScoreSeries("v1", (0.25, 0.5, 0.75, 0.5, 0.25, 0.125))
        save_transcripts_file([pair], tmp_path / "t.jsonl")
        save_embeddings_file([series], tmp_path / "e.jsonl")
        save_sync_file([sync], tmp_path / "s.jsonl")
        entry = self.entry(
            tmp_path, transcripts="t.jsonl", embeddings="e.jsonl", sync="s.jsonl"
        )
        outputs = load_frontend_outputs(entry)
        assert outputs.transcripts == pair
        assert outputs.embeddings == series
        assert outputs.sync == sync


class TestScoreRecords:
    def test_round_trip_including_infinity(self, tmp_path):
        records = [
            ScoreRecord(
                video_id="a",
                dataset="D",
                raw={"SCFD": 0.25, "TCFD": 0.5, "CCFD_WER": math.inf},
                normalized={"SCFD": 0.5, "TCFD": 0.5, "CCFD": 0.0},
                fused=1.0 / 3.0,
            ),
            ScoreRecord(video_id="b", dataset="D", raw={"SCFD": -0.5}),
        ]
        path = tmp_path / "scores.jsonl"
        save_score_records(records, path, normalization=[{"system": "SCFD", "min": 0, "max": 1, "population": "D"}])
        assert load_score_records(path) == records
        header = read_file_header(path)
        assert header["normalization"][0]["system"] == "SCFD"

    def test_presence_flags_serialized(self, tmp_path):
        path = tmp_path / "scores.jsonl"
        save_score_records(
            [ScoreRecord(video_id="a", dataset="D", raw={"SCFD": 0.1})], path
        )
        record = json.loads(path.read_text().splitlines()[1])
        assert record["systems"] == {"SCFD": True, "TCFD": False, "CCFD": False}

    def test_normalized_out_of_range_rejected(self):
        with pytest.raises(ValidationError, match="outside"):
            ScoreRecord(video_id="a", dataset="D", raw={}, normalized={"SCFD": 1.5})

    def test_fused_out_of_range_rejected(self):
        with pytest.raises(ValidationError, match="fused"):
            ScoreRecord(video_id="a", dataset="D", raw={}, fused=-0.1)
