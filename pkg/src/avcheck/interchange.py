"""Data model and file formats at the frontend/backend boundary.

Frontend adapters (speech recognizers, embedding encoders, sync models)
run elsewhere and hand their outputs to this toolkit as files. All files
share one shape: UTF-8 JSON Lines, a header record carrying a versioned
schema identifier, then one record per video. This module defines the
in-memory types, the loaders (with validation), and the writers.

Four file kinds exist:

* manifest     - one record per claimed video: identity, ground-truth
                 label, deepfake mode/technique tags, perturbation tag,
                 frame count, fps, and paths to the per-kind output files.
* transcripts  - reference (audio ASR) and hypothesis (lip VSR) token
                 sequences per video.
* embeddings   - per-frame paired audio/video embedding vectors.
* sync         - per-window synchronization scores.

A fifth kind, scores, carries this toolkit's own per-video output records
between the score, fuse, and evaluate stages.

Values are immutable after load; loading never mutates input files.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple

from .errors import ParseError, SchemaError, ValidationError
from .temporal import expected_window_count

logger = logging.getLogger(__name__)

__all__ = [
    "SCHEMA_MANIFEST",
    "SCHEMA_TRANSCRIPTS",
    "SCHEMA_EMBEDDINGS",
    "SCHEMA_SYNC",
    "SCHEMA_SCORES",
    "FRONTEND_KINDS",
    "SYSTEM_SCFD",
    "SYSTEM_TCFD",
    "SYSTEM_CCFD",
    "RAW_CCFD_WER",
    "SYSTEMS",
    "Label",
    "DeepfakeMode",
    "Technique",
    "Modality",
    "PerturbationTag",
    "PerturbationConfig",
    "ManifestEntry",
    "TranscriptPair",
    "EmbeddingFrameSeries",
    "SyncScoreSeries",
    "ScoreRecord",
    "FrontendOutputs",
    "load_manifest",
    "save_manifest",
    "load_transcripts_file",
    "load_embeddings_file",
    "load_sync_file",
    "save_transcripts_file",
    "save_embeddings_file",
    "save_sync_file",
    "load_frontend_outputs",
    "load_score_records",
    "save_score_records",
    "read_file_header",
]

SCHEMA_MANIFEST = "avcheck/manifest/v1"
SCHEMA_TRANSCRIPTS = "avcheck/transcripts/v1"
SCHEMA_EMBEDDINGS = "avcheck/embeddings/v1"
SCHEMA_SYNC = "avcheck/sync/v1"
SCHEMA_SCORES = "avcheck/scores/v1"

FRONTEND_KINDS = ("transcripts", "embeddings", "sync")

SYSTEM_SCFD = "SCFD"
SYSTEM_TCFD = "TCFD"
SYSTEM_CCFD = "CCFD"
RAW_CCFD_WER = "CCFD_WER"
SYSTEMS = (SYSTEM_SCFD, SYSTEM_TCFD, SYSTEM_CCFD)

DEFAULT_WINDOW_LEN = 5
DEFAULT_STRIDE = 1


class Label(str, Enum):
    GENUINE = "genuine"
    FAKE = "fake"


class DeepfakeMode(str, Enum):
    """How a fake was assembled: which modality (or both) is synthetic."""

    RVFA = "RVFA"  # real video, fake audio
    FVRA = "FVRA"  # fake video, real audio
    FVFA = "FVFA"  # fake video and fake audio
    NONE = "none"


class Technique(str, Enum):
    """Video manipulation technique used to produce a fake."""

    WL = "WL"  # lip-sync reenactment
    GAN = "GAN"  # GAN-based face swap
    FS = "FS"  # classical face swap
    GAN_WL = "GAN_WL"
    FS_WL = "FS_WL"
    NONE = "none"


class Modality(str, Enum):
    VIDEO = "video"
    AUDIO = "audio"
    NONE = "none"


AUDIO_SNR_LEVELS_DB = (12.5, 2.5, -7.5)

# (kind, level) -> (parameter name, parameter value); levels grow harsher.
VIDEO_PERTURBATION_GRID = {
    ("blur", 1): ("sigma", 0.1),
    ("blur", 2): ("sigma", 2.0),
    ("blur", 3): ("sigma", 5.0),
    ("noise", 1): ("std", 0.01),
    ("noise", 2): ("std", 0.05),
    ("noise", 3): ("std", 0.1),
    ("contrast", 1): ("factor", 0.8),
    ("contrast", 2): ("factor", 1.2),
    ("contrast", 3): ("factor", 2.0),
    ("compression", 1): ("crf", 33.0),
    ("compression", 2): ("crf", 40.0),
    ("compression", 3): ("crf", 47.0),
}

VIDEO_PERTURBATION_KINDS = ("blur", "noise", "contrast", "compression")

# Audio noise taxonomy is adapter-declared; this is only the default cell
# layout for robustness matrices when nothing else is configured.
DEFAULT_AUDIO_NOISE_TYPES = ("white", "pink", "babble", "music")


@dataclass(frozen=True)
class PerturbationConfig:
    """The perturbation grid: 4 video kinds x 3 levels, plus audio cells.

    Video rows are fixed; audio noise types are whatever the adapter
    declares, each crossed with the three SNR levels.
    """

    video_grid: dict[tuple[str, int], tuple[str, float]] = field(
        default_factory=lambda: dict(VIDEO_PERTURBATION_GRID)
    )
    audio_noise_types: tuple[str, ...] = DEFAULT_AUDIO_NOISE_TYPES
    audio_snr_levels: tuple[float, ...] = AUDIO_SNR_LEVELS_DB

    def parameter(self, kind: str, level: int) -> tuple[str, float]:
        """Parameter (name, value) for a video perturbation cell."""
        try:
            return self.video_grid[(kind, level)]
        except KeyError:
            raise ValidationError(
                f"unknown video perturbation cell ({kind!r}, level {level})"
            ) from None

    def video_cells(self) -> list[tuple[str, int]]:
        return sorted(
            self.video_grid,
            key=lambda cell: (VIDEO_PERTURBATION_KINDS.index(cell[0]), cell[1]),
        )

    def audio_cells(self) -> list[tuple[str, float]]:
        return [
            (kind, snr)
            for kind in self.audio_noise_types
            for snr in self.audio_snr_levels
        ]

    def validate_tag(self, tag: PerturbationTag) -> None:
        if tag.modality == Modality.VIDEO:
            name, value = self.parameter(tag.kind, tag.level)
            if tag.parameter_value != value:
                raise ValidationError(
                    f"video perturbation ({tag.kind!r}, level {tag.level}) expects "
                    f"{name}={value}, got parameter_value={tag.parameter_value}"
                )
        elif tag.modality == Modality.AUDIO:
            if tag.snr_db not in self.audio_snr_levels:
                raise ValidationError(
                    f"audio perturbation SNR must be one of {self.audio_snr_levels}, "
                    f"got {tag.snr_db}"
                )


@dataclass(frozen=True)
class PerturbationTag:
    """Which perturbation (if any) was applied before frontend processing.

    Video tags carry a level 1..3 and the grid parameter value; audio tags
    carry the noise type as a free string (declared by the adapter, not an
    enum) and an SNR in dB.
    """

    modality: Modality
    kind: str
    level: int | None = None
    snr_db: float | None = None
    parameter_value: float | None = None

    def __post_init__(self):
        if self.modality == Modality.VIDEO:
            if self.level not in (1, 2, 3):
                raise ValidationError(
                    f"video perturbation level must be 1..3, got {self.level}"
                )
            if self.snr_db is not None:
                raise ValidationError("video perturbations carry no snr_db")
            if self.parameter_value is None:
                raise ValidationError("video perturbations require parameter_value")
        elif self.modality == Modality.AUDIO:
            if not self.kind:
                raise ValidationError("audio perturbations require a noise type string")
            if self.level is not None:
                raise ValidationError("audio perturbations carry no level")
            if self.snr_db is None:
                raise ValidationError("audio perturbations require snr_db")

    def cell_key(self) -> str:
        """Stable identifier of this tag's cell in a robustness matrix."""
        if self.modality == Modality.VIDEO:
            return f"video/{self.kind}/level{self.level}"
        if self.modality == Modality.AUDIO:
            return f"audio/{self.kind}/snr{self.snr_db:+g}dB"
        return "none"

    def to_json(self) -> dict:
        record = {"modality": self.modality.value, "kind": self.kind}
        if self.level is not None:
            record["level"] = self.level
        if self.snr_db is not None:
            record["snr_db"] = self.snr_db
        if self.parameter_value is not None:
            record["parameter_value"] = self.parameter_value
        return record

    @classmethod
    def from_json(cls, record: dict) -> PerturbationTag:
        try:
            modality = Modality(record["modality"])
        except (KeyError, ValueError):
            raise ValidationError(
                f"perturbation modality must be one of "
                f"{[m.value for m in Modality]}, got {record.get('modality')!r}"
            ) from None
        return cls(
            modality=modality,
            kind=record.get("kind", ""),
            level=record.get("level"),
            snr_db=record.get("snr_db"),
            parameter_value=record.get("parameter_value"),
        )


_MANIFEST_REQUIRED = ("video_id", "label", "dataset", "frame_count", "fps", "paths")
_MANIFEST_OPTIONAL = ("deepfake_mode", "technique", "perturbation")


@dataclass(frozen=True)
class ManifestEntry:
    """One claimed video and everything known about it before scoring."""

    video_id: str
    label: Label
    dataset: str
    frame_count: int
    fps: float
    paths: dict[str, str]
    deepfake_mode: DeepfakeMode | None = None
    technique: Technique | None = None
    perturbation: PerturbationTag | None = None

    def __post_init__(self):
        if not self.video_id:
            raise ValidationError("video_id must be a non-empty string")
        if not isinstance(self.frame_count, int) or self.frame_count < 0:
            raise ValidationError(
                f"{self.video_id!r}: frame_count must be a nonnegative integer, "
                f"got {self.frame_count!r}"
            )
        if not (isinstance(self.fps, (int, float)) and self.fps > 0):
            raise ValidationError(
                f"{self.video_id!r}: fps must be positive, got {self.fps!r}"
            )
        if self.label == Label.GENUINE:
            if self.deepfake_mode is not None and self.deepfake_mode != DeepfakeMode.NONE:
                raise ValidationError(
                    f"{self.video_id!r}: label=genuine but deepfake_mode="
                    f"{self.deepfake_mode.value}"
                )
            if self.technique is not None and self.technique != Technique.NONE:
                raise ValidationError(
                    f"{self.video_id!r}: label=genuine but technique="
                    f"{self.technique.value}"
                )
        if self.perturbation is not None:
            PerturbationConfig().validate_tag(self.perturbation)

    def subset_key(self) -> str | None:
        """Evaluation subset this video's fakes belong to; None for genuine.

        Fakes group by dataset, then deepfake mode, then technique, using
        whichever tags are present: untagged fakes form a whole-dataset
        subset. Genuine videos are the shared positive pool of their
        dataset, so they carry no subset of their own.
        """
        if self.label == Label.GENUINE:
            return None
        parts = [self.dataset]
        if self.deepfake_mode is not None and self.deepfake_mode != DeepfakeMode.NONE:
            parts.append(self.deepfake_mode.value)
        if self.technique is not None and self.technique != Technique.NONE:
            parts.append(self.technique.value)
        return "/".join(parts)

    def to_json(self) -> dict:
        record = {
            "video_id": self.video_id,
            "label": self.label.value,
            "dataset": self.dataset,
            "frame_count": self.frame_count,
            "fps": self.fps,
            "paths": dict(self.paths),
        }
        if self.deepfake_mode is not None:
            record["deepfake_mode"] = self.deepfake_mode.value
        if self.technique is not None:
            record["technique"] = self.technique.value
        if self.perturbation is not None:
            record["perturbation"] = self.perturbation.to_json()
        return record

    @classmethod
    def from_json(cls, record: dict, strict: bool = True) -> ManifestEntry:
        unknown = sorted(
            k for k in record if k not in _MANIFEST_REQUIRED + _MANIFEST_OPTIONAL
        )
        if unknown:
            if strict:
                raise ValidationError(
                    f"{record.get('video_id', '<no id>')!r}: unknown manifest keys "
                    f"{unknown} (use lax mode to tolerate)"
                )
            logger.warning(
                "manifest entry %r: ignoring unknown keys %s",
                record.get("video_id", "<no id>"),
                unknown,
            )
        missing = [k for k in _MANIFEST_REQUIRED if k not in record]
        if missing:
            raise ValidationError(
                f"{record.get('video_id', '<no id>')!r}: missing manifest keys {missing}"
            )
        try:
            label = Label(record["label"])
        except ValueError:
            raise ValidationError(
                f"{record['video_id']!r}: unknown label {record['label']!r}"
            ) from None
        mode = _parse_optional_enum(record, "deepfake_mode", DeepfakeMode)
        technique = _parse_optional_enum(record, "technique", Technique)
        perturbation = None
        if record.get("perturbation") is not None:
            perturbation = PerturbationTag.from_json(record["perturbation"])
        paths = record["paths"]
        if not isinstance(paths, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in paths.items()
        ):
            raise ValidationError(
                f"{record['video_id']!r}: paths must map kind strings to path strings"
            )
        unknown_kinds = sorted(k for k in paths if k not in FRONTEND_KINDS)
        if unknown_kinds:
            if strict:
                raise ValidationError(
                    f"{record['video_id']!r}: unknown frontend-output kinds "
                    f"{unknown_kinds} (known: {list(FRONTEND_KINDS)})"
                )
            logger.warning(
                "manifest entry %r: ignoring unknown frontend-output kinds %s",
                record["video_id"],
                unknown_kinds,
            )
            paths = {k: v for k, v in paths.items() if k in FRONTEND_KINDS}
        frame_count = record["frame_count"]
        if isinstance(frame_count, bool) or not isinstance(frame_count, int):
            raise ValidationError(
                f"{record['video_id']!r}: frame_count must be an integer, "
                f"got {frame_count!r}"
            )
        return cls(
            video_id=record["video_id"],
            label=label,
            dataset=record["dataset"],
            frame_count=frame_count,
            fps=float(record["fps"]),
            paths=dict(paths),
            deepfake_mode=mode,
            technique=technique,
            perturbation=perturbation,
        )


def _parse_optional_enum(record, key, enum_cls):
    value = record.get(key)
    if value is None:
        return None
    try:
        member = enum_cls(value)
    except ValueError:
        raise ValidationError(
            f"{record.get('video_id', '<no id>')!r}: unknown {key} {value!r} "
            f"(expected one of {[m.value for m in enum_cls]})"
        ) from None
    # "none" and absent mean the same thing; normalize to absent.
    return None if member.value == "none" else member


@dataclass(frozen=True)
class TranscriptPair:
    """Reference (audio ASR) and hypothesis (lip VSR) token sequences.

    Either list may be empty: silence, or a decode that produced nothing.
    Tokens are non-empty and contain no internal whitespace.
    """

    video_id: str
    reference_tokens: tuple[str, ...]
    hypothesis_tokens: tuple[str, ...]

    def __post_init__(self):
        for side, tokens in (
            ("reference", self.reference_tokens),
            ("hypothesis", self.hypothesis_tokens),
        ):
            for i, token in enumerate(tokens):
                if not token or token.split() != [token]:
                    raise SchemaError(
                        f"{self.video_id!r}: {side} token {i} is empty or contains "
                        f"whitespace: {token!r}"
                    )

    def to_json(self) -> dict:
        return {
            "video_id": self.video_id,
            "reference_tokens": list(self.reference_tokens),
            "hypothesis_tokens": list(self.hypothesis_tokens),
        }

    @classmethod
    def from_json(cls, record: dict) -> TranscriptPair:
        return cls(
            video_id=record["video_id"],
            reference_tokens=tuple(record["reference_tokens"]),
            hypothesis_tokens=tuple(record["hypothesis_tokens"]),
        )


@dataclass(frozen=True)
class EmbeddingFrameSeries:
    """Per-frame paired audio/video embedding vectors for one video."""

    video_id: str
    dim: int
    frames: tuple[tuple[tuple[float, ...], tuple[float, ...]], ...]

    def __post_init__(self):
        if self.dim < 1:
            raise SchemaError(f"{self.video_id!r}: dim must be positive, got {self.dim}")
        for i, (audio_vec, video_vec) in enumerate(self.frames):
            if len(audio_vec) != self.dim or len(video_vec) != self.dim:
                raise SchemaError(
                    f"{self.video_id!r}: frame {i} has dims "
                    f"(audio {len(audio_vec)}, video {len(video_vec)}), expected {self.dim}"
                )
            for name, vec in (("audio", audio_vec), ("video", video_vec)):
                if not all(math.isfinite(x) for x in vec):
                    raise SchemaError(
                        f"{self.video_id!r}: frame {i} {name} vector has "
                        f"non-finite values"
                    )

    def to_json(self) -> dict:
        return {
            "video_id": self.video_id,
            "dim": self.dim,
            "frames": [
                {"audio": list(audio_vec), "video": list(video_vec)}
                for audio_vec, video_vec in self.frames
            ],
        }

    @classmethod
    def from_json(cls, record: dict) -> EmbeddingFrameSeries:
        frames = tuple(
            (tuple(float(x) for x in f["audio"]), tuple(float(x) for x in f["video"]))
            for f in record["frames"]
        )
        return cls(video_id=record["video_id"], dim=int(record["dim"]), frames=frames)


@dataclass(frozen=True)
class SyncScoreSeries:
    """Per-window synchronization scores for one video (higher = more in sync)."""

    video_id: str
    scores: tuple[float, ...]
    window_len: int = DEFAULT_WINDOW_LEN
    stride: int = DEFAULT_STRIDE

    def __post_init__(self):
        if self.window_len < 1:
            raise SchemaError(
                f"{self.video_id!r}: window_len must be positive, got {self.window_len}"
            )
        if self.stride < 1:
            raise SchemaError(
                f"{self.video_id!r}: stride must be positive, got {self.stride}"
            )
        if not all(math.isfinite(s) for s in self.scores):
            raise SchemaError(f"{self.video_id!r}: non-finite synchronization score")

    def check_length(self, frame_count: int) -> None:
        """Raise unless the score count matches the manifest's frame count."""
        expected = expected_window_count(frame_count, self.window_len, self.stride)
        if len(self.scores) != expected:
            raise SchemaError(
                f"{self.video_id!r}: {len(self.scores)} sync scores but "
                f"frame_count {frame_count} with window {self.window_len} and "
                f"stride {self.stride} implies {expected}"
            )

    def to_json(self) -> dict:
        return {
            "video_id": self.video_id,
            "window_len": self.window_len,
            "stride": self.stride,
            "scores": list(self.scores),
        }

    @classmethod
    def from_json(cls, record: dict) -> SyncScoreSeries:
        return cls(
            video_id=record["video_id"],
            window_len=int(record.get("window_len", DEFAULT_WINDOW_LEN)),
            stride=int(record.get("stride", DEFAULT_STRIDE)),
            scores=tuple(float(s) for s in record["scores"]),
        )


@dataclass(frozen=True)
class ScoreRecord:
    """Per-video raw and normalized system scores.

    ``raw`` holds whatever systems produced a score: cosine-percentile under
    SCFD, mean sync score under TCFD, and the word error rate under
    CCFD_WER (lower = more consistent; possibly Infinity). ``normalized``
    holds [0, 1] higher-is-more-genuine scores keyed SCFD/TCFD/CCFD, and
    ``fused`` their average when all three are present.
    """

    video_id: str
    dataset: str
    raw: dict[str, float]
    normalized: dict[str, float] = field(default_factory=dict)
    fused: float | None = None

    def __post_init__(self):
        wer_value = self.raw.get(RAW_CCFD_WER)
        if wer_value is not None and not (wer_value >= 0 or math.isinf(wer_value)):
            raise ValidationError(
                f"{self.video_id!r}: CCFD_WER must be nonnegative or Infinity, "
                f"got {wer_value}"
            )
        for system, value in self.normalized.items():
            if not 0.0 <= value <= 1.0:
                raise ValidationError(
                    f"{self.video_id!r}: normalized {system} score {value} "
                    f"outside [0, 1]"
                )
        if self.fused is not None and not 0.0 <= self.fused <= 1.0:
            raise ValidationError(
                f"{self.video_id!r}: fused score {self.fused} outside [0, 1]"
            )

    def systems_present(self) -> dict[str, bool]:
        return {
            SYSTEM_SCFD: SYSTEM_SCFD in self.raw,
            SYSTEM_TCFD: SYSTEM_TCFD in self.raw,
            SYSTEM_CCFD: RAW_CCFD_WER in self.raw,
        }

    def to_json(self) -> dict:
        record = {
            "video_id": self.video_id,
            "dataset": self.dataset,
            "systems": self.systems_present(),
            "raw": {k: self.raw[k] for k in sorted(self.raw)},
            "normalized": {k: self.normalized[k] for k in sorted(self.normalized)},
        }
        if self.fused is not None:
            record["fused"] = self.fused
        return record

    @classmethod
    def from_json(cls, record: dict) -> ScoreRecord:
        return cls(
            video_id=record["video_id"],
            dataset=record["dataset"],
            raw={k: float(v) for k, v in record["raw"].items()},
            normalized={k: float(v) for k, v in record.get("normalized", {}).items()},
            fused=None if record.get("fused") is None else float(record["fused"]),
        )


class FrontendOutputs(NamedTuple):
    """Whichever frontend outputs exist for one manifest entry."""

    transcripts: TranscriptPair | None
    embeddings: EmbeddingFrameSeries | None
    sync: SyncScoreSeries | None


# ---------------------------------------------------------------------------
# File I/O
# ---------------------------------------------------------------------------


def read_file_header(path: str | Path, schema: str | None = None) -> dict:
    """Read a file's header record, optionally requiring a schema id.

    Headers may carry extra keys beyond ``schema`` (adapter provenance,
    normalization stats); those are returned verbatim.
    """
    path = Path(path)
    with open(path, encoding="utf-8") as handle:
        header_line = handle.readline()
    if not header_line.strip():
        raise ParseError("empty file, expected a schema header", path=path, line=1)
    try:
        header = json.loads(header_line)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid header: {exc.msg}", path=path, line=1) from exc
    if not isinstance(header, dict) or "schema" not in header:
        raise ParseError("header must be an object with a 'schema' key", path=path, line=1)
    if schema is not None and header["schema"] != schema:
        raise ParseError(
            f"expected schema {schema!r}, got {header['schema']!r}", path=path, line=1
        )
    return header


def _iter_records(path: Path, schema: str) -> Iterator[tuple[int, dict]]:
    """Yield (line number, record) after checking the header line."""
    read_file_header(path, schema)
    with open(path, encoding="utf-8") as handle:
        handle.readline()  # header, already validated
        for lineno, line in enumerate(handle, start=2):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(exc.msg, path=path, line=lineno) from exc
            if not isinstance(record, dict):
                raise ParseError("record is not an object", path=path, line=lineno)
            yield lineno, record


def _write_records(
    path: Path,
    schema: str,
    records: Iterable[dict],
    header_extra: dict | None = None,
) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = {"schema": schema, **(header_extra or {})}
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(json.dumps(header, sort_keys=True) + "\n")
        for record in records:
            handle.write(json.dumps(record, sort_keys=True) + "\n")


def load_manifest(path: str | Path, strict: bool = True) -> list[ManifestEntry]:
    """Load and validate a manifest file.

    Relative frontend-output paths are resolved against the manifest's own
    directory, so entries are usable regardless of the working directory.
    """
    path = Path(path)
    base = path.resolve().parent
    entries = []
    seen: dict[str, int] = {}
    for lineno, record in _iter_records(path, SCHEMA_MANIFEST):
        try:
            entry = ManifestEntry.from_json(record, strict=strict)
        except ValidationError as exc:
            raise ValidationError(f"{path}:{lineno}: {exc}") from exc
        if entry.video_id in seen:
            raise ValidationError(
                f"{path}:{lineno}: duplicate video_id {entry.video_id!r} "
                f"(first seen on line {seen[entry.video_id]})"
            )
        seen[entry.video_id] = lineno
        resolved = {
            kind: str((base / p)) if not Path(p).is_absolute() else p
            for kind, p in entry.paths.items()
        }
        entries.append(replace(entry, paths=resolved))
    return entries


def save_manifest(entries: Iterable[ManifestEntry], path: str | Path) -> None:
    _write_records(path, SCHEMA_MANIFEST, (e.to_json() for e in entries))


def _load_keyed_file(path, schema, parse, kind):
    table = {}
    for lineno, record in _iter_records(Path(path), schema):
        try:
            value = parse(record)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(
                f"malformed {kind} record: {exc}", path=path, line=lineno
            ) from exc
        if value.video_id in table:
            raise SchemaError(
                f"{path}:{lineno}: duplicate {kind} record for {value.video_id!r}"
            )
        table[value.video_id] = value
    return table


def load_transcripts_file(path: str | Path) -> dict[str, TranscriptPair]:
    return _load_keyed_file(path, SCHEMA_TRANSCRIPTS, TranscriptPair.from_json, "transcripts")


def load_embeddings_file(path: str | Path) -> dict[str, EmbeddingFrameSeries]:
    return _load_keyed_file(path, SCHEMA_EMBEDDINGS, EmbeddingFrameSeries.from_json, "embeddings")


def load_sync_file(path: str | Path) -> dict[str, SyncScoreSeries]:
    return _load_keyed_file(path, SCHEMA_SYNC, SyncScoreSeries.from_json, "sync")


def save_transcripts_file(pairs: Iterable[TranscriptPair], path: str | Path) -> None:
    _write_records(path, SCHEMA_TRANSCRIPTS, (p.to_json() for p in pairs))


def save_embeddings_file(series: Iterable[EmbeddingFrameSeries], path: str | Path) -> None:
    _write_records(path, SCHEMA_EMBEDDINGS, (s.to_json() for s in series))


def save_sync_file(series: Iterable[SyncScoreSeries], path: str | Path) -> None:
    _write_records(path, SCHEMA_SYNC, (s.to_json() for s in series))


_KIND_LOADERS = {
    "transcripts": load_transcripts_file,
    "embeddings": load_embeddings_file,
    "sync": load_sync_file,
}


def load_frontend_outputs(
    entry: ManifestEntry,
    cache: dict[str, dict] | None = None,
    kinds: tuple[str, ...] | None = None,
) -> FrontendOutputs:
    """Load whichever frontend outputs exist for one manifest entry.

    A kind with no path in the manifest is absent (None), as is a video
    missing from a shared multi-video file. A single-record file whose
    video_id differs from the entry's is a misrouted file and raises
    :class:`SchemaError`. Pass a dict as ``cache`` to parse each shared
    file only once across entries; pass ``kinds`` to read only the file
    kinds a caller actually needs.
    """
    wanted = FRONTEND_KINDS if kinds is None else kinds
    results = {}
    for kind in FRONTEND_KINDS:
        path = entry.paths.get(kind)
        if path is None or kind not in wanted:
            results[kind] = None
            continue
        if cache is not None and path in cache:
            table = cache[path]
        else:
            table = _KIND_LOADERS[kind](path)
            if cache is not None:
                cache[path] = table
        value = table.get(entry.video_id)
        if value is None:
            if len(table) == 1:
                (other_id,) = table
                raise SchemaError(
                    f"{path}: {kind} file is for video {other_id!r}, "
                    f"not {entry.video_id!r}"
                )
            results[kind] = None
            continue
        if kind == "sync":
            value.check_length(entry.frame_count)
        results[kind] = value
    return FrontendOutputs(**results)


def load_score_records(path: str | Path) -> list[ScoreRecord]:
    records = []
    seen = set()
    for lineno, record in _iter_records(Path(path), SCHEMA_SCORES):
        try:
            value = ScoreRecord.from_json(record)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(
                f"malformed score record: {exc}", path=path, line=lineno
            ) from exc
        if value.video_id in seen:
            raise ValidationError(
                f"{path}:{lineno}: duplicate score record for {value.video_id!r}"
            )
        seen.add(value.video_id)
        records.append(value)
    return records


def save_score_records(
    records: Iterable[ScoreRecord],
    path: str | Path,
    normalization: list[dict] | None = None,
) -> None:
    """Write score records; normalization stats, if given, ride in the header."""
    header_extra = {"normalization": normalization} if normalization else None
    _write_records(
        path, SCHEMA_SCORES, (r.to_json() for r in records), header_extra=header_extra
    )
