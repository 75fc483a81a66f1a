"""Batch orchestration: score a manifest, fuse records, evaluate.

The three stages are file-to-file so intermediate outputs stay
inspectable and cacheable: score reads a manifest plus frontend outputs
and emits raw per-system scores; fuse normalizes and averages them;
evaluate turns labeled scores into AUC tables and robustness matrices.
Record order is canonical (sorted by video_id) so outputs are
deterministic regardless of input order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from . import content, semantic, temporal
from .errors import EmptyInput
from .evaluation import (
    EVALUATION_SYSTEMS,
    AucTable,
    RobustnessMatrix,
    robustness_matrix,
    subset_breakdown,
)
from .fusion import NormalizationStats, apply_minmax, fit_minmax, fuse
from .interchange import (
    RAW_CCFD_WER,
    SYSTEM_CCFD,
    SYSTEM_SCFD,
    SYSTEM_TCFD,
    ManifestEntry,
    ScoreRecord,
    load_frontend_outputs,
)

logger = logging.getLogger(__name__)

__all__ = [
    "ScoringResult",
    "FusionResult",
    "EvaluationResult",
    "score_manifest_entries",
    "fuse_records",
    "evaluate_records",
]

# Which frontend output kind each scoring system consumes.
SYSTEM_INPUT_KIND = {
    SYSTEM_SCFD: "embeddings",
    SYSTEM_TCFD: "sync",
    SYSTEM_CCFD: "transcripts",
}

GLOBAL_POPULATION = "global"
PER_DATASET_POPULATION = "per-dataset"


@dataclass
class ScoringResult:
    records: list[ScoreRecord]
    warnings: list[str] = field(default_factory=list)


@dataclass
class FusionResult:
    records: list[ScoreRecord]
    stats: list[NormalizationStats]
    warnings: list[str] = field(default_factory=list)
    skipped: int = 0


@dataclass
class EvaluationResult:
    auc_table: AucTable
    robustness: RobustnessMatrix


def score_manifest_entries(
    entries: list[ManifestEntry],
    systems: tuple[str, ...] = (SYSTEM_SCFD, SYSTEM_TCFD, SYSTEM_CCFD),
) -> ScoringResult:
    """Compute raw scores for every entry, for every selected system.

    Only the frontend outputs the selected systems need are read. A video
    whose input for some system is absent simply lacks that system's score;
    degenerate inputs (empty transcripts, too-short videos) are scored per
    their contracts and flagged in the warnings.
    """
    records = []
    warnings: list[str] = []
    cache: dict[str, dict] = {}
    kinds = tuple(SYSTEM_INPUT_KIND[s] for s in systems)
    for entry in sorted(entries, key=lambda e: e.video_id):
        outputs = load_frontend_outputs(entry, cache=cache, kinds=kinds)
        raw: dict[str, float] = {}
        if SYSTEM_CCFD in systems and outputs.transcripts is not None:
            pair = outputs.transcripts
            reference = list(pair.reference_tokens)
            hypothesis = list(pair.hypothesis_tokens)
            alignment = content.align(reference, hypothesis)
            raw[RAW_CCFD_WER] = content.wer(alignment, len(reference))
            if not reference and not hypothesis:
                warnings.append(
                    f"{entry.video_id}: both transcripts empty; "
                    f"WER 0 is vacuous consistency"
                )
            elif not reference:
                warnings.append(
                    f"{entry.video_id}: empty reference with non-empty hypothesis; "
                    f"WER is infinite"
                )
        if SYSTEM_SCFD in systems and outputs.embeddings is not None:
            series = outputs.embeddings
            if len(series.frames) == 0:
                warnings.append(
                    f"{entry.video_id}: embedding series has no frames; "
                    f"SCFD not scored"
                )
            else:
                raw[SYSTEM_SCFD] = semantic.scfd_score(series)
        if SYSTEM_TCFD in systems and outputs.sync is not None:
            series = outputs.sync
            if len(series.scores) == 0:
                warnings.append(
                    f"{entry.video_id}: video shorter than one sync window; "
                    f"TCFD not scored"
                )
            else:
                raw[SYSTEM_TCFD] = temporal.tcfd_score(series)
        records.append(
            ScoreRecord(video_id=entry.video_id, dataset=entry.dataset, raw=raw)
        )
    return ScoringResult(records=records, warnings=warnings)


def fuse_records(
    records: list[ScoreRecord],
    population: str = PER_DATASET_POPULATION,
) -> FusionResult:
    """Normalize per-system scores and average them per video.

    SCFD and TCFD are min-max normalized over the population they were
    evaluated with: all loaded records of the same dataset by default, or
    everything at once with the global population mode. CCFD normalizes by
    formula. Videos missing any of the three raw scores keep whatever
    normalized scores exist but get no fused score (counted as skipped).
    """
    if population not in (PER_DATASET_POPULATION, GLOBAL_POPULATION):
        raise ValueError(f"unknown normalization population {population!r}")

    def population_key(record: ScoreRecord) -> str:
        if population == GLOBAL_POPULATION:
            return GLOBAL_POPULATION
        return record.dataset

    stats: dict[tuple[str, str], NormalizationStats] = {}
    for system in (SYSTEM_SCFD, SYSTEM_TCFD):
        pools: dict[str, list[float]] = {}
        for record in records:
            if system in record.raw:
                pools.setdefault(population_key(record), []).append(record.raw[system])
        for pool_name, scores in sorted(pools.items()):
            stats[(system, pool_name)] = fit_minmax(scores, system, pool_name)

    warnings: list[str] = []
    clamped = 0
    skipped = 0
    fused_records = []
    for record in records:
        normalized: dict[str, float] = {}
        for system in (SYSTEM_SCFD, SYSTEM_TCFD):
            if system not in record.raw:
                continue
            system_stats = stats[(system, population_key(record))]
            score = record.raw[system]
            if score < system_stats.min or score > system_stats.max:
                clamped += 1
            normalized[system] = apply_minmax(score, system_stats)
        if RAW_CCFD_WER in record.raw:
            normalized[SYSTEM_CCFD] = content.ccfd_score(record.raw[RAW_CCFD_WER])
        missing = [s for s in (SYSTEM_SCFD, SYSTEM_TCFD, SYSTEM_CCFD) if s not in normalized]
        if missing:
            skipped += 1
            warnings.append(
                f"{record.video_id}: not fused, missing {', '.join(missing)}"
            )
            fused_value = None
        else:
            fused_value = fuse(normalized)
        fused_records.append(
            ScoreRecord(
                video_id=record.video_id,
                dataset=record.dataset,
                raw=dict(record.raw),
                normalized=normalized,
                fused=fused_value,
            )
        )
    if clamped:
        warnings.append(f"{clamped} score(s) clamped to the fitted [min, max] range")
    if fused_records and skipped == len(fused_records):
        raise EmptyInput("zero videos fusible: no record carries all three raw scores")
    if not fused_records:
        raise EmptyInput("no score records to fuse")
    return FusionResult(
        records=sorted(fused_records, key=lambda r: r.video_id),
        stats=[stats[key] for key in sorted(stats)],
        warnings=warnings,
        skipped=skipped,
    )


def evaluate_records(
    records: list[ScoreRecord],
    entries: list[ManifestEntry],
    include_baseline_in_robustness: bool = False,
) -> EvaluationResult:
    """Build the AUC table and robustness matrix for labeled score records."""
    table = subset_breakdown(records, entries, systems=EVALUATION_SYSTEMS)
    if not any(table.rows.get(system) for system in table.rows):
        raise EmptyInput(
            "no AUC computable: every subset is degenerate (single-class data?)"
        )
    matrix = robustness_matrix(
        records,
        entries,
        systems=EVALUATION_SYSTEMS,
        include_baseline_in_stats=include_baseline_in_robustness,
    )
    return EvaluationResult(auc_table=table, robustness=matrix)
