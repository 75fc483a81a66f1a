"""Ranking metrics, subset breakdowns, robustness matrices, and reports.

AUC here is the probability that a randomly chosen genuine video outscores
a randomly chosen fake one (ties count half), computed from rank sums in
O(n log n) rather than by comparing every pair. Subset breakdowns compare
each group of fakes against the full genuine pool of its dataset;
robustness matrices do the same per perturbation cell. Report emission is
deterministic: the same inputs always produce byte-identical files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .content import ccfd_score
from .errors import DegenerateLabels, EmptyInput, ValidationError
from .fusion import NormalizationStats
from .interchange import (
    RAW_CCFD_WER,
    SYSTEM_CCFD,
    SYSTEM_SCFD,
    SYSTEM_TCFD,
    AUDIO_SNR_LEVELS_DB,
    Label,
    ManifestEntry,
    Modality,
    ScoreRecord,
    VIDEO_PERTURBATION_KINDS,
    _write_records,
)

__all__ = [
    "SYSTEM_FUSION",
    "EVALUATION_SYSTEMS",
    "LabeledScore",
    "AucTable",
    "RobustnessMatrix",
    "auc",
    "aggregate_mean_std",
    "system_score",
    "subset_breakdown",
    "robustness_matrix",
    "emit_report",
]

SCHEMA_REPORT = "avcheck/report/v1"

SYSTEM_FUSION = "Fusion"
EVALUATION_SYSTEMS = (SYSTEM_SCFD, SYSTEM_TCFD, SYSTEM_CCFD, SYSTEM_FUSION)

ABSENT_CELL = "—"  # em dash rendered for degenerate cells


@dataclass(frozen=True)
class LabeledScore:
    """One video's score for one system, oriented higher = more likely genuine."""

    video_id: str
    label: Label
    score: float
    subset_key: str = ""

    def __post_init__(self):
        if not math.isfinite(self.score):
            raise ValidationError(
                f"{self.video_id!r}: non-finite score {self.score}"
            )


def auc(scores: Sequence[LabeledScore]) -> float:
    """Area under the ROC curve with genuine as the positive class.

    Computed as the normalized Mann-Whitney rank-sum statistic: equivalent
    to counting, over all (genuine, fake) pairs, the fraction where the
    genuine video scores higher, with ties worth 0.5.
    """
    genuine = [s.score for s in scores if s.label == Label.GENUINE]
    fake = [s.score for s in scores if s.label == Label.FAKE]
    n_genuine, n_fake = len(genuine), len(fake)
    if n_genuine == 0 or n_fake == 0:
        raise DegenerateLabels(
            f"need both classes, got {n_genuine} genuine and {n_fake} fake"
        )
    values = np.asarray(genuine + fake, dtype=float)
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values), dtype=float)
    ranks[order] = np.arange(1, len(values) + 1)
    # midranks for ties
    sorted_values = values[order]
    i = 0
    while i < len(sorted_values):
        j = i
        while j + 1 < len(sorted_values) and sorted_values[j + 1] == sorted_values[i]:
            j += 1
        if j > i:
            ranks[order[i : j + 1]] = 0.5 * (i + 1 + j + 1)
        i = j + 1
    rank_sum = float(np.sum(ranks[:n_genuine]))
    u_statistic = rank_sum - n_genuine * (n_genuine + 1) / 2.0
    return u_statistic / (n_genuine * n_fake)


def aggregate_mean_std(row: Sequence[float]) -> tuple[float, float]:
    """Mean and population standard deviation (divide by N) of a row of AUCs."""
    if len(row) == 0:
        raise EmptyInput("cannot aggregate an empty row")
    values = np.asarray(row, dtype=float)
    if np.all(values == values[0]):
        # a constant row has exactly zero spread; don't let the mean's
        # last-bit rounding manufacture a tiny nonzero std
        return float(values[0]), 0.0
    return float(values.mean()), float(values.std(ddof=0))


def system_score(record: ScoreRecord, system: str) -> float | None:
    """The evaluation score a record contributes to one system, if any.

    Normalized scores are preferred; raw scores back them up with
    orientation corrected (raw WER becomes ``1 - min(WER, 1)``), which
    leaves AUC unchanged since normalization is rank-preserving. Fusion
    only ever uses the fused score.
    """
    if system == SYSTEM_FUSION:
        return record.fused
    if system in record.normalized:
        return record.normalized[system]
    if system == SYSTEM_CCFD:
        wer_value = record.raw.get(RAW_CCFD_WER)
        return None if wer_value is None else ccfd_score(wer_value)
    return record.raw.get(system)


@dataclass
class AucTable:
    """Per-system, per-subset AUC with row summaries.

    ``rows[system][subset]`` holds the AUC; absent keys are degenerate
    cells (explained in ``notes``). ``mean``/``std`` summarize each
    system's present cells.
    """

    subsets: list[str]
    rows: dict[str, dict[str, float]]
    mean: dict[str, float]
    std: dict[str, float]
    notes: list[str] = field(default_factory=list)

    @property
    def systems(self) -> list[str]:
        return list(self.rows)


_MODE_ORDER = {"RVFA": 0, "FVRA": 1, "FVFA": 2}
_TECHNIQUE_ORDER = {"WL": 0, "GAN": 1, "FS": 2, "GAN_WL": 3, "FS_WL": 4}


def _subset_sort_key(subset: str):
    parts = subset.split("/")
    dataset = parts[0]
    mode = _MODE_ORDER.get(parts[1], 99) if len(parts) > 1 else 100
    technique = _TECHNIQUE_ORDER.get(parts[2], 99) if len(parts) > 2 else 100
    return (dataset, mode, technique, subset)


def _index_records(
    records: Sequence[ScoreRecord], entries: Sequence[ManifestEntry]
) -> list[tuple[ScoreRecord, ManifestEntry]]:
    by_id = {e.video_id: e for e in entries}
    paired = []
    for record in records:
        entry = by_id.get(record.video_id)
        if entry is None:
            raise ValidationError(
                f"score record {record.video_id!r} has no manifest entry"
            )
        paired.append((record, entry))
    return paired


def subset_breakdown(
    records: Sequence[ScoreRecord],
    entries: Sequence[ManifestEntry],
    systems: Sequence[str] = EVALUATION_SYSTEMS,
) -> AucTable:
    """One AUC per (system, subset): subset fakes vs. their dataset's genuine pool.

    Untagged fakes form a whole-dataset subset. Subsets that end up with a
    single class for some system are reported as absent cells with a note,
    not as failures.
    """
    paired = _index_records(records, entries)
    subsets = sorted(
        {e.subset_key() for _, e in paired if e.label == Label.FAKE} - {None},
        key=_subset_sort_key,
    )
    notes: list[str] = []
    rows: dict[str, dict[str, float]] = {}
    means: dict[str, float] = {}
    stds: dict[str, float] = {}
    for system in systems:
        scored = [
            (record, entry, system_score(record, system))
            for record, entry in paired
        ]
        scored = [(r, e, s) for r, e, s in scored if s is not None]
        if not scored:
            continue
        genuine_by_dataset: dict[str, list[LabeledScore]] = {}
        fakes_by_subset: dict[str, list[LabeledScore]] = {}
        for record, entry, score in scored:
            labeled = LabeledScore(
                video_id=record.video_id,
                label=entry.label,
                score=score,
                subset_key=entry.subset_key() or "",
            )
            if entry.label == Label.GENUINE:
                genuine_by_dataset.setdefault(entry.dataset, []).append(labeled)
            else:
                fakes_by_subset.setdefault(entry.subset_key(), []).append(labeled)
        row: dict[str, float] = {}
        for subset in subsets:
            fakes = fakes_by_subset.get(subset, [])
            dataset = subset.split("/")[0]
            genuine = genuine_by_dataset.get(dataset, [])
            if not fakes or not genuine:
                notes.append(
                    f"{system}/{subset}: degenerate subset "
                    f"({len(genuine)} genuine, {len(fakes)} fake with scores)"
                )
                continue
            row[subset] = auc(genuine + fakes)
        if row:
            means[system], stds[system] = aggregate_mean_std(list(row.values()))
        rows[system] = row
    return AucTable(subsets=subsets, rows=rows, mean=means, std=stds, notes=notes)


@dataclass
class RobustnessMatrix:
    """AUC per perturbation cell, with per-modality summaries per system.

    ``cells[system][cell_key]`` uses keys like ``video/blur/level2`` or
    ``audio/babble/snr+2.5dB``. ``baseline[system]`` is the AUC on the
    unperturbed group, reported alongside but excluded from the modality
    mean/std unless that was explicitly requested at build time.
    """

    cell_order: list[str]
    cells: dict[str, dict[str, float]]
    baseline: dict[str, float]
    modality_stats: dict[str, dict[str, tuple[float, float]]]
    includes_baseline_in_stats: bool
    notes: list[str] = field(default_factory=list)


def _cell_sort_key(cell: str):
    parts = cell.split("/")
    modality = parts[0]
    if modality == "video":
        kind = parts[1]
        kind_rank = (
            VIDEO_PERTURBATION_KINDS.index(kind)
            if kind in VIDEO_PERTURBATION_KINDS
            else 99
        )
        return (0, kind_rank, parts[1], parts[2])
    if modality == "audio":
        snr = float(parts[2].removeprefix("snr").removesuffix("dB"))
        try:
            snr_rank = AUDIO_SNR_LEVELS_DB.index(snr)
        except ValueError:
            snr_rank = 99
        return (1, 0, parts[1], snr_rank)
    return (2, 0, cell, 0)


def robustness_matrix(
    records: Sequence[ScoreRecord],
    entries: Sequence[ManifestEntry],
    systems: Sequence[str] = EVALUATION_SYSTEMS,
    include_baseline_in_stats: bool = False,
) -> RobustnessMatrix:
    """AUC per (system, perturbation cell) plus per-modality mean/std.

    Each cell's AUC compares the genuine and fake videos that carry that
    perturbation tag. Records without a tag form the unperturbed baseline;
    a missing baseline is noted, not fatal.
    """
    paired = _index_records(records, entries)
    cell_keys = sorted(
        {
            e.perturbation.cell_key()
            for _, e in paired
            if e.perturbation is not None and e.perturbation.modality != Modality.NONE
        },
        key=_cell_sort_key,
    )
    notes: list[str] = []
    cells: dict[str, dict[str, float]] = {}
    baseline: dict[str, float] = {}
    modality_stats: dict[str, dict[str, tuple[float, float]]] = {}

    has_baseline_group = any(
        e.perturbation is None or e.perturbation.modality == Modality.NONE
        for _, e in paired
    )
    if not has_baseline_group:
        notes.append("no unperturbed baseline group present")

    for system in systems:
        groups: dict[str, list[LabeledScore]] = {}
        for record, entry in paired:
            score = system_score(record, system)
            if score is None:
                continue
            if entry.perturbation is None or entry.perturbation.modality == Modality.NONE:
                key = "none"
            else:
                key = entry.perturbation.cell_key()
            groups.setdefault(key, []).append(
                LabeledScore(record.video_id, entry.label, score)
            )
        if not groups:
            continue
        system_cells: dict[str, float] = {}
        for cell in cell_keys:
            labeled = groups.get(cell, [])
            try:
                system_cells[cell] = auc(labeled)
            except DegenerateLabels as exc:
                notes.append(f"{system}/{cell}: degenerate cell ({exc})")
        cells[system] = system_cells
        if "none" in groups:
            try:
                baseline[system] = auc(groups["none"])
            except DegenerateLabels as exc:
                notes.append(f"{system}/baseline: degenerate ({exc})")
        per_modality: dict[str, tuple[float, float]] = {}
        for modality in ("video", "audio"):
            values = [
                v for c, v in system_cells.items() if c.startswith(modality + "/")
            ]
            if include_baseline_in_stats and system in baseline and values:
                values = values + [baseline[system]]
            if values:
                per_modality[modality] = aggregate_mean_std(values)
        modality_stats[system] = per_modality
    return RobustnessMatrix(
        cell_order=cell_keys,
        cells=cells,
        baseline=baseline,
        modality_stats=modality_stats,
        includes_baseline_in_stats=include_baseline_in_stats,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# Report emission
# ---------------------------------------------------------------------------


def emit_report(
    auc_table: AucTable | None,
    robustness: RobustnessMatrix | None,
    norm_stats: Sequence[NormalizationStats] = (),
    warnings: Sequence[str] = (),
    out_dir: str | Path = ".",
    fmt: str = "both",
) -> list[Path]:
    """Write evaluation results to a report directory.

    ``fmt`` selects ``machine`` (JSON Lines, full precision), ``human``
    (aligned text tables, 4 decimals), or ``both``. Output is deterministic
    and idempotent: rerunning on equal inputs rewrites identical bytes.
    """
    if fmt not in ("machine", "human", "both"):
        raise ValueError(f"unknown report format {fmt!r}")
    if auc_table is None and robustness is None:
        raise EmptyInput("nothing to report")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if fmt in ("machine", "both"):
        machine_path = out_dir / "report.jsonl"
        _write_records(machine_path, SCHEMA_REPORT, _machine_records(
            auc_table, robustness, norm_stats, warnings
        ))
        written.append(machine_path)
    if fmt in ("human", "both"):
        human_path = out_dir / "report.txt"
        human_path.write_text(
            _render_text(auc_table, robustness, norm_stats, warnings),
            encoding="utf-8",
        )
        written.append(human_path)
    return written


def _machine_records(auc_table, robustness, norm_stats, warnings):
    records = []
    if auc_table is not None:
        for system in auc_table.systems:
            for subset in auc_table.subsets:
                if subset in auc_table.rows[system]:
                    records.append({
                        "record": "auc_cell",
                        "system": system,
                        "subset": subset,
                        "auc": auc_table.rows[system][subset],
                    })
            if system in auc_table.mean:
                records.append({
                    "record": "auc_summary",
                    "system": system,
                    "mean": auc_table.mean[system],
                    "std": auc_table.std[system],
                })
        for note in auc_table.notes:
            records.append({"record": "note", "scope": "auc", "text": note})
    if robustness is not None:
        for system in robustness.cells:
            if system in robustness.baseline:
                records.append({
                    "record": "robustness_baseline",
                    "system": system,
                    "auc": robustness.baseline[system],
                })
            for cell in robustness.cell_order:
                if cell in robustness.cells[system]:
                    records.append({
                        "record": "robustness_cell",
                        "system": system,
                        "cell": cell,
                        "auc": robustness.cells[system][cell],
                    })
            for modality in ("video", "audio"):
                stats = robustness.modality_stats.get(system, {}).get(modality)
                if stats is not None:
                    records.append({
                        "record": "robustness_modality_summary",
                        "system": system,
                        "modality": modality,
                        "mean": stats[0],
                        "std": stats[1],
                        "includes_baseline": robustness.includes_baseline_in_stats,
                    })
        for note in robustness.notes:
            records.append({"record": "note", "scope": "robustness", "text": note})
    for stats in norm_stats:
        records.append({"record": "normalization", **stats.to_json()})
    for warning in warnings:
        records.append({"record": "warning", "text": warning})
    return records


def _format_cell(value: float | None) -> str:
    return ABSENT_CELL if value is None else f"{value:.4f}"


def _render_table(title: str, columns: list[str], rows: Mapping[str, list[str]]) -> list[str]:
    header = ["System"] + columns
    widths = [len(h) for h in header]
    body = []
    for system, cells in rows.items():
        line = [system] + cells
        widths = [max(w, len(c)) for w, c in zip(widths, line)]
        body.append(line)
    lines = [title, "=" * len(title)]
    lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
    for line in body:
        lines.append("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip())
    return lines


def _render_text(auc_table, robustness, norm_stats, warnings) -> str:
    sections: list[str] = []
    footnote_needed = False
    if auc_table is not None:
        rows = {}
        for system in auc_table.systems:
            cells = []
            for subset in auc_table.subsets:
                value = auc_table.rows[system].get(subset)
                footnote_needed |= value is None
                cells.append(_format_cell(value))
            cells.append(_format_cell(auc_table.mean.get(system)))
            cells.append(_format_cell(auc_table.std.get(system)))
            rows[system] = cells
        sections.extend(
            _render_table("AUC by subset", auc_table.subsets + ["Mean", "Std."], rows)
        )
        sections.append("")
    if robustness is not None and robustness.cells:
        rows = {}
        for system in robustness.cells:
            cells = [_format_cell(robustness.baseline.get(system))]
            for cell in robustness.cell_order:
                value = robustness.cells[system].get(cell)
                footnote_needed |= value is None
                cells.append(_format_cell(value))
            for modality in ("video", "audio"):
                stats = robustness.modality_stats.get(system, {}).get(modality)
                cells.append(_format_cell(stats[0] if stats else None))
                cells.append(_format_cell(stats[1] if stats else None))
            rows[system] = cells
        columns = (
            ["baseline"]
            + robustness.cell_order
            + ["video Mean", "video Std.", "audio Mean", "audio Std."]
        )
        sections.extend(_render_table("Robustness (AUC per perturbation)", columns, rows))
        if robustness.includes_baseline_in_stats:
            sections.append("(modality summaries include the unperturbed baseline)")
        sections.append("")
    if norm_stats:
        sections.append("Normalization")
        sections.append("=============")
        for stats in norm_stats:
            sections.append(
                f"{stats.system}: min={stats.min!r} max={stats.max!r} "
                f"population={stats.population}"
            )
        sections.append("")
    notes = []
    if auc_table is not None:
        notes.extend(auc_table.notes)
    if robustness is not None:
        notes.extend(robustness.notes)
    if footnote_needed:
        notes.insert(0, f"{ABSENT_CELL} marks a degenerate cell (single-class); see notes.")
    if notes:
        sections.append("Notes")
        sections.append("=====")
        sections.extend(f"- {note}" for note in notes)
        sections.append("")
    if warnings:
        sections.append("Warnings")
        sections.append("========")
        sections.extend(f"- {w}" for w in warnings)
        sections.append("")
    return "\n".join(sections)
