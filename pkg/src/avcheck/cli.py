"""Command-line surface: score, fuse, evaluate.

The pipeline is staged through files so each step's output can be
inspected and cached:

    avcheck score MANIFEST --systems all -o scores.jsonl
    avcheck fuse scores.jsonl -o fused.jsonl
    avcheck evaluate fused.jsonl MANIFEST --report-dir reports

Exit codes: 0 success, 2 parse/validation problems, 3 I/O problems.
Commands are deterministic given identical inputs and never modify their
input files. AVCHECK_REPORT_DIR sets the default report directory.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .errors import AvCheckError
from .fusion import NormalizationStats
from .interchange import (
    SYSTEM_CCFD,
    SYSTEM_SCFD,
    SYSTEM_TCFD,
    load_manifest,
    load_score_records,
    read_file_header,
    save_score_records,
)
from .evaluation import emit_report
from .pipeline import (
    PER_DATASET_POPULATION,
    GLOBAL_POPULATION,
    evaluate_records,
    fuse_records,
    score_manifest_entries,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3

_SYSTEM_FLAGS = {
    "scfd": SYSTEM_SCFD,
    "tcfd": SYSTEM_TCFD,
    "ccfd": SYSTEM_CCFD,
}

logger = logging.getLogger(__name__)


def _parse_systems(value: str) -> tuple[str, ...]:
    names = [v.strip().lower() for v in value.split(",") if v.strip()]
    if "all" in names:
        return (SYSTEM_SCFD, SYSTEM_TCFD, SYSTEM_CCFD)
    systems = []
    for name in names:
        if name not in _SYSTEM_FLAGS:
            raise argparse.ArgumentTypeError(
                f"unknown system {name!r} (choose from scfd, tcfd, ccfd, all)"
            )
        systems.append(_SYSTEM_FLAGS[name])
    if not systems:
        raise argparse.ArgumentTypeError("no systems selected")
    return tuple(dict.fromkeys(systems))


def _add_strictness(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument(
        "--strict",
        dest="strict",
        action="store_true",
        default=True,
        help="reject unknown manifest keys (default)",
    )
    group.add_argument(
        "--lax",
        dest="strict",
        action="store_false",
        help="warn about unknown manifest keys instead of rejecting",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avcheck",
        description="Score, fuse, and evaluate audio-visual consistency of claimed videos.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p_score = sub.add_parser("score", help="compute raw per-system scores for a manifest")
    p_score.add_argument("manifest", help="manifest file")
    p_score.add_argument(
        "--systems",
        type=_parse_systems,
        default=(SYSTEM_SCFD, SYSTEM_TCFD, SYSTEM_CCFD),
        help="comma-separated subset of {scfd,tcfd,ccfd} or 'all' (default: all)",
    )
    p_score.add_argument("-o", "--output", required=True, help="score records file to write")
    _add_strictness(p_score)

    p_fuse = sub.add_parser("fuse", help="normalize and average per-system scores")
    p_fuse.add_argument("scores", help="score records file from 'score'")
    p_fuse.add_argument(
        "--norm-population",
        choices=[PER_DATASET_POPULATION, GLOBAL_POPULATION],
        default=PER_DATASET_POPULATION,
        help="fit min-max per dataset (default) or over everything at once",
    )
    p_fuse.add_argument("-o", "--output", required=True, help="fused records file to write")

    p_eval = sub.add_parser("evaluate", help="AUC tables and robustness matrices")
    p_eval.add_argument("scores", help="score records file (fused or raw)")
    p_eval.add_argument("manifest", help="manifest file with ground-truth labels")
    p_eval.add_argument(
        "--report-dir",
        default=os.environ.get("AVCHECK_REPORT_DIR", "reports"),
        help="directory for report files (default: $AVCHECK_REPORT_DIR or ./reports)",
    )
    p_eval.add_argument(
        "--format",
        choices=["machine", "human", "both"],
        default="both",
        help="report format(s) to emit",
    )
    p_eval.add_argument(
        "--include-baseline-in-robustness",
        choices=["true", "false"],
        default="false",
        help="include the unperturbed baseline in robustness mean/std",
    )
    _add_strictness(p_eval)
    return parser


def _cmd_score(args) -> int:
    entries = load_manifest(args.manifest, strict=args.strict)
    result = score_manifest_entries(entries, systems=args.systems)
    for warning in result.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    save_score_records(result.records, args.output)
    print(f"wrote {len(result.records)} score record(s) to {args.output}")
    return EXIT_OK


def _cmd_fuse(args) -> int:
    records = load_score_records(args.scores)
    result = fuse_records(records, population=args.norm_population)
    for warning in result.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    save_score_records(
        result.records,
        args.output,
        normalization=[s.to_json() for s in result.stats],
    )
    fused_count = sum(1 for r in result.records if r.fused is not None)
    print(
        f"wrote {len(result.records)} record(s) to {args.output} "
        f"({fused_count} fused, {result.skipped} skipped)"
    )
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    records = load_score_records(args.scores)
    entries = load_manifest(args.manifest, strict=args.strict)
    header = read_file_header(args.scores)
    norm_stats = [
        NormalizationStats(
            system=s["system"], min=s["min"], max=s["max"], population=s["population"]
        )
        for s in header.get("normalization", [])
    ]
    result = evaluate_records(
        records,
        entries,
        include_baseline_in_robustness=args.include_baseline_in_robustness == "true",
    )
    written = emit_report(
        result.auc_table,
        result.robustness,
        norm_stats=norm_stats,
        out_dir=args.report_dir,
        fmt=args.format,
    )
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    handler = {"score": _cmd_score, "fuse": _cmd_fuse, "evaluate": _cmd_evaluate}[
        args.command
    ]
    try:
        return handler(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except AvCheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
