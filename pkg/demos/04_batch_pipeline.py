"""
The batch pipeline: manifest in, report out
===========================================

Frontends hand over their outputs as JSON Lines files; a manifest ties
them to videos and ground truth. The three pipeline stages are plain
functions here, with CLI equivalents noted - both read and write the
same interchange files (documented in docs/formats.md).
"""
# %%
# Fabricate a small dataset on disk: 6 genuine and 10 fake videos across
# two deepfake modes, with all three frontend outputs per video.

import tempfile
from pathlib import Path

import numpy as np

from avcheck import (
    EmbeddingFrameSeries,
    Label,
    DeepfakeMode,
    ManifestEntry,
    SyncScoreSeries,
    Technique,
    TranscriptPair,
    load_manifest,
    save_manifest,
)
from avcheck.interchange import (
    save_embeddings_file,
    save_sync_file,
    save_transcripts_file,
)

rng = np.random.default_rng(11)
workdir = Path(tempfile.mkdtemp(prefix="avcheck-demo-"))
STORY = "SHE SOLD SEA SHELLS DOWN BY THE SEA SHORE YESTERDAY MORNING".split()

entries, transcripts, embeddings, sync = [], [], [], []

def make_video(video_id, genuine, mode=None, technique=None):
    n_frames = int(rng.integers(40, 80))
    # content: genuine lips track the audio; fakes garble more words
    n_bad = int(rng.integers(0, 2)) if genuine else int(rng.integers(4, 9))
    bad = rng.choice(len(STORY), size=n_bad, replace=False)
    hypothesis = [f"UM{i}" if i in bad else w for i, w in enumerate(STORY)]
    transcripts.append(TranscriptPair(video_id, tuple(STORY), tuple(hypothesis)))
    # semantic: per-frame cosine pulled from different regimes
    target = 0.8 if genuine else 0.15
    frames = []
    for _ in range(n_frames):
        c = float(np.clip(rng.normal(target, 0.1), -1, 1))
        frames.append(((1.0, 0.0), (c, float(np.sqrt(1 - c * c)))))
    embeddings.append(EmbeddingFrameSeries(video_id, 2, tuple(frames)))
    # temporal: per-window sync scores
    loc = 0.75 if genuine else 0.35
    sync.append(SyncScoreSeries(video_id, tuple(rng.normal(loc, 0.05, n_frames - 4))))
    entries.append(ManifestEntry(
        video_id=video_id,
        label=Label.GENUINE if genuine else Label.FAKE,
        dataset="DemoSet",
        frame_count=n_frames,
        fps=25.0,
        paths={"transcripts": "transcripts.jsonl",
               "embeddings": "embeddings.jsonl",
               "sync": "sync.jsonl"},
        deepfake_mode=mode,
        technique=technique,
    ))

for i in range(6):
    make_video(f"real-{i:02d}", genuine=True)
for i in range(5):
    make_video(f"swap-{i:02d}", genuine=False,
               mode=DeepfakeMode.FVRA, technique=Technique.GAN)
for i in range(5):
    make_video(f"lipsync-{i:02d}", genuine=False,
               mode=DeepfakeMode.FVFA, technique=Technique.GAN_WL)

save_transcripts_file(transcripts, workdir / "transcripts.jsonl")
save_embeddings_file(embeddings, workdir / "embeddings.jsonl")
save_sync_file(sync, workdir / "sync.jsonl")
save_manifest(entries, workdir / "manifest.jsonl")
print(f"dataset written to {workdir}")

# %%
# Stage 1 - score. CLI: avcheck score manifest.jsonl --systems all -o scores.jsonl

from avcheck import score_manifest_entries

scoring = score_manifest_entries(load_manifest(workdir / "manifest.jsonl"))
print(f"scored {len(scoring.records)} videos, {len(scoring.warnings)} warning(s)")
sample = scoring.records[0]
print(f"  e.g. {sample.video_id}: {sample.raw}")

# %%
# Stage 2 - fuse. CLI: avcheck fuse scores.jsonl -o fused.jsonl

from avcheck import fuse_records

fusion = fuse_records(scoring.records)
for stats in fusion.stats:
    print(f"  fitted {stats.system} over {stats.population}: "
          f"[{stats.min:+.3f}, {stats.max:+.3f}]")

# %%
# Stage 3 - evaluate. CLI: avcheck evaluate fused.jsonl manifest.jsonl --report-dir reports

from avcheck import emit_report, evaluate_records

result = evaluate_records(fusion.records, entries)
report_paths = emit_report(
    result.auc_table,
    result.robustness,
    norm_stats=fusion.stats,
    warnings=scoring.warnings + fusion.warnings,
    out_dir=workdir / "reports",
    fmt="both",
)
print((workdir / "reports" / "report.txt").read_text())
