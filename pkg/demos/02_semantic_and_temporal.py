"""
Semantic and temporal consistency
=================================

Two more views of the same question. Semantic: do audio and video
*embeddings* of each frame point the same way? Temporal: do lip motion
and voice stay *synchronized* over sliding windows? Both demos fabricate
tiny frontend outputs; in production these come from pretrained encoders
via the interchange files.
"""
# %%
# Per-frame cosine similarity between the paired embeddings, then the 3rd
# percentile over frames. The percentile is nearest-rank, so the score is
# always a real frame's score - and a short burst of bad frames is enough
# to drag it down, which is exactly the point.

import numpy as np

from avcheck import EmbeddingFrameSeries, frame_scores, scfd_score

rng = np.random.default_rng(7)

def frame(angle_rad, dim=8):
    base = rng.normal(size=dim)
    base /= np.linalg.norm(base)
    # rotate inside the plane spanned by base and a random orthogonal mate
    mate = rng.normal(size=dim)
    mate -= mate @ base * base
    mate /= np.linalg.norm(mate)
    video = np.cos(angle_rad) * base + np.sin(angle_rad) * mate
    return tuple(base), tuple(video)

# 95 well-aligned frames, then a 5-frame splice where video diverges
frames = [frame(0.1) for _ in range(95)] + [frame(2.8) for _ in range(5)]
series = EmbeddingFrameSeries(video_id="spliced-clip", dim=8, frames=tuple(frames))

scores = frame_scores(series)
print(f"median frame score : {np.median(scores):+.3f}")
print(f"3rd percentile     : {scfd_score(series):+.3f}   <- the splice shows up here")

# %%
# Temporal scoring is deliberately plain: the mean of per-window sync
# scores. The interesting part is the contract - windows of 5 frames,
# stride 1, higher = more synchronized - and the refusal to score clips
# shorter than one window.

from avcheck import SyncScoreSeries, expected_window_count, tcfd_score

frame_count = 100
n_windows = expected_window_count(frame_count, window_len=5, stride=1)
print(f"{frame_count} frames -> {n_windows} windows")

in_sync = SyncScoreSeries("genuine-clip", tuple(0.8 + 0.1 * np.sin(i / 9) for i in range(n_windows)))
shifted = SyncScoreSeries("dubbed-clip", tuple(0.25 + 0.1 * np.sin(i / 9) for i in range(n_windows)))
print(f"genuine mean sync  : {tcfd_score(in_sync):.3f}")
print(f"dubbed  mean sync  : {tcfd_score(shifted):.3f}")

# %%
# Too short to hold even one window? That video is excluded from temporal
# evaluation rather than given an invented score.

from avcheck import EmptyInput

try:
    tcfd_score(SyncScoreSeries("four-frames", ()))
except EmptyInput as exc:
    print("unscoreable:", exc)
