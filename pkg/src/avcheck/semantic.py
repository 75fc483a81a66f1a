"""Semantic consistency scoring.

Each frame of a video carries a pair of embedding vectors, one from the
audio segment and one from the video frame. Per-frame cosine similarity is
aggregated to a video-level score by taking the 3rd percentile over all
frames, so a short burst of inconsistent frames drags the score down even
when most of the video looks fine.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

import numpy as np

from .errors import DimensionMismatch, EmptyInput

if TYPE_CHECKING:
    from .interchange import EmbeddingFrameSeries

__all__ = [
    "cosine_similarity",
    "frame_scores",
    "nearest_rank_percentile",
    "percentile_3",
    "scfd_score",
]


def cosine_similarity(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine of the angle between two equal-dimension vectors.

    Returns 0.0 when either vector has zero norm (neutral: no direction to
    compare). The result is clipped to [-1, 1] to absorb rounding.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.ndim != 1 or b.ndim != 1:
        raise DimensionMismatch("cosine_similarity expects 1-D vectors")
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatch(
            f"vector dimensions differ: {a.shape[0]} vs {b.shape[0]}"
        )
    if a.shape[0] == 0:
        raise DimensionMismatch("vectors must have at least one dimension")
    norm_a = np.linalg.norm(a)
    norm_b = np.linalg.norm(b)
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    value = float(np.dot(a, b) / (norm_a * norm_b))
    if value > 1.0:
        return 1.0
    if value < -1.0:
        return -1.0
    return value


def frame_scores(series: EmbeddingFrameSeries) -> list[float]:
    """Per-frame cosine similarity between audio and video embeddings."""
    scores = []
    for index, (audio_vec, video_vec) in enumerate(series.frames):
        try:
            scores.append(cosine_similarity(audio_vec, video_vec))
        except DimensionMismatch as exc:
            raise DimensionMismatch(f"frame {index}: {exc}") from exc
    return scores


def nearest_rank_percentile(values: Sequence[float], percentile: int) -> float:
    """Nearest-rank percentile: always one of the observed values.

    Sorts ascending and returns the element at 1-based rank
    ``ceil(percentile / 100 * n)``, clamped to the valid range. The rank is
    computed in integer arithmetic so e.g. the 3rd percentile of 100 values
    is exactly the 3rd smallest.
    """
    n = len(values)
    if n == 0:
        raise EmptyInput("percentile of an empty list")
    if not 0 < percentile <= 100:
        raise ValueError(f"percentile must be in (0, 100], got {percentile}")
    rank = -((-percentile * n) // 100)  # ceil(percentile * n / 100)
    index = min(max(rank - 1, 0), n - 1)
    return sorted(values)[index]


def percentile_3(scores: Sequence[float]) -> float:
    """3rd percentile of a non-empty score list (nearest-rank)."""
    return nearest_rank_percentile(scores, 3)


def scfd_score(series: EmbeddingFrameSeries) -> float:
    """Video-level semantic consistency: 3rd percentile of frame scores."""
    if len(series.frames) == 0:
        raise EmptyInput(f"no frames in embedding series for {series.video_id!r}")
    return percentile_3(frame_scores(series))
