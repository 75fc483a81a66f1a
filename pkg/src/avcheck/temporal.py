"""Temporal consistency scoring.

A synchronization frontend scores sliding windows of frames (default
window of 5 frames, stride 1) for how well lip motion lines up with the
audio. The video-level score is the mean over all windows. Scores are
required to be oriented "higher = more synchronized"; that orientation is
part of the interchange contract with whatever model produced them.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from .errors import EmptyInput

if TYPE_CHECKING:
    from .interchange import SyncScoreSeries

__all__ = ["expected_window_count", "tcfd_score"]


def expected_window_count(frame_count: int, window_len: int, stride: int) -> int:
    """Number of full windows a clip of `frame_count` frames yields.

    ``max(0, floor((frame_count - window_len) / stride) + 1)``: a clip
    shorter than one window yields no windows at all.
    """
    if window_len < 1:
        raise ValueError(f"window_len must be >= 1, got {window_len}")
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    if frame_count < 0:
        raise ValueError(f"frame_count must be >= 0, got {frame_count}")
    return max(0, (frame_count - window_len) // stride + 1)


def tcfd_score(series: SyncScoreSeries) -> float:
    """Video-level temporal consistency: mean synchronization score over windows.

    A video too short for a single window has no defined score and raises
    :class:`EmptyInput`; callers exclude such videos from evaluation rather
    than inventing a default.
    """
    if len(series.scores) == 0:
        raise EmptyInput(
            f"no synchronization windows for {series.video_id!r} "
            f"(video shorter than one window)"
        )
    return float(np.mean(series.scores))
