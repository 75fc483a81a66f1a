"""Score normalization and fusion.

SCFD and TCFD produce scores on arbitrary scales, so each is min-max
normalized over the full population being evaluated before fusion. CCFD
bypasses min-max: its word error rate maps onto [0, 1] directly via
``1 - min(WER, 1)``. The fused score is the plain average of the three
normalized scores; no weights, no calibration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import EmptyInput, MissingSystem
from .interchange import SYSTEM_CCFD, SYSTEM_SCFD, SYSTEM_TCFD

__all__ = ["NormalizationStats", "fit_minmax", "apply_minmax", "fuse"]

DEGENERATE_NORMALIZED = 0.5  # min == max carries no evidence either way


@dataclass(frozen=True)
class NormalizationStats:
    """Observed extremes of one system's scores over one population.

    ``population`` names the evaluation set the stats were fitted on, so a
    report can show exactly what normalization was applied. Reusing stats
    on a different population works (out-of-range scores clamp) but should
    be a deliberate choice.
    """

    system: str
    min: float
    max: float
    population: str

    def __post_init__(self):
        if self.max < self.min:
            raise ValueError(f"max {self.max} < min {self.min} for {self.system}")

    def to_json(self) -> dict:
        return {
            "system": self.system,
            "min": self.min,
            "max": self.max,
            "population": self.population,
        }


def fit_minmax(
    scores: Sequence[float], system: str, population_tag: str
) -> NormalizationStats:
    """Record the observed min and max of a score population."""
    if len(scores) == 0:
        raise EmptyInput(f"cannot fit min-max for {system} on an empty population")
    return NormalizationStats(
        system=system, min=min(scores), max=max(scores), population=population_tag
    )


def apply_minmax(score: float, stats: NormalizationStats) -> float:
    """Rescale a score to [0, 1] by the fitted extremes.

    Scores outside the fitted range clamp to 0 or 1. A degenerate
    population (min == max) normalizes everything to 0.5.
    """
    if stats.max == stats.min:
        return DEGENERATE_NORMALIZED
    value = (score - stats.min) / (stats.max - stats.min)
    if value < 0.0:
        return 0.0
    if value > 1.0:
        return 1.0
    return value


def fuse(normalized: Mapping[str, float]) -> float:
    """Average the three normalized system scores.

    All three systems must be present; anything missing is reported by
    name so a caller can say which frontend output was absent.
    """
    missing = [s for s in (SYSTEM_SCFD, SYSTEM_TCFD, SYSTEM_CCFD) if s not in normalized]
    if missing:
        raise MissingSystem(f"cannot fuse without {', '.join(missing)}")
    return (
        normalized[SYSTEM_SCFD] + normalized[SYSTEM_TCFD] + normalized[SYSTEM_CCFD]
    ) / 3.0
