"""Dataset-relative normalization and the weighted aesthetic score."""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Iterable, Sequence

from .features import FeatureVector

# (harmony, lightness, simplicity); lightness carries double weight.
SCORE_WEIGHTS = (1.0, 2.0, 1.0)

__all__ = [
    "SCORE_WEIGHTS",
    "FeatureStats",
    "ScoredRow",
    "min_max_normalize",
    "aesthetic_score",
    "pearson_correlation",
    "score_corpus",
]


@dataclass(frozen=True)
class FeatureStats:
    """Per-feature corpus minima and maxima, frozen at ingestion time."""

    color_harmony: tuple[float, float]
    lightness: tuple[float, float]
    complexity: tuple[float, float]

    def __post_init__(self) -> None:
        for name in ("color_harmony", "lightness", "complexity"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name}: min {lo} > max {hi}")

    @classmethod
    def from_features(cls, features: Iterable[FeatureVector]) -> "FeatureStats":
        fs = list(features)
        if not fs:
            raise ValueError("cannot compute stats over an empty corpus")
        return cls(
            color_harmony=(min(f.color_harmony for f in fs), max(f.color_harmony for f in fs)),
            lightness=(min(f.lightness for f in fs), max(f.lightness for f in fs)),
            complexity=(min(f.complexity for f in fs), max(f.complexity for f in fs)),
        )


@dataclass(frozen=True)
class ScoredRow:
    """One image's raw features, normalized features, and aesthetic score."""

    image_id: str
    likes: int
    color_harmony: float
    lightness: int
    complexity: int
    ch_norm: float
    l_norm: float
    c_norm: float
    simplicity_norm: float
    aesthetic_score: float


def min_max_normalize(x: float, lo: float, hi: float) -> float:
    """(x - lo) / (hi - lo), or 0.5 when the corpus range is degenerate."""
    if lo > hi:
        raise ValueError(f"min {lo} > max {hi}")
    if hi == lo:
        return 0.5
    return (x - lo) / (hi - lo)


def aesthetic_score(ch_norm: float, l_norm: float, simplicity_norm: float) -> float:
    """Weighted average of the normalized features, lightness counted twice."""
    values = (ch_norm, l_norm, simplicity_norm)
    for v in values:
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"normalized inputs must lie in [0,1], got {values}")
    w = SCORE_WEIGHTS
    return (w[0] * ch_norm + w[1] * l_norm + w[2] * simplicity_norm) / sum(w)


def pearson_correlation(a: Sequence[float], b: Sequence[float]) -> float:
    """Standard Pearson r; raises ValueError on short or zero-variance input."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    if len(a) < 2:
        raise ValueError("correlation needs at least two points")
    try:
        return statistics.correlation(a, b)
    except statistics.StatisticsError as exc:
        raise ValueError(f"correlation undefined: {exc}") from exc


def score_corpus(
    entries: Sequence[tuple[str, int, FeatureVector]],
    stats: FeatureStats | None = None,
) -> tuple[FeatureStats, list[ScoredRow]]:
    """Normalize and score (imageId, likes, features) entries against the corpus.

    Stats default to the entries' own min/max; pass an existing snapshot to
    score new images against a frozen corpus instead.
    """
    if stats is None:
        stats = FeatureStats.from_features(f for _, _, f in entries)
    rows = []
    for image_id, likes, f in entries:
        ch_n = min_max_normalize(f.color_harmony, *stats.color_harmony)
        l_n = min_max_normalize(f.lightness, *stats.lightness)
        c_n = min_max_normalize(f.complexity, *stats.complexity)
        simplicity = 1.0 - c_n
        rows.append(
            ScoredRow(
                image_id=image_id,
                likes=likes,
                color_harmony=f.color_harmony,
                lightness=f.lightness,
                complexity=f.complexity,
                ch_norm=ch_n,
                l_norm=l_n,
                c_norm=c_n,
                simplicity_norm=simplicity,
                aesthetic_score=aesthetic_score(ch_n, l_n, simplicity),
            )
        )
    return stats, rows
