"""Per-image aesthetic features: color harmony, lightness level, complexity."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .colors import HUE_TERM_PEAKS, FuzzyHueHistogram, fuzzy_hue_histogram
from .imageops import count_contours

__all__ = [
    "FeatureVector",
    "HARMONY_TEMPLATES",
    "color_harmony",
    "harmony_from_histogram",
    "perceived_brightness",
    "lightness_level",
    "complexity",
    "extract_features",
]


@dataclass(frozen=True)
class FeatureVector:
    """The three per-image features feeding the aesthetic score."""

    color_harmony: float  # 0..100
    lightness: int        # 1..10
    complexity: int       # contour count, >= 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.color_harmony <= 100.0:
            raise ValueError(f"harmony out of range: {self.color_harmony}")
        if not 1 <= self.lightness <= 10:
            raise ValueError(f"lightness out of range: {self.lightness}")
        if self.complexity < 0:
            raise ValueError(f"negative complexity: {self.complexity}")


def _build_templates() -> tuple[tuple[str, frozenset[int]], ...]:
    """Classic palette shapes over the 8 hue terms (indices, 45 deg apart)."""
    n = len(HUE_TERM_PEAKS)
    templates: list[tuple[str, frozenset[int]]] = []
    for t in range(n):
        templates.append((f"monochromatic@{t * 45}", frozenset({t})))
    for t in range(n):
        templates.append((f"analogous@{t * 45}", frozenset({t, (t + 1) % n})))
    for t in range(n // 2):  # opposite pairs repeat after half a turn
        templates.append((f"complementary@{t * 45}", frozenset({t, (t + 4) % n})))
    for t in range(n):
        # base hue plus the two neighbours of its complement (135 and 225 deg away)
        templates.append(
            (f"split-complementary@{t * 45}", frozenset({t, (t + 3) % n, (t + 5) % n}))
        )
    return tuple(templates)


HARMONY_TEMPLATES = _build_templates()


def harmony_from_histogram(hist: FuzzyHueHistogram) -> float:
    """100 x best template fit. Achromatic mass fits every template.

    Neutrals (gray walls, white ceilings) coexist with any palette, so the
    achromatic mass counts toward the fit unconditionally.
    """
    best = 0.0
    for _, terms in HARMONY_TEMPLATES:
        fit = hist.achromatic + sum(hist.chromatic[t] for t in terms)
        if fit > best:
            best = fit
    return 100.0 * min(best, 1.0)


def color_harmony(img: np.ndarray) -> float:
    return harmony_from_histogram(fuzzy_hue_histogram(img))


def perceived_brightness(img: np.ndarray) -> float:
    """sqrt(0.299 Rbar^2 + 0.587 Gbar^2 + 0.114 Bbar^2) over channel means."""
    means = img.reshape(-1, 3).mean(axis=0, dtype=np.float64)
    return math.sqrt(0.299 * means[0] ** 2 + 0.587 * means[1] ** 2 + 0.114 * means[2] ** 2)


def lightness_level(img: np.ndarray) -> int:
    """Brightness binned into ten 25.6-wide levels; 0 -> 1, 255 -> 10.

    The bin index is computed as brightness*10/256 (the /256 is exact in
    binary floating point, unlike /25.6), with a small epsilon so means that
    land mathematically on a bin edge do not fall one bin short.
    """
    b = perceived_brightness(img)
    return min(10, math.floor(b * 10.0 / 256.0 + 1e-9) + 1)


def complexity(img: np.ndarray) -> int:
    return count_contours(img)


def extract_features(img: np.ndarray) -> FeatureVector:
    return FeatureVector(
        color_harmony=color_harmony(img),
        lightness=lightness_level(img),
        complexity=complexity(img),
    )
