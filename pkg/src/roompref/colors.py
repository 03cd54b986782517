"""Color model: RGB to HSI, basic-color naming, fuzzy hue histograms.

The 12-name vocabulary and its RGB centroids are this package's own
calibration; classification is nearest centroid in RGB with ties resolved
by vocabulary order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Vocabulary order doubles as the tie-break order everywhere below.
BASIC_COLORS = (
    "red", "orange", "yellow", "green", "blue", "purple",
    "pink", "brown", "beige", "gray", "black", "white",
)

COLOR_CENTROIDS = {
    "red": (200, 30, 30),
    "orange": (240, 130, 30),
    "yellow": (240, 220, 40),
    "green": (40, 160, 60),
    "blue": (40, 80, 200),
    "purple": (130, 60, 170),
    "pink": (240, 150, 190),
    "brown": (120, 75, 40),
    "beige": (225, 205, 170),
    "gray": (128, 128, 128),
    "black": (20, 20, 20),
    "white": (245, 245, 245),
}

_CENTROID_ARRAY = np.array([COLOR_CENTROIDS[name] for name in BASIC_COLORS], dtype=np.float64)

# Chromatic hue terms: triangles peaked every 45 degrees, spanning +/-45 with
# wrap-around, so adjacent memberships always sum to 1.
HUE_TERM_PEAKS = tuple(range(0, 360, 45))
HUE_TERM_SPACING = 45.0

# A pixel is treated as achromatic (no usable hue) when washed out or near
# the black/white ends.
ACHROMATIC_SAT = 0.12
ACHROMATIC_I_LOW = 0.08
ACHROMATIC_I_HIGH = 0.95

__all__ = [
    "BASIC_COLORS",
    "COLOR_CENTROIDS",
    "HUE_TERM_PEAKS",
    "HsiColor",
    "FuzzyHueHistogram",
    "rgb_to_hsi",
    "classify_basic_color",
    "dominant_colors",
    "fuzzy_hue_histogram",
]


@dataclass(frozen=True)
class HsiColor:
    """Hue in degrees [0, 360), saturation and intensity in [0, 1]."""

    h: float
    s: float
    i: float


@dataclass(frozen=True)
class FuzzyHueHistogram:
    """Mass per chromatic hue term (indexed by HUE_TERM_PEAKS) plus achromatic mass."""

    chromatic: tuple[float, ...]
    achromatic: float

    def __post_init__(self) -> None:
        if len(self.chromatic) != len(HUE_TERM_PEAKS):
            raise ValueError(f"expected {len(HUE_TERM_PEAKS)} chromatic masses")
        if any(m < 0 for m in self.chromatic) or self.achromatic < 0:
            raise ValueError("histogram masses must be nonnegative")
        if abs(self.total() - 1.0) > 1e-9:
            raise ValueError(f"masses must sum to 1, got {self.total()!r}")

    def total(self) -> float:
        return sum(self.chromatic) + self.achromatic


def rgb_to_hsi(r: int, g: int, b: int) -> HsiColor:
    """Standard arccos-form HSI conversion for one 8-bit RGB triple."""
    for v in (r, g, b):
        if not 0 <= v <= 255:
            raise ValueError(f"channel out of range: {(r, g, b)}")
    total = r + g + b
    intensity = total / (3 * 255)
    saturation = 0.0 if total == 0 else 1.0 - 3.0 * min(r, g, b) / total
    num = 0.5 * ((r - g) + (r - b))
    den = math.sqrt((r - g) ** 2 + (r - b) * (g - b))
    if den == 0.0:
        hue = 0.0  # r == g == b, hue undefined
    else:
        theta = math.degrees(math.acos(max(-1.0, min(1.0, num / den))))
        hue = (360.0 - theta) if b > g else theta
    return HsiColor(hue % 360.0, saturation, intensity)


def classify_basic_color(r: int, g: int, b: int) -> str:
    """Nearest centroid in RGB; ties go to the earlier vocabulary entry."""
    for v in (r, g, b):
        if not 0 <= v <= 255:
            raise ValueError(f"channel out of range: {(r, g, b)}")
    d2 = ((_CENTROID_ARRAY - np.array([r, g, b], dtype=np.float64)) ** 2).sum(axis=1)
    return BASIC_COLORS[int(np.argmin(d2))]  # argmin keeps the first minimum


def _classify_pixels(img: np.ndarray) -> np.ndarray:
    """Vocabulary index per pixel for a HxWx3 uint8 image."""
    flat = img.reshape(-1, 3).astype(np.float64)
    # (N, 12) squared distances; argmin's first-match rule is the tie-break.
    d2 = ((flat[:, None, :] - _CENTROID_ARRAY[None, :, :]) ** 2).sum(axis=2)
    return np.argmin(d2, axis=1)


def dominant_colors(img: np.ndarray, k: int = 5) -> list[tuple[str, int]]:
    """Top-k (name, pixel count) pairs, descending; count ties by vocabulary order."""
    labels = _classify_pixels(img)
    counts = np.bincount(labels, minlength=len(BASIC_COLORS))
    present = [(BASIC_COLORS[i], int(c)) for i, c in enumerate(counts) if c > 0]
    present.sort(key=lambda pair: (-pair[1], BASIC_COLORS.index(pair[0])))
    return present[:k]


def _hsi_arrays(img: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized HSI over a HxWx3 uint8 image; returns flat (h, s, i)."""
    flat = img.reshape(-1, 3).astype(np.float64)
    r, g, b = flat[:, 0], flat[:, 1], flat[:, 2]
    total = r + g + b
    intensity = total / (3 * 255)
    with np.errstate(invalid="ignore", divide="ignore"):
        saturation = np.where(total == 0, 0.0, 1.0 - 3.0 * flat.min(axis=1) / total)
        num = 0.5 * ((r - g) + (r - b))
        den = np.sqrt((r - g) ** 2 + (r - b) * (g - b))
        theta = np.degrees(np.arccos(np.clip(np.where(den == 0, 1.0, num / den), -1.0, 1.0)))
    hue = np.where(den == 0, 0.0, np.where(b > g, 360.0 - theta, theta)) % 360.0
    return hue, saturation, intensity


def fuzzy_hue_histogram(img: np.ndarray) -> FuzzyHueHistogram:
    """Distribute pixel mass over the 8 hue terms; washed-out pixels go achromatic."""
    hue, sat, intensity = _hsi_arrays(img)
    n = hue.size
    achromatic_mask = (
        (sat < ACHROMATIC_SAT)
        | (intensity < ACHROMATIC_I_LOW)
        | (intensity > ACHROMATIC_I_HIGH)
    )
    h = hue[~achromatic_mask]
    n_terms = len(HUE_TERM_PEAKS)
    masses = np.zeros(n_terms)
    if h.size:
        lower = np.floor(h / HUE_TERM_SPACING).astype(int) % n_terms
        frac = (h % HUE_TERM_SPACING) / HUE_TERM_SPACING
        upper = (lower + 1) % n_terms
        # Pairwise np.sum keeps rounding error well under the 1e-9 mass budget.
        for t in range(n_terms):
            masses[t] = np.sum((1.0 - frac)[lower == t]) + np.sum(frac[upper == t])
    achromatic = float(achromatic_mask.sum())
    return FuzzyHueHistogram(tuple(masses / n), achromatic / n)
