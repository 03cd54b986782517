"""Image standardization and low-level vision: resize, gray, blur, edges, contours.

Everything here is pure and deterministic; batch callers can fan out per image.
"""

from __future__ import annotations

import os

import cv2
import numpy as np
from PIL import Image, UnidentifiedImageError

STANDARD_SIZE = 200  # square edge length after standardization

# Edge-detector calibration. Classic Canny defaults; counts on 200x200
# interiors land in the expected a-few-dozen-to-a-few-hundred range.
BLUR_KERNEL = (5, 5)
BLUR_SIGMA = 1.4
CANNY_LOW = 50
CANNY_HIGH = 150

__all__ = [
    "STANDARD_SIZE",
    "load_and_standardize",
    "standardize",
    "to_grayscale",
    "edge_map",
    "count_contours",
]


def load_and_standardize(path: str | os.PathLike) -> np.ndarray:
    """Decode an image file and return a 200x200 uint8 RGB array.

    Alpha is dropped, grayscale replicated across channels. Files already at
    200x200 RGB pass through pixel-identical. Raises OSError for unreadable
    files and ValueError for bytes that do not decode as PNG/JPEG.
    """
    try:
        with Image.open(path) as img:
            img.load()
            return standardize(img)
    except UnidentifiedImageError as exc:
        raise ValueError(f"not a decodable image: {path}") from exc


def standardize(img: Image.Image) -> np.ndarray:
    """200x200 RGB array from an open PIL image (bilinear, aspect ignored)."""
    if img.mode != "RGB":
        img = img.convert("RGB")
    if img.size != (STANDARD_SIZE, STANDARD_SIZE):
        img = img.resize((STANDARD_SIZE, STANDARD_SIZE), Image.BILINEAR)
    arr = np.asarray(img, dtype=np.uint8)
    assert arr.shape == (STANDARD_SIZE, STANDARD_SIZE, 3)
    return arr


def to_grayscale(rgb: np.ndarray) -> np.ndarray:
    """ITU luma 0.299 R + 0.587 G + 0.114 B, rounded to uint8."""
    _check_rgb(rgb)
    luma = (
        0.299 * rgb[..., 0].astype(np.float64)
        + 0.587 * rgb[..., 1].astype(np.float64)
        + 0.114 * rgb[..., 2].astype(np.float64)
    )
    return np.rint(luma).clip(0, 255).astype(np.uint8)


def edge_map(rgb: np.ndarray) -> np.ndarray:
    """Binary edge mask (0/255) from blur + Canny on the luma channel."""
    gray = to_grayscale(rgb)
    blurred = cv2.GaussianBlur(gray, BLUR_KERNEL, BLUR_SIGMA)
    return cv2.Canny(blurred, CANNY_LOW, CANNY_HIGH, L2gradient=True)


def count_contours(rgb: np.ndarray) -> int:
    """Number of 8-connected components in the edge mask ("items" on scene)."""
    edges = edge_map(rgb)
    n_labels, _ = cv2.connectedComponents((edges > 0).astype(np.uint8), connectivity=8)
    return int(n_labels) - 1  # label 0 is background


def _check_rgb(rgb: np.ndarray) -> None:
    if rgb.ndim != 3 or rgb.shape[2] != 3 or rgb.dtype != np.uint8:
        raise ValueError(f"expected HxWx3 uint8 array, got {rgb.shape} {rgb.dtype}")
