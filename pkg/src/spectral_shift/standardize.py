"""Domain-standardization baselines: histogram equalization and Gray World.

Both map every image toward a common appearance without reference to any
other image, so they apply symmetrically to source and target domains.
"""

from __future__ import annotations

import warnings

import numpy as np

from .dataset import require_rgb8
from .histograms import apply_lut, compute_histogram, equalization_lut, to_cdf
from .transforms import quantize_unit

GRAY_TARGET = 0.5  # mid-gray on the normalized scale

STANDARDIZE_METHODS = ("hist-eq", "gray-world")


def hist_equalize(img: np.ndarray) -> np.ndarray:
    """Flatten each channel's histogram toward uniform via its own CDF."""
    src = require_rgb8(img)
    out = np.empty_like(src)
    for c in range(3):
        lut = equalization_lut(to_cdf(compute_histogram(src[:, :, c])))
        out[:, :, c] = apply_lut(src[:, :, c], lut)
    return out


def gray_world(img: np.ndarray) -> np.ndarray:
    """Scale each channel so its mean intensity lands on mid-gray.

    Models per-channel illumination as a linear gain and removes it by
    normalizing each channel's average to 0.5 (then clamping and
    re-quantizing). An all-zero channel has no defined gain; it is left
    unchanged and a RuntimeWarning is emitted.
    """
    src = require_rgb8(img)
    arr = src.astype(np.float64) / 255.0
    npix = src.shape[0] * src.shape[1]
    out = arr.copy()
    for c in range(3):
        # exact integer sum keeps the mean independent of summation order
        mean = int(src[:, :, c].sum(dtype=np.int64)) / (255.0 * npix)
        if mean == 0.0:
            warnings.warn(
                f"gray_world: channel {c} is all-zero, leaving it unchanged",
                RuntimeWarning,
                stacklevel=2,
            )
            continue
        out[:, :, c] = arr[:, :, c] * (GRAY_TARGET / mean)
    np.clip(out, 0.0, 1.0, out=out)
    return quantize_unit(out)


def standardize_image(img: np.ndarray, method: str) -> np.ndarray:
    """Dispatch to one of the named standardization baselines."""
    if method == "hist-eq":
        return hist_equalize(img)
    if method == "gray-world":
        return gray_world(img)
    raise ValueError(f"unknown method {method!r}; expected one of {STANDARDIZE_METHODS}")
