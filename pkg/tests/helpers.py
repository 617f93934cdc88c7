"""Shared test utilities: random fixtures and independent brute-force oracles.

The oracles here deliberately avoid the library's own algorithms (no
searchsorted, no bincount LUT paths) so that agreement is evidence, not
tautology.
"""

from __future__ import annotations

import numpy as np

from spectral_shift import Cdf, ChannelHistogram, to_cdf

# (criterion, "PASS" | "FAIL") entries, echoed in the terminal summary
ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def random_image(rng: np.random.Generator, h: int = 32, w: int = 32) -> np.ndarray:
    return rng.integers(0, 256, size=(h, w, 3), dtype=np.uint8)


def full_range_image(rng: np.random.Generator, h: int = 32, w: int = 32) -> np.ndarray:
    """Random image whose every channel contains every level 0..255 at least once."""
    assert h * w >= 256
    img = np.empty((h, w, 3), dtype=np.uint8)
    for c in range(3):
        vals = np.concatenate(
            [
                np.arange(256, dtype=np.uint8),
                rng.integers(0, 256, size=h * w - 256, dtype=np.uint8),
            ]
        )
        rng.shuffle(vals)
        img[:, :, c] = vals.reshape(h, w)
    return img


def random_histogram(rng: np.random.Generator) -> ChannelHistogram:
    """Random histogram, sometimes sparse, always with a positive total."""
    bins = rng.integers(0, 50, size=256).astype(np.int64)
    if rng.random() < 0.5:
        keep = rng.random(256) < rng.uniform(0.05, 0.5)
        bins = np.where(keep, bins, 0)
    if bins.sum() == 0:
        bins[int(rng.integers(0, 256))] = 1
    return ChannelHistogram(bins=bins, total=int(bins.sum()))


def random_cdf(rng: np.random.Generator) -> Cdf:
    return to_cdf(random_histogram(rng))


def brute_force_matching_lut(source: Cdf, target: Cdf, mode: str) -> np.ndarray:
    """Evaluate the matching map by materializing all 256 x 256 comparisons.

    paper: largest y with G(y) <= F(x), 0 when no such y exists.
    conventional: smallest y with G(y) >= F(x); exists since G(255) = 1.
    """
    f = source.values[:, None]
    g = target.values[None, :]
    if mode == "paper":
        ok = g <= f
        reversed_first = np.argmax(ok[:, ::-1], axis=1)
        idx = np.where(ok.any(axis=1), 255 - reversed_first, 0)
    elif mode == "conventional":
        idx = np.argmax(g >= f, axis=1)
    else:
        raise ValueError(mode)
    return idx.astype(np.uint8)


def brute_force_apply(plane: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Per-pixel Python-loop LUT application."""
    out = np.empty_like(plane)
    flat_in = plane.ravel()
    flat_out = out.ravel()
    for i in range(flat_in.size):
        flat_out[i] = table[int(flat_in[i])]
    return out
