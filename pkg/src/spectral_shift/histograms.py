"""Per-channel histograms, CDFs, lookup tables, and Shannon entropy.

Everything in this module works on the 8-bit alphabet {0..255}: histograms
are 256 integer counts, CDFs are 256 monotone values ending at exactly 1.0,
and every pixel remapping is realized as a 256-entry lookup table (LUT).
Matching LUTs compose a source CDF with an inverse target CDF; two inverse
conventions are supported (see :class:`InverseMode`).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import EmptyChannelError, EmptySequenceError, ZeroTotalError

LEVELS = 256


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ChannelHistogram:
    """Pixel counts per 8-bit level for one channel.

    Attributes:
        bins: int64 array of 256 non-negative counts.
        total: sum of all counts (number of pixels tallied).
    """

    bins: np.ndarray
    total: int

    def __post_init__(self):
        bins = np.ascontiguousarray(self.bins, dtype=np.int64)
        if bins.shape != (LEVELS,):
            raise ValueError(f"expected {LEVELS} bins, got shape {bins.shape}")
        if (bins < 0).any():
            raise ValueError("negative bin count")
        if int(bins.sum()) != self.total:
            raise ValueError(f"total {self.total} does not equal bin sum {int(bins.sum())}")
        object.__setattr__(self, "bins", _frozen(bins))
        object.__setattr__(self, "total", int(self.total))


@dataclass(frozen=True)
class Cdf:
    """Normalized cumulative histogram: 256 values in [0, 1], ending at 1.0 exactly."""

    values: np.ndarray

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.shape != (LEVELS,):
            raise ValueError(f"expected {LEVELS} values, got shape {values.shape}")
        if values[0] < 0.0 or (np.diff(values) < 0.0).any():
            raise ValueError("CDF must be non-negative and non-decreasing")
        if values[-1] != 1.0:
            raise ValueError(f"CDF must end at exactly 1.0, got {values[-1]!r}")
        object.__setattr__(self, "values", _frozen(values))


@dataclass(frozen=True)
class Lut:
    """A 256-entry pixel remapping; entries are levels in [0, 255]."""

    map: np.ndarray

    def __post_init__(self):
        table = np.ascontiguousarray(self.map)
        if table.shape != (LEVELS,):
            raise ValueError(f"expected {LEVELS} entries, got shape {table.shape}")
        if table.dtype != np.uint8:
            if not np.issubdtype(table.dtype, np.integer):
                raise ValueError("LUT entries must be integers")
            if table.min() < 0 or table.max() > 255:
                raise ValueError("LUT entries must lie in [0, 255]")
            table = table.astype(np.uint8)
        object.__setattr__(self, "map", _frozen(table))

    @property
    def is_monotonic(self) -> bool:
        return bool((np.diff(self.map.astype(np.int16)) >= 0).all())


class InverseMode(enum.Enum):
    """Which inverse-CDF convention a matching LUT uses.

    PAPER takes the largest level y whose target CDF value does not exceed p
    (so p = 1 always maps to 255); CONVENTIONAL takes the smallest level y
    whose target CDF value reaches p, the textbook quantile function.
    """

    PAPER = "paper"
    CONVENTIONAL = "conventional"


def compute_histogram(channel) -> ChannelHistogram:
    """Tally pixel counts per level for a single channel.

    Args:
        channel: array-like of 8-bit levels, any shape.

    Raises:
        EmptyChannelError: the channel has zero pixels.
    """
    arr = np.asarray(channel)
    if arr.size == 0:
        raise EmptyChannelError("cannot build a histogram from an empty channel")
    if arr.dtype != np.uint8:
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError(f"channel must hold integer levels, got dtype {arr.dtype}")
        if arr.min() < 0 or arr.max() > 255:
            raise ValueError("channel levels must lie in [0, 255]")
    bins = np.bincount(arr.ravel().astype(np.int64, copy=False), minlength=LEVELS)
    return ChannelHistogram(bins=bins.astype(np.int64), total=int(arr.size))


def to_cdf(hist: ChannelHistogram) -> Cdf:
    """Normalize a histogram into a cumulative distribution.

    The last value is pinned to exactly 1.0 so that the p = 1 branch of the
    matching inverse is deterministic.

    Raises:
        ZeroTotalError: the histogram counted zero pixels.
    """
    if hist.total == 0:
        raise ZeroTotalError("cannot normalize a histogram with zero total")
    values = hist.bins.cumsum() / float(hist.total)
    values[-1] = 1.0
    return Cdf(values)


def build_matching_lut(source: Cdf, target: Cdf, mode: InverseMode = InverseMode.PAPER) -> Lut:
    """Build the LUT that matches a source CDF onto a target CDF.

    Each source level x maps through p = F(x) to an inverse-CDF lookup in the
    target. In PAPER mode the inverse is max{y : G(y) <= p} (0 when the set is
    empty); in CONVENTIONAL mode it is min{y : G(y) >= p}. Both yield a
    non-decreasing LUT.
    """
    p = source.values
    g = target.values
    if mode is InverseMode.PAPER:
        # number of levels with G(y) <= p, minus one; clamp the empty case to 0
        idx = np.searchsorted(g, p, side="right") - 1
        np.maximum(idx, 0, out=idx)
    elif mode is InverseMode.CONVENTIONAL:
        # first level with G(y) >= p; G(255) = 1 guarantees existence
        idx = np.searchsorted(g, p, side="left")
    else:
        raise ValueError(f"unknown inverse mode: {mode!r}")
    return Lut(idx.astype(np.uint8))


def equalization_lut(source: Cdf) -> Lut:
    """Build the LUT that flattens a channel's histogram.

    Uses map[y] = round(255 * F(y)) with halves rounded away from zero;
    monotone because F is.
    """
    scaled = np.floor(255.0 * source.values + 0.5)
    return Lut(np.clip(scaled, 0, 255).astype(np.uint8))


def apply_lut(plane: np.ndarray, lut: Lut) -> np.ndarray:
    """Remap every pixel of an 8-bit plane through a LUT."""
    arr = np.asarray(plane)
    if arr.dtype != np.uint8:
        raise ValueError(f"plane must be uint8, got dtype {arr.dtype}")
    return lut.map[arr]


def channel_entropy(hist: ChannelHistogram) -> float:
    """Shannon entropy of the level distribution, in bits.

    Empty bins contribute nothing (0 * log 0 = 0).

    Raises:
        ZeroTotalError: the histogram counted zero pixels.
    """
    if hist.total == 0:
        raise ZeroTotalError("entropy of a zero-total histogram is undefined")
    counts = hist.bins[hist.bins > 0]
    p = counts / float(hist.total)
    return float(-(p * np.log2(p)).sum())


def accumulate_histograms(hists) -> ChannelHistogram:
    """Bin-wise sum of several histograms (e.g. a whole domain's counts)."""
    hists = list(hists)
    if not hists:
        raise EmptySequenceError("cannot accumulate zero histograms")
    bins = np.zeros(LEVELS, dtype=np.int64)
    total = 0
    for h in hists:
        bins += h.bins
        total += h.total
    return ChannelHistogram(bins=bins, total=total)


def channel_histograms(img: np.ndarray) -> tuple[ChannelHistogram, ChannelHistogram, ChannelHistogram]:
    """Per-channel histograms of an (H, W, 3) uint8 image."""
    return tuple(compute_histogram(img[:, :, c]) for c in range(3))


def channel_cdfs(img: np.ndarray) -> tuple[Cdf, Cdf, Cdf]:
    """Per-channel CDFs of an (H, W, 3) uint8 image."""
    return tuple(to_cdf(h) for h in channel_histograms(img))
