"""Measurement instruments: entropy change, IoU aggregation, invariance gap.

The entropy-change estimator scores how much information an augmentation
destroys: for each (original, augmented) pair it sums the per-channel
Shannon entropy differences, and the dataset mean estimates the expected
reduction. Positive values mean the augmentation lost information.

IoU reports aggregate two ways: "overall" pools intersection/union pixel
counts across all groups before dividing; "city average" averages the
per-group IoUs unweighted. Reductions use exact integer counts and exactly
rounded float sums so results do not depend on iteration order.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .dataset import require_mask, require_rgb8
from .errors import DimensionMismatchError, EmptySequenceError, NonFiniteError
from .histograms import channel_entropy, channel_histograms

DEFAULT_HIST_BINS = 20


def delta_entropy(src: np.ndarray, aug: np.ndarray) -> float:
    """Summed per-channel entropy drop from src to aug, in bits.

    Dimensions may differ; only the level distributions matter. Positive
    means the augmented image carries less information.
    """
    src_h = channel_histograms(require_rgb8(src))
    aug_h = channel_histograms(require_rgb8(aug))
    return math.fsum(channel_entropy(s) - channel_entropy(a) for s, a in zip(src_h, aug_h))


@dataclass(frozen=True)
class EntropyReport:
    """Per-pair entropy drops, their mean, and a fixed-width-bin histogram."""

    per_pair: tuple[tuple[str, float], ...]
    mean_delta_h: float
    histogram: tuple[tuple[float, float, int], ...]

    def to_dict(self) -> dict:
        return {
            "mean_delta_h": self.mean_delta_h,
            "per_pair": [{"id": i, "delta_h": d} for i, d in self.per_pair],
            "histogram": [
                {"lo": lo, "hi": hi, "count": count} for lo, hi, count in self.histogram
            ],
        }

    def csv_rows(self) -> tuple[list[str], list[list]]:
        return ["id", "delta_h"], [[i, repr(d)] for i, d in self.per_pair]


def expected_delta_entropy(
    pairs: Sequence[tuple[np.ndarray, np.ndarray]],
    ids: Sequence[str] | None = None,
    bins: int = DEFAULT_HIST_BINS,
) -> EntropyReport:
    """Estimate the expected entropy change over a dataset of image pairs.

    Args:
        pairs: (original, augmented) image pairs.
        ids: optional identifiers, defaulting to the pair index.
        bins: equal-width histogram bins spanning the observed range.

    Raises:
        EmptySequenceError: no pairs given.
    """
    pairs = list(pairs)
    if not pairs:
        raise EmptySequenceError("cannot estimate entropy change from zero pairs")
    if ids is None:
        ids = [str(i) for i in range(len(pairs))]
    elif len(ids) != len(pairs):
        raise ValueError(f"got {len(ids)} ids for {len(pairs)} pairs")
    deltas = [delta_entropy(src, aug) for src, aug in pairs]
    mean = math.fsum(deltas) / len(deltas)
    counts, edges = np.histogram(np.asarray(deltas), bins=bins)
    histogram = tuple(
        (float(edges[i]), float(edges[i + 1]), int(counts[i])) for i in range(len(counts))
    )
    return EntropyReport(
        per_pair=tuple(zip(ids, deltas)),
        mean_delta_h=mean,
        histogram=histogram,
    )


def iou(pred: np.ndarray, truth: np.ndarray) -> float:
    """Intersection-over-union of two binary masks.

    Two all-zero masks agree perfectly and score 1.0.

    Raises:
        DimensionMismatchError: shapes differ.
    """
    pred = require_mask(pred)
    truth = require_mask(truth)
    if pred.shape != truth.shape:
        raise DimensionMismatchError(f"mask shapes differ: {pred.shape} vs {truth.shape}")
    p = pred.astype(bool)
    t = truth.astype(bool)
    union = int((p | t).sum())
    if union == 0:
        return 1.0
    return int((p & t).sum()) / union


@dataclass(frozen=True)
class GroupIou:
    intersection: int
    union: int
    iou: float


@dataclass(frozen=True)
class IouReport:
    """Per-group pixel counts and IoUs plus the two dataset aggregates."""

    per_group: dict[str, GroupIou]
    overall_iou: float
    city_average_iou: float

    def to_dict(self) -> dict:
        return {
            "per_group": {
                name: {"intersection": g.intersection, "union": g.union, "iou": g.iou}
                for name, g in self.per_group.items()
            },
            "overall_iou": self.overall_iou,
            "city_average_iou": self.city_average_iou,
        }

    def csv_rows(self) -> tuple[list[str], list[list]]:
        header = ["group", "intersection", "union", "iou"]
        rows = [
            [name, g.intersection, g.union, repr(g.iou)] for name, g in self.per_group.items()
        ]
        total_i = sum(g.intersection for g in self.per_group.values())
        total_u = sum(g.union for g in self.per_group.values())
        rows.append(["overall", total_i, total_u, repr(self.overall_iou)])
        rows.append(["city_average", "", "", repr(self.city_average_iou)])
        return header, rows


def aggregate_iou(
    items: Iterable[tuple[str, np.ndarray, np.ndarray]],
    ids: Sequence[str] | None = None,
) -> IouReport:
    """Aggregate (group, pred, truth) items into per-group and dataset IoUs.

    Pixel counts are summed within each group; "overall" divides the grand
    sums, "city average" is the unweighted mean of per-group IoUs. A group
    (or dataset) with an empty union scores 1.0.

    Raises:
        EmptySequenceError: no items.
        DimensionMismatchError: a pred/truth pair disagrees in shape; the
            message names the offending item.
    """
    items = list(items)
    if not items:
        raise EmptySequenceError("cannot aggregate zero mask pairs")
    if ids is None:
        ids = [str(i) for i in range(len(items))]
    elif len(ids) != len(items):
        raise ValueError(f"got {len(ids)} ids for {len(items)} items")

    sums: dict[str, list[int]] = {}
    for item_id, (group, pred, truth) in zip(ids, items):
        pred = require_mask(pred)
        truth = require_mask(truth)
        if pred.shape != truth.shape:
            raise DimensionMismatchError(
                f"item '{item_id}': mask shapes differ: {pred.shape} vs {truth.shape}"
            )
        p = pred.astype(bool)
        t = truth.astype(bool)
        acc = sums.setdefault(group, [0, 0])
        acc[0] += int((p & t).sum())
        acc[1] += int((p | t).sum())

    per_group = {
        name: GroupIou(intersection=i, union=u, iou=(i / u if u > 0 else 1.0))
        for name, (i, u) in sums.items()
    }
    total_i = sum(g.intersection for g in per_group.values())
    total_u = sum(g.union for g in per_group.values())
    overall = total_i / total_u if total_u > 0 else 1.0
    city_average = math.fsum(g.iou for g in per_group.values()) / len(per_group)
    return IouReport(per_group=per_group, overall_iou=overall, city_average_iou=city_average)


@dataclass(frozen=True)
class RewardReport:
    """Reward of a candidate on shifted data vs a reference on source data."""

    r_star: float
    r_zero: float
    gap: float

    def to_dict(self) -> dict:
        return {"r_star": self.r_star, "r_zero": self.r_zero, "gap": self.gap}

    def csv_rows(self) -> tuple[list[str], list[list]]:
        return ["r_star", "r_zero", "gap"], [[repr(self.r_star), repr(self.r_zero), repr(self.gap)]]


def invariance_gap(r_star: float, r_zero: float) -> RewardReport:
    """Gap between a model's reward under spectral shift and the unshifted
    reference; a gap near zero means invariance without performance loss.

    Raises:
        NonFiniteError: either reward is NaN or infinite.
    """
    if not (math.isfinite(r_star) and math.isfinite(r_zero)):
        raise NonFiniteError(f"rewards must be finite, got r_star={r_star}, r_zero={r_zero}")
    return RewardReport(r_star=r_star, r_zero=r_zero, gap=r_star - r_zero)


def write_json(report, path) -> None:
    """Serialize any report to pretty-printed JSON."""
    Path(path).write_text(json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8")


def write_csv(report, path) -> None:
    """Serialize any report's row form to CSV."""
    header, rows = report.csv_rows()
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
