"""Randomized histogram matching and the domain-histogram matching baseline.

RHM matches each source image, per channel, to a uniformly random image from
an unlabeled target pool; a fresh target is drawn for every (seed, epoch,
image) combination so online augmentation sees a new spectral shift each
iteration. The classical baseline matches against the accumulated histogram
of the whole target domain instead. Pools precompute all target CDFs once,
so augmenting costs one histogram, one 256-step LUT build, and one LUT
apply per channel.
"""

from __future__ import annotations

import hashlib
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .dataset import ImageRecord, load_image, require_rgb8
from .errors import BatchItemError, EmptyPoolError, MissingPoolError, SpectralShiftError
from .histograms import (
    Cdf,
    InverseMode,
    accumulate_histograms,
    apply_lut,
    build_matching_lut,
    channel_histograms,
    compute_histogram,
    to_cdf,
)
from .transforms import (
    apply_affine,
    apply_gamma,
    apply_hsv,
    sample_affine,
    sample_gamma,
    sample_hsv,
)

AUGMENT_METHODS = ("rhm", "affine", "gamma", "hsv", "hist-match", "none")

_U64 = (1 << 64) - 1


class PoolEntry(NamedTuple):
    id: str
    cdfs: tuple[Cdf, Cdf, Cdf]


@dataclass(frozen=True)
class TargetPool:
    """Immutable pool of target-domain CDFs, shareable across threads.

    ``entries`` holds one per-channel CDF triple per target image;
    ``domain_cdf`` is the CDF triple of the accumulated pool histogram.
    """

    entries: tuple[PoolEntry, ...]
    domain_cdf: tuple[Cdf, Cdf, Cdf]

    def __post_init__(self):
        if not self.entries:
            raise EmptyPoolError("target pool has no entries")

    def __len__(self) -> int:
        return len(self.entries)


def build_target_pool(images: Iterable[tuple[str, np.ndarray]]) -> TargetPool:
    """Precompute per-image and accumulated CDFs for a target pool.

    Args:
        images: (identifier, image) pairs; images are (H, W, 3) uint8.

    Raises:
        EmptyPoolError: no images supplied.
    """
    entries = []
    per_channel_hists = ([], [], [])
    for image_id, img in images:
        hists = channel_histograms(require_rgb8(img))
        for c in range(3):
            per_channel_hists[c].append(hists[c])
        entries.append(PoolEntry(id=image_id, cdfs=tuple(to_cdf(h) for h in hists)))
    if not entries:
        raise EmptyPoolError("cannot build a target pool from zero images")
    domain_cdf = tuple(to_cdf(accumulate_histograms(hs)) for hs in per_channel_hists)
    return TargetPool(entries=tuple(entries), domain_cdf=domain_cdf)


def _match_channels(src: np.ndarray, target_cdfs: tuple[Cdf, Cdf, Cdf], mode: InverseMode) -> np.ndarray:
    out = np.empty_like(src)
    for c in range(3):
        source_cdf = to_cdf(compute_histogram(src[:, :, c]))
        lut = build_matching_lut(source_cdf, target_cdfs[c], mode)
        out[:, :, c] = apply_lut(src[:, :, c], lut)
    return out


def rhm_augment(
    src: np.ndarray,
    pool: TargetPool,
    seed: int,
    mode: InverseMode = InverseMode.PAPER,
) -> tuple[np.ndarray, str]:
    """Match a source image to one uniformly random pool image, per channel.

    Deterministic in (src, pool, seed, mode). Returns the augmented image and
    the chosen target identifier for auditing.
    """
    src = require_rgb8(src)
    rng = np.random.default_rng(seed & _U64)
    entry = pool.entries[int(rng.integers(len(pool.entries)))]
    return _match_channels(src, entry.cdfs, mode), entry.id


def hist_match_to_domain(
    src: np.ndarray,
    pool: TargetPool,
    mode: InverseMode = InverseMode.PAPER,
) -> np.ndarray:
    """Match a source image to the accumulated target-domain histogram.

    The classical image-to-image translation baseline; consumes no
    randomness.
    """
    src = require_rgb8(src)
    return _match_channels(src, pool.domain_cdf, mode)


@dataclass(frozen=True)
class SeedPolicy:
    """Derives one stable 64-bit seed per (epoch, image) from a global seed.

    The derivation hashes (global_seed, epoch, identifier) with BLAKE2b, so
    identical inputs give identical seeds on every platform and records can
    be processed in parallel without sharing a stream.
    """

    global_seed: int = 0

    def derive(self, epoch: int, identifier: str) -> int:
        h = hashlib.blake2b(digest_size=8)
        h.update(struct.pack("<QQ", self.global_seed & _U64, epoch & _U64))
        h.update(identifier.encode("utf-8"))
        return int.from_bytes(h.digest(), "little")


@dataclass(frozen=True)
class AugmentResult:
    """Outcome for one record: augmented image plus audit details.

    ``seed`` is None for methods that consume no randomness; ``info`` holds
    the sampled parameters or the chosen target id.
    """

    id: str
    image: np.ndarray
    seed: int | None = None
    info: dict = field(default_factory=dict)


def augment_image(
    img: np.ndarray,
    method: str,
    seed: int | None = None,
    pool: TargetPool | None = None,
    inverse_mode: InverseMode = InverseMode.PAPER,
) -> tuple[np.ndarray, dict]:
    """Apply one augmentation method to one in-memory image.

    Returns the output image and an info dict for auditing (sampled
    parameters or chosen target id). The input is never mutated.
    """
    if method not in AUGMENT_METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {AUGMENT_METHODS}")
    if method in ("rhm", "hist-match") and pool is None:
        raise MissingPoolError(f"method '{method}' needs a target pool")
    if method == "none":
        return require_rgb8(img).copy(), {}
    if method == "hist-match":
        return hist_match_to_domain(img, pool, inverse_mode), {}
    if seed is None:
        raise ValueError(f"method '{method}' needs a seed")
    if method == "rhm":
        out, target_id = rhm_augment(img, pool, seed, inverse_mode)
        return out, {"target_id": target_id}
    rng = np.random.default_rng(seed & _U64)
    if method == "affine":
        params = sample_affine(rng)
        return apply_affine(img, params), {"alpha": list(params.alpha), "mu": list(params.mu)}
    if method == "gamma":
        params = sample_gamma(rng)
        return apply_gamma(img, params), {"gamma": list(params.gamma)}
    params = sample_hsv(rng)
    return apply_hsv(img, params), {"alpha": list(params.alpha), "mu": list(params.mu)}


def augment_batch(
    records: Sequence[ImageRecord],
    method: str,
    pool: TargetPool | None = None,
    policy: SeedPolicy = SeedPolicy(0),
    epoch: int = 0,
    inverse_mode: InverseMode = InverseMode.PAPER,
    threads: int = 1,
) -> list[AugmentResult]:
    """Augment a batch of source records, one derived seed per record.

    Only source-domain records are accepted: matching-based augmentation is
    never applied to the target domain. Output order equals input order
    regardless of thread count, and the whole call is a pure function of
    (records, method, pool, policy, epoch, inverse_mode).

    Raises:
        MissingPoolError: method is rhm/hist-match and no pool was given.
        BatchItemError: loading or augmenting a record failed; carries the id.
    """
    if method not in AUGMENT_METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {AUGMENT_METHODS}")
    if method in ("rhm", "hist-match") and pool is None:
        raise MissingPoolError(f"method '{method}' needs a target pool built from target records")
    for record in records:
        if record.domain != "source":
            raise ValueError(
                f"record '{record.id}' is in the {record.domain} domain; "
                "augmentation only accepts source records"
            )

    randomized = method in ("rhm", "affine", "gamma", "hsv")

    def run_one(record: ImageRecord) -> AugmentResult:
        seed = policy.derive(epoch, record.id) if randomized else None
        try:
            img = load_image(record.image_path)
            out, info = augment_image(img, method, seed=seed, pool=pool, inverse_mode=inverse_mode)
        except (OSError, SpectralShiftError, ValueError) as exc:
            raise BatchItemError(record.id, str(exc)) from exc
        return AugmentResult(id=record.id, image=out, seed=seed, info=info)

    if threads <= 1:
        return [run_one(r) for r in records]
    with ThreadPoolExecutor(max_workers=threads) as pool_executor:
        return list(pool_executor.map(run_one, records))
