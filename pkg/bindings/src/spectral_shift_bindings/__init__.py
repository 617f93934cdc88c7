"""Batch bindings for ML data-loading pipelines.

Data loaders hand over contiguous (N, H, W, 3) uint8 batches; these
wrappers validate the buffer, derive one seed per image, and call the
spectral-shift library image by image. Outputs are always freshly
allocated; caller buffers are never mutated. Results are bit-identical to
the library's own batch pipeline (and therefore to its CLI) for the same
image bytes, seed, epoch, and identifiers.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from spectral_shift import (
    AffineParams,
    GammaParams,
    HsvParams,
    InverseMode,
    SeedPolicy,
    TargetPool,
    apply_affine,
    apply_gamma,
    apply_hsv,
    augment_image,
    build_target_pool,
    load_image,
    load_manifest,
    rhm_augment,
    standardize_image,
)

__all__ = [
    "BindingError",
    "ShapeError",
    "bind_build_pool",
    "bind_rhm_augment",
    "bind_transform",
    "build_pool",
    "rhm_augment_batch",
    "transform_batch",
]

__version__ = "0.1.0"

_PARAMETRIC = ("affine", "gamma", "hsv")
_DETERMINISTIC = ("hist-eq", "gray-world", "none")


class BindingError(Exception):
    """A binding call was invalid before any image work started."""


class ShapeError(BindingError):
    """A batch buffer has the wrong dtype, rank, or dimension size."""


def _require_batch(batch) -> np.ndarray:
    """Validate a caller-owned batch buffer; messages name what is wrong."""
    arr = np.asarray(batch)
    if arr.dtype != np.uint8:
        raise ShapeError(f"batch dtype must be uint8, got {arr.dtype}")
    if arr.ndim != 4:
        raise ShapeError(f"batch must have 4 dimensions (N, H, W, 3), got {arr.ndim}")
    n, h, w, c = arr.shape
    if c != 3:
        raise ShapeError(f"channel dimension must be 3, got {c}")
    if n == 0:
        raise ShapeError("batch dimension N is zero")
    if h == 0:
        raise ShapeError("height dimension is zero")
    if w == 0:
        raise ShapeError("width dimension is zero")
    if not arr.flags["C_CONTIGUOUS"]:
        raise ShapeError("batch buffer must be C-contiguous")
    return arr


def _resolve_ids(ids: Sequence[str] | None, n: int) -> list[str]:
    # batch indices stand in for record ids when the loader has none
    if ids is None:
        return [str(i) for i in range(n)]
    ids = [str(i) for i in ids]
    if len(ids) != n:
        raise BindingError(f"got {len(ids)} ids for a batch of {n}")
    return ids


def build_pool(manifest_path) -> TargetPool:
    """Build a shareable target pool from a manifest's target records.

    Raises:
        BindingError: the manifest contains no target records.
    """
    manifest = load_manifest(manifest_path)
    targets = manifest.targets
    if not targets:
        raise BindingError(f"manifest {manifest_path} contains no target records")
    return build_target_pool((r.id, load_image(r.image_path)) for r in targets)


def rhm_augment_batch(
    batch,
    pool: TargetPool,
    seed: int,
    epoch: int = 0,
    inverse: str = "paper",
    ids: Sequence[str] | None = None,
) -> tuple[np.ndarray, list[str]]:
    """Randomized histogram matching over a batch, one target draw per image.

    Args:
        batch: contiguous (N, H, W, 3) uint8 buffer; never mutated.
        pool: handle from :func:`build_pool`.
        seed: global seed; per-image seeds derive from (seed, epoch, id).
        epoch: training epoch, so every pass sees fresh targets.
        inverse: "paper" or "conventional" inverse-CDF convention.
        ids: per-image identifiers; defaults to batch indices.

    Returns:
        (augmented batch in one fresh allocation, chosen target ids).
    """
    arr = _require_batch(batch)
    ids = _resolve_ids(ids, arr.shape[0])
    mode = InverseMode(inverse)
    policy = SeedPolicy(seed)
    out = np.empty_like(arr)
    chosen: list[str] = []
    for i, identifier in enumerate(ids):
        matched, target_id = rhm_augment(
            arr[i], pool, seed=policy.derive(epoch, identifier), mode=mode
        )
        out[i] = matched
        chosen.append(target_id)
    return out, chosen


def _coerce_params(method: str, params):
    if method == "gamma":
        if isinstance(params, GammaParams):
            return params
        return GammaParams(gamma=tuple(float(g) for g in params))
    if method == "affine":
        if isinstance(params, AffineParams):
            return params
        alpha, mu = params
        return AffineParams(alpha=tuple(map(float, alpha)), mu=tuple(map(float, mu)))
    if isinstance(params, HsvParams):
        return params
    alpha, mu = params
    return HsvParams(alpha=tuple(map(float, alpha)), mu=tuple(map(float, mu)))


_APPLY = {"affine": apply_affine, "gamma": apply_gamma, "hsv": apply_hsv}


def transform_batch(
    batch,
    method: str,
    params=None,
    seed: int | None = None,
    epoch: int = 0,
    ids: Sequence[str] | None = None,
) -> np.ndarray:
    """Apply one non-matching transform to every image in a batch.

    Parametric methods (affine, gamma, hsv) take either explicit ``params``
    (shared by the whole batch) or a ``seed`` that samples fresh parameters
    per image exactly like the library's batch pipeline. Deterministic
    methods (hist-eq, gray-world, none) take neither.

    Returns:
        The transformed batch in one fresh allocation.
    """
    arr = _require_batch(batch)
    if method in _DETERMINISTIC:
        if params is not None or seed is not None:
            raise BindingError(f"method '{method}' takes neither params nor seed")
        if method == "none":
            return arr.copy()
        out = np.empty_like(arr)
        for i in range(arr.shape[0]):
            out[i] = standardize_image(arr[i], method)
        return out
    if method not in _PARAMETRIC:
        raise BindingError(
            f"unknown method {method!r}; expected one of {_PARAMETRIC + _DETERMINISTIC}"
        )
    if (params is None) == (seed is None):
        raise BindingError(f"method '{method}' needs exactly one of params or seed")

    out = np.empty_like(arr)
    if params is not None:
        resolved = _coerce_params(method, params)
        apply_fn = _APPLY[method]
        for i in range(arr.shape[0]):
            out[i] = apply_fn(arr[i], resolved)
        return out

    ids = _resolve_ids(ids, arr.shape[0])
    policy = SeedPolicy(seed)
    for i, identifier in enumerate(ids):
        image, _ = augment_image(arr[i], method, seed=policy.derive(epoch, identifier))
        out[i] = image
    return out


# Stable names for loader integrations that wire ops up by string.
bind_build_pool = build_pool
bind_rhm_augment = rhm_augment_batch
bind_transform = transform_batch
