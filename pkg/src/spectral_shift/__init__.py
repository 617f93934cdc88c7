"""Spectral domain-shift toolkit for 8-bit RGB imagery.

Randomized histogram matching and its parametric cousins (affine, gamma,
HSV) for augmentation; histogram equalization and Gray World for
standardization; entropy-change, IoU, and invariance-gap instruments for
analysis. All operations are deterministic given their seeds and safe to
run across threads.
"""

from .analysis import (
    EntropyReport,
    GroupIou,
    IouReport,
    RewardReport,
    aggregate_iou,
    delta_entropy,
    expected_delta_entropy,
    invariance_gap,
    iou,
    write_csv,
    write_json,
)
from .dataset import (
    MANIFEST_VERSION,
    ImageRecord,
    Manifest,
    load_image,
    load_manifest,
    load_mask,
    require_mask,
    require_rgb8,
    save_image,
    save_mask,
)
from .errors import (
    BatchItemError,
    DimensionMismatchError,
    DuplicateIdError,
    EmptyChannelError,
    EmptyManifestError,
    EmptyPoolError,
    EmptySequenceError,
    MissingPoolError,
    NonFiniteError,
    ParseError,
    SpectralShiftError,
    UnsupportedFormatError,
    ZeroTotalError,
)
from .histograms import (
    LEVELS,
    Cdf,
    ChannelHistogram,
    InverseMode,
    Lut,
    accumulate_histograms,
    apply_lut,
    build_matching_lut,
    channel_cdfs,
    channel_entropy,
    channel_histograms,
    compute_histogram,
    equalization_lut,
    to_cdf,
)
from .rhm import (
    AUGMENT_METHODS,
    AugmentResult,
    PoolEntry,
    SeedPolicy,
    TargetPool,
    augment_batch,
    augment_image,
    build_target_pool,
    hist_match_to_domain,
    rhm_augment,
)
from .standardize import (
    GRAY_TARGET,
    STANDARDIZE_METHODS,
    gray_world,
    hist_equalize,
    standardize_image,
)
from .synthetic import make_two_domain_set
from .transforms import (
    AffineParams,
    GammaParams,
    HsvParams,
    SpectralTransform,
    apply_affine,
    apply_gamma,
    apply_hsv,
    hsv_to_rgb,
    quantize_unit,
    rgb_to_hsv,
    sample_affine,
    sample_gamma,
    sample_hsv,
)

__version__ = "0.1.0"

__all__ = [
    "AUGMENT_METHODS",
    "AffineParams",
    "AugmentResult",
    "BatchItemError",
    "Cdf",
    "ChannelHistogram",
    "DimensionMismatchError",
    "DuplicateIdError",
    "EmptyChannelError",
    "EmptyManifestError",
    "EmptyPoolError",
    "EmptySequenceError",
    "EntropyReport",
    "GRAY_TARGET",
    "GammaParams",
    "GroupIou",
    "HsvParams",
    "ImageRecord",
    "InverseMode",
    "IouReport",
    "LEVELS",
    "Lut",
    "MANIFEST_VERSION",
    "Manifest",
    "MissingPoolError",
    "NonFiniteError",
    "ParseError",
    "PoolEntry",
    "RewardReport",
    "STANDARDIZE_METHODS",
    "SeedPolicy",
    "SpectralShiftError",
    "SpectralTransform",
    "TargetPool",
    "UnsupportedFormatError",
    "ZeroTotalError",
    "accumulate_histograms",
    "aggregate_iou",
    "apply_affine",
    "apply_gamma",
    "apply_hsv",
    "apply_lut",
    "augment_batch",
    "augment_image",
    "build_matching_lut",
    "build_target_pool",
    "channel_cdfs",
    "channel_entropy",
    "channel_histograms",
    "compute_histogram",
    "delta_entropy",
    "equalization_lut",
    "expected_delta_entropy",
    "gray_world",
    "hist_equalize",
    "hist_match_to_domain",
    "hsv_to_rgb",
    "invariance_gap",
    "iou",
    "load_image",
    "load_manifest",
    "load_mask",
    "make_two_domain_set",
    "quantize_unit",
    "require_mask",
    "require_rgb8",
    "rgb_to_hsv",
    "rhm_augment",
    "sample_affine",
    "sample_gamma",
    "sample_hsv",
    "save_image",
    "save_mask",
    "standardize_image",
    "to_cdf",
    "write_csv",
    "write_json",
]
