"""Parameterized spectral augmentations: per-channel affine, gamma, and HSV.

All transforms take 8-bit RGB input, compute in double precision on the
normalized [0, 1] range, clamp, and re-quantize once at the end (halves
rounded away from zero). Parameter sampling consumes a caller-owned
numpy Generator so that batches can derive reproducible per-image streams.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isfinite

import numpy as np

from .dataset import require_rgb8
from .histograms import Lut, apply_lut


@dataclass(frozen=True)
class AffineParams:
    """Per-RGB-channel scale and offset in normalized intensity units."""

    alpha: tuple[float, float, float]
    mu: tuple[float, float, float]

    def __post_init__(self):
        if len(self.alpha) != 3 or len(self.mu) != 3:
            raise ValueError("alpha and mu need one value per RGB channel")
        if not all(isfinite(a) for a in self.alpha) or not all(isfinite(m) for m in self.mu):
            raise ValueError("affine parameters must be finite")


@dataclass(frozen=True)
class GammaParams:
    """Per-RGB-channel exponent; must be positive."""

    gamma: tuple[float, float, float]

    def __post_init__(self):
        if len(self.gamma) != 3:
            raise ValueError("gamma needs one value per RGB channel")
        if not all(isfinite(g) and g > 0 for g in self.gamma):
            raise ValueError("gamma values must be finite and positive")


@dataclass(frozen=True)
class HsvParams:
    """Scale/offset per HSV channel; the hue scale is pinned to 1 (angular)."""

    alpha: tuple[float, float, float]
    mu: tuple[float, float, float]

    def __post_init__(self):
        if len(self.alpha) != 3 or len(self.mu) != 3:
            raise ValueError("alpha and mu need one value per HSV channel")
        if self.alpha[0] != 1.0:
            raise ValueError("hue scale alpha[0] must be exactly 1")


def sample_affine(rng: np.random.Generator) -> AffineParams:
    """Draw affine parameters: scale ~ N(1.0, 0.1), offset ~ N(0.0, 0.05), iid per channel."""
    alpha = rng.normal(1.0, 0.1, size=3)
    mu = rng.normal(0.0, 0.05, size=3)
    return AffineParams(alpha=tuple(map(float, alpha)), mu=tuple(map(float, mu)))


def sample_gamma(rng: np.random.Generator) -> GammaParams:
    """Draw gamma exponents ~ U(0.5, 1.5), iid per channel."""
    gamma = rng.uniform(0.5, 1.5, size=3)
    return GammaParams(gamma=tuple(map(float, gamma)))


def sample_hsv(rng: np.random.Generator) -> HsvParams:
    """Draw HSV parameters: S/V scales ~ U(0.7, 1.3), hue scale 1, offsets ~ U(-0.1, 0.1)."""
    alpha_sv = rng.uniform(0.7, 1.3, size=2)
    mu = rng.uniform(-0.1, 0.1, size=3)
    return HsvParams(
        alpha=(1.0, float(alpha_sv[0]), float(alpha_sv[1])),
        mu=tuple(map(float, mu)),
    )


def quantize_unit(values: np.ndarray) -> np.ndarray:
    """Re-quantize values already clamped to [0, 1] into uint8 levels.

    Rounds halves away from zero (values are non-negative, so floor(x + 0.5)).
    """
    return np.floor(values * 255.0 + 0.5).astype(np.uint8)


def apply_affine(img: np.ndarray, params: AffineParams) -> np.ndarray:
    """Per-channel v -> alpha * v + mu on normalized intensities, clamped."""
    arr = require_rgb8(img).astype(np.float64) / 255.0
    out = arr * np.asarray(params.alpha) + np.asarray(params.mu)
    np.clip(out, 0.0, 1.0, out=out)
    return quantize_unit(out)


def apply_gamma(img: np.ndarray, params: GammaParams) -> np.ndarray:
    """Per-channel v -> v ** gamma on normalized intensities."""
    arr = require_rgb8(img).astype(np.float64) / 255.0
    out = arr ** np.asarray(params.gamma)
    np.clip(out, 0.0, 1.0, out=out)
    return quantize_unit(out)


def rgb_to_hsv(rgb) -> np.ndarray:
    """Hexcone RGB -> HSV on float arrays of shape (..., 3).

    Components are in [0, 1]; hue is normalized to [0, 1) (degrees / 360)
    and defined as 0 for grays. Follows the classic colorsys formulas,
    vectorized.
    """
    arr = np.asarray(rgb, dtype=np.float64)
    r, g, b = arr[..., 0], arr[..., 1], arr[..., 2]
    maxc = arr.max(axis=-1)
    minc = arr.min(axis=-1)
    v = maxc
    rangec = maxc - minc
    gray = rangec == 0.0
    safe_range = np.where(gray, 1.0, rangec)
    safe_max = np.where(maxc == 0.0, 1.0, maxc)
    s = np.where(maxc == 0.0, 0.0, rangec / safe_max)
    rc = (maxc - r) / safe_range
    gc = (maxc - g) / safe_range
    bc = (maxc - b) / safe_range
    h = np.where(r == maxc, bc - gc, np.where(g == maxc, 2.0 + rc - bc, 4.0 + gc - rc))
    h = np.where(gray, 0.0, (h / 6.0) % 1.0)
    # tiny negative inputs to % can round up to exactly 1.0; keep hue in [0, 1)
    h = np.where(h >= 1.0, 0.0, h)
    return np.stack([h, s, v], axis=-1)


def hsv_to_rgb(hsv) -> np.ndarray:
    """Hexcone HSV -> RGB, inverse of :func:`rgb_to_hsv`."""
    arr = np.asarray(hsv, dtype=np.float64)
    h, s, v = arr[..., 0], arr[..., 1], arr[..., 2]
    sector = np.floor(h * 6.0)
    f = h * 6.0 - sector
    sector = sector.astype(np.int64) % 6
    p = v * (1.0 - s)
    q = v * (1.0 - s * f)
    t = v * (1.0 - s * (1.0 - f))
    # s == 0 needs no special case: p == q == t == v in every sector
    r = np.choose(sector, [v, q, p, p, t, v])
    g = np.choose(sector, [t, v, v, q, p, p])
    b = np.choose(sector, [p, p, t, v, v, q])
    return np.stack([r, g, b], axis=-1)


def apply_hsv(img: np.ndarray, params: HsvParams) -> np.ndarray:
    """Scale/offset the HSV channels; hue shifts wrap around the circle.

    H -> (H + mu_H) mod 1 (the hue scale is pinned to 1 since hue is the
    angular coordinate); S and V scale, offset, and clamp to [0, 1].
    """
    arr = require_rgb8(img).astype(np.float64) / 255.0
    hsv = rgb_to_hsv(arr)
    h = (hsv[..., 0] + params.mu[0]) % 1.0
    h = np.where(h >= 1.0, 0.0, h)
    s = np.clip(params.alpha[1] * hsv[..., 1] + params.mu[1], 0.0, 1.0)
    v = np.clip(params.alpha[2] * hsv[..., 2] + params.mu[2], 0.0, 1.0)
    rgb = hsv_to_rgb(np.stack([h, s, v], axis=-1))
    np.clip(rgb, 0.0, 1.0, out=rgb)
    return quantize_unit(rgb)


@dataclass(frozen=True)
class SpectralTransform:
    """A concrete pixel-wise transform ready to apply to an image.

    Exactly one variant: affine, gamma, or HSV parameters, a per-channel
    matching LUT triple, or the identity.
    """

    kind: str
    params: AffineParams | GammaParams | HsvParams | tuple[Lut, Lut, Lut] | None

    _KINDS = ("affine", "gamma", "hsv", "matching", "identity")

    def __post_init__(self):
        expected = {
            "affine": AffineParams,
            "gamma": GammaParams,
            "hsv": HsvParams,
        }
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown transform kind: {self.kind!r}")
        if self.kind in expected:
            if not isinstance(self.params, expected[self.kind]):
                raise ValueError(f"{self.kind} transform needs {expected[self.kind].__name__}")
        elif self.kind == "matching":
            if (
                not isinstance(self.params, tuple)
                or len(self.params) != 3
                or not all(isinstance(l, Lut) for l in self.params)
            ):
                raise ValueError("matching transform needs a triple of Lut")
        elif self.params is not None:
            raise ValueError("identity transform takes no parameters")

    @classmethod
    def affine(cls, params: AffineParams) -> "SpectralTransform":
        return cls("affine", params)

    @classmethod
    def gamma(cls, params: GammaParams) -> "SpectralTransform":
        return cls("gamma", params)

    @classmethod
    def hsv(cls, params: HsvParams) -> "SpectralTransform":
        return cls("hsv", params)

    @classmethod
    def matching(cls, luts: tuple[Lut, Lut, Lut]) -> "SpectralTransform":
        return cls("matching", tuple(luts))

    @classmethod
    def identity(cls) -> "SpectralTransform":
        return cls("identity", None)

    def apply(self, img: np.ndarray) -> np.ndarray:
        """Apply this transform, never mutating the input."""
        if self.kind == "affine":
            return apply_affine(img, self.params)
        if self.kind == "gamma":
            return apply_gamma(img, self.params)
        if self.kind == "hsv":
            return apply_hsv(img, self.params)
        if self.kind == "matching":
            src = require_rgb8(img)
            out = np.empty_like(src)
            for c in range(3):
                out[:, :, c] = apply_lut(src[:, :, c], self.params[c])
            return out
        return require_rgb8(img).copy()
