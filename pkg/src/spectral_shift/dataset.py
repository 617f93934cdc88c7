"""Manifest handling and PNG image/mask I/O.

Imagery is 8-bit 3-channel PNG held as (H, W, 3) uint8 arrays; label masks
are 8-bit single-channel PNG with values {0, 255}, held as (H, W) uint8
arrays with values {0, 1}. A manifest is a JSON document listing records
with domain membership (source/target), an optional label path, and a group
(city) tag; record paths are relative to the manifest file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image as PILImage
from PIL import UnidentifiedImageError

from .errors import (
    DuplicateIdError,
    EmptyManifestError,
    ParseError,
    UnsupportedFormatError,
)

MANIFEST_VERSION = "1"
VALID_DOMAINS = ("source", "target")


def require_rgb8(img) -> np.ndarray:
    """Validate an in-memory image: uint8, shape (H, W, 3), non-empty."""
    arr = np.asarray(img)
    if arr.dtype != np.uint8:
        raise ValueError(f"image must be uint8, got dtype {arr.dtype}")
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"image must have shape (H, W, 3), got {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError("image has zero pixels")
    return arr


def require_mask(mask) -> np.ndarray:
    """Validate an in-memory mask: shape (H, W), values in {0, 1}."""
    arr = np.asarray(mask)
    if arr.dtype == bool:
        arr = arr.astype(np.uint8)
    if arr.dtype != np.uint8:
        raise ValueError(f"mask must be uint8 or bool, got dtype {arr.dtype}")
    if arr.ndim != 2:
        raise ValueError(f"mask must have shape (H, W), got {arr.shape}")
    if arr.size == 0:
        raise ValueError("mask has zero pixels")
    if arr.max(initial=0) > 1:
        raise ValueError("mask values must be 0 or 1")
    return arr


@dataclass(frozen=True)
class ImageRecord:
    """One dataset entry: image path, optional label, domain, and group tag."""

    id: str
    image_path: Path
    label_path: Path | None
    domain: str
    group: str


@dataclass(frozen=True)
class Manifest:
    records: tuple[ImageRecord, ...]
    version: str

    @property
    def sources(self) -> tuple[ImageRecord, ...]:
        return tuple(r for r in self.records if r.domain == "source")

    @property
    def targets(self) -> tuple[ImageRecord, ...]:
        return tuple(r for r in self.records if r.domain == "target")

    @property
    def labeled(self) -> tuple[ImageRecord, ...]:
        return tuple(r for r in self.records if r.label_path is not None)


def _field(raw: dict, index: int, name: str, kind, optional: bool = False):
    value = raw.get(name)
    if value is None:
        if optional:
            return None
        raise ParseError(f"record {index}: missing field '{name}'")
    if not isinstance(value, kind):
        raise ParseError(
            f"record {index}: field '{name}' must be {kind.__name__}, got {type(value).__name__}"
        )
    return value


def load_manifest(path) -> Manifest:
    """Load and validate a manifest JSON file.

    Record paths are resolved relative to the manifest's directory.

    Raises:
        FileNotFoundError: the manifest file does not exist.
        ParseError: malformed JSON or a field of the wrong type.
        DuplicateIdError: two records share an id.
        EmptyManifestError: zero records.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise FileNotFoundError(f"manifest not found: {path}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be a JSON object")

    version = doc.get("version")
    if not isinstance(version, str) or version != MANIFEST_VERSION:
        raise ParseError(f"{path}: field 'version' must be \"{MANIFEST_VERSION}\", got {version!r}")
    raw_records = doc.get("records")
    if not isinstance(raw_records, list):
        raise ParseError(f"{path}: field 'records' must be a list")
    if not raw_records:
        raise EmptyManifestError(f"{path}: manifest has no records")

    base = path.parent
    records = []
    seen: set[str] = set()
    for i, raw in enumerate(raw_records):
        if not isinstance(raw, dict):
            raise ParseError(f"record {i}: must be a JSON object")
        rec_id = _field(raw, i, "id", str)
        image = _field(raw, i, "image", str)
        label = _field(raw, i, "label", str, optional=True)
        domain = _field(raw, i, "domain", str)
        group = _field(raw, i, "group", str)
        if domain not in VALID_DOMAINS:
            raise ParseError(f"record {i}: field 'domain' must be one of {VALID_DOMAINS}, got {domain!r}")
        if rec_id in seen:
            raise DuplicateIdError(f"duplicate record id '{rec_id}'")
        seen.add(rec_id)
        records.append(
            ImageRecord(
                id=rec_id,
                image_path=base / image,
                label_path=(base / label) if label is not None else None,
                domain=domain,
                group=group,
            )
        )
    return Manifest(records=tuple(records), version=version)


def load_image(path) -> np.ndarray:
    """Load an 8-bit RGB PNG as an (H, W, 3) uint8 array.

    Raises:
        FileNotFoundError: missing file.
        UnsupportedFormatError: not 8-bit 3-channel (e.g. grayscale, 16-bit,
            or alpha present), or not a decodable image at all.
    """
    path = Path(path)
    try:
        with PILImage.open(path) as im:
            if im.mode != "RGB":
                raise UnsupportedFormatError(
                    f"{path}: expected 8-bit RGB, got mode '{im.mode}'"
                )
            arr = np.asarray(im, dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise UnsupportedFormatError(f"{path}: not a supported image file") from exc
    return arr


def save_image(path, img: np.ndarray) -> None:
    """Write an (H, W, 3) uint8 array as an RGB PNG (lossless round trip)."""
    arr = require_rgb8(img)
    PILImage.fromarray(arr, mode="RGB").save(Path(path), format="PNG")


def load_mask(path) -> np.ndarray:
    """Load a single-channel {0, 255} PNG as an (H, W) uint8 mask of {0, 1}.

    Raises:
        FileNotFoundError: missing file.
        UnsupportedFormatError: not 8-bit single-channel.
        ParseError: a pixel value other than 0 or 255.
    """
    path = Path(path)
    try:
        with PILImage.open(path) as im:
            if im.mode != "L":
                raise UnsupportedFormatError(
                    f"{path}: expected 8-bit single-channel mask, got mode '{im.mode}'"
                )
            arr = np.asarray(im, dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise UnsupportedFormatError(f"{path}: not a supported image file") from exc
    bad = (arr != 0) & (arr != 255)
    if bad.any():
        value = int(arr[bad][0])
        raise ParseError(f"{path}: mask contains value {value}, only 0 and 255 are allowed")
    return (arr == 255).astype(np.uint8)


def save_mask(path, mask: np.ndarray) -> None:
    """Write an (H, W) {0, 1} mask as a single-channel {0, 255} PNG."""
    arr = require_mask(mask)
    PILImage.fromarray(arr * np.uint8(255), mode="L").save(Path(path), format="PNG")
