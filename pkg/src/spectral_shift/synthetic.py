"""Deterministic synthetic two-domain image sets for demos and tests.

Source images are cool-toned gradient scenes, each containing one bright
disk whose footprint doubles as the ground-truth mask. Target images share
the scene geometry but sit in a visibly different spectral regime (warm
cast, lifted brightness, heavier noise), so matching source histograms to
target histograms produces an obvious shift. Everything derives from one
seed; the same call always writes byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .dataset import MANIFEST_VERSION, save_image, save_mask

SOURCE_GROUPS = ("north", "south")


def _scene(rng: np.random.Generator, size: int, warm: bool) -> tuple[np.ndarray, np.ndarray]:
    """One gradient scene with a disk; returns (rgb image, disk mask)."""
    yy, xx = np.mgrid[0:size, 0:size].astype(np.float64) / (size - 1)
    tilt = rng.uniform(-0.3, 0.3)
    base = np.clip(0.25 + 0.5 * (yy + tilt * xx), 0.0, 1.0)
    if warm:
        rgb = np.stack([0.35 + 0.6 * base, 0.25 + 0.5 * base, 0.1 + 0.3 * base], axis=-1)
    else:
        rgb = np.stack([0.1 + 0.35 * base, 0.15 + 0.45 * base, 0.3 + 0.6 * base], axis=-1)

    cx, cy = rng.uniform(0.25, 0.75, size=2)
    radius = rng.uniform(0.12, 0.2)
    mask = ((xx - cx) ** 2 + (yy - cy) ** 2) <= radius**2
    disk_color = rng.uniform(0.7, 1.0, size=3)
    rgb[mask] = disk_color

    noise_scale = 0.04 if warm else 0.015
    rgb = rgb + rng.normal(0.0, noise_scale, size=rgb.shape)
    img = np.floor(np.clip(rgb, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)
    return img, mask.astype(np.uint8)


def make_two_domain_set(
    root,
    seed: int = 0,
    size: int = 64,
    n_source: int = 6,
    n_target: int = 4,
) -> Path:
    """Write a labeled source / unlabeled target set under root.

    Layout: images/*.png, masks/*.png for source records, manifest.json.
    Source records alternate between two groups so grouped IoU aggregation
    has something to chew on.

    Returns:
        Path to the written manifest.
    """
    root = Path(root)
    (root / "images").mkdir(parents=True, exist_ok=True)
    (root / "masks").mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)

    records = []
    for i in range(n_source):
        rec_id = f"src-{i:03d}"
        img, mask = _scene(rng, size, warm=False)
        save_image(root / "images" / f"{rec_id}.png", img)
        save_mask(root / "masks" / f"{rec_id}.png", mask)
        records.append(
            {
                "id": rec_id,
                "image": f"images/{rec_id}.png",
                "label": f"masks/{rec_id}.png",
                "domain": "source",
                "group": SOURCE_GROUPS[i % len(SOURCE_GROUPS)],
            }
        )
    for i in range(n_target):
        rec_id = f"tgt-{i:03d}"
        img, _ = _scene(rng, size, warm=True)
        save_image(root / "images" / f"{rec_id}.png", img)
        records.append(
            {
                "id": rec_id,
                "image": f"images/{rec_id}.png",
                "label": None,
                "domain": "target",
                "group": "unlabeled",
            }
        )

    manifest_path = root / "manifest.json"
    manifest_path.write_text(
        json.dumps({"version": MANIFEST_VERSION, "records": records}, indent=2) + "\n",
        encoding="utf-8",
    )
    return manifest_path
