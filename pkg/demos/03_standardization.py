"""Compare the two standardization baselines on both domains.

Histogram equalization flattens each channel's distribution; Gray World
rescales each channel so its mean lands on mid-gray. Both are image-local,
so they apply to source and target alike. Prints per-channel means before
and after, and saves one before/after strip per method.
"""

import argparse
from pathlib import Path

import numpy as np

from spectral_shift import (
    STANDARDIZE_METHODS,
    load_image,
    load_manifest,
    make_two_domain_set,
    save_image,
    standardize_image,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="demo-out/standardize", help="output directory")
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    manifest = load_manifest(make_two_domain_set(out / "data", seed=7, size=96))
    picks = [manifest.sources[0], manifest.targets[0]]
    images = {r.id: load_image(r.image_path) for r in picks}

    for method in STANDARDIZE_METHODS:
        print(f"[{method}]")
        panels = []
        for rec in picks:
            img = images[rec.id]
            done = standardize_image(img, method)
            panels.extend([img, done])
            print(f"  {rec.id} ({rec.domain}): means {img.mean(axis=(0, 1)).round(1)}"
                  f" -> {done.mean(axis=(0, 1)).round(1)}")
        path = out / f"{method}.png"
        save_image(path, np.concatenate(panels, axis=1))
        print(f"  wrote {path} (source before/after, target before/after)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
