"""Show how randomized histogram matching varies across training epochs.

Generates the bundled two-domain set, then augments one source image at
several epochs. Each epoch derives a fresh per-image seed, so a different
target is sampled and the source lands in a different spectral regime.
Saves a strip of the source followed by one panel per epoch.
"""

import argparse
from pathlib import Path

import numpy as np

from spectral_shift import (
    SeedPolicy,
    build_target_pool,
    load_image,
    load_manifest,
    make_two_domain_set,
    rhm_augment,
    save_image,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="demo-out/rhm", help="output directory")
    parser.add_argument("--seed", type=int, default=0, help="global seed")
    parser.add_argument("--epochs", type=int, default=5, help="epochs to render")
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    manifest = load_manifest(make_two_domain_set(out / "data", seed=7, size=96))
    pool = build_target_pool((r.id, load_image(r.image_path)) for r in manifest.targets)
    record = manifest.sources[0]
    source = load_image(record.image_path)
    policy = SeedPolicy(args.seed)

    panels = [source]
    print(f"augmenting {record.id} across {args.epochs} epochs (global seed {args.seed})")
    for epoch in range(args.epochs):
        seed = policy.derive(epoch, record.id)
        augmented, target_id = rhm_augment(source, pool, seed=seed)
        panels.append(augmented)
        print(f"  epoch {epoch}: seed {seed:>20d}  matched to {target_id}")

    save_image(out / "gallery.png", np.concatenate(panels, axis=1))
    print(f"wrote {out / 'gallery.png'} (source, then one panel per epoch)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
