"""Benchmark randomized histogram matching throughput on one core.

Builds a pool of random targets once (pools precompute their CDFs), then
times repeated single-threaded augmentations of one source image. Cost per
call is three histograms, three 256-step LUT builds, and three LUT
applications, so throughput is dominated by pixel count.
"""

import argparse
import time

import numpy as np

from spectral_shift import build_target_pool, rhm_augment


def measure(side: int = 512, pool_size: int = 8, count: int = 60, seed: int = 0) -> float:
    """Return single-core RHM throughput in augmentations per second."""
    rng = np.random.default_rng(seed)
    pool = build_target_pool(
        (f"t{i}", rng.integers(0, 256, size=(side, side, 3), dtype=np.uint8))
        for i in range(pool_size)
    )
    src = rng.integers(0, 256, size=(side, side, 3), dtype=np.uint8)
    rhm_augment(src, pool, seed=0)  # warm caches before timing
    start = time.perf_counter()
    for s in range(count):
        rhm_augment(src, pool, seed=s)
    elapsed = time.perf_counter() - start
    return count / elapsed


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--side", type=int, default=512, help="square image side in pixels")
    parser.add_argument("--pool-size", type=int, default=8, help="number of pool targets")
    parser.add_argument("--count", type=int, default=60, help="timed augmentations")
    args = parser.parse_args()

    rate = measure(side=args.side, pool_size=args.pool_size, count=args.count)
    per_image_ms = 1000.0 / rate
    print(f"{args.side}x{args.side} RGB, pool of {args.pool_size}, {args.count} augmentations")
    print(f"  {rate:.1f} augmentations/s on one core ({per_image_ms:.2f} ms per image)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
