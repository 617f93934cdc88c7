"""Command-line front end for reproducible batch runs.

Four subcommands: augment (seeded augmentation of every source record, with
a JSON-lines audit log), standardize (deterministic per-image baselines),
entropy (information-loss report for augmented outputs), and iou (grouped
segmentation scoring). Every command is a pure function of its arguments,
input files, and seed; thread count changes wall-clock time only.

Exit codes: 0 success, 1 runtime or I/O failure, 2 usage or validation
error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import analysis
from .dataset import load_image, load_manifest, load_mask, save_image
from .errors import (
    BatchItemError,
    DimensionMismatchError,
    MissingPoolError,
    SpectralShiftError,
    UnsupportedFormatError,
)
from .histograms import InverseMode
from .rhm import AUGMENT_METHODS, SeedPolicy, augment_batch, build_target_pool
from .standardize import STANDARDIZE_METHODS, standardize_image

THREADS_ENV = "SPECTRAL_SHIFT_THREADS"

_FORMATS = ("json", "csv", "both")
_SPLITS = ("source", "target", "both")


def _u64(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _u32(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value < 1 << 32:
        raise argparse.ArgumentTypeError("epoch must be an unsigned 32-bit integer")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError("thread count must be >= 1")
    return value


def resolve_threads(flag: int | None = None) -> int:
    """Pick a worker count: explicit flag, then the SPECTRAL_SHIFT_THREADS
    environment variable, then available parallelism."""
    if flag is not None:
        if flag < 1:
            raise ValueError(f"thread count must be >= 1, got {flag}")
        return flag
    env = os.environ.get(THREADS_ENV)
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
        if value < 1:
            raise ValueError(f"{THREADS_ENV} must be >= 1, got {value}")
        return value
    return os.cpu_count() or 1


def _ordered_map(fn, items, threads: int) -> list:
    """Map preserving input order; parallelism never reorders results."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(fn, items))


def _write_report(report, out_dir: Path, stem: str, fmt: str) -> None:
    if fmt in ("json", "both"):
        analysis.write_json(report, out_dir / f"{stem}.json")
    if fmt in ("csv", "both"):
        analysis.write_csv(report, out_dir / f"{stem}.csv")


def cmd_augment(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.manifest)
    threads = resolve_threads(args.threads)
    pool = None
    if args.method in ("rhm", "hist-match"):
        targets = manifest.targets
        if not targets:
            raise MissingPoolError(
                f"method '{args.method}' requires a target pool, but the manifest "
                "contains no target records"
            )
        pool = build_target_pool((r.id, load_image(r.image_path)) for r in targets)

    results = augment_batch(
        manifest.sources,
        args.method,
        pool=pool,
        policy=SeedPolicy(args.seed),
        epoch=args.epoch,
        inverse_mode=InverseMode(args.inverse),
        threads=threads,
    )

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    audit_lines = []
    for res in results:
        save_image(out_dir / f"{res.id}.png", res.image)
        audit_lines.append(
            json.dumps({"id": res.id, "method": args.method, "seed": res.seed, "info": res.info})
        )
    (out_dir / "audit.jsonl").write_text(
        "".join(line + "\n" for line in audit_lines), encoding="utf-8"
    )
    print(f"augmented {len(results)} images with '{args.method}' into {out_dir}")
    return 0


def cmd_standardize(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.manifest)
    threads = resolve_threads(args.threads)
    if args.split == "source":
        records = manifest.sources
    elif args.split == "target":
        records = manifest.targets
    else:
        records = manifest.records

    def run_one(record):
        return record.id, standardize_image(load_image(record.image_path), args.method)

    results = _ordered_map(run_one, records, threads)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for rec_id, img in results:
        save_image(out_dir / f"{rec_id}.png", img)
    print(f"standardized {len(results)} images with '{args.method}' into {out_dir}")
    return 0


def _dir_labels(dirs: list) -> list[str]:
    """Basename labels for report files, deduplicated by suffixing a count."""
    labels: list[str] = []
    seen: dict[str, int] = {}
    for d in dirs:
        base = Path(d).name or "aug"
        n = seen.get(base, 0) + 1
        seen[base] = n
        labels.append(base if n == 1 else f"{base}-{n}")
    return labels


def cmd_entropy(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.manifest)
    threads = resolve_threads(args.threads)
    sources = manifest.sources
    if not sources:
        raise ValueError("manifest has no source records to pair with augmented images")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    summaries = []
    for label, aug_dir in zip(_dir_labels(args.aug), args.aug):
        aug_root = Path(aug_dir)

        def load_pair(record):
            aug_path = aug_root / f"{record.id}.png"
            if not aug_path.exists():
                raise FileNotFoundError(
                    f"no augmented image for id '{record.id}' at {aug_path}"
                )
            return load_image(record.image_path), load_image(aug_path)

        pairs = _ordered_map(load_pair, sources, threads)
        report = analysis.expected_delta_entropy(pairs, ids=[r.id for r in sources])
        stem = "entropy" if len(args.aug) == 1 else f"entropy-{label}"
        _write_report(report, out_dir, stem, args.format)
        summaries.append((label, report.mean_delta_h))
        print(f"{label}: mean delta-H {report.mean_delta_h:.6f} bits over {len(pairs)} pairs")

    if len(summaries) > 1:
        if args.format in ("json", "both"):
            comp = {"methods": [{"name": n, "mean_delta_h": m} for n, m in summaries]}
            (out_dir / "comparison.json").write_text(
                json.dumps(comp, indent=2) + "\n", encoding="utf-8"
            )
        if args.format in ("csv", "both"):
            with open(out_dir / "comparison.csv", "w", newline="", encoding="utf-8") as fh:
                writer = csv.writer(fh)
                writer.writerow(["method", "mean_delta_h"])
                writer.writerows([n, repr(m)] for n, m in summaries)
    return 0


def cmd_iou(args: argparse.Namespace) -> int:
    manifest = load_manifest(args.manifest)
    threads = resolve_threads(args.threads)
    labeled = manifest.labeled
    if not labeled:
        raise ValueError("manifest has no labeled records to score")
    pred_root = Path(args.pred)

    def load_item(record):
        pred_path = pred_root / f"{record.id}.png"
        if not pred_path.exists():
            raise FileNotFoundError(f"no prediction for id '{record.id}' at {pred_path}")
        return record.group, load_mask(pred_path), load_mask(record.label_path)

    items = _ordered_map(load_item, labeled, threads)
    report = analysis.aggregate_iou(items, ids=[r.id for r in labeled])
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_report(report, out_dir, "iou", args.format)
    print(
        f"overall IoU {report.overall_iou:.6f}, city average {report.city_average_iou:.6f} "
        f"over {len(report.per_group)} groups"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectral-shift",
        description="Spectral domain-shift augmentation, standardization, and analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--manifest", required=True, help="dataset manifest JSON")
        p.add_argument("--threads", type=_positive_int, default=None, metavar="N",
                       help=f"worker threads (default: ${THREADS_ENV} or all cores)")

    p = sub.add_parser("augment", help="augment every source record")
    common(p)
    p.add_argument("--method", required=True, choices=AUGMENT_METHODS)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=_u64, default=0, help="global seed (unsigned 64-bit)")
    p.add_argument("--epoch", type=_u32, default=0, help="epoch index (unsigned 32-bit)")
    p.add_argument("--inverse", choices=[m.value for m in InverseMode], default="paper",
                   help="inverse-CDF convention for matching methods")
    p.set_defaults(func=cmd_augment)

    p = sub.add_parser("standardize", help="apply a deterministic per-image baseline")
    common(p)
    p.add_argument("--method", required=True, choices=STANDARDIZE_METHODS)
    p.add_argument("--split", choices=_SPLITS, default="both")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_standardize)

    p = sub.add_parser("entropy", help="report entropy change of augmented outputs")
    common(p)
    p.add_argument("--aug", action="append", required=True, metavar="DIR",
                   help="directory of augmented images (repeat to compare methods)")
    p.add_argument("--out", required=True, help="report output directory")
    p.add_argument("--format", choices=_FORMATS, default="both")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("iou", help="score predicted masks against manifest labels")
    common(p)
    p.add_argument("--pred", required=True, help="directory of predicted masks")
    p.add_argument("--out", required=True, help="report output directory")
    p.add_argument("--format", choices=_FORMATS, default="both")
    p.set_defaults(func=cmd_iou)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BatchItemError, DimensionMismatchError, UnsupportedFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SpectralShiftError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
