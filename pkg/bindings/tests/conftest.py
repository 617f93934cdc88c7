import json
from pathlib import Path

import numpy as np
import pytest

from spectral_shift import save_image

ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


@pytest.fixture
def rng():
    return np.random.default_rng(0xB1D5EED)


@pytest.fixture
def record_acceptance():
    def record(name: str, status: str) -> None:
        ACCEPTANCE_RESULTS.append((name, status))

    return record


@pytest.fixture
def make_set(tmp_path, rng):
    """Builds a random manifest under this test's tmp dir on demand."""

    def make(n_source: int, n_target: int) -> Path:
        return _write_random_set(tmp_path / "set", rng, n_source, n_target)

    return make


def _write_random_set(root: Path, rng, n_source: int, n_target: int, size: int = 24) -> Path:
    """Write random source/target PNGs plus a manifest; returns manifest path."""
    (root / "images").mkdir(parents=True, exist_ok=True)
    records = []
    for domain, prefix, count in (("source", "src", n_source), ("target", "tgt", n_target)):
        for i in range(count):
            rec_id = f"{prefix}-{i:03d}"
            img = rng.integers(0, 256, size=(size, size, 3), dtype=np.uint8)
            save_image(root / "images" / f"{rec_id}.png", img)
            records.append(
                {
                    "id": rec_id,
                    "image": f"images/{rec_id}.png",
                    "domain": domain,
                    "group": "synthetic",
                }
            )
    manifest = root / "manifest.json"
    manifest.write_text(
        json.dumps({"version": "1", "records": records}, indent=2) + "\n", encoding="utf-8"
    )
    return manifest


@pytest.fixture(scope="session")
def random_set(tmp_path_factory):
    """Ten random source images and three targets, as (manifest, batch, ids)."""
    from spectral_shift import load_image, load_manifest

    root = tmp_path_factory.mktemp("binding-set")
    rng = np.random.default_rng(0x5EED5)
    manifest_path = _write_random_set(root, rng, n_source=10, n_target=3)
    manifest = load_manifest(manifest_path)
    sources = manifest.sources
    batch = np.stack([load_image(r.image_path) for r in sources])
    ids = [r.id for r in sources]
    return manifest_path, batch, ids


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria (bindings)")
        for name, status in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(f"ACCEPTANCE {name}: {status}")
