import numpy as np
import pytest

from helpers import full_range_image, random_image
from spectral_shift import (
    AUGMENT_METHODS,
    BatchItemError,
    EmptyPoolError,
    ImageRecord,
    InverseMode,
    MissingPoolError,
    SeedPolicy,
    accumulate_histograms,
    augment_batch,
    augment_image,
    build_target_pool,
    channel_entropy,
    channel_histograms,
    compute_histogram,
    hist_match_to_domain,
    load_image,
    load_manifest,
    rhm_augment,
    to_cdf,
)


def small_pool(rng, n=4, h=16, w=16):
    return build_target_pool((f"t{i}", random_image(rng, h, w)) for i in range(n))


class TestTargetPool:
    def test_entries_keep_ids_in_order(self, rng):
        pool = build_target_pool((f"t{i}", random_image(rng)) for i in range(5))
        assert [e.id for e in pool.entries] == [f"t{i}" for i in range(5)]
        assert len(pool) == 5

    def test_domain_cdf_is_cdf_of_summed_counts(self, rng):
        imgs = [random_image(rng, 8, 8) for _ in range(3)]
        pool = build_target_pool((str(i), img) for i, img in enumerate(imgs))
        for c in range(3):
            acc = accumulate_histograms([channel_histograms(img)[c] for img in imgs])
            assert np.array_equal(pool.domain_cdf[c].values, to_cdf(acc).values)

    def test_empty_pool_rejected(self):
        with pytest.raises(EmptyPoolError):
            build_target_pool([])


class TestRhmAugment:
    def test_deterministic_in_seed(self, rng):
        pool = small_pool(rng)
        src = random_image(rng)
        out1, id1 = rhm_augment(src, pool, seed=31337)
        out2, id2 = rhm_augment(src, pool, seed=31337)
        assert id1 == id2
        assert np.array_equal(out1, out2)

    def test_different_seeds_reach_different_targets(self, rng):
        pool = small_pool(rng)
        src = random_image(rng)
        chosen = {rhm_augment(src, pool, seed=s)[1] for s in range(20)}
        assert len(chosen) > 1

    def test_target_selection_is_uniform(self, rng):
        # pool of 10, tiny rasters so tens of thousands of draws stay cheap
        pool = build_target_pool((f"t{i}", random_image(rng, 1, 1)) for i in range(10))
        src = random_image(rng, 1, 1)
        draws = 20_000
        counts = {}
        for s in range(draws):
            _, tid = rhm_augment(src, pool, seed=s)
            counts[tid] = counts.get(tid, 0) + 1
        for tid in (f"t{i}" for i in range(10)):
            assert abs(counts.get(tid, 0) / draws - 0.1) < 0.01

    def test_self_match_is_identity(self, rng):
        src = full_range_image(rng)
        pool = build_target_pool([("self", src)])
        out, tid = rhm_augment(src, pool, seed=1, mode=InverseMode.PAPER)
        assert tid == "self"
        assert np.array_equal(out, src)

    def test_output_cdf_approaches_target_cdf(self, rng):
        # conventional inverse: after matching, |F_out(y) - G(y)| is bounded
        # by the largest single source bin probability at every level
        src = random_image(rng, 32, 32)
        tgt = random_image(rng, 32, 32)
        pool = build_target_pool([("t", tgt)])
        out, _ = rhm_augment(src, pool, seed=0, mode=InverseMode.CONVENTIONAL)
        for c in range(3):
            src_hist = compute_histogram(src[:, :, c])
            bound = src_hist.bins.max() / src_hist.total
            f_out = to_cdf(compute_histogram(out[:, :, c])).values
            g = to_cdf(compute_histogram(tgt[:, :, c])).values
            assert np.abs(f_out - g).max() <= bound + 1e-12

    def test_entropy_never_increases(self, rng):
        pool = small_pool(rng)
        for _ in range(10):
            src = random_image(rng)
            out, _ = rhm_augment(src, pool, seed=int(rng.integers(1 << 32)))
            for c in range(3):
                before = channel_entropy(compute_histogram(src[:, :, c]))
                after = channel_entropy(compute_histogram(out[:, :, c]))
                assert before - after >= -1e-9

    def test_input_not_mutated(self, rng):
        pool = small_pool(rng)
        src = random_image(rng)
        before = src.copy()
        rhm_augment(src, pool, seed=3)
        assert np.array_equal(src, before)


class TestHistMatchToDomain:
    def test_single_image_pool_equals_rhm(self, rng):
        # with one target the domain histogram is that image's histogram
        src = random_image(rng)
        pool = build_target_pool([("only", random_image(rng))])
        via_domain = hist_match_to_domain(src, pool)
        via_rhm, _ = rhm_augment(src, pool, seed=123)
        assert np.array_equal(via_domain, via_rhm)

    def test_deterministic(self, rng):
        pool = small_pool(rng)
        src = random_image(rng)
        assert np.array_equal(hist_match_to_domain(src, pool), hist_match_to_domain(src, pool))

    def test_entropy_never_increases(self, rng):
        pool = small_pool(rng)
        for _ in range(10):
            src = random_image(rng)
            out = hist_match_to_domain(src, pool)
            for c in range(3):
                before = channel_entropy(compute_histogram(src[:, :, c]))
                after = channel_entropy(compute_histogram(out[:, :, c]))
                assert before - after >= -1e-9


class TestSeedPolicy:
    def test_frozen_reference_values(self):
        # pinned against the documented BLAKE2b-8 little-endian derivation
        assert SeedPolicy(0).derive(0, "a") == 4992492085429020034
        assert SeedPolicy(1).derive(2, "img-001") == 925320855751445017
        assert (
            SeedPolicy(2**64 - 1).derive(4294967295, "tile/0007.png")
            == 15410424360349910119
        )

    def test_seeds_fit_in_u64(self):
        for i in range(100):
            s = SeedPolicy(7).derive(3, f"id-{i}")
            assert 0 <= s < 1 << 64

    def test_distinct_ids_do_not_collide(self):
        policy = SeedPolicy(42)
        seeds = {policy.derive(0, f"record-{i}") for i in range(1000)}
        assert len(seeds) == 1000

    def test_epoch_and_global_seed_both_matter(self):
        assert SeedPolicy(0).derive(0, "x") != SeedPolicy(0).derive(1, "x")
        assert SeedPolicy(0).derive(0, "x") != SeedPolicy(1).derive(0, "x")


class TestAugmentImage:
    def test_none_returns_fresh_copy(self, rng):
        img = random_image(rng)
        out, info = augment_image(img, "none")
        assert np.array_equal(out, img)
        assert not np.shares_memory(out, img)
        assert info == {}

    def test_rhm_reports_target_id(self, rng):
        pool = small_pool(rng)
        out, info = augment_image(random_image(rng), "rhm", seed=5, pool=pool)
        assert info["target_id"] in {e.id for e in pool.entries}

    def test_parametric_methods_report_parameters(self, rng):
        img = random_image(rng)
        _, info = augment_image(img, "affine", seed=5)
        assert len(info["alpha"]) == 3 and len(info["mu"]) == 3
        _, info = augment_image(img, "gamma", seed=5)
        assert len(info["gamma"]) == 3
        _, info = augment_image(img, "hsv", seed=5)
        assert info["alpha"][0] == 1.0

    def test_unknown_method_rejected(self, rng):
        with pytest.raises(ValueError, match="sepia"):
            augment_image(random_image(rng), "sepia", seed=1)

    def test_matching_methods_require_pool(self, rng):
        with pytest.raises(MissingPoolError):
            augment_image(random_image(rng), "rhm", seed=1)
        with pytest.raises(MissingPoolError):
            augment_image(random_image(rng), "hist-match")

    def test_randomized_methods_require_seed(self, rng):
        with pytest.raises(ValueError):
            augment_image(random_image(rng), "affine")


class TestAugmentBatch:
    def _manifest(self, two_domain_set):
        return load_manifest(two_domain_set)

    def _pool(self, manifest):
        return build_target_pool(
            (r.id, load_image(r.image_path)) for r in manifest.targets
        )

    def test_output_order_matches_input_order(self, two_domain_set):
        manifest = self._manifest(two_domain_set)
        results = augment_batch(manifest.sources, "gamma", policy=SeedPolicy(1))
        assert [r.id for r in results] == [r.id for r in manifest.sources]

    def test_thread_count_never_changes_pixels(self, two_domain_set):
        manifest = self._manifest(two_domain_set)
        pool = self._pool(manifest)
        kwargs = dict(pool=pool, policy=SeedPolicy(9), epoch=3)
        seq = augment_batch(manifest.sources, "rhm", threads=1, **kwargs)
        par = augment_batch(manifest.sources, "rhm", threads=8, **kwargs)
        for a, b in zip(seq, par):
            assert a.id == b.id and a.seed == b.seed and a.info == b.info
            assert np.array_equal(a.image, b.image)

    def test_epoch_changes_seeds_and_outputs(self, two_domain_set):
        manifest = self._manifest(two_domain_set)
        e0 = augment_batch(manifest.sources, "affine", policy=SeedPolicy(4), epoch=0)
        e1 = augment_batch(manifest.sources, "affine", policy=SeedPolicy(4), epoch=1)
        assert all(a.seed != b.seed for a, b in zip(e0, e1))
        assert any(not np.array_equal(a.image, b.image) for a, b in zip(e0, e1))

    def test_none_method_is_identity_with_no_seed(self, two_domain_set):
        manifest = self._manifest(two_domain_set)
        results = augment_batch(manifest.sources, "none")
        for record, res in zip(manifest.sources, results):
            assert res.seed is None
            assert np.array_equal(res.image, load_image(record.image_path))

    def test_rhm_audit_names_pool_targets(self, two_domain_set):
        manifest = self._manifest(two_domain_set)
        pool = self._pool(manifest)
        results = augment_batch(manifest.sources, "rhm", pool=pool, policy=SeedPolicy(2))
        target_ids = {r.id for r in manifest.targets}
        assert all(res.info["target_id"] in target_ids for res in results)

    def test_unknown_method_rejected(self, two_domain_set):
        manifest = self._manifest(two_domain_set)
        with pytest.raises(ValueError, match="sepia"):
            augment_batch(manifest.sources, "sepia")

    def test_matching_without_pool_rejected(self, two_domain_set):
        manifest = self._manifest(two_domain_set)
        with pytest.raises(MissingPoolError, match="target pool"):
            augment_batch(manifest.sources, "rhm")

    def test_target_domain_records_rejected(self, two_domain_set):
        manifest = self._manifest(two_domain_set)
        pool = self._pool(manifest)
        bad = manifest.targets[0]
        with pytest.raises(ValueError, match=bad.id):
            augment_batch([bad], "rhm", pool=pool)

    def test_unreadable_record_raises_batch_item_error(self, tmp_path):
        ghost = ImageRecord(
            id="ghost",
            image_path=tmp_path / "nope.png",
            label_path=None,
            domain="source",
            group="g",
        )
        with pytest.raises(BatchItemError, match="ghost") as err:
            augment_batch([ghost], "none")
        assert err.value.record_id == "ghost"

    def test_method_registry_is_stable(self):
        assert AUGMENT_METHODS == ("rhm", "affine", "gamma", "hsv", "hist-match", "none")
