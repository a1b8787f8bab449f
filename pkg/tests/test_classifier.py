"""Comparison functions, gallery search, persistence."""

import math

import numpy as np
import pytest

from sparsefuse.classifier import (
    Gallery,
    accuracy,
    cityblock,
    classify,
    load_gallery,
    save_gallery,
    scores_to_gallery,
    shepard,
    squared_euclidean,
)
from sparsefuse.encoder import EncoderConfig, encode
from sparsefuse.errors import DimensionError, FingerprintMismatch


def test_pairwise_metric_examples():
    assert cityblock([1, 2], [3, 5]) == 5.0
    assert squared_euclidean([1, 2], [3, 5]) == 13.0
    assert shepard([1, 2], [3, 5]) == math.exp(-2) + math.exp(-3)
    assert shepard([4, 4, 4], [4, 4, 4]) == 3.0


def test_metrics_reject_length_mismatch():
    for fn in (cityblock, squared_euclidean, shepard):
        with pytest.raises(DimensionError):
            fn([1, 2], [1, 2, 3])


def test_metric_symmetry_and_identity():
    rng = np.random.default_rng(20)
    for _ in range(200):
        a = rng.integers(0, 256, size=24)
        b = rng.integers(0, 256, size=24)
        for fn in (cityblock, squared_euclidean, shepard):
            assert fn(a, b) == fn(b, a)
        assert cityblock(a, a) == 0.0
        assert squared_euclidean(a, a) == 0.0
        assert shepard(a, a) == 24.0
        if not np.array_equal(a, b):
            assert cityblock(a, b) > 0.0
            assert squared_euclidean(a, b) > 0.0
            assert shepard(a, b) < 24.0


def test_batch_scores_match_pairwise_functions():
    rng = np.random.default_rng(21)
    features = rng.integers(0, 256, size=(40, 30), dtype=np.uint8)
    query = rng.integers(0, 256, size=30, dtype=np.uint8)
    pair_fn = {"cityblock": cityblock, "squared_euclidean": squared_euclidean,
               "shepard": shepard}
    for metric, fn in pair_fn.items():
        batch = scores_to_gallery(features, query, metric)
        expected = np.array([fn(row, query) for row in features])
        assert np.allclose(batch, expected, rtol=0.0, atol=1e-12)


def test_batch_scores_validations():
    feats = np.zeros((3, 5), dtype=np.uint8)
    with pytest.raises(ValueError):
        scores_to_gallery(feats, np.zeros(5, dtype=np.uint8), "cosine")
    with pytest.raises(DimensionError):
        scores_to_gallery(feats, np.zeros(4, dtype=np.uint8), "cityblock")


def _feature(img, cfg):
    return encode(np.asarray(img, dtype=np.uint8), cfg)


def test_classify_picks_nearest_and_breaks_ties_low():
    cfg = EncoderConfig(W=4, X=2, k=1, channels=("pix",), seed=0)
    rng = np.random.default_rng(22)
    imgs = [rng.integers(0, 256, size=(8, 8), dtype=np.uint8) for _ in range(3)]
    fvs = [_feature(img, cfg) for img in imgs]
    gallery = Gallery.from_entries([("b", fvs[0]), ("a", fvs[0]), ("c", fvs[1])])
    for metric in ("cityblock", "squared_euclidean", "shepard"):
        label, score = classify(fvs[0], gallery, metric)
        assert label == "b"  # rows 0 and 1 tie exactly; the lower index wins
        if metric == "shepard":
            assert score == float(fvs[0].values.size)
        else:
            assert score == 0.0
    label, _ = classify(fvs[1], gallery, "cityblock")
    assert label == "c"


def test_classify_rejects_mismatched_fingerprints():
    cfg_a = EncoderConfig(W=4, X=2, k=1, channels=("pix",), seed=0)
    cfg_b = cfg_a.with_seed(1)
    img = np.random.default_rng(23).integers(0, 256, size=(4, 4), dtype=np.uint8)
    gallery = Gallery.from_entries([("a", _feature(img, cfg_a))])
    with pytest.raises(FingerprintMismatch):
        classify(_feature(img, cfg_b), gallery, "cityblock")


def test_gallery_from_entries_rejects_mixed_configs_and_empty():
    cfg_a = EncoderConfig(W=4, X=2, k=1, channels=("pix",), seed=0)
    img = np.random.default_rng(24).integers(0, 256, size=(4, 4), dtype=np.uint8)
    with pytest.raises(FingerprintMismatch):
        Gallery.from_entries([
            ("a", _feature(img, cfg_a)),
            ("b", _feature(img, cfg_a.with_seed(5))),
        ])
    with pytest.raises(ValueError):
        Gallery.from_entries([])


def test_classify_rejects_empty_gallery():
    cfg = EncoderConfig(W=4, X=2, k=1, channels=("pix",), seed=0)
    img = np.random.default_rng(25).integers(0, 256, size=(4, 4), dtype=np.uint8)
    fv = _feature(img, cfg)
    empty = Gallery(labels=[], features=np.zeros((0, fv.values.size), dtype=np.uint8),
                    fingerprint=fv.fingerprint)
    with pytest.raises(ValueError):
        classify(fv, empty, "cityblock")


def test_accuracy_percentage():
    assert accuracy(["a", "b", "a"], ["a", "b", "b"]) == pytest.approx(200.0 / 3.0)
    assert accuracy(["x"], ["x"]) == 100.0
    with pytest.raises(ValueError):
        accuracy([], [])
    with pytest.raises(DimensionError):
        accuracy(["a"], ["a", "b"])


def test_gallery_save_load_round_trip(tmp_path):
    cfg = EncoderConfig(W=4, X=2, k=1, channels=("pix", "dir"), seed=7)
    rng = np.random.default_rng(26)
    entries = [
        (f"cls{i}", _feature(rng.integers(0, 256, size=(8, 8), dtype=np.uint8), cfg))
        for i in range(4)
    ]
    gallery = Gallery.from_entries(entries)
    path = tmp_path / "gallery.json"
    save_gallery(gallery, path)
    loaded = load_gallery(path)
    assert loaded.labels == gallery.labels
    assert np.array_equal(loaded.features, gallery.features)
    assert loaded.fingerprint == gallery.fingerprint
    query = entries[2][1]
    assert classify(query, loaded, "shepard") == classify(query, gallery, "shepard")


def test_load_gallery_rejects_unknown_version(tmp_path):
    path = tmp_path / "gallery.json"
    path.write_text('{"format_version": 99, "fingerprint": {}, "entries": []}')
    with pytest.raises(ValueError):
        load_gallery(path)
