"""Minimum-distance nearest-neighbor classification.

Three comparison functions are supported: cityblock distance, squared
Euclidean distance (no square root; the 1-NN decision is identical and the
literal form is cheaper), and Shepard similarity ``sum(exp(-|a_i - b_i|))``.
The first two are minimized, Shepard is maximized. Ties go to the lowest
gallery index.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .encoder import FeatureVector
from .errors import DimensionError, FingerprintMismatch

GALLERY_FORMAT_VERSION = 1

DISTANCE_METRICS = ("cityblock", "squared_euclidean")
SIMILARITY_METRICS = ("shepard",)
METRICS = DISTANCE_METRICS + SIMILARITY_METRICS

# exp(-d) for every possible absolute difference of two 8-bit values.
_SHEPARD_TABLE = np.exp(-np.arange(256, dtype=np.float64))


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.shape != b.shape:
        raise DimensionError(f"vector lengths differ: {a.size} vs {b.size}")
    return a, b


def cityblock(a, b) -> float:
    """Sum of absolute differences."""
    a, b = _pair(a, b)
    return float(np.abs(a - b).sum())


def squared_euclidean(a, b) -> float:
    """Sum of squared differences."""
    a, b = _pair(a, b)
    d = a - b
    return float((d * d).sum())


def shepard(a, b) -> float:
    """Sum of exp(-|difference|); equals the length only for equal vectors."""
    a, b = _pair(a, b)
    return float(np.exp(-np.abs(a - b)).sum())


PAIR_FUNCTIONS = {
    "cityblock": cityblock,
    "squared_euclidean": squared_euclidean,
    "shepard": shepard,
}


def scores_to_gallery(features: np.ndarray, query: np.ndarray, metric: str) -> np.ndarray:
    """Metric scores of one query against every gallery row, vectorized."""
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")
    feats = np.asarray(features)
    q = np.asarray(query)
    if feats.ndim != 2 or q.ndim != 1 or feats.shape[1] != q.size:
        raise DimensionError(
            f"gallery {feats.shape} incompatible with query of length {q.size}"
        )
    diff = feats.astype(np.int16) - q.astype(np.int16)
    if metric == "cityblock":
        return np.abs(diff).sum(axis=1, dtype=np.int64).astype(np.float64)
    if metric == "squared_euclidean":
        d = diff.astype(np.int64)
        return (d * d).sum(axis=1).astype(np.float64)
    return np.take(_SHEPARD_TABLE, np.abs(diff)).sum(axis=1)


@dataclass(eq=False)
class Gallery:
    """Labeled training features plus the configuration they came from."""

    labels: list[str]
    features: np.ndarray  # (N, L) uint8
    fingerprint: str

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.uint8)
        if self.features.ndim != 2 or self.features.shape[0] != len(self.labels):
            raise DimensionError(
                f"features {self.features.shape} do not match {len(self.labels)} labels"
            )

    def __len__(self) -> int:
        return len(self.labels)

    @classmethod
    def from_entries(cls, entries) -> "Gallery":
        """Build from (label, FeatureVector) pairs with a common fingerprint."""
        entries = list(entries)
        if not entries:
            raise ValueError("gallery requires at least one entry")
        fingerprint = entries[0][1].fingerprint
        for label, fv in entries:
            if fv.fingerprint != fingerprint:
                raise FingerprintMismatch(
                    f"entry {label!r} was encoded under a different configuration"
                )
        return cls(
            labels=[str(label) for label, _ in entries],
            features=np.stack([fv.values for _, fv in entries]),
            fingerprint=fingerprint,
        )


def classify(query: FeatureVector, gallery: Gallery, metric: str) -> tuple[str, float]:
    """Label of the best-scoring gallery entry, with its score.

    Distances are minimized, similarities maximized; equal scores resolve
    to the lowest gallery index.
    """
    if len(gallery) == 0:
        raise ValueError("cannot classify against an empty gallery")
    if query.fingerprint != gallery.fingerprint:
        raise FingerprintMismatch(
            "query features are incomparable with this gallery "
            "(encoder configurations differ)"
        )
    scores = scores_to_gallery(gallery.features, query.values, metric)
    idx = int(np.argmax(scores)) if metric in SIMILARITY_METRICS else int(np.argmin(scores))
    return gallery.labels[idx], float(scores[idx])


def accuracy(predictions, truths) -> float:
    """Percentage of matching positions."""
    predictions = list(predictions)
    truths = list(truths)
    if len(predictions) != len(truths):
        raise DimensionError(
            f"prediction/truth lengths differ: {len(predictions)} vs {len(truths)}"
        )
    if not predictions:
        raise ValueError("cannot compute accuracy of an empty prediction set")
    matches = sum(p == t for p, t in zip(predictions, truths))
    return 100.0 * matches / len(predictions)


def save_gallery(gallery: Gallery, path) -> None:
    """Write a gallery to a versioned JSON file."""
    doc = {
        "format_version": GALLERY_FORMAT_VERSION,
        "fingerprint": json.loads(gallery.fingerprint),
        "entries": [
            {"label": label, "values": row.tolist()}
            for label, row in zip(gallery.labels, gallery.features)
        ],
    }
    Path(path).write_text(json.dumps(doc, separators=(",", ":")) + "\n")


def load_gallery(path) -> Gallery:
    doc = json.loads(Path(path).read_text())
    version = doc.get("format_version")
    if version != GALLERY_FORMAT_VERSION:
        raise ValueError(f"unsupported gallery format version {version!r}")
    entries = doc["entries"]
    if not entries:
        raise ValueError("gallery file holds no entries")
    return Gallery(
        labels=[e["label"] for e in entries],
        features=np.asarray([e["values"] for e in entries], dtype=np.uint8),
        fingerprint=json.dumps(doc["fingerprint"], sort_keys=True, separators=(",", ":")),
    )
