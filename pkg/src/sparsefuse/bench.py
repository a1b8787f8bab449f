"""Benchmark harness: dataset loading, angle splits, experiment runners.

A dataset is a set of classes, each holding views of one object. View
filenames carry the turntable angle as ``<name>__<angle>.png``; labeled
folders without angles are also accepted and are split by a stable hash
instead. Experiments encode the train split into a gallery, classify the
(optionally perturbed) test split, and report per-seed accuracies.
"""

from __future__ import annotations

import csv
import hashlib
import json
import time
import warnings
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .classifier import METRICS, Gallery, classify
from .encoder import (
    EncoderConfig,
    build_schedules,
    channels_from_name,
    combo_name,
    encode,
)
from .errors import ConfigError
from .imaging import load_image, resize_gray
from .perturb import PerturbationSpec, apply_spec, spec_from_json, spec_to_json
from .rng import derive_seed

IMAGE_EXTENSIONS = (".png", ".pgm", ".ppm", ".bmp", ".jpg", ".jpeg")

SWEEP_AXES = (
    "W",
    "X",
    "k",
    "noise_variance",
    "sp_density",
    "speckle_variance",
    "dx",
    "dy",
    "scale_factor",
    "class_count",
    "train_interval",
)

REPORT_COLUMNS = (
    "axis_value",
    "seed",
    "metric",
    "channels",
    "mask",
    "W",
    "X",
    "k",
    "accuracy_percent",
    "duration_ms",
)


# ---------------------------------------------------------------------------
# dataset containers


@dataclass(eq=False)
class View:
    """One image of one object; `angle` is None for angle-less layouts."""

    name: str
    angle: int | None
    image: np.ndarray


@dataclass(eq=False)
class DatasetClass:
    label: str
    views: tuple[View, ...]

    def __post_init__(self):
        angles = [v.angle for v in self.views if v.angle is not None]
        if len(angles) != len(set(angles)):
            raise ValueError(f"class {self.label!r} repeats a view angle")


@dataclass(eq=False)
class Dataset:
    classes: tuple[DatasetClass, ...]

    def __post_init__(self):
        shapes = {v.image.shape for c in self.classes for v in c.views}
        if len(shapes) > 1:
            raise ValueError(f"images do not share one size: {sorted(shapes)}")

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    @property
    def num_images(self) -> int:
        return sum(len(c.views) for c in self.classes)

    @property
    def image_shape(self) -> tuple[int, int]:
        if not self.classes or not self.classes[0].views:
            raise ValueError("dataset holds no images")
        return self.classes[0].views[0].image.shape

    def take_classes(self, count: int) -> "Dataset":
        if not 1 <= count <= len(self.classes):
            raise ValueError(f"class count {count} outside [1, {len(self.classes)}]")
        return Dataset(self.classes[:count])


@dataclass(eq=False)
class Sample:
    label: str
    view: View


@dataclass(eq=False)
class Split:
    train: tuple[Sample, ...]
    test: tuple[Sample, ...]


def _natural_key(text: str):
    parts = []
    digits = ""
    for ch in text:
        if ch.isdigit():
            digits += ch
        else:
            if digits:
                parts.append((1, int(digits)))
                digits = ""
            parts.append((0, ch))
    if digits:
        parts.append((1, int(digits)))
    return tuple(parts)


def _parse_view_name(stem: str) -> tuple[str, int | None]:
    """Split `<name>__<angle>` into (name, angle); no marker means no angle."""
    if "__" not in stem:
        return stem, None
    head, _, tail = stem.rpartition("__")
    try:
        return head, int(tail)
    except ValueError:
        raise ValueError(f"view name {stem!r} has a non-integer angle {tail!r}") from None


def _load_view(path: Path, resize_to: tuple[int, int] | None) -> np.ndarray:
    img = load_image(path)
    if resize_to is not None and img.shape != tuple(resize_to):
        img = resize_gray(img, resize_to[0], resize_to[1])
    return img


def load_dataset(root, resize_to: tuple[int, int] | None = None) -> Dataset:
    """Read a view dataset from disk.

    Two layouts are recognized: flat files ``<root>/<label>__<angle>.png``
    and labeled folders ``<root>/<label>/<name>[__<angle>].png``. Files
    whose angle suffix fails to parse are skipped with a warning. Images
    are resized to `resize_to` (rows, cols) when it is given and differs.
    """
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"dataset root {root} is not a directory")
    flat_files = sorted(
        (p for p in root.iterdir() if p.is_file() and p.suffix.lower() in IMAGE_EXTENSIONS),
        key=lambda p: _natural_key(p.name),
    )
    grouped: dict[str, list[View]] = {}
    if flat_files:
        for path in flat_files:
            try:
                label, angle = _parse_view_name(path.stem)
            except ValueError as exc:
                warnings.warn(f"skipping {path.name}: {exc}")
                continue
            if angle is None:
                warnings.warn(f"skipping {path.name}: flat layout needs a __<angle> suffix")
                continue
            grouped.setdefault(label, []).append(View(path.stem, angle, _load_view(path, resize_to)))
    else:
        for class_dir in sorted((p for p in root.iterdir() if p.is_dir()),
                                key=lambda p: _natural_key(p.name)):
            for path in sorted(
                (p for p in class_dir.iterdir()
                 if p.is_file() and p.suffix.lower() in IMAGE_EXTENSIONS),
                key=lambda p: _natural_key(p.name),
            ):
                try:
                    _, angle = _parse_view_name(path.stem)
                except ValueError as exc:
                    warnings.warn(f"skipping {path.name}: {exc}")
                    continue
                grouped.setdefault(class_dir.name, []).append(
                    View(path.stem, angle, _load_view(path, resize_to))
                )
    classes = []
    for label in sorted(grouped, key=_natural_key):
        views = sorted(grouped[label],
                       key=lambda v: (v.angle is None, v.angle if v.angle is not None else 0,
                                      _natural_key(v.name)))
        classes.append(DatasetClass(label, tuple(views)))
    if not classes:
        raise FileNotFoundError(f"no images found under {root}")
    return Dataset(tuple(classes))


def _hash_bucket(name: str, buckets: int) -> int:
    digest = hashlib.sha1(name.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") % buckets


def split_by_angle(dataset: Dataset, interval: int) -> Split:
    """Views at multiples of `interval` degrees train; the rest test.

    `interval` must divide 360. Views without an angle fall back to a
    deterministic name hash that keeps the same train fraction.
    """
    if interval <= 0 or 360 % interval != 0:
        raise ValueError(f"interval {interval} must be a positive divisor of 360")
    buckets = 360 // interval
    train: list[Sample] = []
    test: list[Sample] = []
    for cls in dataset.classes:
        for view in cls.views:
            if view.angle is not None:
                is_train = view.angle % interval == 0
            else:
                is_train = _hash_bucket(view.name, buckets) == 0
            (train if is_train else test).append(Sample(cls.label, view))
    return Split(tuple(train), tuple(test))


# ---------------------------------------------------------------------------
# run configuration


@dataclass(frozen=True)
class RunConfig:
    """Everything one experiment needs beyond the dataset itself."""

    encoder: EncoderConfig = EncoderConfig()
    metric: str = "shepard"
    train_interval_degrees: int = 45
    resize_to: tuple[int, int] | None = (128, 128)
    perturbation: PerturbationSpec | None = None

    def __post_init__(self):
        if self.metric not in METRICS:
            raise ConfigError(f"unknown metric {self.metric!r}; expected one of {METRICS}")
        if self.resize_to is not None:
            rows, cols = self.resize_to
            if rows < 1 or cols < 1:
                raise ConfigError("resize_to dimensions must be positive")
            object.__setattr__(self, "resize_to", (int(rows), int(cols)))


def run_config_to_json(cfg: RunConfig) -> dict:
    doc = {
        "W": cfg.encoder.W,
        "X": cfg.encoder.X,
        "k": cfg.encoder.k,
        "P": cfg.encoder.P,
        "channels": combo_name(cfg.encoder.channels),
        "gradient_mask": cfg.encoder.gradient_mask,
        "seed": cfg.encoder.seed,
        "tie_rule": cfg.encoder.tie_rule,
        "metric": cfg.metric,
        "train_interval_degrees": cfg.train_interval_degrees,
        "resize_to": list(cfg.resize_to) if cfg.resize_to else None,
        "perturbation": spec_to_json(cfg.perturbation) if cfg.perturbation else None,
    }
    return doc


def run_config_from_json(doc: dict) -> RunConfig:
    encoder = EncoderConfig(
        W=int(doc.get("W", 16)),
        X=int(doc.get("X", 4)),
        k=int(doc.get("k", 2)),
        P=int(doc.get("P", 8)),
        channels=channels_from_name(doc.get("channels", "pixmagdir")),
        gradient_mask=doc.get("gradient_mask", "prewitt"),
        seed=int(doc.get("seed", 0)),
        tie_rule=doc.get("tie_rule", "all"),
    )
    resize = doc.get("resize_to", (128, 128))
    perturb_doc = doc.get("perturbation")
    return RunConfig(
        encoder=encoder,
        metric=doc.get("metric", "shepard"),
        train_interval_degrees=int(doc.get("train_interval_degrees", 45)),
        resize_to=tuple(resize) if resize is not None else None,
        perturbation=spec_from_json(perturb_doc) if perturb_doc else None,
    )


def load_run_config(path) -> RunConfig:
    with open(path, "r", encoding="utf-8") as handle:
        return run_config_from_json(json.load(handle))


def save_run_config(cfg: RunConfig, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(run_config_to_json(cfg), handle, indent=2)
        handle.write("\n")


# ---------------------------------------------------------------------------
# experiment results


@dataclass(eq=False)
class SeedResult:
    seed: int
    confusion: np.ndarray
    duration_ms: float

    @property
    def accuracy(self) -> float:
        total = int(self.confusion.sum())
        if total == 0:
            raise ValueError("empty confusion matrix")
        return 100.0 * float(np.trace(self.confusion)) / total


@dataclass(eq=False)
class ExperimentReport:
    run: RunConfig
    labels: tuple[str, ...]
    seed_results: tuple[SeedResult, ...]
    axis: str | None = None
    axis_value: object = None

    @property
    def seeds(self) -> tuple[int, ...]:
        return tuple(r.seed for r in self.seed_results)

    @property
    def mean_accuracy(self) -> float:
        return float(np.mean([r.accuracy for r in self.seed_results]))

    @property
    def pooled_confusion(self) -> np.ndarray:
        return np.sum([r.confusion for r in self.seed_results], axis=0)

    @property
    def per_class_accuracy(self) -> dict[str, float]:
        pooled = self.pooled_confusion
        out = {}
        for idx, label in enumerate(self.labels):
            row_total = int(pooled[idx].sum())
            out[label] = 100.0 * int(pooled[idx, idx]) / row_total if row_total else float("nan")
        return out


def run_experiment(
    dataset: Dataset,
    run_cfg: RunConfig,
    seeds=(0, 1, 2),
    axis: str | None = None,
    axis_value=None,
) -> ExperimentReport:
    """Train on the angle split, classify the test views, once per seed.

    Per seed, the encoder seed is replaced, schedules are built once and
    reused for every image, and noisy perturbations draw a fresh stream
    per test image derived from (spec seed, run seed, image index).
    """
    seeds = tuple(int(s) for s in seeds)
    if not seeds:
        raise ValueError("at least one seed is required")
    split = split_by_angle(dataset, run_cfg.train_interval_degrees)
    if not split.train:
        raise ValueError("train split is empty")
    if not split.test:
        raise ValueError("test split is empty; lower the train interval")
    labels = tuple(c.label for c in dataset.classes)
    label_index = {label: i for i, label in enumerate(labels)}
    m, n = dataset.image_shape
    spec = run_cfg.perturbation
    results = []
    for seed in seeds:
        started = time.perf_counter()
        enc_cfg = run_cfg.encoder.with_seed(seed)
        schedules = build_schedules(enc_cfg, m, n)
        entries = [
            (sample.label, encode(sample.view.image, enc_cfg, schedules))
            for sample in split.train
        ]
        gallery = Gallery.from_entries(entries)
        confusion = np.zeros((len(labels), len(labels)), dtype=np.int64)
        for index, sample in enumerate(split.test):
            img = sample.view.image
            if spec is not None:
                img = apply_spec(img, spec, seed=derive_seed(spec.noise_seed, seed, index))
            predicted, _ = classify(encode(img, enc_cfg, schedules), gallery, run_cfg.metric)
            confusion[label_index[sample.label], label_index[predicted]] += 1
        duration_ms = (time.perf_counter() - started) * 1000.0
        results.append(SeedResult(seed, confusion, duration_ms))
    return ExperimentReport(run_cfg, labels, tuple(results), axis, axis_value)


def _apply_axis(dataset: Dataset, run_cfg: RunConfig, axis: str, value):
    """Return (dataset, run_cfg) with one sweep axis changed."""
    if axis in ("W", "X", "k"):
        encoder = replace(run_cfg.encoder, **{axis: int(value)})
        return dataset, replace(run_cfg, encoder=encoder)
    if axis in ("noise_variance", "sp_density", "speckle_variance", "scale_factor"):
        kind = {
            "noise_variance": "gaussian",
            "sp_density": "salt_pepper",
            "speckle_variance": "speckle",
            "scale_factor": "scale",
        }[axis]
        noise_seed = run_cfg.perturbation.noise_seed if run_cfg.perturbation else 0
        spec = PerturbationSpec(kind, amount=float(value), noise_seed=noise_seed)
        return dataset, replace(run_cfg, perturbation=spec)
    if axis in ("dx", "dy"):
        shift = int(value)
        spec = PerturbationSpec(
            "translate",
            dx=shift if axis == "dx" else 0,
            dy=shift if axis == "dy" else 0,
        )
        return dataset, replace(run_cfg, perturbation=spec)
    if axis == "class_count":
        return dataset.take_classes(int(value)), run_cfg
    if axis == "train_interval":
        return dataset, replace(run_cfg, train_interval_degrees=int(value))
    raise ConfigError(f"unknown sweep axis {axis!r}; expected one of {SWEEP_AXES}")


def run_sweep(
    dataset: Dataset,
    axis: str,
    grid,
    base_cfg: RunConfig,
    seeds=(0, 1, 2),
) -> list[ExperimentReport]:
    """One experiment per grid value along `axis`, everything else fixed.

    A grid value that fails to validate or run is reported with a warning
    and skipped so the rest of the sweep still completes.
    """
    if axis not in SWEEP_AXES:
        raise ConfigError(f"unknown sweep axis {axis!r}; expected one of {SWEEP_AXES}")
    reports = []
    for value in grid:
        try:
            point_dataset, point_cfg = _apply_axis(dataset, base_cfg, axis, value)
            reports.append(
                run_experiment(point_dataset, point_cfg, seeds, axis=axis, axis_value=value)
            )
        except Exception as exc:  # keep sweeping past one bad grid point
            warnings.warn(f"sweep point {axis}={value!r} failed: {exc}")
    return reports


# ---------------------------------------------------------------------------
# reporting


def _format_axis_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return str(value)


def report_rows(reports, include_timings: bool = False) -> list[dict]:
    """Flatten reports to one dict per (report, seed) in a stable order.

    Timings are volatile, so `duration_ms` stays empty unless explicitly
    requested; everything else is a pure function of config and data.
    """
    rows = []
    for report in reports:
        cfg = report.run
        for result in report.seed_results:
            rows.append(
                {
                    "axis_value": _format_axis_value(report.axis_value),
                    "seed": result.seed,
                    "metric": cfg.metric,
                    "channels": combo_name(cfg.encoder.channels),
                    "mask": cfg.encoder.gradient_mask,
                    "W": cfg.encoder.W,
                    "X": cfg.encoder.X,
                    "k": cfg.encoder.k,
                    "accuracy_percent": f"{result.accuracy:.4f}",
                    "duration_ms": f"{result.duration_ms:.1f}" if include_timings else "",
                }
            )
    return rows


def emit_report(reports, path, fmt: str | None = None, include_timings: bool = False) -> None:
    """Write reports as CSV or JSON; format inferred from the extension."""
    reports = list(reports)
    if not reports:
        raise ValueError("nothing to report")
    path = Path(path)
    if fmt is None:
        fmt = path.suffix.lstrip(".").lower()
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown report format {fmt!r}; expected csv or json")
    rows = report_rows(reports, include_timings=include_timings)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.DictWriter(handle, fieldnames=REPORT_COLUMNS, lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
    else:
        for row in rows:
            if row["duration_ms"] == "":
                row["duration_ms"] = None
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(rows, handle, indent=2)
            handle.write("\n")
