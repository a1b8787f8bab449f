"""Synthetic turntable-style datasets for tests and offline benchmarks.

Each class is a fixed arrangement of bright shapes on a black background;
the view angle moves every shape along its own elliptical orbit and
modulates the lighting, so neighboring angles look alike while classes
stay visually distinct. Images are deterministic in (seed, class, view).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .bench import Dataset, DatasetClass, View
from .imaging import save_image

_SHAPES_MIN, _SHAPES_MAX = 5, 7
_LIGHTING_SWING = 0.08


def _shape_params(rng: np.random.Generator) -> dict:
    return {
        "kind": "ellipse" if rng.random() < 0.5 else "rect",
        "orbit_radius": rng.uniform(4.0, 16.0),
        "orbit_phase": rng.uniform(0.0, 2.0 * np.pi),
        "orbit_squash": rng.uniform(0.55, 1.0),
        "half_w": rng.uniform(9.0, 24.0),
        "half_h": rng.uniform(9.0, 24.0),
        "tilt": rng.uniform(0.0, np.pi),
        "spin": rng.uniform(-0.3, 0.3),
        "intensity": rng.uniform(60.0, 255.0),
        "offset_x": rng.uniform(-12.0, 12.0),
        "offset_y": rng.uniform(-12.0, 12.0),
    }


def _render_view(shapes, lighting_phase: float, angle_deg: float,
                 rows: int, cols: int) -> np.ndarray:
    theta = np.deg2rad(angle_deg)
    ys, xs = np.mgrid[0:rows, 0:cols].astype(np.float64)
    canvas = np.zeros((rows, cols), dtype=np.float64)
    light = 1.0 + _LIGHTING_SWING * np.cos(theta + lighting_phase)
    for shape in shapes:
        cx = cols / 2.0 + shape["offset_x"] + shape["orbit_radius"] * np.cos(
            shape["orbit_phase"] + theta)
        cy = rows / 2.0 + shape["offset_y"] + shape["orbit_squash"] * shape[
            "orbit_radius"] * np.sin(shape["orbit_phase"] + theta)
        tilt = shape["tilt"] + shape["spin"] * theta
        dx = xs - cx
        dy = ys - cy
        u = dx * np.cos(tilt) + dy * np.sin(tilt)
        v = -dx * np.sin(tilt) + dy * np.cos(tilt)
        if shape["kind"] == "ellipse":
            mask = (u / shape["half_w"]) ** 2 + (v / shape["half_h"]) ** 2 <= 1.0
        else:
            mask = (np.abs(u) <= shape["half_w"]) & (np.abs(v) <= shape["half_h"])
        canvas[mask] = shape["intensity"] * light
    return np.clip(np.floor(canvas + 0.5), 0, 255).astype(np.uint8)


def make_view_dataset(num_classes: int = 20, views: int = 72,
                      size: tuple[int, int] = (128, 128), seed: int = 0) -> Dataset:
    """Build `num_classes` objects with `views` evenly spaced view angles."""
    if num_classes < 1:
        raise ValueError("need at least one class")
    if views < 1 or 360 % views != 0:
        raise ValueError(f"views {views} must divide 360 into integer angles")
    rows, cols = size
    step = 360 // views
    classes = []
    for class_idx in range(num_classes):
        rng = np.random.default_rng([seed, class_idx])
        count = int(rng.integers(_SHAPES_MIN, _SHAPES_MAX + 1))
        shapes = [_shape_params(rng) for _ in range(count)]
        lighting_phase = rng.uniform(0.0, 2.0 * np.pi)
        label = f"obj{class_idx + 1}"
        class_views = tuple(
            View(f"{label}__{angle}", angle,
                 _render_view(shapes, lighting_phase, float(angle), rows, cols))
            for angle in range(0, 360, step)
        )
        classes.append(DatasetClass(label, class_views))
    return Dataset(tuple(classes))


def make_two_class_dataset(views: int = 72, size: tuple[int, int] = (32, 32),
                           seed: int = 0) -> Dataset:
    """Two trivially separable classes: bright fields versus dark fields.

    Bright pixels are uniform over [176, 224], dark over [0, 12]. The
    strict bounds matter: dark images keep bits 4..6 constant over the
    whole image while bright images mix them, so the encoded vectors of
    the two classes differ on those planes for every cell, not just on
    average, and any metric separates them perfectly.
    """
    if views < 1 or 360 % views != 0:
        raise ValueError(f"views {views} must divide 360 into integer angles")
    rows, cols = size
    step = 360 // views
    classes = []
    for class_idx, (label, lo, hi) in enumerate(
            (("bright", 176, 225), ("dark", 0, 13))):
        class_views = []
        for view_idx, angle in enumerate(range(0, 360, step)):
            rng = np.random.default_rng([seed, class_idx, view_idx])
            img = rng.integers(lo, hi, size=(rows, cols), dtype=np.int64)
            class_views.append(
                View(f"{label}__{angle}", angle, img.astype(np.uint8))
            )
        classes.append(DatasetClass(label, tuple(class_views)))
    return Dataset(tuple(classes))


def write_dataset(dataset: Dataset, root, layout: str = "flat") -> None:
    """Write a dataset to disk in one of the recognized folder layouts."""
    if layout not in ("flat", "nested"):
        raise ValueError(f"unknown layout {layout!r}; expected 'flat' or 'nested'")
    root = Path(root)
    for cls in dataset.classes:
        for view in cls.views:
            if layout == "flat":
                if view.angle is None:
                    raise ValueError(
                        f"view {view.name!r} has no angle; the flat layout needs one")
                save_image(root / f"{view.name}.png", view.image)
            else:
                save_image(root / cls.label / f"{view.name}.png", view.image)
