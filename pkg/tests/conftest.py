"""Shared fixtures: small deterministic images and synthetic datasets."""

import numpy as np
import pytest

from sparsefuse.synth import make_two_class_dataset, make_view_dataset


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260816)


@pytest.fixture(scope="session")
def ramp_image():
    """Horizontal ramp: intensity rises left to right, constant per column."""
    return np.tile(np.arange(16, dtype=np.uint8), (12, 1))


@pytest.fixture(scope="session")
def two_class_dataset():
    return make_two_class_dataset(views=24, size=(32, 32), seed=7)


@pytest.fixture(scope="session")
def small_view_dataset():
    """Five classes, 24 views, 64x64: fast stand-in for harness tests."""
    return make_view_dataset(num_classes=5, views=24, size=(64, 64), seed=11)
