"""Sparse fused bit-plane features for view-based object recognition.

The pipeline slices an 8-bit image (and optionally its gradient magnitude
and direction channels) into bit planes, sums seeded random pixel cells
per plane, keeps only per-group maxima (winner-take-all), and fuses the
surviving bits with their plane weights into a compact feature vector. A
nearest-neighbor gallery search does the recognition.
"""

from .bench import (
    Dataset,
    DatasetClass,
    ExperimentReport,
    RunConfig,
    Sample,
    SeedResult,
    Split,
    View,
    emit_report,
    load_dataset,
    load_run_config,
    run_experiment,
    run_sweep,
    save_run_config,
    split_by_angle,
)
from .classifier import (
    Gallery,
    accuracy,
    classify,
    load_gallery,
    save_gallery,
)
from .encoder import (
    EncoderConfig,
    FeatureVector,
    SelectionSchedule,
    build_schedule,
    build_schedules,
    encode,
    encode_channel,
)
from .errors import ConfigError, DimensionError, FingerprintMismatch
from .gradient import gradient_channels, gradient_direction, gradient_magnitude
from .imaging import bit_planes, from_bit_planes, load_image, quantize, save_image
from .perturb import PerturbationSpec, apply_spec, parse_spec

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "Dataset",
    "DatasetClass",
    "DimensionError",
    "EncoderConfig",
    "ExperimentReport",
    "FeatureVector",
    "FingerprintMismatch",
    "Gallery",
    "PerturbationSpec",
    "RunConfig",
    "Sample",
    "SeedResult",
    "SelectionSchedule",
    "Split",
    "View",
    "accuracy",
    "apply_spec",
    "bit_planes",
    "build_schedule",
    "build_schedules",
    "classify",
    "emit_report",
    "encode",
    "encode_channel",
    "from_bit_planes",
    "gradient_channels",
    "gradient_direction",
    "gradient_magnitude",
    "load_dataset",
    "load_gallery",
    "load_image",
    "load_run_config",
    "parse_spec",
    "quantize",
    "run_experiment",
    "run_sweep",
    "save_gallery",
    "save_image",
    "save_run_config",
    "split_by_angle",
    "__version__",
]
