#!/usr/bin/env python3
"""Sweep encoder and robustness parameters and write one report per axis.

Covers the pixels-per-cell budget W, the inhibition group size X, the
cell multiplier k, the three noise families, horizontal and vertical
shifts, rescaling, and the training angle interval. Each axis produces
<axis>.csv in the output directory.

Usage:
    python3 scripts/run_parameter_sweeps.py data/views out/sweeps
    python3 scripts/run_parameter_sweeps.py --synthetic out/sweeps --axes W,X
"""

import argparse
import sys
from dataclasses import replace
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from sparsefuse.bench import RunConfig, emit_report, load_dataset, run_sweep
from sparsefuse.synth import make_view_dataset

DEFAULT_GRIDS: dict[str, list] = {
    "W": [4, 8, 16, 32, 64],
    "X": [2, 4, 8, 16, 64],
    "k": [1, 2, 4],
    "noise_variance": [0.0, 0.01, 0.05, 0.1],
    "sp_density": [0.0, 0.02, 0.05, 0.1],
    "speckle_variance": [0.0, 0.04, 0.1],
    "dx": [0, 1, 2, 4, 8],
    "dy": [0, 1, 2, 4, 8],
    "scale_factor": [0.9, 1.0, 1.1],
    "train_interval": [10, 20, 45, 90],
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("dataset_root", nargs="?", help="directory of view images")
    parser.add_argument("out_dir", help="directory for per-axis CSV reports")
    parser.add_argument("--synthetic", action="store_true",
                        help="use the built-in 20-class synthetic dataset")
    parser.add_argument("--axes", default=",".join(DEFAULT_GRIDS),
                        help="comma-separated subset of axes to sweep")
    parser.add_argument("--seeds", default="0,1,2", help="comma-separated run seeds")
    parser.add_argument("--train-interval", type=int, default=45,
                        help="base training angle interval in degrees")
    parser.add_argument("--timings", action="store_true",
                        help="include per-run durations in the reports")
    args = parser.parse_args(argv)

    if args.synthetic:
        dataset = make_view_dataset(num_classes=20, views=72, size=(128, 128), seed=0)
    elif args.dataset_root:
        dataset = load_dataset(args.dataset_root, resize_to=(128, 128))
    else:
        parser.error("pass a dataset_root or --synthetic")
    seeds = tuple(int(s) for s in args.seeds.split(","))
    base_cfg = replace(RunConfig(), train_interval_degrees=args.train_interval)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    for axis in (a.strip() for a in args.axes.split(",")):
        grid = DEFAULT_GRIDS.get(axis)
        if grid is None:
            parser.error(f"unknown axis {axis!r}; choose from {sorted(DEFAULT_GRIDS)}")
        print(f"sweeping {axis} over {grid}", flush=True)
        reports = run_sweep(dataset, axis, grid, base_cfg, seeds)
        for report in reports:
            print(f"  {axis}={report.axis_value}: {report.mean_accuracy:.2f}%",
                  flush=True)
        path = out_dir / f"{axis}.csv"
        emit_report(reports, path, include_timings=args.timings)
        print(f"  wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
