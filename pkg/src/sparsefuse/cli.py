"""Command-line interface: encode, train, eval, and sweep subcommands.

All subcommands read the same JSON run configuration (encoder fields plus
metric, train interval, resize, and optional perturbation). Reports go to
CSV or JSON chosen by the output file extension. Exit status is 0 on
success and 1 on any fatal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from .bench import (
    RunConfig,
    emit_report,
    load_dataset,
    load_run_config,
    run_experiment,
    run_sweep,
    split_by_angle,
)
from .classifier import Gallery, save_gallery
from .encoder import build_schedules, combo_name, encode
from .imaging import load_image, resize_gray
from .perturb import parse_spec


def _load_config(path: str | None) -> RunConfig:
    if path is None:
        return RunConfig()
    return load_run_config(path)


def _parse_grid(text: str) -> list:
    values = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        try:
            values.append(int(piece))
        except ValueError:
            values.append(float(piece))
    if not values:
        raise ValueError("grid is empty")
    return values


def _parse_seeds(text: str) -> tuple[int, ...]:
    seeds = tuple(int(p) for p in text.split(",") if p.strip())
    if not seeds:
        raise ValueError("seed list is empty")
    return seeds


def _cmd_encode(args) -> int:
    cfg = _load_config(args.config)
    img = load_image(args.image)
    if cfg.resize_to is not None and img.shape != cfg.resize_to:
        img = resize_gray(img, *cfg.resize_to)
    feature = encode(img, cfg.encoder)
    doc = {
        "fingerprint": json.loads(feature.fingerprint),
        "channels": combo_name(feature.channels),
        "cells_per_channel": feature.cells_per_channel,
        "values": feature.values.tolist(),
    }
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8") as handle:
        json.dump(doc, handle)
        handle.write("\n")
    print(f"encoded {args.image} -> {out} ({feature.values.size} values)")
    return 0


def _cmd_train(args) -> int:
    cfg = _load_config(args.config)
    dataset = load_dataset(args.dataset_root, resize_to=cfg.resize_to)
    split = split_by_angle(dataset, cfg.train_interval_degrees)
    if not split.train:
        raise ValueError("train split is empty")
    m, n = dataset.image_shape
    schedules = build_schedules(cfg.encoder, m, n)
    entries = [
        (sample.label, encode(sample.view.image, cfg.encoder, schedules))
        for sample in split.train
    ]
    gallery = Gallery.from_entries(entries)
    save_gallery(gallery, args.gallery)
    print(f"trained gallery of {len(entries)} features "
          f"({dataset.num_classes} classes) -> {args.gallery}")
    return 0


def _cmd_eval(args) -> int:
    cfg = _load_config(args.config)
    if args.perturb is not None:
        cfg = replace(cfg, perturbation=parse_spec(args.perturb))
    dataset = load_dataset(args.dataset_root, resize_to=cfg.resize_to)
    seeds = _parse_seeds(args.seeds)
    report = run_experiment(dataset, cfg, seeds)
    emit_report([report], args.report, include_timings=args.timings)
    for result in report.seed_results:
        print(f"seed {result.seed}: accuracy {result.accuracy:.4f}%")
    print(f"mean accuracy over {len(seeds)} seeds: {report.mean_accuracy:.4f}%")
    print(f"report written to {args.report}")
    return 0


def _cmd_sweep(args) -> int:
    cfg = _load_config(args.config)
    dataset = load_dataset(args.dataset_root, resize_to=cfg.resize_to)
    seeds = _parse_seeds(args.seeds)
    grid = _parse_grid(args.grid)
    reports = run_sweep(dataset, args.axis, grid, cfg, seeds)
    if not reports:
        raise ValueError("every sweep point failed; nothing to report")
    emit_report(reports, args.report, include_timings=args.timings)
    for report in reports:
        print(f"{args.axis}={report.axis_value}: "
              f"mean accuracy {report.mean_accuracy:.4f}%")
    print(f"report written to {args.report}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparsefuse",
        description="Sparse fused bit-plane features for object recognition.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_encode = sub.add_parser("encode", help="encode one image to a feature vector")
    p_encode.add_argument("image", help="path to the input image")
    p_encode.add_argument("--config", help="JSON run configuration")
    p_encode.add_argument("--out", required=True, help="output JSON path")
    p_encode.set_defaults(func=_cmd_encode)

    p_train = sub.add_parser("train", help="encode the train split into a gallery")
    p_train.add_argument("dataset_root", help="dataset directory")
    p_train.add_argument("--config", help="JSON run configuration")
    p_train.add_argument("--gallery", required=True, help="output gallery JSON path")
    p_train.set_defaults(func=_cmd_train)

    p_eval = sub.add_parser("eval", help="run the train/test protocol and report accuracy")
    p_eval.add_argument("dataset_root", help="dataset directory")
    p_eval.add_argument("--config", help="JSON run configuration")
    p_eval.add_argument("--perturb", help="test-time perturbation, e.g. gaussian=0.01")
    p_eval.add_argument("--seeds", default="0,1,2", help="comma-separated seeds")
    p_eval.add_argument("--report", required=True, help="output report (.csv or .json)")
    p_eval.add_argument("--timings", action="store_true",
                        help="include wall-clock durations in the report")
    p_eval.set_defaults(func=_cmd_eval)

    p_sweep = sub.add_parser("sweep", help="repeat eval along one parameter axis")
    p_sweep.add_argument("dataset_root", help="dataset directory")
    p_sweep.add_argument("--axis", required=True, help="parameter to vary")
    p_sweep.add_argument("--grid", required=True, help="comma-separated grid values")
    p_sweep.add_argument("--config", help="JSON run configuration")
    p_sweep.add_argument("--seeds", default="0,1,2", help="comma-separated seeds")
    p_sweep.add_argument("--report", required=True, help="output report (.csv or .json)")
    p_sweep.add_argument("--timings", action="store_true",
                         help="include wall-clock durations in the report")
    p_sweep.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
