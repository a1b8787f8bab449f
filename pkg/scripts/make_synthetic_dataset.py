#!/usr/bin/env python3
"""Render a synthetic multi-view object dataset to a directory of PNGs.

Each class is a fixed arrangement of shapes photographed from evenly
spaced turntable angles, so the output matches the obj<i>__<angle>
naming that the loader and CLI expect.

Usage:
    python3 scripts/make_synthetic_dataset.py out/views --classes 20 --views 72
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from sparsefuse.synth import make_view_dataset, write_dataset


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("out_dir", help="directory to write PNGs into")
    parser.add_argument("--classes", type=int, default=20)
    parser.add_argument("--views", type=int, default=72)
    parser.add_argument("--size", type=int, default=128, help="square image side")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--layout", choices=("flat", "nested"), default="flat",
        help="flat: all files in one directory; nested: one directory per class",
    )
    args = parser.parse_args(argv)

    dataset = make_view_dataset(
        num_classes=args.classes,
        views=args.views,
        size=(args.size, args.size),
        seed=args.seed,
    )
    write_dataset(dataset, args.out_dir, layout=args.layout)
    print(
        f"wrote {dataset.num_images} images "
        f"({dataset.num_classes} classes x {args.views} views, "
        f"{args.size}x{args.size}) to {args.out_dir}"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
