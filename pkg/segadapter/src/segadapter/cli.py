"""segadapt command line.

    segadapt infer --frames-dir D --out-dir M (--stub | --model PATH)
    segadapt labels2masks --labels FILE --width W --height H --out-dir M

Exit codes: 0 success, 2 bad arguments or malformed labels, 3 I/O or
model loading failure.
"""

import argparse
import sys

from .errors import InvalidUsage, MalformedLabel, ModelLoadError, PnmIoError
from .infer import infer_masks
from .labels import labels_to_masks


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="segadapt",
        description="Segmentation backend and label tooling for paper "
                    "rectification mask streams.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    pi = sub.add_parser("infer", help="segment a frame directory into P5 masks")
    pi.add_argument("--frames-dir", required=True, metavar="DIR")
    pi.add_argument("--out-dir", required=True, metavar="DIR")
    backend = pi.add_mutually_exclusive_group(required=True)
    backend.add_argument("--model", metavar="PATH",
                         help="TorchScript instance segmentation model")
    backend.add_argument("--stub", action="store_true",
                         help="deterministic classical stand-in, no weights")

    pl = sub.add_parser("labels2masks",
                        help="convert corner labels to training masks")
    pl.add_argument("--labels", required=True, metavar="FILE")
    pl.add_argument("--width", type=int, required=True, metavar="W")
    pl.add_argument("--height", type=int, required=True, metavar="H")
    pl.add_argument("--out-dir", required=True, metavar="DIR")

    args = parser.parse_args(argv)
    try:
        if args.cmd == "infer":
            summary = infer_masks(args.frames_dir, args.out_dir,
                                  model_path=args.model, stub=args.stub)
            print(f"segadapt: {summary.count} masks written "
                  f"({summary.empty} empty, {summary.failed} failed)",
                  file=sys.stderr)
        else:
            written = labels_to_masks(args.labels, args.width, args.height,
                                      args.out_dir)
            print(f"segadapt: {len(written)} masks written to {args.out_dir}",
                  file=sys.stderr)
    except (MalformedLabel, InvalidUsage) as exc:
        print(f"segadapt: {exc}", file=sys.stderr)
        return 2
    except (PnmIoError, ModelLoadError, OSError) as exc:
        print(f"segadapt: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
