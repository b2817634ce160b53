"""Command line front end.

Default invocation processes a frame stream:

    ffmpeg -i lecture.mp4 -f image2pipe -vcodec ppm - | papertab > out.pnm

`papertab bench render` and `papertab bench eval` expose the synthetic
scene generator and the RMSE harness.

Exit codes: 0 success, 2 bad configuration, 3 I/O failure, 4 no input
frame ever produced a paper quad.
"""

import argparse
import os
import sys

import numpy as np

from . import bench, geometry, pnm
from .errors import (DimensionMismatch, InvalidConfig, InvalidSpec,
                     PaperTabError, PnmError)
from .pipeline import PipelineConfig, run_stream

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_NO_QUAD = 4


def _build_run_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="papertab",
        description="Rectify webcam frames of a sheet of paper into "
                    "top-down whiteboard frames.")
    p.add_argument("--left-handed", action="store_true",
                   help="mirror the frame for segmentation (hand on the left)")
    p.add_argument("--paper", choices=("a4", "letter", "estimate"), default="a4",
                   help="output aspect: a known paper size, or estimate from the quad")
    p.add_argument("--output-height", type=int, default=720, metavar="N")
    p.add_argument("--output", choices=("ink", "gray"), default="ink",
                   help="ink: black-on-white binary; gray: warped luma")
    p.add_argument("--seg", choices=("classical", "external"), default="classical",
                   help="segmentation source; external reads a mask stream")
    p.add_argument("--window", type=int, default=None, metavar="N",
                   help="adaptive threshold window (odd px; default scales with output)")
    p.add_argument("--offset-c", type=int, default=10, metavar="N",
                   help="adaptive threshold offset below the local mean")
    p.add_argument("--min-area", type=int, default=None, metavar="N",
                   help="smallest ink component kept (default scales with output)")
    p.add_argument("--max-area-frac", type=float, default=0.05, metavar="F",
                   help="largest ink component kept, as a fraction of the frame")
    p.add_argument("--alpha", type=float, default=0.6, metavar="F",
                   help="corner smoothing weight for the newest frame")
    p.add_argument("--jump-threshold", type=float, default=0.05, metavar="F",
                   help="corner move per frame treated as a glitch, as a "
                        "fraction of the frame diagonal")
    p.add_argument("--frames-dir", metavar="DIR",
                   help="read frame_*.ppm|pgm files instead of standard input")
    p.add_argument("--masks-dir", metavar="DIR",
                   help="read mask_*.pgm files for --seg external")
    p.add_argument("--masks-stream", metavar="PATH",
                   help="read concatenated P5 masks from a file or pipe")
    p.add_argument("--out-dir", metavar="DIR",
                   help="write out_*.pgm files instead of standard output")
    p.add_argument("--emit-corners", metavar="PATH",
                   help="write one corner line per processed frame")
    return p


def _frames_from_dir(directory):
    paths = pnm.sorted_image_paths(directory, "frame_")
    if not paths:
        raise PnmError(f"no frame_*.ppm|pgm files in {directory}")
    for path in paths:
        yield pnm.read_pnm_file(path)


def _masks_from_dir(directory):
    paths = pnm.sorted_image_paths(directory, "mask_")
    if not paths:
        raise PnmError(f"no mask_*.pgm files in {directory}")
    for path in paths:
        yield pnm.read_pnm_file(path)


def _run(args) -> int:
    try:
        config = PipelineConfig(
            left_handed=args.left_handed,
            seg=args.seg,
            paper=args.paper,
            output_height=args.output_height,
            output=args.output,
            alpha=args.alpha,
            jump_threshold=args.jump_threshold,
            window=args.window,
            offset_c=args.offset_c,
            min_area=args.min_area,
            max_area_frac=args.max_area_frac,
            emit_corners=bool(args.emit_corners),
        )
    except InvalidConfig as exc:
        print(f"papertab: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.seg == "external" and not (args.masks_dir or args.masks_stream):
        print("papertab: --seg external needs --masks-dir or --masks-stream",
              file=sys.stderr)
        return EXIT_CONFIG
    if args.seg == "classical" and (args.masks_dir or args.masks_stream):
        print("papertab: mask inputs are only read with --seg external",
              file=sys.stderr)
        return EXIT_CONFIG
    if args.masks_dir and args.masks_stream:
        print("papertab: --masks-dir and --masks-stream are exclusive",
              file=sys.stderr)
        return EXIT_CONFIG

    mask_stream_fh = None
    corner_fh = None
    try:
        frames = _frames_from_dir(args.frames_dir) if args.frames_dir \
            else pnm.iter_pnm(sys.stdin.buffer)
        masks = None
        if args.masks_dir:
            masks = _masks_from_dir(args.masks_dir)
        elif args.masks_stream:
            mask_stream_fh = open(args.masks_stream, "rb")
            masks = pnm.iter_pnm(mask_stream_fh)

        if args.out_dir:
            os.makedirs(args.out_dir, exist_ok=True)
            counter = {"i": 0}

            def write_frame(frame):
                path = os.path.join(args.out_dir, f"out_{counter['i']:06d}.pgm")
                pnm.write_pnm_file(path, frame)
                counter["i"] += 1
        else:
            def write_frame(frame):
                pnm.write_pnm(sys.stdout.buffer, frame)

        if args.emit_corners:
            corner_fh = open(args.emit_corners, "w")

        summary = run_stream(frames, config, write_frame,
                             masks=masks, corner_sink=corner_fh)
        if not args.out_dir:
            sys.stdout.buffer.flush()
    except InvalidConfig as exc:
        print(f"papertab: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (PnmError, DimensionMismatch, OSError, PaperTabError) as exc:
        print(f"papertab: {exc}", file=sys.stderr)
        return EXIT_IO
    finally:
        if corner_fh:
            corner_fh.close()
        if mask_stream_fh:
            mask_stream_fh.close()

    if summary.frames > 0 and summary.quads == 0:
        print(f"papertab: no quad found in {summary.frames} frames",
              file=sys.stderr)
        return EXIT_NO_QUAD
    print(f"papertab: {summary.frames} frames, {summary.quads} with corners, "
          f"{summary.failures} blank, {summary.low_confidence} low-confidence",
          file=sys.stderr)
    for stage, ms in summary.timings_ms.items():
        print(f"papertab:   {stage}: {ms:.2f} ms/frame", file=sys.stderr)
    return EXIT_OK


# --- bench subcommands -----------------------------------------------------

_SPEC_KEYS = {
    "width": int, "height": int, "frames": int, "seed": int,
    "background_luma": int, "paper_luma": int, "noise_sigma": float,
    "occluders": int, "corner_occlusion": int, "content": str,
    "content_width": int, "content_height": int, "drift_px": float,
}

_SPEC_DEFAULTS = {
    "width": 1280, "height": 720, "frames": 1, "seed": 0,
    "background_luma": 60, "paper_luma": 230, "noise_sigma": 0.0,
    "occluders": 0, "corner_occlusion": 0, "content": "writing",
    "content_width": 509, "content_height": 720, "drift_px": 0.0,
}


def _parse_scene_spec(path) -> dict:
    values = dict(_SPEC_DEFAULTS)
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InvalidSpec(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, val = line.partition("=")
            key = key.strip()
            if key not in _SPEC_KEYS:
                raise InvalidSpec(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key] = _SPEC_KEYS[key](val.strip())
            except ValueError:
                raise InvalidSpec(f"{path}:{lineno}: bad value for {key}") from None
    if values["content"] not in ("writing", "blank"):
        raise InvalidSpec(f"content must be writing or blank, got {values['content']!r}")
    if values["frames"] < 1:
        raise InvalidSpec("frames must be >= 1")
    if not 0.0 <= values["drift_px"] <= 20.0:
        raise InvalidSpec("drift_px must be in [0, 20]")
    return values


def _bench_render(args) -> int:
    spec = _parse_scene_spec(args.spec)
    os.makedirs(args.out_dir, exist_ok=True)
    rng = np.random.default_rng(spec["seed"])
    if spec["content"] == "writing":
        content = bench.make_writing(rng, spec["content_width"],
                                     spec["content_height"], spec["paper_luma"])
    else:
        content = np.full((spec["content_height"], spec["content_width"]),
                          np.uint8(spec["paper_luma"]))
    base_quad = bench.random_paper_quad(rng, spec["width"], spec["height"])
    pnm.write_pnm_file(os.path.join(args.out_dir, "content.pgm"), content)

    corner_lines = []
    meta_lines = []
    for i in range(spec["frames"]):
        quad = base_quad.copy()
        if spec["drift_px"] > 0:
            phase = 2.0 * np.pi * i / max(spec["frames"], 2)
            for k in range(4):
                quad[k, 0] += spec["drift_px"] * np.sin(phase + k * np.pi / 2)
                quad[k, 1] += spec["drift_px"] * np.cos(phase + k * np.pi / 2)
        occs = []
        for _ in range(spec["occluders"]):
            if spec["corner_occlusion"]:
                corner = base_quad[int(rng.integers(0, 4))]
                r = float(rng.uniform(40, 80))
                occs.append(bench.Occluder("ellipse",
                                           (corner[0], corner[1], r, r), luma=70))
            else:
                occs.append(bench.edge_bite_occluder(rng, quad))
        scene = bench.SceneSpec(
            content=content, paper_quad=quad,
            background_luma=spec["background_luma"],
            paper_luma=spec["paper_luma"],
            occluders=tuple(occs), noise_sigma=spec["noise_sigma"],
            seed=spec["seed"] * 1_000_003 + i)
        rendered = bench.render_scene(scene, (spec["width"], spec["height"]))
        pnm.write_pnm_file(os.path.join(args.out_dir, f"frame_{i:06d}.pgm"),
                           rendered.frame)
        pnm.write_pnm_file(os.path.join(args.out_dir, f"mask_{i:06d}.pgm"),
                           rendered.gt_mask.astype(np.uint8) * 255)
        corner_lines.append(geometry.format_corner_line(i, rendered.gt_quad))
        meta_lines.append(f"{i}\t{int(rendered.corner_occluded)}")

    with open(os.path.join(args.out_dir, "corners.txt"), "w") as fh:
        fh.write("\n".join(corner_lines) + "\n")
    with open(os.path.join(args.out_dir, "meta.tsv"), "w") as fh:
        fh.write("frame\tcorner_occluded\n" + "\n".join(meta_lines) + "\n")
    print(f"papertab bench: wrote {spec['frames']} frames to {args.out_dir}",
          file=sys.stderr)
    return EXIT_OK


def _bench_eval(args) -> int:
    names = sorted(n for n in os.listdir(args.pairs_dir) if n.endswith("_gt.pgm"))
    pairs = []
    stems = []
    for name in names:
        stem = name[:-len("_gt.pgm")]
        out_path = os.path.join(args.pairs_dir, stem + "_out.pgm")
        if not os.path.exists(out_path):
            raise PnmError(f"missing counterpart {stem}_out.pgm")
        pairs.append((pnm.read_pnm_file(os.path.join(args.pairs_dir, name)),
                      pnm.read_pnm_file(out_path)))
        stems.append(stem)
    if not pairs:
        raise PnmError(f"no *_gt.pgm/*_out.pgm pairs in {args.pairs_dir}")
    report = bench.batch_eval(pairs)
    for stem, value in zip(stems, report.values):
        print(f"{stem}\t{value:.6f}")
    print(f"mean\t{report.mean:.6f}")
    print(f"count\t{report.count}")
    return EXIT_OK


def _bench_main(argv) -> int:
    p = argparse.ArgumentParser(prog="papertab bench",
                                description="Synthetic scenes and RMSE evaluation.")
    sub = p.add_subparsers(dest="cmd", required=True)
    pr = sub.add_parser("render", help="render a synthetic scene sequence")
    pr.add_argument("--spec", required=True, metavar="FILE",
                    help="flat key=value scene description")
    pr.add_argument("--out-dir", required=True, metavar="DIR")
    pe = sub.add_parser("eval", help="RMSE over *_gt.pgm / *_out.pgm pairs")
    pe.add_argument("--pairs-dir", required=True, metavar="DIR")
    args = p.parse_args(argv)
    try:
        if args.cmd == "render":
            return _bench_render(args)
        return _bench_eval(args)
    except (InvalidSpec, InvalidConfig) as exc:
        print(f"papertab bench: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (PnmError, PaperTabError, OSError) as exc:
        print(f"papertab bench: {exc}", file=sys.stderr)
        return EXIT_IO


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    if argv[:1] == ["bench"]:
        return _bench_main(argv[1:])
    args = _build_run_parser().parse_args(argv)
    return _run(args)


if __name__ == "__main__":
    sys.exit(main())
