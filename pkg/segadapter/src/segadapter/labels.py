"""Corner-label files to training masks.

A label file holds one record per line:

    image_name x_tl y_tl x_tr y_tr x_br y_br x_bl y_bl

Blank lines and lines starting with '#' are skipped. Every record is
validated before the first mask is written, so a bad line never leaves
a half-converted directory behind.
"""

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import InvalidUsage, MalformedLabel
from .pnmio import write_pgm_file
from .quadfill import fill_convex, validate_label_quad


@dataclass(frozen=True)
class LabelRecord:
    image_name: str
    corners: tuple  # four (x, y) float pairs, TL TR BR BL


def parse_labels(path) -> list:
    records = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 9:
                raise MalformedLabel(
                    f"{path}:{lineno}: expected 9 fields, got {len(parts)}")
            try:
                vals = [float(v) for v in parts[1:]]
            except ValueError:
                raise MalformedLabel(
                    f"{path}:{lineno}: corner coordinates must be numbers") from None
            if not all(math.isfinite(v) for v in vals):
                raise MalformedLabel(f"{path}:{lineno}: non-finite corner")
            records.append(LabelRecord(parts[0],
                                       tuple(zip(vals[0::2], vals[1::2]))))
    return records


def _mask_name(image_name: str) -> str:
    stem = image_name.rsplit(".", 1)[0] if "." in image_name else image_name
    return f"mask_{stem}.pgm"


def labels_to_masks(labels_path, width: int, height: int, out_dir) -> list:
    """Write one P5 mask per record: 255 inside the quad, 0 outside.

    Returns the written paths in record order. Raises MalformedLabel on
    any invalid record (including duplicate image names, which would
    silently overwrite each other's masks).
    """
    if width < 2 or height < 2:
        raise InvalidUsage(f"mask dims must be >= 2, got {width}x{height}")
    records = parse_labels(labels_path)
    seen = set()
    for rec in records:
        name = _mask_name(rec.image_name)
        if name in seen:
            raise MalformedLabel(
                f"duplicate record for {rec.image_name!r}")
        seen.add(name)
        try:
            validate_label_quad(rec.corners, width, height)
        except MalformedLabel as exc:
            raise MalformedLabel(f"{rec.image_name}: {exc}") from None

    os.makedirs(out_dir, exist_ok=True)
    written = []
    for rec in records:
        mask = fill_convex(rec.corners, width, height)
        path = os.path.join(out_dir, _mask_name(rec.image_name))
        write_pgm_file(path, mask.astype(np.uint8) * 255)
        written.append(path)
    return written
