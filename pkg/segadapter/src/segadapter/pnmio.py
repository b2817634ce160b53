"""Minimal binary PNM file I/O.

Reads single-image P5 (gray) and P6 (RGB) files with maxval 255 and
writes P5. Header comments are honored. Deliberately strict: trailing
bytes after the raster are an error, because a mask file holding more
than one image is almost certainly a bug upstream.
"""

import os

import numpy as np

from .errors import PnmIoError

_WS = b" \t\r\n"


def _next_int(data: bytes, pos: int, path) -> tuple:
    while pos < len(data):
        c = data[pos:pos + 1]
        if c in (b" ", b"\t", b"\r", b"\n"):
            pos += 1
        elif c == b"#":
            nl = data.find(b"\n", pos)
            if nl < 0:
                raise PnmIoError(f"{path}: unterminated header comment")
            pos = nl + 1
        else:
            break
    start = pos
    while pos < len(data) and data[pos:pos + 1].isdigit():
        pos += 1
    if pos == start:
        raise PnmIoError(f"{path}: expected a header integer")
    return int(data[start:pos]), pos


def read_pnm_file(path) -> np.ndarray:
    """Load one P5 or P6 image; returns uint8 (h, w) or (h, w, 3)."""
    with open(path, "rb") as fh:
        data = fh.read()
    magic = data[:2]
    if magic == b"P5":
        channels = 1
    elif magic == b"P6":
        channels = 3
    else:
        raise PnmIoError(f"{path}: not a binary PGM/PPM file")
    pos = 2
    width, pos = _next_int(data, pos, path)
    height, pos = _next_int(data, pos, path)
    maxval, pos = _next_int(data, pos, path)
    if width < 1 or height < 1:
        raise PnmIoError(f"{path}: bad dimensions {width}x{height}")
    if maxval != 255:
        raise PnmIoError(f"{path}: only maxval 255 is supported, got {maxval}")
    if pos >= len(data) or data[pos:pos + 1] not in (b" ", b"\t", b"\r", b"\n"):
        raise PnmIoError(f"{path}: maxval must be followed by one whitespace byte")
    pos += 1
    n = width * height * channels
    raster = data[pos:pos + n]
    if len(raster) != n:
        raise PnmIoError(f"{path}: raster holds {len(raster)} of {n} bytes")
    if pos + n != len(data):
        raise PnmIoError(f"{path}: trailing bytes after the raster")
    arr = np.frombuffer(raster, dtype=np.uint8)
    if channels == 1:
        return arr.reshape(height, width).copy()
    return arr.reshape(height, width, 3).copy()


def write_pgm_file(path, image) -> None:
    """Write a uint8 (h, w) array as binary P5."""
    img = np.asarray(image)
    if img.ndim != 2 or img.dtype != np.uint8:
        raise PnmIoError(f"P5 needs a uint8 (h, w) array, got {img.dtype} {img.shape}")
    h, w = img.shape
    with open(path, "wb") as fh:
        fh.write(b"P5\n%d %d\n255\n" % (w, h))
        fh.write(img.tobytes())


def list_frames(directory) -> list:
    """Paths of frame_*.pgm|ppm files in name order."""
    try:
        names = os.listdir(directory)
    except OSError as exc:
        raise PnmIoError(f"cannot list {directory}: {exc}") from None
    picked = sorted(n for n in names
                    if n.startswith("frame_") and n.endswith((".pgm", ".ppm")))
    if not picked:
        raise PnmIoError(f"no frame_*.pgm|ppm files in {directory}")
    return [os.path.join(directory, n) for n in picked]
