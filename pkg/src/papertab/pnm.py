"""Binary PNM (P5 gray / P6 color) reading and writing.

Only maxval 255 is accepted.  Readers work incrementally on any binary
stream and stop cleanly at EOF, so several images concatenated back to
back (a piped video stream) parse as consecutive frames.  `#` comments
may appear anywhere inside the header.
"""

import os

import numpy as np

from .errors import PnmError

_WS = b" \t\n\r\v\f"


def _read_token(stream) -> bytes:
    """Next header token, skipping whitespace and comments; b'' at EOF."""
    tok = b""
    while True:
        c = stream.read(1)
        if c == b"":
            return tok
        if c == b"#":
            while c not in (b"", b"\n", b"\r"):
                c = stream.read(1)
            if tok:
                return tok
            continue
        if c in _WS:
            if tok:
                return tok
            continue
        tok += c


def _read_int(stream, what: str) -> int:
    tok = _read_token(stream)
    if tok == b"":
        raise PnmError(f"truncated header: missing {what}")
    try:
        value = int(tok)
    except ValueError:
        raise PnmError(f"bad {what} token {tok!r}") from None
    if value <= 0:
        raise PnmError(f"{what} must be positive, got {value}")
    return value


def read_pnm(stream):
    """Read one P5/P6 image; None at clean EOF, PnmError on malformed data."""
    magic = _read_token(stream)
    if magic == b"":
        return None
    if magic not in (b"P5", b"P6"):
        raise PnmError(f"unsupported magic {magic!r}")
    width = _read_int(stream, "width")
    height = _read_int(stream, "height")
    maxval = _read_int(stream, "maxval")
    if maxval != 255:
        raise PnmError(f"only maxval 255 is supported, got {maxval}")
    # Header ends with the single whitespace byte _read_token consumed.
    channels = 1 if magic == b"P5" else 3
    need = width * height * channels
    raw = stream.read(need)
    if len(raw) != need:
        raise PnmError(f"truncated raster: expected {need} bytes, got {len(raw)}")
    arr = np.frombuffer(raw, dtype=np.uint8)
    if channels == 1:
        return arr.reshape(height, width).copy()
    return arr.reshape(height, width, 3).copy()


def iter_pnm(stream):
    """Yield frames from a stream of concatenated PNM images until EOF."""
    while True:
        frame = read_pnm(stream)
        if frame is None:
            return
        yield frame


def write_pnm(stream, frame) -> None:
    """Write one image: P5 for (h, w) uint8 arrays, P6 for (h, w, 3)."""
    f = np.ascontiguousarray(frame, dtype=np.uint8)
    if f.ndim == 2:
        magic = b"P5"
    elif f.ndim == 3 and f.shape[2] == 3:
        magic = b"P6"
    else:
        raise PnmError(f"cannot encode array of shape {f.shape}")
    h, w = f.shape[:2]
    stream.write(magic + b"\n%d %d\n255\n" % (w, h))
    stream.write(f.tobytes())


def read_pnm_file(path):
    with open(path, "rb") as fh:
        frame = read_pnm(fh)
    if frame is None:
        raise PnmError(f"{path}: empty file")
    return frame


def write_pnm_file(path, frame) -> None:
    with open(path, "wb") as fh:
        write_pnm(fh, frame)


def sorted_image_paths(directory, prefix: str):
    """Lexicographically sorted `<prefix>*.pgm` / `<prefix>*.ppm` paths."""
    try:
        names = os.listdir(directory)
    except OSError as exc:
        raise PnmError(f"cannot list {directory}: {exc}") from None
    picked = [
        n for n in names
        if n.startswith(prefix) and (n.endswith(".pgm") or n.endswith(".ppm"))
    ]
    return [os.path.join(directory, n) for n in sorted(picked)]
