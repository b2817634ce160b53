"""Frame containers and resampling.

Frames are plain numpy arrays:

* gray frame:  uint8, shape (height, width)
* color frame: uint8, shape (height, width, 3), RGB interleaved
* mask:        bool,  shape (height, width)

All resampling is bilinear with half-away-from-zero rounding back to
8 bits.  Out-of-range samples produce the caller's fill value (the
pipeline fills with white so missing regions read as blank paper).
"""

import numpy as np
from numba import njit

from .errors import DimensionMismatch, InvalidConfig


def ensure_gray(frame) -> np.ndarray:
    f = np.asarray(frame)
    if f.ndim != 2 or f.dtype != np.uint8 or f.shape[0] < 1 or f.shape[1] < 1:
        raise DimensionMismatch(f"expected uint8 (h, w) gray frame, got {f.dtype} {f.shape}")
    return f


def ensure_color(frame) -> np.ndarray:
    f = np.asarray(frame)
    if f.ndim != 3 or f.shape[2] != 3 or f.dtype != np.uint8:
        raise DimensionMismatch(f"expected uint8 (h, w, 3) color frame, got {f.dtype} {f.shape}")
    return f


def ensure_mask(mask) -> np.ndarray:
    m = np.asarray(mask)
    if m.ndim != 2 or m.dtype != np.bool_:
        raise DimensionMismatch(f"expected bool (h, w) mask, got {m.dtype} {m.shape}")
    return m


@njit(cache=True)
def _luma_kernel(rgb, out):
    h, w = out.shape
    for y in range(h):
        for x in range(w):
            acc = 299 * np.int64(rgb[y, x, 0]) + 587 * np.int64(rgb[y, x, 1]) \
                + 114 * np.int64(rgb[y, x, 2])
            out[y, x] = np.uint8((acc + 500) // 1000)


def to_luma(frame) -> np.ndarray:
    """RGB to 8-bit luma: round(0.299 R + 0.587 G + 0.114 B).

    Computed in exact per-mille integer arithmetic (ties round up) so the
    result never depends on float rounding.
    """
    f = ensure_color(frame)
    out = np.empty(f.shape[:2], dtype=np.uint8)
    _luma_kernel(f, out)
    return out


@njit(cache=True, inline="always")
def _sample_gray(src, sx, sy, fill):
    sh, sw = src.shape
    if sx < 0.0 or sx > sw - 1 or sy < 0.0 or sy > sh - 1:
        return np.float64(fill)
    x0 = int(np.floor(sx))
    y0 = int(np.floor(sy))
    x1 = x0 + 1 if x0 + 1 < sw else x0
    y1 = y0 + 1 if y0 + 1 < sh else y0
    fx = sx - x0
    fy = sy - y0
    a = np.float64(src[y0, x0])
    b = np.float64(src[y0, x1])
    c = np.float64(src[y1, x0])
    d = np.float64(src[y1, x1])
    top = a + fx * (b - a)
    bot = c + fx * (d - c)
    return top + fy * (bot - top)


@njit(cache=True)
def _bilinear_one(src, x, y, fill):
    return np.uint8(int(_sample_gray(src, x, y, fill) + 0.5))


def bilinear_sample(frame, x: float, y: float, fill: int = 255) -> int:
    """Bilinear interpolation of the 4 neighbors of (x, y).

    Coordinates outside [0, width-1] x [0, height-1] return `fill`.
    """
    g = ensure_gray(frame)
    return int(_bilinear_one(g, float(x), float(y), np.uint8(fill)))


@njit(cache=True)
def _warp_gray(src, hm, out, fill):
    oh, ow = out.shape
    a11, a12, a13 = hm[0, 0], hm[0, 1], hm[0, 2]
    a21, a22, a23 = hm[1, 0], hm[1, 1], hm[1, 2]
    a31, a32, a33 = hm[2, 0], hm[2, 1], hm[2, 2]
    for y in range(oh):
        for x in range(ow):
            w = a31 * x + a32 * y + a33
            if abs(w) < 1e-12:
                out[y, x] = fill
                continue
            sx = (a11 * x + a12 * y + a13) / w
            sy = (a21 * x + a22 * y + a23) / w
            out[y, x] = np.uint8(int(_sample_gray(src, sx, sy, fill) + 0.5))


@njit(cache=True)
def _warp_color(src, hm, out, fill):
    oh, ow = out.shape[:2]
    for c in range(3):
        _warp_gray(src[:, :, c], hm, out[:, :, c], fill)


def warp_bird_eye(frame, h_out_to_src, out_width: int, out_height: int,
                  fill: int = 255) -> np.ndarray:
    """Inverse-mapping perspective warp.

    `h_out_to_src` maps output (bird's-eye) pixel coordinates into source
    coordinates; every output pixel is bilinearly sampled from the source
    so the result has no holes.  Samples that land outside the source, or
    whose homogeneous weight vanishes, produce `fill` (white by default,
    so missing regions read as blank paper).
    """
    if out_width < 1 or out_height < 1:
        raise InvalidConfig(f"output dims must be >= 1, got {out_width}x{out_height}")
    hm = np.ascontiguousarray(np.asarray(h_out_to_src, dtype=np.float64))
    if hm.shape != (3, 3):
        raise InvalidConfig(f"homography must be 3x3, got {hm.shape}")
    f = np.asarray(frame)
    fill = np.uint8(fill)
    if f.ndim == 2:
        out = np.empty((out_height, out_width), dtype=np.uint8)
        _warp_gray(ensure_gray(f), hm, out, fill)
    else:
        out = np.empty((out_height, out_width, 3), dtype=np.uint8)
        _warp_color(ensure_color(f), hm, out, fill)
    return out


def flip_horizontal(frame) -> np.ndarray:
    """Mirror a frame or mask around its vertical axis (an exact involution)."""
    f = np.asarray(frame)
    if f.ndim not in (2, 3):
        raise DimensionMismatch(f"cannot flip array of shape {f.shape}")
    return np.ascontiguousarray(f[:, ::-1])


@njit(cache=True)
def _resize_kernel(src, out):
    oh, ow = out.shape
    sh, sw = src.shape
    xs = sw / ow
    ys = sh / oh
    for y in range(oh):
        sy = (y + 0.5) * ys - 0.5
        if sy < 0.0:
            sy = 0.0
        elif sy > sh - 1:
            sy = np.float64(sh - 1)
        for x in range(ow):
            sx = (x + 0.5) * xs - 0.5
            if sx < 0.0:
                sx = 0.0
            elif sx > sw - 1:
                sx = np.float64(sw - 1)
            out[y, x] = np.uint8(int(_sample_gray(src, sx, sy, np.uint8(0)) + 0.5))


def resize(frame, out_width: int, out_height: int) -> np.ndarray:
    """Bilinear resize with pixel-center mapping; identity when dims match."""
    g = ensure_gray(frame)
    if out_width < 1 or out_height < 1:
        raise InvalidConfig(f"output dims must be >= 1, got {out_width}x{out_height}")
    if (out_height, out_width) == g.shape:
        return g.copy()
    out = np.empty((out_height, out_width), dtype=np.uint8)
    _resize_kernel(g, out)
    return out


@njit(cache=True)
def _fill_convex_kernel(hx, hy, out):
    h, w = out.shape
    k = hx.shape[0]
    for y in range(h):
        fy = np.float64(y)
        lo = np.float64(1e30)
        hi = np.float64(-1e30)
        for i in range(k):
            x1 = hx[i]
            y1 = hy[i]
            j = i + 1 if i + 1 < k else 0
            x2 = hx[j]
            y2 = hy[j]
            if y1 == y2:
                if y1 == fy:
                    a = min(x1, x2)
                    b = max(x1, x2)
                    if a < lo:
                        lo = a
                    if b > hi:
                        hi = b
                continue
            if fy < min(y1, y2) or fy > max(y1, y2):
                continue
            x = x1 + (fy - y1) * (x2 - x1) / (y2 - y1)
            if x < lo:
                lo = x
            if x > hi:
                hi = x
        if hi >= lo:
            a = int(np.ceil(lo - 1e-7))
            b = int(np.floor(hi + 1e-7))
            if a < 0:
                a = 0
            if b > w - 1:
                b = w - 1
            for x in range(a, b + 1):
                out[y, x] = True


def fill_convex_polygon(vertices, shape) -> np.ndarray:
    """Scanline fill of a convex polygon over a (height, width) grid.

    A pixel is set when its center lies inside or on the polygon (with a
    1e-7 guard against float wobble on edge-crossing arithmetic).
    Vertices may wind either way; degenerate polygons (points, segments)
    fill their rasterized support.
    """
    v = np.asarray(vertices, dtype=np.float64)
    if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 1:
        raise InvalidConfig(f"vertices must be (n, 2), got {v.shape}")
    out = np.zeros(tuple(shape), dtype=np.bool_)
    _fill_convex_kernel(np.ascontiguousarray(v[:, 0]),
                        np.ascontiguousarray(v[:, 1]), out)
    return out
