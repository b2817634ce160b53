"""Ink extraction from rectified frames.

Stage order used by the pipeline: adaptive threshold, opening (erode
then dilate), connected-component labeling, size/border filtering.

Conventions that tests rely on:

* the threshold compares in exact integer arithmetic, so the integral
  image path is bit-identical to the naive window mean;
* threshold windows clip at image bounds (no reflection), morphology
  treats out-of-bounds as background;
* labels are dense from 1, assigned in raster order of first encounter.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import InvalidConfig
from .raster import ensure_gray, ensure_mask


@dataclass(frozen=True)
class ComponentStats:
    label: int
    area: int
    bbox: tuple  # (min_x, min_y, max_x, max_y), inclusive
    touches_border: bool


@dataclass(frozen=True)
class CleanupParams:
    window: int = 15
    offset_c: int = 10
    morph_radius: int = 1
    min_area: int = 4
    max_area_frac: float = 0.05

    def __post_init__(self):
        if self.window < 3 or self.window % 2 == 0:
            raise InvalidConfig(f"window must be odd and >= 3, got {self.window}")
        if not 0 <= self.offset_c <= 255:
            raise InvalidConfig(f"offset_c must be in [0, 255], got {self.offset_c}")
        if self.morph_radius < 1:
            raise InvalidConfig(f"morph_radius must be >= 1, got {self.morph_radius}")
        if self.min_area < 1:
            raise InvalidConfig(f"min_area must be >= 1, got {self.min_area}")
        if not 0.0 < self.max_area_frac <= 1.0:
            raise InvalidConfig(
                f"max_area_frac must be in (0, 1], got {self.max_area_frac}")


def default_params(out_width: int, out_height: int) -> CleanupParams:
    """Defaults scaled to the output raster.

    Window tracks 1/30 of the short side (floor 15, kept odd); min_area
    is 4 px at a 1188 px output height, scaled quadratically.
    """
    short = min(out_width, out_height)
    win = short // 30
    if win % 2 == 0:
        win -= 1
    win = max(15, win)
    area = max(1, int(4.0 * (out_height / 1188.0) ** 2 + 0.5))
    return CleanupParams(window=win, min_area=area)


@njit(cache=True)
def _athresh_kernel(gray, window, offset_c, out):
    h, w = gray.shape
    integ = np.zeros((h + 1, w + 1), dtype=np.int64)
    for y in range(h):
        rowsum = np.int64(0)
        for x in range(w):
            rowsum += gray[y, x]
            integ[y + 1, x + 1] = integ[y, x + 1] + rowsum
    r = window // 2
    for y in range(h):
        y1 = y - r
        if y1 < 0:
            y1 = 0
        y2 = y + r
        if y2 > h - 1:
            y2 = h - 1
        for x in range(w):
            x1 = x - r
            if x1 < 0:
                x1 = 0
            x2 = x + r
            if x2 > w - 1:
                x2 = w - 1
            cnt = np.int64((y2 - y1 + 1) * (x2 - x1 + 1))
            s = integ[y2 + 1, x2 + 1] - integ[y1, x2 + 1] \
                - integ[y2 + 1, x1] + integ[y1, x1]
            # pixel < mean - C, scaled by cnt to stay in integers
            out[y, x] = np.int64(gray[y, x]) * cnt < s - np.int64(offset_c) * cnt


def adaptive_threshold(gray, window: int, offset_c: int) -> np.ndarray:
    """Mark ink where a pixel sits offset_c below its local window mean.

    The window is clipped at the image bounds, and the comparison runs in
    integer arithmetic over an integral image.
    """
    g = ensure_gray(gray)
    h, w = g.shape
    if window % 2 == 0 or not 3 <= window <= 2 * min(w, h) - 1:
        raise InvalidConfig(
            f"window must be odd in [3, {2 * min(w, h) - 1}] for a {w}x{h} frame, "
            f"got {window}")
    if not 0 <= offset_c <= 255:
        raise InvalidConfig(f"offset_c must be in [0, 255], got {offset_c}")
    out = np.empty((h, w), dtype=np.bool_)
    _athresh_kernel(g, window, offset_c, out)
    return out


@njit(cache=True)
def _window_sums(mask, r):
    """Per-pixel count of foreground in the (2r+1)^2 window, background-padded."""
    h, w = mask.shape
    ph = h + 2 * r
    pw = w + 2 * r
    integ = np.zeros((ph + 1, pw + 1), dtype=np.int64)
    for y in range(ph):
        rowsum = np.int64(0)
        yy = y - r
        for x in range(pw):
            xx = x - r
            if 0 <= yy < h and 0 <= xx < w and mask[yy, xx]:
                rowsum += 1
            integ[y + 1, x + 1] = integ[y, x + 1] + rowsum
    side = 2 * r + 1
    out = np.empty((h, w), dtype=np.int64)
    for y in range(h):
        for x in range(w):
            out[y, x] = integ[y + side, x + side] - integ[y, x + side] \
                - integ[y + side, x] + integ[y, x]
    return out


def erode(mask, radius: int = 1) -> np.ndarray:
    """Binary erosion by a square of side 2*radius+1; borders erode away."""
    m = ensure_mask(mask)
    if radius < 1:
        raise InvalidConfig(f"radius must be >= 1, got {radius}")
    side = 2 * radius + 1
    return _window_sums(m, radius) == side * side


def dilate(mask, radius: int = 1) -> np.ndarray:
    """Binary dilation by a square of side 2*radius+1."""
    m = ensure_mask(mask)
    if radius < 1:
        raise InvalidConfig(f"radius must be >= 1, got {radius}")
    return _window_sums(m, radius) > 0


@njit(cache=True)
def _find(parent, i):
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


@njit(cache=True)
def _label_kernel(mask, conn8):
    h, w = mask.shape
    labels = np.zeros((h, w), dtype=np.int32)
    parent = np.zeros(h * w // 2 + 2, dtype=np.int32)
    nxt = np.int32(1)

    for y in range(h):
        for x in range(w):
            if not mask[y, x]:
                continue
            best = np.int32(0)
            # already-scanned neighbors: W, N, and for 8-connectivity NW, NE
            if x > 0 and labels[y, x - 1] != 0:
                best = _find(parent, labels[y, x - 1])
            if y > 0:
                if labels[y - 1, x] != 0:
                    r = _find(parent, labels[y - 1, x])
                    if best == 0 or r < best:
                        if best != 0:
                            parent[best] = r
                        best = r
                    elif r != best:
                        parent[r] = best
                if conn8:
                    if x > 0 and labels[y - 1, x - 1] != 0:
                        r = _find(parent, labels[y - 1, x - 1])
                        if best == 0 or r < best:
                            if best != 0:
                                parent[best] = r
                            best = r
                        elif r != best:
                            parent[r] = best
                    if x < w - 1 and labels[y - 1, x + 1] != 0:
                        r = _find(parent, labels[y - 1, x + 1])
                        if best == 0 or r < best:
                            if best != 0:
                                parent[best] = r
                            best = r
                        elif r != best:
                            parent[r] = best
            if best == 0:
                best = nxt
                parent[nxt] = nxt
                nxt += 1
            labels[y, x] = best

    # second pass: compact roots to dense labels in first-encounter order
    remap = np.zeros(nxt, dtype=np.int32)
    count = np.int32(0)
    for y in range(h):
        for x in range(w):
            if labels[y, x] == 0:
                continue
            root = _find(parent, labels[y, x])
            if remap[root] == 0:
                count += 1
                remap[root] = count
            labels[y, x] = remap[root]

    area = np.zeros(count + 1, dtype=np.int64)
    minx = np.full(count + 1, w, dtype=np.int32)
    miny = np.full(count + 1, h, dtype=np.int32)
    maxx = np.full(count + 1, -1, dtype=np.int32)
    maxy = np.full(count + 1, -1, dtype=np.int32)
    for y in range(h):
        for x in range(w):
            lab = labels[y, x]
            if lab == 0:
                continue
            area[lab] += 1
            if x < minx[lab]:
                minx[lab] = x
            if x > maxx[lab]:
                maxx[lab] = x
            if y < miny[lab]:
                miny[lab] = y
            if y > maxy[lab]:
                maxy[lab] = y
    return labels, area, minx, miny, maxx, maxy


def label_components(mask, connectivity: int = 8):
    """Two-pass union-find labeling.

    Returns (labels, stats): labels is int32 with background 0 and
    components numbered densely from 1 in raster first-encounter order;
    stats is a list of ComponentStats in label order.
    """
    m = ensure_mask(mask)
    if connectivity not in (4, 8):
        raise InvalidConfig(f"connectivity must be 4 or 8, got {connectivity}")
    labels, area, minx, miny, maxx, maxy = _label_kernel(m, connectivity == 8)
    h, w = m.shape
    stats = []
    for lab in range(1, area.shape[0]):
        touches = minx[lab] == 0 or miny[lab] == 0 \
            or maxx[lab] == w - 1 or maxy[lab] == h - 1
        stats.append(ComponentStats(
            label=lab,
            area=int(area[lab]),
            bbox=(int(minx[lab]), int(miny[lab]), int(maxx[lab]), int(maxy[lab])),
            touches_border=bool(touches),
        ))
    return labels, stats


def filter_components(labels, stats, min_area: int, max_area_frac: float) -> np.ndarray:
    """Keep mid-sized components; drop specks, oversized blobs, and large
    border-touching regions (palm residue enters from the frame edge)."""
    lab = np.asarray(labels)
    if lab.ndim != 2 or lab.dtype != np.int32:
        raise InvalidConfig(f"expected int32 label image, got {lab.dtype} {lab.shape}")
    if min_area < 1:
        raise InvalidConfig(f"min_area must be >= 1, got {min_area}")
    if not 0.0 < max_area_frac <= 1.0:
        raise InvalidConfig(f"max_area_frac must be in (0, 1], got {max_area_frac}")
    n = len(stats)
    if lab.size and int(lab.max()) > n:
        raise InvalidConfig("stats do not cover every label in the image")
    image_area = lab.shape[0] * lab.shape[1]
    keep = np.zeros(n + 1, dtype=np.bool_)
    for s in stats:
        big_border = s.touches_border and s.area > 25 * min_area
        if s.area >= min_area and s.area <= max_area_frac * image_area and not big_border:
            keep[s.label] = True
    return keep[lab]
