"""Paper segmentation: find the sheet as a bright convex blob.

The classical path assumes the paper is the brightest large region in
the frame. A hand crossing the sheet bites a concavity into the bright
component; filling its convex hull restores the quadrilateral, so the
downstream corner fit never sees the bite.

External masks (any upstream segmenter speaking the PGM wire format)
bypass all of this; they are only binarized at 128.
"""

import numpy as np

from .cleanup import label_components
from .errors import DimensionMismatch, NoPaperFound
from .raster import ensure_gray, fill_convex_polygon


def otsu_threshold(gray) -> int:
    """Threshold maximizing between-class variance; classes are [0, t] and
    (t, 255]. Ties resolve to the smallest t, which makes the result shift
    by exactly c when every pixel shifts by c (no clipping)."""
    g = ensure_gray(gray)
    hist = np.bincount(g.ravel(), minlength=256).astype(np.float64)
    total = g.size
    if np.count_nonzero(hist) < 2:
        raise NoPaperFound("degenerate histogram: single luma mode")
    cum_n = np.cumsum(hist)
    cum_s = np.cumsum(hist * np.arange(256))
    w0 = cum_n
    w1 = total - cum_n
    valid = (w0 > 0) & (w1 > 0)
    mu0 = np.divide(cum_s, w0, out=np.zeros(256), where=valid)
    mu1 = np.divide(cum_s[-1] - cum_s, w1, out=np.zeros(256), where=valid)
    sigma = np.where(valid, w0 * w1 * (mu0 - mu1) ** 2, -1.0)
    return int(np.argmax(sigma))


def _hull_of_component(comp: np.ndarray) -> np.ndarray:
    """Convex hull (monotone chain, exact integer cross products) of a
    component's pixel centers, built from its per-row extremes."""
    ys, xs = np.nonzero(comp)
    # np.nonzero is raster order: rows ascending, x ascending within a row
    rows, first = np.unique(ys, return_index=True)
    last = np.concatenate([first[1:], [ys.size]]) - 1
    pts = np.empty((2 * rows.size, 2), dtype=np.int64)
    pts[0::2, 0] = xs[first]
    pts[0::2, 1] = rows
    pts[1::2, 0] = xs[last]
    pts[1::2, 1] = rows
    pts = np.unique(pts, axis=0)  # sorted lexicographically by (x, y)

    def half(points):
        chain = []
        for p in points:
            while len(chain) >= 2:
                ox, oy = chain[-2]
                ax, ay = chain[-1]
                if (ax - ox) * (p[1] - oy) - (ay - oy) * (p[0] - ox) <= 0:
                    chain.pop()
                else:
                    break
            chain.append((int(p[0]), int(p[1])))
        return chain

    if pts.shape[0] <= 2:
        return pts
    lower = half(pts)
    upper = half(pts[::-1])
    return np.array(lower[:-1] + upper[:-1], dtype=np.int64)


def fill_convex_hull(component) -> np.ndarray:
    """Filled convex hull of a mask: every pixel whose center lies inside
    or on the hull of the foreground pixel centers."""
    comp = np.asarray(component, dtype=np.bool_)
    hull = _hull_of_component(comp)
    return fill_convex_polygon(hull, comp.shape)


def classical_segment(gray) -> np.ndarray:
    """Bright-class Otsu split, largest 8-connected component, hull fill."""
    g = ensure_gray(gray)
    t = otsu_threshold(g)
    bright = g > t
    labels, stats = label_components(bright, connectivity=8)
    if not stats:
        raise NoPaperFound("no bright region")
    best = max(stats, key=lambda s: (s.area, -s.label))
    if best.area < 0.01 * g.size:
        raise NoPaperFound(
            f"largest bright region covers {best.area} px, "
            f"under 1% of the frame")
    return fill_convex_hull(labels == best.label)


def binarize_external_mask(mask_frame, expect_shape=None) -> np.ndarray:
    """Turn a supplied 8-bit mask frame into a boolean mask (>= 128 is paper)."""
    m = ensure_gray(mask_frame)
    if expect_shape is not None and m.shape != tuple(expect_shape):
        raise DimensionMismatch(
            f"mask is {m.shape[1]}x{m.shape[0]}, frame is "
            f"{expect_shape[1]}x{expect_shape[0]}")
    return m >= 128
