"""Mask to corners: largest blob, boundary trace, quad fit, smoothing.

Contours are (n, 2) int64 arrays of (x, y) pixel coordinates tracing the
outer boundary clockwise (image coords, y down). The smoother is the one
stateful stage in the system; give each stream its own SmootherState.
"""

from dataclasses import dataclass, field

import numpy as np

from . import geometry
from .cleanup import label_components
from .errors import DegenerateQuad, EmptyMask, InvalidConfig, QuadFitFailed
from .raster import ensure_mask

# Moore neighborhood, clockwise in y-down image coordinates.
_DIRS = ((1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1))
# Scan restart direction after a move in direction d (points at the last
# background pixel checked before the move, seen from the new pixel).
_RESTART = (6, 6, 0, 0, 2, 2, 4, 4)


def largest_region(mask) -> np.ndarray:
    """Keep only the largest 8-connected foreground component."""
    m = ensure_mask(mask)
    labels, stats = label_components(m, connectivity=8)
    if not stats:
        raise EmptyMask("mask has no foreground")
    best = max(stats, key=lambda s: (s.area, -s.label))
    return labels == best.label


def trace_contour(region) -> np.ndarray:
    """Moore boundary trace of a single 8-connected component.

    Starts at the topmost-then-leftmost pixel and walks clockwise; stops
    when the (pixel, outgoing direction) state of the first move repeats.
    """
    m = ensure_mask(region)
    ys, xs = np.nonzero(m)
    if ys.size == 0:
        raise EmptyMask("cannot trace an empty region")
    h, w = m.shape
    i0 = np.argmin(ys * np.int64(w) + xs)  # min y, then min x
    cx, cy = int(xs[i0]), int(ys[i0])
    start = (cx, cy)

    contour = [start]
    backtrack = 4  # virtual entry from the west, background by construction
    first_move = None
    limit = 4 * ys.size + 8
    for _ in range(limit):
        found = -1
        for i in range(1, 9):
            d = (backtrack + i) % 8
            nx = cx + _DIRS[d][0]
            ny = cy + _DIRS[d][1]
            if 0 <= nx < w and 0 <= ny < h and m[ny, nx]:
                found = d
                break
        if found == -1:
            break  # isolated pixel
        if first_move is None:
            first_move = ((cx, cy), found)
        elif ((cx, cy), found) == first_move:
            break
        cx += _DIRS[found][0]
        cy += _DIRS[found][1]
        contour.append((cx, cy))
        backtrack = _RESTART[found]
    out = np.array(contour, dtype=np.int64)
    if len(contour) > 1 and contour[-1] == start:
        out = out[:-1]  # closure is implicit
    return out


def _dp_indices(pts: np.ndarray, eps: float) -> np.ndarray:
    """Douglas-Peucker survivor indices for an open polyline."""
    n = pts.shape[0]
    keep = np.zeros(n, dtype=bool)
    keep[0] = keep[n - 1] = True
    stack = [(0, n - 1)]
    while stack:
        i, j = stack.pop()
        if j - i < 2:
            continue
        a = pts[i]
        b = pts[j]
        mid = pts[i + 1:j]
        ab = b - a
        seg_len = np.hypot(ab[0], ab[1])
        if seg_len == 0.0:
            dist = np.hypot(mid[:, 0] - a[0], mid[:, 1] - a[1])
        else:
            dist = np.abs(ab[0] * (mid[:, 1] - a[1]) - ab[1] * (mid[:, 0] - a[0])) / seg_len
        k = int(np.argmax(dist))
        if dist[k] > eps:
            k += i + 1
            keep[k] = True
            stack.append((i, k))
            stack.append((k, j))
    return np.nonzero(keep)[0]


def _simplify_ring(contour: np.ndarray, eps: float) -> np.ndarray:
    """Simplify a closed ring: split at the point farthest from point 0,
    run Douglas-Peucker on both halves, and rejoin."""
    pts = contour.astype(np.float64)
    n = pts.shape[0]
    if n <= 4:
        return pts
    d0 = np.hypot(pts[:, 0] - pts[0, 0], pts[:, 1] - pts[0, 1])
    k = int(np.argmax(d0))
    if k == 0:
        return pts[:1]
    half_a = pts[:k + 1]
    half_b = np.concatenate([pts[k:], pts[:1]], axis=0)
    ia = _dp_indices(half_a, eps)
    ib = _dp_indices(half_b, eps)
    # drop each half's final endpoint: it opens the next half (or closes the ring)
    merged = np.concatenate([half_a[ia[:-1]], half_b[ib[:-1]]], axis=0)
    return merged


def _extreme_points(contour: np.ndarray) -> np.ndarray:
    x = contour[:, 0].astype(np.float64)
    y = contour[:, 1].astype(np.float64)
    return np.array([
        contour[np.argmin(x + y)],  # toward top-left
        contour[np.argmin(y - x)],  # toward top-right
        contour[np.argmax(x + y)],  # toward bottom-right
        contour[np.argmax(y - x)],  # toward bottom-left
    ], dtype=np.float64)


def fit_quad(contour) -> np.ndarray:
    """Reduce a closed contour to 4 ordered corners.

    Douglas-Peucker with epsilon doubling from 1 px until at most 4
    vertices survive; a non-quad result falls back to the extreme-point
    heuristic (min x+y, min y-x, max x+y, max y-x).
    """
    pts = np.asarray(contour, dtype=np.int64)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 1:
        raise InvalidConfig(f"contour must be (n, 2), got {pts.shape}")
    eps = 1.0
    simplified = _simplify_ring(pts, eps)
    while simplified.shape[0] > 4:
        eps *= 2.0
        simplified = _simplify_ring(pts, eps)
    if simplified.shape[0] == 4:
        try:
            return geometry.order_corners(simplified)
        except DegenerateQuad:
            pass
    try:
        return geometry.order_corners(_extreme_points(pts))
    except DegenerateQuad as exc:
        raise QuadFitFailed(f"contour does not resemble a quadrilateral: {exc}") from None


@dataclass
class SmootherState:
    """Per-stream exponential smoothing of corner positions."""
    alpha: float = 0.6
    jump_threshold: float = 0.05
    prev: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise InvalidConfig(f"alpha must be in (0, 1], got {self.alpha}")
        if not 0.0 < self.jump_threshold < 0.5:
            raise InvalidConfig(
                f"jump_threshold must be in (0, 0.5), got {self.jump_threshold}")


def smooth_corners(state: SmootherState, quad, frame_diag: float) -> np.ndarray:
    """Blend the new quad into the running average, rejecting jumps.

    The first quad seeds the state unchanged. A corner moving farther
    than jump_threshold * frame_diag is treated as a glitch: the previous
    quad is returned and the state is left alone. Motion below the
    threshold converges through the moving average within a few frames.
    """
    q = geometry.validate_quad(quad)
    if state.prev is None:
        state.prev = q.copy()
        return q.copy()
    step = np.hypot(q[:, 0] - state.prev[:, 0], q[:, 1] - state.prev[:, 1])
    if float(np.max(step)) > state.jump_threshold * frame_diag:
        return state.prev.copy()
    blended = state.alpha * q + (1.0 - state.alpha) * state.prev
    try:
        blended = geometry.validate_quad(blended)
    except DegenerateQuad:
        return state.prev.copy()
    state.prev = blended.copy()
    return blended


def quad_from_mask(mask):
    """Full mask-to-corners path.

    Returns (quad, confident) where confident is False when the fitted
    quad covers less than 0.8 of the blob area (non-quadrilateral blob);
    callers keep the previous corners in that case.
    """
    region = largest_region(mask)
    contour = trace_contour(region)
    quad = fit_quad(contour)
    blob_area = float(np.count_nonzero(region))
    confident = geometry.quad_area(quad) >= 0.8 * blob_area
    return quad, confident
