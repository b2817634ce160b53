"""Planar projective geometry for paper rectification.

Conventions used throughout the package:

* Image coordinates: x grows right, y grows DOWN.
* A quad is a float64 array of shape (4, 2) holding the paper corners in
  the fixed order TL, TR, BR, BL.  The order traverses the boundary
  clockwise on screen (which is positive shoelace area with y down).
* A homography is a float64 array of shape (3, 3) in canonical form
  (bottom-right entry equal to 1).  It acts on homogeneous columns
  (x, y, 1); callers divide by the resulting weight.
"""

import math

import numpy as np

from .errors import DegenerateQuad, InvalidConfig, PointAtInfinity, SingularSystem

# noise floor for determinants / pivots / homogeneous weights at pixel scale
EPS_SINGULAR = 1e-12


def quad_area(quad) -> float:
    """Signed shoelace area; positive for clockwise order with y down."""
    q = np.asarray(quad, dtype=np.float64)
    x, y = q[:, 0], q[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def validate_quad(quad) -> np.ndarray:
    """Check the quad invariants and return the corners as a (4, 2) float array.

    Raises DegenerateQuad when the points are not finite, not strictly
    convex in clockwise TL,TR,BR,BL order, contain a collinear corner
    triple, or enclose less than one square pixel.
    """
    q = np.asarray(quad, dtype=np.float64)
    if q.shape != (4, 2):
        raise DegenerateQuad(f"expected 4 corner points, got shape {q.shape}")
    if not np.all(np.isfinite(q)):
        raise DegenerateQuad("corner coordinates must be finite")
    for i in range(4):
        a, b, c = q[i - 1], q[i], q[(i + 1) % 4]
        cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        if cross <= 1e-9:
            raise DegenerateQuad("corners are collinear or not convex clockwise")
    if quad_area(q) < 1.0:
        raise DegenerateQuad("enclosed area is below one square pixel")
    return q


def order_corners(points) -> np.ndarray:
    """Put 4 unordered points into canonical TL, TR, BR, BL order.

    TL is the point with minimal x+y (ties broken by smaller y, then
    smaller x); the remaining corners follow clockwise by angle about the
    centroid.  Raises DegenerateQuad when the points cannot form a valid
    quad (collinear triple, self-intersection, area below 1).
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.shape != (4, 2):
        raise DegenerateQuad(f"expected 4 points, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise DegenerateQuad("points must be finite")
    center = pts.mean(axis=0)
    angles = np.arctan2(pts[:, 1] - center[1], pts[:, 0] - center[0])
    ring = pts[np.argsort(angles, kind="stable")]
    keys = [(p[0] + p[1], p[1], p[0]) for p in ring]
    start = min(range(4), key=keys.__getitem__)
    ordered = np.roll(ring, -start, axis=0)
    return validate_quad(ordered)


def solve_homography(src, dst) -> np.ndarray:
    """Solve the 4-point perspective transform mapping src corners onto dst.

    Both arguments are quads (see module docstring).  The result H is the
    canonical 3x3 matrix with H @ (x, y, 1) ~ (x', y', w') such that each
    src corner maps onto the matching dst corner.  The bottom-right entry
    is fixed to 1, leaving an 8x8 linear system in the remaining entries.

    Raises SingularSystem when the correspondence is degenerate.
    """
    s = validate_quad(src)
    d = validate_quad(dst)
    a = np.zeros((8, 8), dtype=np.float64)
    b = np.zeros(8, dtype=np.float64)
    for i in range(4):
        u, v = s[i]
        x, y = d[i]
        a[2 * i] = [u, v, 1.0, 0.0, 0.0, 0.0, -x * u, -x * v]
        b[2 * i] = x
        a[2 * i + 1] = [0.0, 0.0, 0.0, u, v, 1.0, -y * u, -y * v]
        b[2 * i + 1] = y
    try:
        coeffs = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem("degenerate corner correspondence") from exc
    h = np.append(coeffs, 1.0).reshape(3, 3)
    if abs(np.linalg.det(h)) < EPS_SINGULAR:
        raise SingularSystem("solved matrix is singular")
    return h


def apply_homography(h, point) -> np.ndarray:
    """Map a single (x, y) point through the homography.

    Returns (x'/w', y'/w').  Raises PointAtInfinity when the homogeneous
    weight w' falls below the noise floor.
    """
    m = np.asarray(h, dtype=np.float64)
    x, y = float(point[0]), float(point[1])
    w = m[2, 0] * x + m[2, 1] * y + m[2, 2]
    if abs(w) < EPS_SINGULAR:
        raise PointAtInfinity(f"point ({x}, {y}) maps to weight {w}")
    return np.array([
        (m[0, 0] * x + m[0, 1] * y + m[0, 2]) / w,
        (m[1, 0] * x + m[1, 1] * y + m[1, 2]) / w,
    ])


def invert_homography(h) -> np.ndarray:
    """Invert a homography and re-canonicalize so the last entry is 1."""
    m = np.asarray(h, dtype=np.float64)
    if abs(np.linalg.det(m)) < EPS_SINGULAR:
        raise SingularSystem("matrix is singular")
    inv = np.linalg.inv(m)
    if abs(inv[2, 2]) < EPS_SINGULAR:
        raise SingularSystem("inverse cannot be canonicalized")
    return inv / inv[2, 2]


def rect_corners(width: int, height: int) -> np.ndarray:
    """Corner quad of a width x height pixel grid (pixel-center convention)."""
    w, h = float(width - 1), float(height - 1)
    return np.array([[0.0, 0.0], [w, 0.0], [w, h], [0.0, h]])


def _round_half_away(v: float) -> int:
    return int(math.floor(v + 0.5)) if v >= 0 else -int(math.floor(-v + 0.5))


def target_rect(quad, mode: str, output_height: int, aspect: float | None = None):
    """Pick the output rectangle size for a rectified paper quad.

    mode "fixed": width = round(output_height * aspect) for a known paper
    aspect (w/h).  mode "estimated": use the quad's own edge lengths,
    width from the longer of the top/bottom edges and height from the
    longer of the left/right edges.

    Returns (width, height) in pixels.  Raises InvalidConfig on
    out-of-range inputs or an unknown mode.
    """
    if output_height < 16:
        raise InvalidConfig(f"output_height must be >= 16, got {output_height}")
    if mode == "fixed":
        if aspect is None or not (0.1 < aspect < 10.0):
            raise InvalidConfig(f"aspect must lie in (0.1, 10), got {aspect}")
        return max(1, _round_half_away(output_height * aspect)), int(output_height)
    if mode == "estimated":
        q = validate_quad(quad)
        tl, tr, br, bl = q
        width = max(np.hypot(*(tl - tr)), np.hypot(*(bl - br)))
        height = max(np.hypot(*(tl - bl)), np.hypot(*(tr - br)))
        return max(1, _round_half_away(width)), max(1, _round_half_away(height))
    raise InvalidConfig(f"unknown target mode {mode!r}")


def format_corner_line(frame_index: int, quad) -> str:
    """One corner sidecar line: `frame_index x_tl y_tl ... x_bl y_bl`."""
    q = np.asarray(quad, dtype=np.float64).reshape(8)
    return str(frame_index) + " " + " ".join(f"{v:.6f}" for v in q)


def parse_corner_line(line: str):
    """Parse a sidecar line back into (frame_index, quad)."""
    parts = line.split()
    if len(parts) != 9:
        raise ValueError(f"expected 9 fields, got {len(parts)}")
    return int(parts[0]), np.array([float(v) for v in parts[1:]]).reshape(4, 2)
