"""Synthetic desk scenes and the RMSE evaluation harness.

A scene is a dark desk, a bright paper quad with known corners, content
warped onto the quad through an exact homography, optional occluders
(a stand-in for hands), and seeded Gaussian noise. Because the corners
and the content are known exactly, rendered scenes double as oracles
for the segmentation, corner-recovery, and warp stages.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import geometry
from .errors import EmptyBatch, InvalidSpec, NoPaperFound
from .raster import ensure_gray, fill_convex_polygon, resize, warp_bird_eye
from .segmentation import otsu_threshold


@dataclass(frozen=True)
class Occluder:
    """A filled shape painted over the scene.

    kind "ellipse": params = (cx, cy, rx, ry), axis aligned.
    kind "polygon": params = (n, 2) array of convex vertices.
    """
    kind: str
    params: object
    luma: int = 70


@dataclass
class SceneSpec:
    content: np.ndarray
    paper_quad: np.ndarray
    background_luma: int = 60
    paper_luma: int = 230
    occluders: tuple = ()
    noise_sigma: float = 0.0
    seed: int = 0


@dataclass
class RenderedScene:
    frame: np.ndarray
    gt_mask: np.ndarray
    gt_quad: np.ndarray
    h_scene_to_content: np.ndarray
    corner_occluded: bool


def _occluder_mask(occ: Occluder, shape) -> np.ndarray:
    if occ.kind == "ellipse":
        cx, cy, rx, ry = (float(v) for v in occ.params)
        if rx <= 0 or ry <= 0:
            raise InvalidSpec(f"ellipse radii must be positive, got {rx}, {ry}")
        h, w = shape
        ys = np.arange(h, dtype=np.float64)[:, None]
        xs = np.arange(w, dtype=np.float64)[None, :]
        return ((xs - cx) / rx) ** 2 + ((ys - cy) / ry) ** 2 <= 1.0
    if occ.kind == "polygon":
        return fill_convex_polygon(occ.params, shape)
    raise InvalidSpec(f"unknown occluder kind {occ.kind!r}")


def _occluder_covers(occ: Occluder, point) -> bool:
    px, py = float(point[0]), float(point[1])
    if occ.kind == "ellipse":
        cx, cy, rx, ry = (float(v) for v in occ.params)
        return ((px - cx) / rx) ** 2 + ((py - cy) / ry) ** 2 <= 1.0
    v = np.asarray(occ.params, dtype=np.float64)
    # inside a convex polygon iff all cross products share a sign
    signs = []
    for i in range(v.shape[0]):
        a = v[i]
        b = v[(i + 1) % v.shape[0]]
        signs.append((b[0] - a[0]) * (py - a[1]) - (b[1] - a[1]) * (px - a[0]))
    return all(s >= 0 for s in signs) or all(s <= 0 for s in signs)


def render_scene(spec: SceneSpec, out_dims) -> RenderedScene:
    """Deterministic scene render; see the module docstring for the layering.

    out_dims is (width, height) of the camera frame. The returned
    homography maps scene coordinates to content coordinates, i.e. it is
    exactly the transform a perfect rectification would apply.
    """
    w, h = int(out_dims[0]), int(out_dims[1])
    if w < 2 or h < 2:
        raise InvalidSpec(f"scene dims must be >= 2, got {w}x{h}")
    content = ensure_gray(spec.content)
    try:
        quad = geometry.validate_quad(spec.paper_quad)
    except Exception as exc:
        raise InvalidSpec(f"bad paper quad: {exc}") from None
    if quad[:, 0].min() < 0 or quad[:, 1].min() < 0 \
            or quad[:, 0].max() > w - 1 or quad[:, 1].max() > h - 1:
        raise InvalidSpec("paper quad extends outside the frame")
    for v in (spec.background_luma, spec.paper_luma):
        if not 0 <= v <= 255:
            raise InvalidSpec(f"luma {v} outside [0, 255]")
    if spec.noise_sigma < 0:
        raise InvalidSpec(f"noise_sigma must be >= 0, got {spec.noise_sigma}")

    ch, cw = content.shape
    h_content_to_scene = geometry.solve_homography(geometry.rect_corners(cw, ch), quad)
    h_scene_to_content = geometry.invert_homography(h_content_to_scene)

    gt_mask = fill_convex_polygon(quad, (h, w))
    frame = np.full((h, w), np.uint8(spec.background_luma))
    warped = warp_bird_eye(content, h_scene_to_content, w, h, fill=spec.paper_luma)
    frame[gt_mask] = warped[gt_mask]

    corner_occluded = False
    for occ in spec.occluders:
        if not 0 <= occ.luma <= 255:
            raise InvalidSpec(f"occluder luma {occ.luma} outside [0, 255]")
        m = _occluder_mask(occ, (h, w))
        frame[m] = np.uint8(occ.luma)
        if any(_occluder_covers(occ, c) for c in quad):
            corner_occluded = True

    if spec.noise_sigma > 0:
        rng = np.random.default_rng(spec.seed)
        noisy = frame.astype(np.float64) + rng.normal(0.0, spec.noise_sigma, frame.shape)
        frame = np.clip(np.rint(noisy), 0, 255).astype(np.uint8)

    return RenderedScene(frame, gt_mask, quad.copy(), h_scene_to_content, corner_occluded)


def _binarize(g: np.ndarray) -> np.ndarray:
    try:
        return g > otsu_threshold(g)
    except NoPaperFound:
        return g >= 128  # flat frame: fall back to the midpoint


def rmse(f_o, f_d) -> float:
    """Root mean squared error between two frames after binarization.

    f_d is resized to f_o's dimensions, then both are Otsu-binarized to
    {0, 1}; the result is sqrt(fraction of differing pixels), so it lives
    in [0, 1] with 0 for identical frames and 1 for exact complements.
    """
    a = ensure_gray(f_o)
    b = ensure_gray(f_d)
    if b.shape != a.shape:
        b = resize(b, a.shape[1], a.shape[0])
    diff = _binarize(a) != _binarize(b)
    return math.sqrt(float(np.mean(diff.astype(np.float64))))


@dataclass(frozen=True)
class EvalReport:
    values: tuple
    mean: float
    count: int


def batch_eval(pairs) -> EvalReport:
    """Per-pair rmse plus the arithmetic mean over a non-empty batch."""
    pairs = list(pairs)
    if not pairs:
        raise EmptyBatch("no frame pairs to evaluate")
    values = tuple(rmse(fo, fd) for fo, fd in pairs)
    return EvalReport(values=values, mean=sum(values) / len(values), count=len(values))


# --- scene construction helpers -------------------------------------------

def make_writing(rng, width: int, height: int, paper_luma: int = 230,
                 ink_luma: int = 40, strokes: int = 8, margin: int = 40) -> np.ndarray:
    """Synthetic handwriting: random polyline strokes stamped with a square
    nib on a paper-luma background. Strokes keep `margin` px clear of the
    content border so warping artifacts never clip them."""
    img = np.full((height, width), np.uint8(paper_luma))
    if margin * 2 >= min(width, height):
        raise InvalidSpec("margin leaves no room for strokes")
    for _ in range(strokes):
        x = float(rng.integers(margin, width - margin))
        y = float(rng.integers(margin, height - margin))
        radius = int(rng.integers(2, 4))
        heading = float(rng.uniform(0, 2 * math.pi))
        for _seg in range(int(rng.integers(2, 6))):
            heading += float(rng.uniform(-1.1, 1.1))
            length = float(rng.uniform(25, 90))
            nx = min(max(x + length * math.cos(heading), margin), width - 1 - margin)
            ny = min(max(y + length * math.sin(heading), margin), height - 1 - margin)
            steps = max(2, int(math.hypot(nx - x, ny - y)))
            for t in range(steps + 1):
                px = x + (nx - x) * t / steps
                py = y + (ny - y) * t / steps
                x0, x1 = int(px) - radius, int(px) + radius + 1
                y0, y1 = int(py) - radius, int(py) + radius + 1
                img[y0:y1, x0:x1] = np.uint8(ink_luma)
            x, y = nx, ny
    return img


def _interior_angles(quad: np.ndarray) -> list:
    out = []
    for i in range(4):
        b = quad[i]
        a = quad[(i - 1) % 4]
        c = quad[(i + 1) % 4]
        v1 = a - b
        v2 = c - b
        cosang = float(np.dot(v1, v2) / (np.hypot(*v1) * np.hypot(*v2)))
        out.append(math.degrees(math.acos(max(-1.0, min(1.0, cosang)))))
    return out


def random_paper_quad(rng, frame_width: int, frame_height: int, margin: int = 30,
                      angle_lo: float = 60.0, angle_hi: float = 120.0) -> np.ndarray:
    """A random integer-corner convex quad that looks like a sheet of paper
    seen obliquely: each corner in its own quadrant box, interior angles
    within [angle_lo, angle_hi]. Deterministic for a given rng state."""
    w, h = frame_width, frame_height
    boxes = [
        (margin, int(0.27 * w), margin, int(0.22 * h)),          # TL
        (int(0.73 * w), w - 1 - margin, margin, int(0.22 * h)),  # TR
        (int(0.73 * w), w - 1 - margin, int(0.78 * h), h - 1 - margin),  # BR
        (margin, int(0.27 * w), int(0.78 * h), h - 1 - margin),  # BL
    ]
    while True:
        pts = np.array([
            [rng.integers(x0, x1 + 1), rng.integers(y0, y1 + 1)]
            for x0, x1, y0, y1 in boxes
        ], dtype=np.float64)
        try:
            quad = geometry.order_corners(pts)
        except Exception:
            continue
        angles = _interior_angles(quad)
        if all(angle_lo <= a <= angle_hi for a in angles):
            return quad


def edge_bite_occluder(rng, quad: np.ndarray, max_area_frac: float = 0.2,
                       luma: int = 70) -> Occluder:
    """An ellipse biting into one paper edge without touching any corner,
    removing at most max_area_frac of the quad area."""
    quad_area = geometry.quad_area(quad)
    for _ in range(1000):
        e = int(rng.integers(0, 4))
        a = quad[e]
        b = quad[(e + 1) % 4]
        t = float(rng.uniform(0.35, 0.65))
        cx = a[0] + t * (b[0] - a[0])
        cy = a[1] + t * (b[1] - a[1])
        edge_len = float(np.hypot(*(b - a)))
        rx = float(rng.uniform(0.08, 0.16)) * edge_len
        ry = float(rng.uniform(0.08, 0.16)) * edge_len
        if math.pi * rx * ry > max_area_frac * quad_area:
            continue
        occ = Occluder("ellipse", (cx, cy, rx, ry), luma=luma)
        margin = 15.0
        clear = all(
            np.hypot(c[0] - cx, c[1] - cy) > max(rx, ry) + margin
            for c in quad
        )
        if clear:
            return occ
    raise InvalidSpec("could not place an edge-bite occluder on this quad")


def hand_occluder(rng, frame_width: int, frame_height: int, quad: np.ndarray,
                  luma: int = 75) -> Occluder:
    """A convex 'hand blob' polygon reaching in from the bottom frame edge
    toward the quad centroid, stopping clear of every corner."""
    cx, cy = quad.mean(axis=0)
    for _ in range(1000):
        base_x = float(rng.uniform(0.25, 0.75)) * frame_width
        reach = float(rng.uniform(0.35, 0.6))
        tip = np.array([cx + (base_x - cx) * 0.2, cy + (frame_height - cy) * (1 - reach)])
        half_w = float(rng.uniform(25, 45))
        verts = np.array([
            [base_x - half_w, frame_height - 1],
            [tip[0] - half_w * 0.7, tip[1] + 10],
            [tip[0], tip[1]],
            [tip[0] + half_w * 0.7, tip[1] + 10],
            [base_x + half_w, frame_height - 1],
        ])
        occ = Occluder("polygon", verts, luma=luma)
        if not any(_occluder_covers(occ, c) for c in quad):
            return occ
    raise InvalidSpec("could not place a hand occluder")
