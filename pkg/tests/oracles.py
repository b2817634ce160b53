"""Independent reference implementations used to derive expected values.

Everything here is deliberately written the slow, obvious way (pure
Python loops, no numpy.linalg, no shared helpers from the package) so a
bug in the package cannot hide in its own oracle.
"""

import math
from collections import deque


# --- linear algebra --------------------------------------------------------

def solve_homography_ge(src, dst):
    """4-point homography via hand-rolled Gaussian elimination with
    partial pivoting on the 8x8 system; a33 fixed to 1."""
    a = []
    b = []
    for (u, v), (x, y) in zip(src, dst):
        a.append([u, v, 1.0, 0.0, 0.0, 0.0, -x * u, -x * v])
        b.append(float(x))
        a.append([0.0, 0.0, 0.0, u, v, 1.0, -y * u, -y * v])
        b.append(float(y))
    n = 8
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
        if abs(a[pivot][col]) < 1e-12:
            raise ZeroDivisionError("singular system")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            b[col], b[pivot] = b[pivot], b[col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            for c in range(col, n):
                a[r][c] -= f * a[col][c]
            b[r] -= f * b[col]
    x = [0.0] * n
    for r in range(n - 1, -1, -1):
        s = b[r] - sum(a[r][c] * x[c] for c in range(r + 1, n))
        x[r] = s / a[r][r]
    return [[x[0], x[1], x[2]], [x[3], x[4], x[5]], [x[6], x[7], 1.0]]


def invert_3x3_adjugate(m):
    """Adjugate-matrix inverse, canonicalized to bottom-right entry 1."""
    (a, b, c), (d, e, f), (g, h, i) = m
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if abs(det) < 1e-12:
        raise ZeroDivisionError("singular matrix")
    adj = [
        [e * i - f * h, c * h - b * i, b * f - c * e],
        [f * g - d * i, a * i - c * g, c * d - a * f],
        [d * h - e * g, b * g - a * h, a * e - b * d],
    ]
    inv = [[v / det for v in row] for row in adj]
    k = inv[2][2]
    if abs(k) < 1e-12:
        raise ZeroDivisionError("inverse not canonicalizable")
    return [[v / k for v in row] for row in inv]


def apply_h(m, x, y):
    w = m[2][0] * x + m[2][1] * y + m[2][2]
    return ((m[0][0] * x + m[0][1] * y + m[0][2]) / w,
            (m[1][0] * x + m[1][1] * y + m[1][2]) / w)


# --- corner ordering -------------------------------------------------------

def angle_sort_corners(points):
    """Order 4 points clockwise (y down) starting at the min-(x+y) vertex,
    ties broken by smaller y then smaller x. Raises ValueError when the
    result is not a strictly convex clockwise quad."""
    pts = [(float(x), float(y)) for x, y in points]
    cx = sum(p[0] for p in pts) / 4.0
    cy = sum(p[1] for p in pts) / 4.0
    ordered = sorted(pts, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
    start = min(range(4), key=lambda i: (ordered[i][0] + ordered[i][1],
                                         ordered[i][1], ordered[i][0]))
    quad = ordered[start:] + ordered[:start]
    area2 = 0.0
    for i in range(4):
        x1, y1 = quad[i]
        x2, y2 = quad[(i + 1) % 4]
        area2 += x1 * y2 - x2 * y1
    # shoelace is positive for clockwise traversal in y-down coordinates
    # (checked by hand on the TL(1,1) TR(9,1) BR(9,9) BL(1,9) square: +64)
    if area2 / 2.0 < 1.0:
        raise ValueError("not a clockwise quad of area >= 1")
    for i in range(4):
        ax, ay = quad[i]
        bx, by = quad[(i + 1) % 4]
        cx2, cy2 = quad[(i + 2) % 4]
        cross = (bx - ax) * (cy2 - ay) - (by - ay) * (cx2 - ax)
        if cross <= 1e-9:
            raise ValueError("not strictly convex")
    return quad


# --- rasters ---------------------------------------------------------------

def flood_fill_labels(mask, connectivity=8):
    """BFS labeling; labels dense from 1 in raster first-encounter order.
    Returns (labels as list of lists, {label: area})."""
    h = len(mask)
    w = len(mask[0]) if h else 0
    labels = [[0] * w for _ in range(h)]
    if connectivity == 8:
        neigh = [(-1, -1), (0, -1), (1, -1), (-1, 0),
                 (1, 0), (-1, 1), (0, 1), (1, 1)]
    else:
        neigh = [(0, -1), (-1, 0), (1, 0), (0, 1)]
    areas = {}
    nxt = 0
    for y0 in range(h):
        for x0 in range(w):
            if not mask[y0][x0] or labels[y0][x0]:
                continue
            nxt += 1
            labels[y0][x0] = nxt
            areas[nxt] = 0
            queue = deque([(x0, y0)])
            while queue:
                x, y = queue.popleft()
                areas[nxt] += 1
                for dx, dy in neigh:
                    nx, ny = x + dx, y + dy
                    if 0 <= nx < w and 0 <= ny < h and mask[ny][nx] \
                            and not labels[ny][nx]:
                        labels[ny][nx] = nxt
                        queue.append((nx, ny))
    return labels, areas


def naive_adaptive_threshold(gray, window, offset_c):
    """Direct O(n * window^2) local mean comparison in integer arithmetic."""
    h = len(gray)
    w = len(gray[0])
    r = window // 2
    out = [[False] * w for _ in range(h)]
    for y in range(h):
        for x in range(w):
            y1, y2 = max(0, y - r), min(h - 1, y + r)
            x1, x2 = max(0, x - r), min(w - 1, x + r)
            total = 0
            count = 0
            for yy in range(y1, y2 + 1):
                for xx in range(x1, x2 + 1):
                    total += gray[yy][xx]
                    count += 1
            out[y][x] = gray[y][x] * count < total - offset_c * count
    return out


def naive_erode(mask, radius):
    h = len(mask)
    w = len(mask[0])
    out = [[False] * w for _ in range(h)]
    for y in range(h):
        for x in range(w):
            keep = True
            for dy in range(-radius, radius + 1):
                for dx in range(-radius, radius + 1):
                    ny, nx = y + dy, x + dx
                    if not (0 <= ny < h and 0 <= nx < w and mask[ny][nx]):
                        keep = False
            out[y][x] = keep
    return out


def naive_dilate(mask, radius):
    h = len(mask)
    w = len(mask[0])
    out = [[False] * w for _ in range(h)]
    for y in range(h):
        for x in range(w):
            hit = False
            for dy in range(-radius, radius + 1):
                for dx in range(-radius, radius + 1):
                    ny, nx = y + dy, x + dx
                    if 0 <= ny < h and 0 <= nx < w and mask[ny][nx]:
                        hit = True
            out[y][x] = hit
    return out


def bilinear_at(gray, x, y, fill):
    """Direct bilinear formula; `gray` is a list of rows."""
    h = len(gray)
    w = len(gray[0])
    if x < 0 or y < 0 or x > w - 1 or y > h - 1:
        return fill
    x0 = min(int(math.floor(x)), w - 1)
    y0 = min(int(math.floor(y)), h - 1)
    x1 = min(x0 + 1, w - 1)
    y1 = min(y0 + 1, h - 1)
    fx = x - x0
    fy = y - y0
    val = (gray[y0][x0] * (1 - fx) * (1 - fy) + gray[y0][x1] * fx * (1 - fy)
           + gray[y1][x0] * (1 - fx) * fy + gray[y1][x1] * fx * fy)
    return int(math.floor(val + 0.5))


def point_in_convex_polygon(verts, px, py):
    """Inside-or-on test via cross-product signs; exact for integer input."""
    n = len(verts)
    pos = neg = False
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        cross = (bx - ax) * (py - ay) - (by - ay) * (px - ax)
        if cross > 0:
            pos = True
        elif cross < 0:
            neg = True
    return not (pos and neg)


def fill_polygon_by_halfplane(verts, width, height):
    """Reference convex-polygon fill: per-pixel half-plane membership."""
    return [[point_in_convex_polygon(verts, x, y) for x in range(width)]
            for y in range(height)]


# --- hand-enumerated boundaries -------------------------------------------

# Clockwise outer boundary of a filled 3x3 block at the origin, starting at
# the topmost-then-leftmost pixel.
BLOCK_3X3_BOUNDARY = [(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2), (0, 2), (0, 1)]
