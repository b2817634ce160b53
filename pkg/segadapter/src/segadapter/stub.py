"""Deterministic stand-in for the neural segmenter.

Finds the paper the classical way: split the histogram, keep the
largest bright 8-connected region, return its filled convex hull. The
model interface stays exercisable without weights, and a consumer can
compare stub masks against its own classical segmentation.

All arithmetic is integer-exact. Components are tracked as row runs
under union-find rather than per pixel, and the hull is gift-wrapped
over each row's extreme pixels, which is every point that can matter.
"""

import numpy as np

from .quadfill import fill_convex


def luma(rgb: np.ndarray) -> np.ndarray:
    """Round(0.299 R + 0.587 G + 0.114 B) in per-mille integers, ties up."""
    acc = (299 * rgb[:, :, 0].astype(np.int64)
           + 587 * rgb[:, :, 1].astype(np.int64)
           + 114 * rgb[:, :, 2].astype(np.int64))
    return ((acc + 500) // 1000).astype(np.uint8)


def _otsu(gray: np.ndarray):
    """Between-class-variance threshold, exact integer comparisons.

    Returns None for a single-mode histogram. Ties pick the smallest
    threshold. Variances are compared as cross-multiplied fractions
    d^2 / (n0 * n1), so no float ever enters the ordering.
    """
    hist = np.bincount(gray.ravel(), minlength=256)
    if np.count_nonzero(hist) < 2:
        return None
    total = int(gray.size)
    grand = int((hist * np.arange(256, dtype=np.int64)).sum())
    best_t = None
    best_num = -1
    best_den = 1
    n0 = 0
    s0 = 0
    for t in range(256):
        n0 += int(hist[t])
        s0 += t * int(hist[t])
        n1 = total - n0
        if n0 == 0 or n1 == 0:
            continue
        d = s0 * n1 - (grand - s0) * n0
        num = d * d
        den = n0 * n1
        if num * best_den > best_num * den:
            best_t, best_num, best_den = t, num, den
    return best_t


def _runs(bright: np.ndarray):
    """Foreground row runs as (row, x0, x1) arrays, x1 exclusive, in
    raster order. Zero-padded columns keep runs from wrapping rows."""
    h, w = bright.shape
    padded = np.zeros((h, w + 2), dtype=np.int8)
    padded[:, 1:-1] = bright
    step = np.diff(padded.ravel())
    starts = np.flatnonzero(step == 1) + 1
    ends = np.flatnonzero(step == -1) + 1
    stride = w + 2
    rows = starts // stride
    x0 = starts % stride - 1
    x1 = x0 + (ends - starts)
    return rows, x0, x1


def _largest_component(bright: np.ndarray):
    """Mask and area of the biggest 8-connected region; first-seen wins
    area ties. Returns (None, 0) when the input is empty."""
    rows, x0, x1 = _runs(bright)
    n = rows.size
    if n == 0:
        return None, 0

    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return
        if rb < ra:
            ra, rb = rb, ra
        parent[rb] = ra  # smaller run index means seen earlier

    # runs are sorted by row; walk each row against the one above with
    # two pointers, merging on 8-neighborhood overlap (column slack 1)
    row_first = {}
    for i in range(n):
        row_first.setdefault(int(rows[i]), i)
    for r in sorted(row_first):
        if r - 1 not in row_first:
            continue
        i = row_first[r]
        j = row_first[r - 1]
        while i < n and rows[i] == r and j < n and rows[j] == r - 1:
            if x0[i] <= x1[j] and x0[j] <= x1[i]:
                union(i, j)
            # advance whichever run ends first
            if x1[i] < x1[j]:
                i += 1
            else:
                j += 1

    areas = {}
    for i in range(n):
        root = find(i)
        areas[root] = areas.get(root, 0) + int(x1[i] - x0[i])
    win = max(areas, key=lambda r: (areas[r], -r))

    comp = np.zeros(bright.shape, dtype=np.bool_)
    for i in range(n):
        if find(i) == win:
            comp[rows[i], x0[i]:x1[i]] = True
    return comp, areas[win]


def _row_extremes(comp: np.ndarray) -> list:
    ys, xs = np.nonzero(comp)
    pts = []
    rws, first = np.unique(ys, return_index=True)
    last = np.concatenate([first[1:], [ys.size]]) - 1
    for r, f, l in zip(rws, first, last):
        pts.append((int(xs[f]), int(r)))
        pts.append((int(xs[l]), int(r)))
    return pts


def _convex_hull(points: list) -> list:
    """Gift wrapping over integer points; collinear candidates resolve to
    the farthest so the march cannot stall on a straight stretch."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts
    start = pts[0]
    hull = []
    cur = start
    while True:
        hull.append(cur)
        best = None
        for p in pts:
            if p == cur:
                continue
            if best is None:
                best = p
                continue
            cross = ((best[0] - cur[0]) * (p[1] - cur[1])
                     - (best[1] - cur[1]) * (p[0] - cur[0]))
            if cross < 0:
                best = p
            elif cross == 0:
                db = (best[0] - cur[0]) ** 2 + (best[1] - cur[1]) ** 2
                dp = (p[0] - cur[0]) ** 2 + (p[1] - cur[1]) ** 2
                if dp > db:
                    best = p
        cur = best
        if cur == start:
            break
        if len(hull) > len(pts):
            raise RuntimeError("hull march failed to close")
    return hull


def stub_segment(frame: np.ndarray) -> np.ndarray:
    """Paper mask for one frame, gray or RGB; all-False when no
    sufficiently large bright region exists (under 1% of the frame)."""
    gray = frame if frame.ndim == 2 else luma(frame)
    h, w = gray.shape
    zeros = np.zeros((h, w), dtype=np.bool_)
    t = _otsu(gray)
    if t is None:
        return zeros
    comp, area = _largest_component(gray > t)
    if comp is None or area < 0.01 * gray.size:
        return zeros
    hull = _convex_hull(_row_extremes(comp))
    if len(hull) < 3:
        # a collinear component is its own hull fill
        return comp
    return fill_convex(hull, w, h)
