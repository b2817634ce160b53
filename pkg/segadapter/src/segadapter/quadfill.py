"""Exact convex polygon rasterization.

A pixel belongs to a convex polygon when its center satisfies every
edge's half-plane inequality. Per scan row each inequality collapses to
a single bound on x, so a row is one interval intersection, computed in
rational arithmetic. Exactness is the point: a center landing exactly
on the boundary is included, never lost to float rounding.
"""

import math
from fractions import Fraction

import numpy as np

from .errors import MalformedLabel


def fill_convex(points, width: int, height: int) -> np.ndarray:
    """Boolean (height, width) mask of centers inside or on the polygon.

    points is a vertex sequence in either winding; it must describe a
    convex polygon (the caller guarantees this, nothing is re-checked).
    """
    pts = [(Fraction(float(x)), Fraction(float(y))) for x, y in points]
    n = len(pts)
    area2 = sum(pts[i][0] * pts[(i + 1) % n][1] - pts[(i + 1) % n][0] * pts[i][1]
                for i in range(n))
    sign = -1 if area2 < 0 else 1

    # sign * cross((b - a), (p - a)) >= 0 rearranged to a*px + b(py) >= 0
    edges = []
    for i in range(n):
        ax, ay = pts[i]
        bx, by = pts[(i + 1) % n]
        edges.append((sign * (ay - by), ax, ay, bx, by))

    # the bbox clamp is redundant for proper polygons but keeps degenerate
    # inputs (all vertices collinear) from filling whole rows
    min_x = math.ceil(min(p[0] for p in pts))
    max_x = math.floor(max(p[0] for p in pts))

    out = np.zeros((height, width), dtype=np.bool_)
    for y in range(height):
        fy = Fraction(y)
        lo = max(0, min_x)
        hi = min(width - 1, max_x)
        for a_coef, ax, ay, bx, by in edges:
            b_val = sign * ((bx - ax) * (fy - ay) + (by - ay) * ax)
            if a_coef == 0:
                if b_val < 0:
                    lo = 1
                    hi = 0
                    break
                continue
            bound = -b_val / a_coef
            if a_coef > 0:
                c = math.ceil(bound)
                if c > lo:
                    lo = c
            else:
                f = math.floor(bound)
                if f < hi:
                    hi = f
        if hi >= lo:
            out[y, lo:hi + 1] = True
    return out


def validate_label_quad(corners, width: int, height: int) -> None:
    """Reject corner sets that are not a convex TL,TR,BR,BL quad inside
    the width x height pixel grid.

    Convexity is strict: any collinear corner triple fails. The order
    check doubles as a winding check, since a correctly labeled quad is
    clockwise when y grows downward.
    """
    pts = [(Fraction(float(x)), Fraction(float(y))) for x, y in corners]
    if len(pts) != 4:
        raise MalformedLabel(f"expected 4 corners, got {len(pts)}")
    for x, y in pts:
        if x < 0 or y < 0 or x > width - 1 or y > height - 1:
            raise MalformedLabel(
                f"corner ({float(x)}, {float(y)}) outside the "
                f"{width}x{height} pixel grid")
    for i in range(4):
        ox, oy = pts[i]
        ax, ay = pts[(i + 1) % 4]
        bx, by = pts[(i + 2) % 4]
        cross = (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)
        if cross <= 0:
            raise MalformedLabel(
                "corners do not form a convex quad in TL,TR,BR,BL order")
