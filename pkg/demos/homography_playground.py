"""
Four points in, four points out
===============================

Everything in this package reduces to one 3x3 matrix. This script pokes
at it from a few directions to build intuition.
"""

import numpy as np

from papertab import geometry

# a unit square and a slanted "paper seen from a chair" quad
square = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
paper = np.array([[210.0, 80.0], [1030.0, 150.0], [950.0, 660.0], [300.0, 610.0]])

h = geometry.solve_homography(square, paper)
print("H mapping the unit square onto the paper quad:")
print(np.array_str(h, precision=3))

# each square corner must land exactly on its paper corner
for s, p in zip(square, paper):
    x, y = geometry.apply_homography(h, s)
    print(f"  ({s[0]:.0f}, {s[1]:.0f}) -> ({x:8.3f}, {y:8.3f})"
          f"   target ({p[0]:.0f}, {p[1]:.0f})")

# the center of the square does NOT land on the centroid of the quad;
# that asymmetry is the whole reason a perspective model is needed
cx, cy = geometry.apply_homography(h, (0.5, 0.5))
mx, my = paper.mean(axis=0)
print(f"\nsquare center maps to ({cx:.2f}, {cy:.2f}); "
      f"quad centroid is ({mx:.2f}, {my:.2f})")

# inversion: go there and come back
inv = geometry.invert_homography(h)
for s in square:
    back = geometry.apply_homography(inv, geometry.apply_homography(h, s))
    assert abs(back[0] - s[0]) < 1e-9 and abs(back[1] - s[1]) < 1e-9
print("round trip through H then H^-1 returns every corner (< 1e-9)")

# order_corners accepts the four points in any order
rng = np.random.default_rng(0)
shuffled = paper[rng.permutation(4)]
print("\nshuffled corners:\n", shuffled)
print("ordered TL TR BR BL:\n", geometry.order_corners(shuffled))

# what output size preserves the sheet's proportions? compare the fixed
# a4 answer with the one estimated from the quad's edge lengths
print("\ntarget_rect fixed a4 at 720 px:",
      geometry.target_rect(paper, "fixed", 720, 210.0 / 297.0))
print("target_rect estimated from edges:",
      geometry.target_rect(paper, "estimated", 720, None))
