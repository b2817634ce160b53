import numpy as np
import pytest

from papertab import raster, segmentation
from papertab.errors import DimensionMismatch, NoPaperFound

QUAD = np.array([[40.0, 30.0], [210.0, 45.0], [200.0, 150.0], [35.0, 140.0]])


def quad_scene(shape=(180, 256), bg=60, fg=230, quad=QUAD):
    fill = raster.fill_convex_polygon(quad, shape)
    frame = np.full(shape, bg, dtype=np.uint8)
    frame[fill] = fg
    return frame, fill


def ellipse(shape, cx, cy, rx, ry):
    yy, xx = np.mgrid[0:shape[0], 0:shape[1]]
    return ((xx - cx) / rx) ** 2 + ((yy - cy) / ry) ** 2 <= 1.0


class TestOtsu:
    def test_equal_bimodal_picks_lower_mode(self):
        g = np.empty((10, 10), dtype=np.uint8)
        g.ravel()[:50] = 50
        g.ravel()[50:] = 200
        # variance is flat for t in [50, 199]; ties resolve downward
        assert segmentation.otsu_threshold(g) == 50

    def test_unbalanced_bimodal(self):
        g = np.full((20, 20), 30, dtype=np.uint8)
        g[:5, :] = 130
        assert segmentation.otsu_threshold(g) == 30

    def test_adjacent_levels(self):
        g = np.array([[100, 101], [100, 101]], dtype=np.uint8)
        assert segmentation.otsu_threshold(g) == 100

    def test_threshold_separates_modes(self):
        rng = np.random.default_rng(50)
        for _ in range(20):
            lo = int(rng.integers(10, 80))
            hi = int(rng.integers(150, 240))
            g = np.where(rng.random((32, 32)) < 0.5, lo, hi).astype(np.uint8)
            t = segmentation.otsu_threshold(g)
            assert lo <= t < hi

    def test_shift_property(self):
        rng = np.random.default_rng(51)
        base = np.where(rng.random((24, 24)) < 0.6, 40, 180).astype(np.uint8)
        t = segmentation.otsu_threshold(base)
        for c in (1, 7, 20):
            assert segmentation.otsu_threshold(base + np.uint8(c)) == t + c

    def test_constant_frame_rejected(self):
        with pytest.raises(NoPaperFound):
            segmentation.otsu_threshold(np.full((8, 8), 99, dtype=np.uint8))


class TestConvexHullFill:
    def test_convex_shapes_are_fixpoints(self):
        rng = np.random.default_rng(52)
        rect = np.zeros((40, 40), dtype=bool)
        rect[5:30, 8:33] = True
        assert np.array_equal(segmentation.fill_convex_hull(rect), rect)
        for _ in range(10):
            pts = rng.integers(3, 60, (4, 2)).astype(np.float64)
            from papertab import geometry
            try:
                q = geometry.order_corners(pts)
                geometry.validate_quad(q)
            except Exception:
                continue
            fill = raster.fill_convex_polygon(q, (64, 64))
            assert np.array_equal(segmentation.fill_convex_hull(fill), fill)

    def test_interior_hole_restored_exactly(self):
        _, fill = quad_scene()
        holed = fill & ~ellipse(fill.shape, 120, 90, 25, 18)
        assert np.array_equal(segmentation.fill_convex_hull(holed), fill)

    def test_edge_bite_restored(self):
        _, fill = quad_scene()
        # bite centered on the top edge, well away from both corners
        bitten = fill & ~ellipse(fill.shape, 125, 37, 30, 14)
        assert bitten.sum() < fill.sum()
        restored = segmentation.fill_convex_hull(bitten)
        assert (restored & ~bitten).sum() > 0
        assert restored[bitten].all()  # hull never loses component pixels
        inter = (restored & fill).sum()
        union = (restored | fill).sum()
        assert inter / union >= 0.99

    def test_degenerate_inputs(self):
        dot = np.zeros((9, 9), dtype=bool)
        dot[4, 4] = True
        assert np.array_equal(segmentation.fill_convex_hull(dot), dot)
        seg = np.zeros((9, 9), dtype=bool)
        seg[2, 1:8] = True
        assert np.array_equal(segmentation.fill_convex_hull(seg), seg)


class TestClassicalSegment:
    def test_clean_quad_is_recovered_exactly(self):
        frame, fill = quad_scene()
        assert np.array_equal(segmentation.classical_segment(frame), fill)

    def test_hand_bite_recovered(self):
        frame, fill = quad_scene()
        frame[ellipse(frame.shape, 125, 140, 35, 25)] = 70  # dark bite, bottom edge
        got = segmentation.classical_segment(frame)
        inter = (got & fill).sum()
        union = (got | fill).sum()
        assert inter / union >= 0.95

    def test_ignores_secondary_bright_specks(self):
        frame, fill = quad_scene()
        frame[5:9, 5:9] = 250
        got = segmentation.classical_segment(frame)
        assert not got[5:9, 5:9].any()
        assert np.array_equal(got, fill)

    def test_shift_invariance(self):
        frame, _ = quad_scene(bg=60, fg=230)
        a = segmentation.classical_segment(frame)
        b = segmentation.classical_segment(frame + np.uint8(15))
        assert np.array_equal(a, b)

    def test_output_rows_are_intervals(self):
        frame, _ = quad_scene()
        frame[ellipse(frame.shape, 60, 35, 20, 10)] = 70
        got = segmentation.classical_segment(frame)
        assert np.array_equal(segmentation.fill_convex_hull(got), got)
        for row in got:
            xs = np.nonzero(row)[0]
            if xs.size:
                assert xs[-1] - xs[0] + 1 == xs.size

    def test_uniform_frame_rejected(self):
        with pytest.raises(NoPaperFound):
            segmentation.classical_segment(np.full((60, 80), 128, dtype=np.uint8))

    def test_tiny_bright_region_rejected(self):
        frame = np.full((100, 100), 50, dtype=np.uint8)
        frame[10:13, 10:13] = 240  # 9 px, under the 1% floor
        with pytest.raises(NoPaperFound):
            segmentation.classical_segment(frame)

    def test_one_percent_floor_boundary(self):
        frame = np.full((100, 100), 50, dtype=np.uint8)
        frame[10:20, 10:20] = 240  # exactly 1% passes
        got = segmentation.classical_segment(frame)
        assert got.sum() == 100


class TestExternalMask:
    def test_binarize_at_128(self):
        m = np.array([[0, 127], [128, 255]], dtype=np.uint8)
        got = segmentation.binarize_external_mask(m)
        assert got.tolist() == [[False, False], [True, True]]

    def test_shape_check(self):
        m = np.zeros((4, 6), dtype=np.uint8)
        segmentation.binarize_external_mask(m, expect_shape=(4, 6))
        with pytest.raises(DimensionMismatch):
            segmentation.binarize_external_mask(m, expect_shape=(6, 4))

    def test_rejects_non_gray(self):
        with pytest.raises(DimensionMismatch):
            segmentation.binarize_external_mask(np.zeros((2, 2), dtype=bool))
