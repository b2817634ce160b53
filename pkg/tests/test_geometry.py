import numpy as np
import pytest

from papertab import geometry
from papertab.errors import DegenerateQuad, InvalidConfig, PointAtInfinity, SingularSystem

import oracles


def random_valid_quad(rng, scale=100.0):
    """Random strictly convex quad, validated by the independent oracle."""
    while True:
        pts = rng.uniform(0.0, scale, (4, 2))
        try:
            ordered = oracles.angle_sort_corners(pts)
        except ValueError:
            continue
        return np.array(ordered)


class TestQuadArea:
    def test_clockwise_square_positive(self):
        q = [(1, 1), (9, 1), (9, 9), (1, 9)]
        assert geometry.quad_area(q) == 64.0

    def test_counterclockwise_negative(self):
        q = [(1, 1), (1, 9), (9, 9), (9, 1)]
        assert geometry.quad_area(q) == -64.0


class TestValidateQuad:
    def test_valid_square_passes(self):
        q = geometry.validate_quad([(0, 0), (10, 0), (10, 10), (0, 10)])
        assert q.shape == (4, 2)

    def test_tiny_area_rejected(self):
        with pytest.raises(DegenerateQuad):
            geometry.validate_quad([(0, 0), (0.5, 0), (0.5, 0.5), (0, 0.5)])

    def test_nonconvex_rejected(self):
        with pytest.raises(DegenerateQuad):
            geometry.validate_quad([(0, 0), (10, 0), (2, 2), (0, 10)])

    def test_nan_rejected(self):
        with pytest.raises(DegenerateQuad):
            geometry.validate_quad([(0, 0), (10, 0), (np.nan, 10), (0, 10)])

    def test_wrong_shape_rejected(self):
        with pytest.raises(DegenerateQuad):
            geometry.validate_quad([(0, 0), (10, 0), (10, 10)])


class TestOrderCorners:
    def test_axis_aligned_square(self):
        got = geometry.order_corners([(9, 9), (1, 1), (9, 1), (1, 9)])
        assert np.array_equal(got, [(1, 1), (9, 1), (9, 9), (1, 9)])

    def test_diamond_tiebreak(self):
        # (5,0) and (0,5) tie on x+y; the smaller y wins the TL slot
        got = geometry.order_corners([(10, 5), (5, 10), (0, 5), (5, 0)])
        assert np.array_equal(got, [(5, 0), (10, 5), (5, 10), (0, 5)])

    def test_collinear_triple_raises(self):
        with pytest.raises(DegenerateQuad):
            geometry.order_corners([(0, 0), (1, 1), (2, 2), (0, 5)])

    def test_idempotent(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            quad = random_valid_quad(rng)
            once = geometry.order_corners(quad)
            twice = geometry.order_corners(once)
            assert np.array_equal(once, twice)

    def test_matches_angle_sort_oracle(self):
        rng = np.random.default_rng(12)
        for _ in range(500):
            quad = random_valid_quad(rng)
            shuffled = quad[rng.permutation(4)]
            got = geometry.order_corners(shuffled)
            expect = np.array(oracles.angle_sort_corners(shuffled))
            assert np.array_equal(got, expect)


UNIT_SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


class TestSolveHomography:
    def test_identity(self):
        h = geometry.solve_homography(UNIT_SQUARE, UNIT_SQUARE)
        assert np.allclose(h, np.eye(3), atol=1e-9)

    def test_pure_scaling(self):
        src = [(0, 0), (4, 0), (4, 4), (0, 4)]
        dst = [(0, 0), (2, 0), (2, 2), (0, 2)]
        h = geometry.solve_homography(src, dst)
        assert np.allclose(h, [[0.5, 0, 0], [0, 0.5, 0], [0, 0, 1]], atol=1e-9)

    def test_trapezoid_vs_elimination_oracle(self):
        dst = [(0, 0), (1, 0), (2, 1), (-1, 1)]
        h = geometry.solve_homography(UNIT_SQUARE, dst)
        expect = np.array(oracles.solve_homography_ge(UNIT_SQUARE, dst))
        assert np.allclose(h, expect, rtol=1e-9, atol=1e-12)
        for s, d in zip(UNIT_SQUARE, dst):
            got = geometry.apply_homography(h, s)
            assert np.allclose(got, d, atol=1e-9)

    def test_random_pairs_vs_oracle(self):
        rng = np.random.default_rng(13)
        for _ in range(200):
            src = random_valid_quad(rng)
            dst = random_valid_quad(rng)
            h = geometry.solve_homography(src, dst)
            expect = np.array(oracles.solve_homography_ge(src, dst))
            assert np.allclose(h, expect, rtol=1e-8, atol=1e-9)

    def test_scale_canonical_and_repeatable(self):
        rng = np.random.default_rng(14)
        src = random_valid_quad(rng)
        dst = random_valid_quad(rng)
        h1 = geometry.solve_homography(src, dst)
        h2 = geometry.solve_homography(src, dst)
        assert h1[2, 2] == 1.0
        assert np.array_equal(h1, h2)

    def test_degenerate_raises(self):
        with pytest.raises((SingularSystem, DegenerateQuad)):
            geometry.solve_homography(UNIT_SQUARE,
                                      [(0, 0), (0, 0), (1, 1), (0, 1)])


class TestApplyHomography:
    def test_identity(self):
        assert np.allclose(geometry.apply_homography(np.eye(3), (3, 7)), (3, 7))

    def test_scaling(self):
        h = [[0.5, 0, 0], [0, 0.5, 0], [0, 0, 1]]
        assert np.allclose(geometry.apply_homography(h, (4, 4)), (2, 2))

    def test_weight_division(self):
        h = [[1, 0, 0], [0, 1, 0], [1, 0, 1]]
        got = geometry.apply_homography(h, (1, 1))
        assert np.allclose(got, (0.5, 0.5))

    def test_point_at_infinity(self):
        h = [[1, 0, 0], [0, 1, 0], [1, 0, -1]]
        with pytest.raises(PointAtInfinity):
            geometry.apply_homography(h, (1, 5))


class TestInvertHomography:
    def test_identity(self):
        assert np.allclose(geometry.invert_homography(np.eye(3)), np.eye(3))

    def test_diagonal(self):
        got = geometry.invert_homography(np.diag([0.5, 0.5, 1.0]))
        assert np.allclose(got, np.diag([2.0, 2.0, 1.0]), atol=1e-12)

    def test_singular_raises(self):
        with pytest.raises(SingularSystem):
            geometry.invert_homography([[1, 0, 0], [0, 1, 0], [0, 0, 0]])

    def test_vs_adjugate_oracle_and_roundtrip(self):
        rng = np.random.default_rng(15)
        for _ in range(50):
            h = geometry.solve_homography(random_valid_quad(rng),
                                          random_valid_quad(rng))
            inv = geometry.invert_homography(h)
            expect = np.array(oracles.invert_3x3_adjugate(h.tolist()))
            assert np.allclose(inv, expect, rtol=1e-8, atol=1e-9)
            assert np.allclose(h @ inv / (h @ inv)[2, 2], np.eye(3), atol=1e-9)
            for _ in range(2):
                p = rng.uniform(0, 100, 2)
                fwd = geometry.apply_homography(h, p)
                back = geometry.apply_homography(inv, fwd)
                assert np.allclose(back, p, atol=1e-6)

    def test_composition_consistency(self):
        rng = np.random.default_rng(16)
        h1 = geometry.solve_homography(random_valid_quad(rng), random_valid_quad(rng))
        h2 = geometry.solve_homography(random_valid_quad(rng), random_valid_quad(rng))
        for _ in range(20):
            p = rng.uniform(0, 100, 2)
            chained = geometry.apply_homography(h2, geometry.apply_homography(h1, p))
            product = geometry.apply_homography(h2 @ h1, p)
            assert np.allclose(chained, product, atol=1e-6)


class TestRectCorners:
    def test_pixel_center_convention(self):
        got = geometry.rect_corners(640, 480)
        assert np.array_equal(got, [(0, 0), (639, 0), (639, 479), (0, 479)])


class TestTargetRect:
    def test_a4_fixed(self):
        assert geometry.target_rect(None, "fixed", 1188, 210 / 297) == (840, 1188)

    def test_estimated_axis_aligned(self):
        quad = [(0, 0), (400, 0), (400, 300), (0, 300)]
        assert geometry.target_rect(quad, "estimated", 720) == (400, 300)

    def test_estimated_trapezoid(self):
        # bottom edge |BL-BR| = 140; both slanted sides are sqrt(20^2 + 80^2)
        # = 82.46..., so the height rounds to 82
        quad = [(0, 0), (100, 0), (120, 80), (-20, 80)]
        assert geometry.target_rect(quad, "estimated", 720) == (140, 82)

    def test_output_height_floor(self):
        with pytest.raises(InvalidConfig):
            geometry.target_rect(None, "fixed", 15, 1.0)

    def test_aspect_range(self):
        for aspect in (0.05, 10.0, None):
            with pytest.raises(InvalidConfig):
                geometry.target_rect(None, "fixed", 720, aspect)

    def test_unknown_mode(self):
        with pytest.raises(InvalidConfig):
            geometry.target_rect(None, "letterbox", 720, 1.0)


class TestCornerLines:
    def test_roundtrip(self):
        quad = np.array([(10.5, 20.25), (600, 30), (610.125, 400), (12, 390)])
        line = geometry.format_corner_line(7, quad)
        idx, parsed = geometry.parse_corner_line(line)
        assert idx == 7
        assert np.allclose(parsed, quad, atol=1e-6)
        assert len(line.split()) == 9

    def test_parse_rejects_short_lines(self):
        with pytest.raises(ValueError):
            geometry.parse_corner_line("1 2 3")
