import numpy as np
import pytest


@pytest.fixture(scope="session")
def warmup():
    """Compile every jitted kernel once so timed tests measure steady state."""
    from papertab import cleanup, raster

    rng = np.random.default_rng(0)
    g = rng.integers(0, 256, (32, 32), dtype=np.uint8)
    c = rng.integers(0, 256, (32, 32, 3), dtype=np.uint8)
    m = g > 128
    raster.to_luma(c)
    raster.bilinear_sample(g, 1.5, 1.5)
    raster.warp_bird_eye(g, np.eye(3), 8, 8)
    raster.warp_bird_eye(c, np.eye(3), 8, 8)
    raster.resize(g, 8, 8)
    raster.fill_convex_polygon([[1.0, 1.0], [20.0, 2.0], [19.0, 19.0], [2.0, 18.0]],
                               (32, 32))
    cleanup.adaptive_threshold(g, 5, 7)
    cleanup.erode(m, 1)
    cleanup.dilate(m, 1)
    cleanup.label_components(m)
