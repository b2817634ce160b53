"""Exception types raised across the package."""


class PaperTabError(Exception):
    """Base class for all papertab errors."""


class DegenerateQuad(PaperTabError):
    """Four points do not form a strictly convex quadrilateral of usable area."""


class SingularSystem(PaperTabError):
    """A linear system or matrix is rank-deficient beyond recovery."""


class PointAtInfinity(PaperTabError):
    """A projective mapping sent a point to (or near) the line at infinity."""


class InvalidConfig(PaperTabError):
    """A parameter is outside its documented range."""


class EmptyMask(PaperTabError):
    """A mask operation needs at least one foreground pixel."""


class QuadFitFailed(PaperTabError):
    """A contour could not be reduced to a usable four-corner polygon."""


class NoPaperFound(PaperTabError):
    """The segmenter found no plausible paper region in the frame."""


class DimensionMismatch(PaperTabError):
    """Two rasters that must share dimensions do not."""


class InvalidSpec(PaperTabError):
    """A synthetic scene description violates its constraints."""


class EmptyBatch(PaperTabError):
    """An evaluation batch contains no pairs."""


class PnmError(PaperTabError):
    """Malformed or truncated PNM data."""
