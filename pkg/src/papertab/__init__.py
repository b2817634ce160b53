"""papertab: webcam shots of paper in, top-down whiteboard frames out.

The stages live in focused modules:

* geometry: quads, homographies, output sizing, corner sidecar lines
* raster: frame conventions, luma, bilinear warp/resize, polygon fill
* pnm: binary PGM/PPM streams (the wire format)
* segmentation: finding the paper (classical or external masks)
* maskquad: mask to corners, with temporal smoothing
* cleanup: adaptive threshold, morphology, component filtering
* pipeline: per-frame wiring, stream processing, configuration
* bench: synthetic scene oracle and the RMSE harness
"""

from .errors import (DegenerateQuad, DimensionMismatch, EmptyBatch, EmptyMask,
                     InvalidConfig, InvalidSpec, NoPaperFound, PaperTabError,
                     PnmError, PointAtInfinity, QuadFitFailed, SingularSystem)
from .pipeline import FrameResult, PipelineConfig, StreamSummary, process_frame, run_stream

__version__ = "0.1.0"

__all__ = [
    "DegenerateQuad", "DimensionMismatch", "EmptyBatch", "EmptyMask",
    "InvalidConfig", "InvalidSpec", "NoPaperFound", "PaperTabError",
    "PnmError", "PointAtInfinity", "QuadFitFailed", "SingularSystem",
    "FrameResult", "PipelineConfig", "StreamSummary",
    "process_frame", "run_stream", "__version__",
]
