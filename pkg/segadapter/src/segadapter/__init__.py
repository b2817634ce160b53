"""segadapter: mask streams for paper rectification pipelines.

Two jobs: run a segmentation backend (a TorchScript model, or a
deterministic classical stub) over frame directories and emit P5 masks
the rectifier consumes as-is, and convert hand-labeled corner files
into training masks. Everything speaks files; nothing here imports the
rectifier.
"""

from .errors import (InvalidUsage, MalformedLabel, ModelLoadError,
                     PnmIoError, SegAdapterError)
from .infer import InferSummary, infer_masks, load_model
from .labels import LabelRecord, labels_to_masks, parse_labels
from .quadfill import fill_convex, validate_label_quad
from .stub import stub_segment

__version__ = "0.1.0"

__all__ = [
    "InferSummary", "InvalidUsage", "LabelRecord", "MalformedLabel",
    "ModelLoadError", "PnmIoError", "SegAdapterError",
    "fill_convex", "infer_masks", "labels_to_masks", "load_model",
    "parse_labels", "stub_segment", "validate_label_quad", "__version__",
]
