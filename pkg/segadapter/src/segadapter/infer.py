"""Model-driven mask emission over frame directories.

The model contract is a TorchScript module: input is one float32
(3, H, W) RGB tensor scaled to [0, 1], output a dict with "masks"
(N, H, W) floats and "scores" (N,) floats. The highest-scoring
instance becomes the mask, binarized at 0.5. No instances means an
all-zero mask (a consumer holding its previous corners will coast
through such frames).

Gray frames are replicated to three channels before inference. The
stub path skips torch entirely.
"""

import os
from dataclasses import dataclass

import numpy as np

from .errors import InvalidUsage, ModelLoadError
from .pnmio import list_frames, read_pnm_file, write_pgm_file
from .stub import stub_segment


@dataclass(frozen=True)
class InferSummary:
    count: int   # masks written, one per input frame
    empty: int   # frames with no instance found
    failed: int  # frames whose inference raised; emitted all-zero


def load_model(path):
    try:
        import torch
    except ImportError as exc:
        raise ModelLoadError("torch is not installed; use --stub or install "
                             "the model extra") from exc
    if not os.path.exists(path):
        raise ModelLoadError(f"no model file at {path}")
    try:
        model = torch.jit.load(path, map_location="cpu")
    except Exception as exc:
        raise ModelLoadError(f"{path}: {exc}") from exc
    model.eval()
    return model


def _model_mask(model, frame: np.ndarray):
    """Best-instance boolean mask, or None when the model finds nothing."""
    import torch

    rgb = frame if frame.ndim == 3 else np.repeat(frame[:, :, None], 3, axis=2)
    tensor = torch.from_numpy(rgb.astype(np.float32) / 255.0).permute(2, 0, 1)
    with torch.no_grad():
        out = model(tensor)
    masks = out["masks"]
    scores = out["scores"]
    if masks.shape[0] == 0:
        return None
    best = int(scores.argmax())
    m = masks[best].detach().cpu().numpy()
    if m.shape != frame.shape[:2]:
        raise ValueError(f"model mask is {m.shape}, frame is {frame.shape[:2]}")
    return m >= 0.5


def _mask_path(out_dir, frame_path) -> str:
    base = os.path.basename(frame_path)
    stem = base[len("frame_"):] if base.startswith("frame_") else base
    stem = stem.rsplit(".", 1)[0]
    return os.path.join(out_dir, f"mask_{stem}.pgm")


def infer_masks(frames_dir, out_dir, model_path=None, stub: bool = False) -> InferSummary:
    """Segment every frame_*.pgm|ppm under frames_dir into a P5 mask.

    Exactly one of model_path/stub selects the backend. Output names
    mirror the frame names (frame_000007.pgm becomes mask_000007.pgm),
    so the mask directory is consumable in the same sorted order.
    """
    if stub == (model_path is not None):
        raise InvalidUsage("pick exactly one of a model path or the stub")
    model = load_model(model_path) if model_path is not None else None
    paths = list_frames(frames_dir)
    os.makedirs(out_dir, exist_ok=True)

    count = empty = failed = 0
    for p in paths:
        frame = read_pnm_file(p)
        h, w = frame.shape[:2]
        if model is None:
            mask = stub_segment(frame)
            if not mask.any():
                empty += 1
        else:
            try:
                mask = _model_mask(model, frame)
            except Exception:
                mask = None
                failed += 1
            else:
                if mask is None:
                    empty += 1
            if mask is None:
                mask = np.zeros((h, w), dtype=np.bool_)
        write_pgm_file(_mask_path(out_dir, p), mask.astype(np.uint8) * 255)
        count += 1
    return InferSummary(count=count, empty=empty, failed=failed)
