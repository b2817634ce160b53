"""Per-frame wiring and stream orchestration.

Stage order per frame: handedness flip for segmentation, mask (built-in
or external), corner fit, corner remap back to input coordinates,
temporal smoothing, rectifying warp of the original frame, ink cleanup.
In left-handed mode the final frame is mirrored so that a mirrored scene
processed left-handed reproduces the unmirrored scene's output exactly.

Failure policy: once any frame has produced corners, later frames that
cannot (empty mask, bad fit, low confidence) reuse the previous corners
rather than flashing blank output. Only a stream that has never seen a
quad surfaces the error to the caller.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import geometry
from .cleanup import (CleanupParams, adaptive_threshold, default_params,
                      dilate, erode, filter_components, label_components)
from .errors import (EmptyMask, InvalidConfig, NoPaperFound, PnmError,
                     QuadFitFailed)
from .maskquad import SmootherState, quad_from_mask, smooth_corners
from .raster import ensure_color, flip_horizontal, to_luma, warp_bird_eye
from .segmentation import binarize_external_mask, classical_segment

PAPER_ASPECTS = {"a4": 210.0 / 297.0, "letter": 8.5 / 11.0}


@dataclass
class PipelineConfig:
    left_handed: bool = False
    seg: str = "classical"        # classical | external
    paper: str = "a4"             # a4 | letter | estimate
    output_height: int = 720
    output: str = "ink"           # ink | gray
    alpha: float = 0.6
    jump_threshold: float = 0.05
    window: int | None = None     # None: scale with the output raster
    offset_c: int = 10
    min_area: int | None = None   # None: scale with the output raster
    max_area_frac: float = 0.05
    morph_radius: int = 1
    emit_corners: bool = False

    def __post_init__(self):
        if self.seg not in ("classical", "external"):
            raise InvalidConfig(f"seg must be classical or external, got {self.seg!r}")
        if self.paper not in ("a4", "letter", "estimate"):
            raise InvalidConfig(f"paper must be a4, letter or estimate, got {self.paper!r}")
        if self.output not in ("ink", "gray"):
            raise InvalidConfig(f"output must be ink or gray, got {self.output!r}")
        if self.output_height < 16:
            raise InvalidConfig(f"output_height must be >= 16, got {self.output_height}")
        SmootherState(alpha=self.alpha, jump_threshold=self.jump_threshold)
        self.cleanup_for(*self.nominal_dims())  # surfaces bad overrides early

    def nominal_dims(self):
        """Output dims for fixed-aspect modes; the a4 placeholder covers
        estimate mode before any quad exists (blank filler frames only)."""
        aspect = PAPER_ASPECTS.get(self.paper, PAPER_ASPECTS["a4"])
        return geometry.target_rect(None, "fixed", self.output_height, aspect)

    def cleanup_for(self, out_width: int, out_height: int) -> CleanupParams:
        base = default_params(out_width, out_height)
        return CleanupParams(
            window=self.window if self.window is not None else base.window,
            offset_c=self.offset_c,
            morph_radius=self.morph_radius,
            min_area=self.min_area if self.min_area is not None else base.min_area,
            max_area_frac=self.max_area_frac,
        )


@dataclass
class FrameResult:
    frame: np.ndarray
    quad: np.ndarray          # input-frame coordinates, TL TR BR BL
    confident: bool
    timings_ms: dict


def _as_color(frame) -> np.ndarray:
    f = np.asarray(frame)
    if f.ndim == 2:
        f = np.repeat(f[:, :, None], 3, axis=2)
    return ensure_color(f)


def process_frame(frame, config: PipelineConfig, smoother: SmootherState,
                  external_mask=None) -> FrameResult:
    """Run one frame through the full stage chain.

    Raises NoPaperFound/QuadFitFailed only while the smoother has no
    previous quad to fall back on; afterwards failed frames are served
    from the held corners and flagged not-confident.
    """
    f = _as_color(frame)
    h, w = f.shape[:2]
    timings = {}

    t0 = time.perf_counter()
    seg_frame = flip_horizontal(f) if config.left_handed else f
    luma_seg = to_luma(seg_frame)
    mask = None
    seg_error = None
    if config.seg == "external":
        if external_mask is None:
            raise InvalidConfig("external segmentation configured but no mask supplied")
        mask = binarize_external_mask(external_mask, expect_shape=(h, w))
        if config.left_handed:
            mask = flip_horizontal(mask)
    else:
        try:
            mask = classical_segment(luma_seg)
        except NoPaperFound as exc:
            seg_error = exc  # decided below, once a fallback quad is ruled out
    timings["segment"] = (time.perf_counter() - t0) * 1000.0

    t0 = time.perf_counter()
    confident = True
    try:
        if seg_error is not None:
            raise seg_error
        quad, confident = quad_from_mask(mask)
        if config.left_handed:
            quad = quad.copy()
            quad[:, 0] = (w - 1) - quad[:, 0]
            quad = geometry.order_corners(quad)
        if confident:
            quad = smooth_corners(smoother, quad, math.hypot(w, h))
        elif smoother.prev is not None:
            quad = smoother.prev.copy()  # keep previous corners
        # not confident with no prior: use the fit as-is, do not seed state
    except (NoPaperFound, QuadFitFailed, EmptyMask):
        if smoother.prev is None:
            raise
        quad = smoother.prev.copy()
        confident = False
    timings["corners"] = (time.perf_counter() - t0) * 1000.0

    t0 = time.perf_counter()
    mode = "estimated" if config.paper == "estimate" else "fixed"
    aspect = PAPER_ASPECTS.get(config.paper)
    out_w, out_h = geometry.target_rect(quad, mode, config.output_height, aspect)
    hom = geometry.solve_homography(geometry.rect_corners(out_w, out_h), quad)
    luma_input = flip_horizontal(luma_seg) if config.left_handed else luma_seg
    warped = warp_bird_eye(luma_input, hom, out_w, out_h)
    timings["warp"] = (time.perf_counter() - t0) * 1000.0

    t0 = time.perf_counter()
    if config.output == "ink":
        params = config.cleanup_for(out_w, out_h)
        ink = adaptive_threshold(warped, params.window, params.offset_c)
        ink = dilate(erode(ink, params.morph_radius), params.morph_radius)
        labels, stats = label_components(ink, connectivity=8)
        ink = filter_components(labels, stats, params.min_area, params.max_area_frac)
        out = np.where(ink, 0, 255).astype(np.uint8)
    else:
        out = warped
    if config.left_handed:
        out = flip_horizontal(out)
    timings["cleanup"] = (time.perf_counter() - t0) * 1000.0

    return FrameResult(frame=out, quad=quad, confident=confident, timings_ms=timings)


@dataclass
class StreamSummary:
    frames: int = 0
    quads: int = 0            # frames that had corners to work with
    failures: int = 0         # frames emitted blank (never any corners yet)
    low_confidence: int = 0
    timings_ms: dict = field(default_factory=dict)  # per-stage mean


def run_stream(frames, config: PipelineConfig, write_frame, masks=None,
               corner_sink=None) -> StreamSummary:
    """Process an ordered frame iterable through one smoother.

    frames: iterable of (h, w[, 3]) uint8 arrays.
    write_frame: called once per input frame with the output frame.
    masks: iterable of mask frames, required when config.seg == "external".
    corner_sink: text sink for sidecar lines (only frames with a quad).
    """
    if config.seg == "external" and masks is None:
        raise InvalidConfig("external segmentation configured but no mask stream")
    mask_iter = iter(masks) if masks is not None else None
    smoother = SmootherState(alpha=config.alpha, jump_threshold=config.jump_threshold)
    summary = StreamSummary()
    totals = {}
    blank_w, blank_h = config.nominal_dims()

    for index, frame in enumerate(frames):
        summary.frames += 1
        external = None
        if mask_iter is not None:
            try:
                external = next(mask_iter)
            except StopIteration:
                raise PnmError(
                    f"mask stream ended at frame {index}; one mask per frame "
                    f"is required") from None
        try:
            result = process_frame(frame, config, smoother, external_mask=external)
        except (NoPaperFound, QuadFitFailed, EmptyMask):
            summary.failures += 1
            write_frame(np.full((blank_h, blank_w), np.uint8(255)))
            continue
        summary.quads += 1
        if not result.confident:
            summary.low_confidence += 1
        for stage, ms in result.timings_ms.items():
            totals[stage] = totals.get(stage, 0.0) + ms
        write_frame(result.frame)
        if corner_sink is not None:
            corner_sink.write(geometry.format_corner_line(index, result.quad) + "\n")

    if summary.quads:
        summary.timings_ms = {k: v / summary.quads for k, v in totals.items()}
    return summary
