# Render a synthetic desk scene, push it through the full pipeline, and
# save every intermediate you would want to look at.
#
#   python3 demos/rectify_scene.py
#
# Files land in demos/out/.

import os

import numpy as np

from papertab import bench, pipeline, pnm
from papertab.maskquad import SmootherState

out_dir = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(out_dir, exist_ok=True)

rng = np.random.default_rng(7)

# fake handwriting on an a4-proportioned canvas
content = bench.make_writing(rng, 509, 720)

# a paper quad somewhere oblique in a 720p camera frame, plus a hand
# biting into one edge
quad = bench.random_paper_quad(rng, 1280, 720)
hand = bench.hand_occluder(rng, 1280, 720, quad)
spec = bench.SceneSpec(content=content, paper_quad=quad,
                       occluders=(hand,), noise_sigma=2.0, seed=7)
scene = bench.render_scene(spec, (1280, 720))
print("scene rendered; corner occluded:", scene.corner_occluded)

pnm.write_pnm_file(os.path.join(out_dir, "camera.pgm"), scene.frame)
pnm.write_pnm_file(os.path.join(out_dir, "truth.pgm"), content)

cfg = pipeline.PipelineConfig(seg="classical", paper="a4", output_height=720)

# ink mode: the whiteboard-style binary frame
result = pipeline.process_frame(scene.frame, cfg, SmootherState())
pnm.write_pnm_file(os.path.join(out_dir, "board.pgm"), result.frame)

# gray mode: the same warp without binarization, for eyeballing
cfg_gray = pipeline.PipelineConfig(seg="classical", paper="a4",
                                   output_height=720, output="gray")
gray = pipeline.process_frame(scene.frame, cfg_gray, SmootherState())
pnm.write_pnm_file(os.path.join(out_dir, "board_gray.pgm"), gray.frame)

err = np.hypot(*(result.quad - scene.gt_quad).T)
print("corner error per corner (px):", np.array_str(err, precision=3))
print("confident:", result.confident)
print("rmse vs truth:", round(bench.rmse(content, result.frame), 4))
for stage, ms in result.timings_ms.items():
    print(f"  {stage:8s} {ms:6.1f} ms")
print("wrote camera.pgm / truth.pgm / board.pgm / board_gray.pgm to", out_dir)
