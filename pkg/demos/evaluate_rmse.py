"""Score the pipeline against its own scene generator.

Renders a batch of synthetic camera frames (half of them with an
occluder biting into a paper edge), rectifies each with the classical
pipeline, and compares the result to the true content with the
binarized-RMSE metric. Prints the same TSV layout `papertab bench eval`
writes, so the numbers line up with the CLI harness.
"""

import numpy as np

from papertab import PipelineConfig, bench, process_frame
from papertab.maskquad import SmootherState

N_SCENES = 12
FRAME_W, FRAME_H = 1280, 720

config = PipelineConfig(seg="classical", paper="a4", output_height=720,
                        output="ink")

pairs = []
rows = []
for i in range(N_SCENES):
    rng = np.random.default_rng(400 + i)
    content = bench.make_writing(rng, 509, 720)
    quad = bench.random_paper_quad(rng, FRAME_W, FRAME_H)
    occluders = ()
    if i % 2 == 1:
        occluders = (bench.edge_bite_occluder(rng, quad),)
    spec = bench.SceneSpec(content=content, paper_quad=quad,
                           occluders=occluders, noise_sigma=1.5, seed=400 + i)
    scene = bench.render_scene(spec, (FRAME_W, FRAME_H))

    # fresh smoother per scene: these are independent stills, not a stream
    result = process_frame(scene.frame, config, SmootherState())
    pairs.append((content, result.frame))
    rows.append((f"scene_{i:02d}", "bitten" if occluders else "clean"))

report = bench.batch_eval(pairs)

for (name, kind), value in zip(rows, report.values):
    print(f"{name}\t{value:.6f}\t{kind}")
print(f"mean\t{report.mean:.6f}")
print(f"count\t{report.count}")

# the occluded half should score no better than the clean half
clean = [v for (n, k), v in zip(rows, report.values) if k == "clean"]
bitten = [v for (n, k), v in zip(rows, report.values) if k == "bitten"]
print(f"\nclean mean  {sum(clean) / len(clean):.6f}")
print(f"bitten mean {sum(bitten) / len(bitten):.6f}")
