# What does each cleanup stage actually remove?
#
# Runs the ink chain one stage at a time on a rectified frame and counts
# surviving pixels, so you can see where specks, palm shadows, and
# oversized junk drop out.

import numpy as np

from papertab import bench, cleanup

rng = np.random.default_rng(21)

# start from clean synthetic writing, then sabotage it the way a real
# warped webcam frame would be sabotaged
frame = bench.make_writing(rng, 509, 720)
noise = rng.normal(0, 6, frame.shape)
frame = np.clip(frame.astype(np.float64) + noise, 0, 255).astype(np.uint8)
frame[650:, :180] = 120          # palm shadow entering from the corner
speckle = rng.random(frame.shape) < 0.001
frame[speckle] = 30              # salt-and-pepper sensor junk

params = cleanup.default_params(509, 720)
print(f"params: window={params.window} offset_c={params.offset_c} "
      f"radius={params.morph_radius} min_area={params.min_area} "
      f"max_area_frac={params.max_area_frac}")

ink = cleanup.adaptive_threshold(frame, params.window, params.offset_c)
print(f"adaptive threshold : {ink.sum():7d} px marked as ink")

opened = cleanup.dilate(cleanup.erode(ink, params.morph_radius),
                        params.morph_radius)
print(f"opening            : {opened.sum():7d} px (specks eroded away)")

labels, stats = cleanup.label_components(opened, connectivity=8)
print(f"labeling           : {len(stats):7d} components")
by_area = sorted((s.area for s in stats), reverse=True)
print(f"                     largest areas: {by_area[:5]}")

kept = cleanup.filter_components(labels, stats, params.min_area,
                                 params.max_area_frac)
survivors = [s for s in stats
             if params.min_area <= s.area <= params.max_area_frac * labels.size
             and not (s.touches_border and s.area > 25 * params.min_area)]
print(f"component filter   : {kept.sum():7d} px in {len(survivors)} components")

dropped = len(stats) - len(survivors)
print(f"\ndropped {dropped}: the palm blob touches the border and exceeds "
      f"25x min_area, so the size veto removes it")
