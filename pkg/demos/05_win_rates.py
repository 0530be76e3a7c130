#!/usr/bin/env python3
"""
Asks the per-pixel question behind the convergence gap: at how many pixels
does the full 256-entry level set actually beat the two binary values?
Phase pixels almost always gain from finer control; amplitude pixels almost
never do, because their best value usually saturates at an endpoint both
sets share.
"""

from holoquant import build_target, random_phase, symmetrize_180, synthetic_scene, win_rate_details

SIZE = 64
PIXELS = 500
SEED = 1

mags = symmetrize_180(synthetic_scene(SIZE, SIZE, seed=2026))
target = build_target(mags, random_phase(SIZE, SIZE, seed=SEED))

for kind in ("phase", "amplitude"):
    res = win_rate_details(target, kind, multilevel=256, pixel_count=PIXELS, seed=SEED)
    print(
        f"{kind}-256 vs {kind}-2 over {PIXELS} pixels: "
        f"wins at {res.fraction:.1%}, strictly worse at {res.worse_count} "
        f"(a superset can never lose, only tie)"
    )
