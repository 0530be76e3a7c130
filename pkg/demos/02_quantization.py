#!/usr/bin/env python3
"""
Shows what a modulation scheme's level set looks like and how much replay
error quantizing a continuous hologram to fewer and fewer levels costs,
for phase-only and amplitude-only devices.
"""

import numpy as np

from holoquant import (
    ModulationScheme,
    build_target,
    dft,
    levels,
    mse_phase_insensitive,
    quantize_field,
    random_phase,
    scale_target_for_scheme,
    symmetrize_180,
    synthetic_scene,
    unquantized_hologram,
)

SIZE = 32
LEVEL_COUNTS = [256, 16, 8, 4, 2]

mags = symmetrize_180(synthetic_scene(SIZE, SIZE, seed=2026))
target = build_target(mags, random_phase(SIZE, SIZE, seed=1))

for count in (2, 4):
    print(f"phase:{count} levels: {np.round(levels(ModulationScheme.phase(count)), 3)}")
print(f"amplitude:5 levels: {np.round(levels(ModulationScheme.amplitude(5)), 3)}")
print()

# Quantize the continuous starting hologram at each depth and score the
# replay it produces. Coarser devices pay more before any search happens.
for kind in ("phase", "amplitude"):
    scaled = scale_target_for_scheme(target, kind)
    continuous = unquantized_hologram(scaled, kind)
    base = mse_phase_insensitive(scaled, dft(continuous))
    print(f"{kind}: continuous-hologram error {base:.6f}")
    for count in LEVEL_COUNTS:
        quantized = quantize_field(continuous, ModulationScheme(kind, count))
        err = mse_phase_insensitive(scaled, dft(quantized))
        print(f"  {count:>3} levels: error {err:.6f} ({err / base:6.2f}x continuous)")
    print()

print("for amplitude devices the continuous start is itself weak (it emits far")
print("less power than the target asks for), so coarse quantization can even")
print("score below it. the search, not the starting guess, does the real work.")
