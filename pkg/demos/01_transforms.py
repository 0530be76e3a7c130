#!/usr/bin/env python3
"""
Walks through the field type and the unitary transform pair: round trips,
power conservation, and the rank-1 single-pixel replay update that makes
per-pixel search cheap.
"""

import time

import numpy as np

from holoquant import ComplexField, apply_pixel_delta, dft, idft, total_power

SIZE = 256
SEED = 1
REPS = 20

rng = np.random.default_rng(SEED)
field = ComplexField(rng.standard_normal((SIZE, SIZE)) + 1j * rng.standard_normal((SIZE, SIZE)))

# Forward then inverse returns the original field.
replay = dft(field)
back = idft(replay)
print(f"round-trip max deviation: {np.abs(back.values - field.values).max():.3e}")

# The pair is unitary, so total power is identical on both sides.
print(f"hologram power: {total_power(field):.6f}")
print(f"replay power:   {total_power(replay):.6f}")

# Changing one hologram pixel shifts the whole replay by a scaled phase
# ramp. apply_pixel_delta adds that ramp in O(N) instead of re-transforming.
x, y, delta = 5, 12, 0.8 - 0.3j


def best_of(fn):
    times = []
    for _ in range(REPS):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


modified = np.array(field.values)
modified[y, x] += delta

fast = apply_pixel_delta(replay, x, y, delta)
slow = dft(ComplexField(modified))
print(f"rank-1 update vs retransform: max deviation {np.abs(fast.values - slow.values).max():.3e}")

t_fast = best_of(lambda: apply_pixel_delta(replay, x, y, delta))
t_slow = best_of(lambda: dft(ComplexField(modified)))
print(f"rank-1 {t_fast * 1e6:.0f} us, full retransform {t_slow * 1e6:.0f} us (best of {REPS})")
