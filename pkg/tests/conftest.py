"""Shared oracles and target builders.

The transform oracle below is a direct double-sum evaluation, independent of
the FFT-based implementation; it is the ground truth every fast path is
checked against.
"""

import numpy as np
import pytest

from holoquant import ComplexField, build_target, random_phase, symmetrize_180, synthetic_scene


def naive_dft(values: np.ndarray) -> np.ndarray:
    """O(N^2) direct evaluation of the unitary forward transform."""
    ny, nx = values.shape
    out = np.zeros((ny, nx), dtype=np.complex128)
    for v in range(ny):
        for u in range(nx):
            acc = 0.0 + 0.0j
            for y in range(ny):
                for x in range(nx):
                    acc += values[y, x] * np.exp(-2j * np.pi * (u * x / nx + v * y / ny))
            out[v, u] = acc
    return out / np.sqrt(nx * ny)


def random_field(rng: np.random.Generator, height: int, width: int) -> ComplexField:
    return ComplexField(
        rng.standard_normal((height, width)) + 1j * rng.standard_normal((height, width))
    )


def natural_target(size: int, image_seed: int = 2026, phase_seed: int = 7) -> ComplexField:
    """Symmetrized synthetic natural-statistics image with random phases."""
    mags = symmetrize_180(synthetic_scene(size, size, seed=image_seed))
    return build_target(mags, random_phase(size, size, seed=phase_seed))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
