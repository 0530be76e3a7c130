"""Complex 2-D fields and the unitary transform pair linking the hologram
and replay planes.

The forward transform maps a hologram aperture to its far-field replay; both
directions carry the symmetric 1/sqrt(Nx*Ny) normalization so round trips and
total power are preserved exactly. Arrays are row-major: index [y, x] with y
the row (height) coordinate and x the column (width) coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class FieldShapeError(ValueError):
    """Field data is not a non-empty 2-D grid."""


@dataclass(frozen=True, eq=False)
class ComplexField:
    """Immutable 2-D grid of complex128 samples, shape (height, width)."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.complex128, order="C", copy=True)
        if arr.ndim != 2 or arr.size == 0:
            raise FieldShapeError(
                f"field data must be a non-empty 2-D grid, got shape {arr.shape}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "ComplexField":
        # Trusted constructor for freshly computed arrays: skips the copy.
        if arr.ndim != 2 or arr.size == 0:
            raise FieldShapeError(
                f"field data must be a non-empty 2-D grid, got shape {arr.shape}"
            )
        arr = np.ascontiguousarray(arr, dtype=np.complex128)
        arr.setflags(write=False)
        obj = object.__new__(cls)
        object.__setattr__(obj, "values", arr)
        return obj

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]

    def __repr__(self):
        return f"ComplexField(shape={self.values.shape})"


def dft(field: ComplexField) -> ComplexField:
    """Forward unitary transform of a hologram-plane field.

    F[v, u] = (1/sqrt(Nx*Ny)) * sum_{y,x} f[y, x] exp(-2j*pi*(u*x/Nx + v*y/Ny))
    """
    scale = 1.0 / np.sqrt(field.values.size)
    return ComplexField._wrap(np.fft.fft2(field.values) * scale)


def idft(field: ComplexField) -> ComplexField:
    """Inverse unitary transform; ``idft(dft(f))`` recovers ``f``."""
    scale = np.sqrt(field.values.size)
    return ComplexField._wrap(np.fft.ifft2(field.values) * scale)


def total_power(field: ComplexField) -> float:
    """Sum of squared magnitudes over the grid."""
    v = field.values
    return float(np.sum(v.real * v.real + v.imag * v.imag))


def axis_phase(n: int, index: int) -> np.ndarray:
    """Length-n vector exp(-2j*pi*index*k/n) for k = 0..n-1.

    One axis factor of the rank-1 replay perturbation produced by a single
    hologram pixel; kept as the single construction site so cached tables and
    one-off evaluations agree bitwise.
    """
    return np.exp((-2j * np.pi * index / n) * np.arange(n))


def pixel_phasor(width: int, height: int, x: int, y: int) -> np.ndarray:
    """Replay-plane pattern of a unit impulse at hologram pixel (x, y).

    Rank-1: outer(axis_phase(height, y), axis_phase(width, x)) / sqrt(Nx*Ny),
    shape (height, width). Adding delta * pixel_phasor(...) to a replay field
    is equivalent to re-transforming the hologram with that pixel changed by
    delta.
    """
    scale = 1.0 / np.sqrt(width * height)
    return np.outer(axis_phase(height, y), axis_phase(width, x)) * scale


def apply_pixel_delta(replay: ComplexField, x: int, y: int, delta: complex) -> ComplexField:
    """Replay field after a single hologram pixel changes by ``delta``.

    O(Nx*Ny) instead of a full re-transform. Raises IndexError when (x, y)
    falls outside the grid.
    """
    h, w = replay.values.shape
    if not (0 <= x < w and 0 <= y < h):
        raise IndexError(f"pixel ({x}, {y}) outside {w}x{h} grid")
    return ComplexField._wrap(replay.values + delta * pixel_phasor(w, h, x, y))
