"""Incrementally maintained replay field with O(N) candidate scoring.

One workspace owns a mutable hologram, its cached transform, and the derived
per-sample replay power. Candidate values for a single pixel are scored
against the target magnitudes without mutating anything; committing a value
applies the rank-1 update. The cached transform is fully recomputed every
10^4 committed changes to bound floating-point drift.
"""

from __future__ import annotations

import numpy as np

from ._kernels import weighted_root_cross
from .field import ComplexField, axis_phase
from .metrics import mse_phase_insensitive, mse_power_matched

METRIC_EQ2 = "eq2"
METRIC_POWER_MATCHED = "power-matched"
METRICS = (METRIC_EQ2, METRIC_POWER_MATCHED)

REFRESH_EVERY = 10_000


class ReplayWorkspace:
    """Mutable search workspace around one hologram/target pair."""

    def __init__(self, hologram, target, metric: str = METRIC_EQ2):
        if metric not in METRICS:
            raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")
        holo = hologram.values if isinstance(hologram, ComplexField) else hologram
        self.hologram = np.array(holo, dtype=np.complex128, order="C")
        tv = target.values if isinstance(target, ComplexField) else target
        if tv.shape != self.hologram.shape:
            raise ValueError(f"target shape {tv.shape} != hologram shape {self.hologram.shape}")
        self.metric = metric
        ny, nx = self.hologram.shape
        self.shape = (ny, nx)
        self.n = nx * ny
        self.tmag = np.ascontiguousarray(np.abs(tv).reshape(-1))
        self.target_power = float(np.sum(self.tmag * self.tmag))
        # Per-axis phasor tables; row y of each table is axis_phase(n, y).
        self.row_table = np.empty((ny, ny), dtype=np.complex128)
        for y in range(ny):
            self.row_table[y] = axis_phase(ny, y)
        self.col_table = np.empty((nx, nx), dtype=np.complex128)
        for x in range(nx):
            self.col_table[x] = axis_phase(nx, x)
        self.inv_sqrt_n = 1.0 / np.sqrt(self.n)
        self.accepted = 0
        self._cached_pixel = None
        self._refresh()

    def _refresh(self):
        scale = self.inv_sqrt_n
        self.replay = np.fft.fft2(self.hologram) * scale
        flat = self.replay.reshape(-1)
        self.a = np.ascontiguousarray(flat.real * flat.real + flat.imag * flat.imag)
        self._cached_pixel = None

    def pixel_phasor(self, x: int, y: int) -> np.ndarray:
        """Rank-1 replay pattern of a unit impulse at hologram pixel (x, y)."""
        return np.outer(self.row_table[y], self.col_table[x]) * self.inv_sqrt_n

    def _interaction(self, x: int, y: int):
        # P * conj(R) split into real/imag, cached per pixel because a score
        # is almost always followed by a commit at the same pixel.
        if self._cached_pixel != (x, y):
            p = self.pixel_phasor(x, y)
            g = (p * np.conj(self.replay)).reshape(-1)
            self._cached_pixel = (x, y)
            self._phasor = p
            self._gr = np.ascontiguousarray(g.real)
            self._gi = np.ascontiguousarray(g.imag)
            self._gr_sum = float(np.sum(self._gr))
            self._gi_sum = float(np.sum(self._gi))
            self._a_sum = float(np.sum(self.a))
        return self._phasor, self._gr, self._gi

    def candidate_errors(self, x: int, y: int, values: np.ndarray) -> np.ndarray:
        """Metric value after setting pixel (x, y) to each candidate value.

        Pure: the workspace is not modified. One O(N) pass per candidate.
        """
        ny, nx = self.shape
        if not (0 <= x < nx and 0 <= y < ny):
            raise IndexError(f"pixel ({x}, {y}) outside {nx}x{ny} grid")
        values = np.asarray(values, dtype=np.complex128).reshape(-1)
        self._interaction(x, y)
        delta = values - self.hologram[y, x]
        dr2 = np.ascontiguousarray(2.0 * delta.real)
        di2 = np.ascontiguousarray(2.0 * delta.imag)
        dabs2 = delta.real * delta.real + delta.imag * delta.imag
        dn = np.ascontiguousarray(dabs2 / self.n)
        cross = weighted_root_cross(self.a, self._gr, self._gi, self.tmag, dr2, di2, dn)
        power = self._a_sum + dr2 * self._gr_sum - di2 * self._gi_sum + dabs2
        if self.metric == METRIC_EQ2:
            return (self.target_power + power - 2.0 * cross) / self.n
        with np.errstate(divide="ignore", invalid="ignore"):
            matched = self.target_power - np.sqrt(self.target_power) * cross / np.sqrt(power)
        # Zero-power candidates have no defined matched scale; score them as
        # unreachable rather than raising mid-search.
        matched = np.where(power > 0.0, matched, np.inf)
        return 2.0 * matched / self.n

    def set_pixel(self, x: int, y: int, value: complex):
        """Commit one pixel value, updating the cached replay in O(N)."""
        delta = complex(value) - self.hologram[y, x]
        if delta == 0:
            return
        p, gr, gi = self._interaction(x, y)
        # Same update form the kernel uses for s_n, keeping a coherent with
        # |replay|^2 to rounding error.
        self.a += (2.0 * delta.real) * gr - (2.0 * delta.imag) * gi + (
            delta.real * delta.real + delta.imag * delta.imag
        ) / self.n
        self.replay += delta * p
        self.hologram[y, x] = value
        self._cached_pixel = None
        self.accepted += 1
        if self.accepted % REFRESH_EVERY == 0:
            self._refresh()

    def full_error(self) -> float:
        """Metric recomputed from scratch on the cached replay."""
        target = ComplexField._wrap(self.tmag.reshape(self.shape).astype(np.complex128))
        replay = ComplexField(self.replay)
        if self.metric == METRIC_EQ2:
            return mse_phase_insensitive(target, replay)
        return mse_power_matched(target, replay)
