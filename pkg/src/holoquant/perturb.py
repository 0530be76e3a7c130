"""Single-pixel modification experiments on the continuous starting hologram.

How much can one pixel's value change the replay error, and how much of that
improvement survives quantization? A sweep traces dE over a pixel's phase or
amplitude; the win rate counts how often the full multilevel set beats the
two binary values at the same pixel. All scoring uses the phase-insensitive
metric via rank-1 replay updates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._replay import ReplayWorkspace
from .field import ComplexField
from .modulation import AMPLITUDE, KINDS, PHASE, ModulationScheme, levels
from .target import unquantized_hologram

# dE differences closer than this are floating-point ties, not wins.
WIN_THRESHOLD = 1e-12


@dataclass(frozen=True)
class SweepCurve:
    """dE versus one swept pixel parameter, with the binary device's two
    achievable points.

    For phase sweeps the parameter is the offset (radians) from the pixel's
    initial phase; binary points then sit at the offsets that reach absolute
    phases 0 and pi. For amplitude sweeps the parameter is the absolute
    amplitude and binary points sit at 0 and 1. dE is relative to the
    unmodified hologram, so a sample at the current value reads 0.
    """

    pixel: tuple[int, int]
    parameter_values: np.ndarray
    delta_errors: np.ndarray
    binary_points: tuple[tuple[float, float], tuple[float, float]]


@dataclass(frozen=True)
class WinRateResult:
    """Per-pixel multilevel-vs-binary minimum errors over sampled pixels."""

    kind: str
    multilevel: int
    pixel_count: int
    seed: int
    fraction: float
    worse_count: int
    pixels: np.ndarray
    multilevel_min: np.ndarray
    binary_min: np.ndarray


def _check_pixel(target: ComplexField, pixel):
    x, y = pixel
    if not (0 <= x < target.width and 0 <= y < target.height):
        raise IndexError(f"pixel ({x}, {y}) outside {target.width}x{target.height} grid")
    return int(x), int(y)


def _wrap_angle(theta: float) -> float:
    """Map an angle into [-pi, pi)."""
    return float((theta + np.pi) % (2.0 * np.pi) - np.pi)


def phase_sweep(target: ComplexField, pixel, sample_count: int = 256, seed: int = 0) -> SweepCurve:
    """dE as one pixel's phase offset sweeps [-pi, pi], magnitude fixed.

    Operates on the continuous phase hologram (uniform magnitude, before any
    quantization). ``seed`` is accepted for signature stability but unused:
    the curve is fully determined by (target, pixel, sample_count).
    """
    if sample_count < 2:
        raise ValueError(f"sample_count must be >= 2, got {sample_count}")
    x, y = _check_pixel(target, pixel)
    holo = unquantized_hologram(target, PHASE)
    ws = ReplayWorkspace(holo, target)
    v0 = complex(holo.values[y, x])
    mag = abs(v0)
    theta0 = np.angle(v0)
    offsets = np.linspace(-np.pi, np.pi, sample_count)
    curve_values = mag * np.exp(1j * (theta0 + offsets))
    binary_values = mag * levels(ModulationScheme.phase(2))
    batch = np.concatenate([[v0], curve_values, binary_values])
    errs = ws.candidate_errors(x, y, batch)
    delta = errs - errs[0]
    binary_offsets = (_wrap_angle(0.0 - theta0), _wrap_angle(np.pi - theta0))
    return SweepCurve(
        pixel=(x, y),
        parameter_values=offsets,
        delta_errors=delta[1 : 1 + sample_count],
        binary_points=(
            (binary_offsets[0], float(delta[-2])),
            (binary_offsets[1], float(delta[-1])),
        ),
    )


def amplitude_sweep(
    target: ComplexField,
    pixel,
    lo: float = 0.0,
    hi: float = 2.0,
    sample_count: int = 256,
    seed: int = 0,
) -> SweepCurve:
    """dE as one pixel's amplitude sweeps [lo, hi], phase fixed at zero.

    Operates on the continuous amplitude hologram (|idft(target)| scaled to
    [0, 1]). Binary points sit at amplitudes 0 and 1. ``seed`` is unused, as
    in phase_sweep.
    """
    if sample_count < 2:
        raise ValueError(f"sample_count must be >= 2, got {sample_count}")
    if not (0.0 <= lo < hi):
        raise ValueError(f"need 0 <= lo < hi, got lo={lo!r}, hi={hi!r}")
    x, y = _check_pixel(target, pixel)
    holo = unquantized_hologram(target, AMPLITUDE)
    ws = ReplayWorkspace(holo, target)
    v0 = complex(holo.values[y, x])
    params = np.linspace(lo, hi, sample_count)
    binary_values = levels(ModulationScheme.amplitude(2))
    batch = np.concatenate([[v0], params.astype(np.complex128), binary_values])
    errs = ws.candidate_errors(x, y, batch)
    delta = errs - errs[0]
    return SweepCurve(
        pixel=(x, y),
        parameter_values=params,
        delta_errors=delta[1 : 1 + sample_count],
        binary_points=((0.0, float(delta[-2])), (1.0, float(delta[-1]))),
    )


def win_rate_details(
    target: ComplexField, kind: str, multilevel: int, pixel_count: int, seed: int
) -> WinRateResult:
    """Per-pixel minimum errors for the multilevel and binary level sets.

    Pixels are sampled uniformly without replacement (PCG64 seeded with
    ``seed``). Phase candidates keep the pixel's continuous magnitude and
    take each level's phase; amplitude candidates are the levels themselves.
    A win is a multilevel minimum more than 1e-12 below the binary minimum;
    ``worse_count`` counts pixels where it is strictly above (any amount),
    which superset level sets make impossible.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown modulation kind {kind!r}; expected one of {KINDS}")
    if multilevel <= 2:
        raise ValueError(f"multilevel must exceed 2, got {multilevel}")
    n = target.width * target.height
    if not (1 <= pixel_count <= n):
        raise ValueError(f"pixel_count must be in [1, {n}], got {pixel_count}")
    holo = unquantized_hologram(target, kind)
    ws = ReplayWorkspace(holo, target)
    lv_multi = levels(ModulationScheme(kind, multilevel))
    lv_binary = levels(ModulationScheme(kind, 2))
    rng = np.random.Generator(np.random.PCG64(seed))
    flats = rng.choice(n, size=pixel_count, replace=False)
    min_multi = np.empty(pixel_count)
    min_binary = np.empty(pixel_count)
    for i, flat in enumerate(flats):
        y, x = divmod(int(flat), target.width)
        if kind == PHASE:
            scale = abs(complex(holo.values[y, x]))
            candidates_multi = scale * lv_multi
            candidates_binary = scale * lv_binary
        else:
            candidates_multi = lv_multi
            candidates_binary = lv_binary
        min_multi[i] = ws.candidate_errors(x, y, candidates_multi).min()
        min_binary[i] = ws.candidate_errors(x, y, candidates_binary).min()
    wins = int(np.sum(min_multi < min_binary - WIN_THRESHOLD))
    worse = int(np.sum(min_multi > min_binary))
    return WinRateResult(
        kind=kind,
        multilevel=int(multilevel),
        pixel_count=int(pixel_count),
        seed=int(seed),
        fraction=wins / pixel_count,
        worse_count=worse,
        pixels=flats,
        multilevel_min=min_multi,
        binary_min=min_binary,
    )


def win_rate(target: ComplexField, kind: str, multilevel: int, pixel_count: int, seed: int) -> float:
    """Fraction of sampled pixels where the multilevel set beats binary by
    more than 1e-12."""
    return win_rate_details(target, kind, multilevel, pixel_count, seed).fraction
