"""Quantization-constrained hologram search.

Three per-pixel iterative algorithms over a scheme's level set:

- best-value-ds: every iteration sets one pixel to the error-minimizing
  level (all L candidates scored);
- direct-search: one random alternative level, accepted on strict
  improvement;
- simulated-annealing: one random alternative level, worse moves accepted
  with probability exp(-dE/T) under geometric cooling.

All three visit pixels uniformly at random with replacement (or in raster
order via ``pixel_order="raster"``) and score candidates through rank-1
replay updates, so one iteration costs O(L*N) instead of O(N log N * L).

Seeding: ``seed`` feeds ``np.random.SeedSequence(seed).spawn(2)``. The first
child generator (PCG64) supplies pixel visits, then alternative-level draws,
each as one block; the second supplies the annealing acceptance uniforms,
indexed by iteration. Fixed inputs therefore reproduce traces bit-exactly,
and algorithms sharing a seed see identical proposal streams.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from ._replay import METRIC_EQ2, METRICS, ReplayWorkspace
from .field import ComplexField, apply_pixel_delta, dft
from .modulation import ModulationScheme, levels, nearest_level_index
from .target import initial_hologram

BEST_VALUE_DS = "best-value-ds"
DIRECT_SEARCH = "direct-search"
SIMULATED_ANNEALING = "simulated-annealing"
ALGORITHMS = (BEST_VALUE_DS, DIRECT_SEARCH, SIMULATED_ANNEALING)

PIXEL_ORDERS = ("random", "raster")


class ConstraintError(ValueError):
    """A candidate value is not on the scheme's level set."""


@dataclass(frozen=True)
class SearchState:
    """One point of a search: constrained hologram, cached replay, error."""

    hologram: ComplexField
    replay: ComplexField
    error: float
    scheme: ModulationScheme
    target: ComplexField


@dataclass(frozen=True)
class TraceSummary:
    final_error: float
    iterations: int
    elapsed_seconds: float


@dataclass(frozen=True)
class ConvergenceTrace:
    """Sampled error history of one search run.

    ``errors[i]`` is the error after ``iteration_indices[i]`` iterations
    (index 0 = the freshly quantized start). ``final_hologram`` is the
    hologram the run returns: the end state for the monotone algorithms, the
    best state encountered for simulated annealing.
    """

    algorithm: str
    scheme: ModulationScheme
    seed: int
    iteration_indices: np.ndarray
    errors: np.ndarray
    final_state_summary: TraceSummary
    final_hologram: ComplexField

    @property
    def samples(self) -> list[tuple[int, float]]:
        return [(int(i), float(e)) for i, e in zip(self.iteration_indices, self.errors)]


def initial_state(target: ComplexField, scheme: ModulationScheme, metric: str = METRIC_EQ2) -> SearchState:
    """Quantized starting hologram with its replay and error."""
    holo = initial_hologram(target, scheme)
    ws = ReplayWorkspace(holo, target, metric)
    return SearchState(holo, ComplexField(ws.replay), ws.full_error(), scheme, target)


def candidate_error(state: SearchState, x: int, y: int, level: complex, metric: str = METRIC_EQ2) -> float:
    """Error if hologram pixel (x, y) were set to ``level``; state untouched.

    ``level`` must be bit-equal to an entry of ``levels(state.scheme)``.
    """
    lv = levels(state.scheme)
    if not np.any(lv == complex(level)):
        raise ConstraintError(f"{level!r} is not on the {state.scheme.label} level set")
    ws = ReplayWorkspace(state.hologram, state.target, metric)
    return float(ws.candidate_errors(x, y, np.array([level]))[0])


def best_value_step(state: SearchState, x: int, y: int, metric: str = METRIC_EQ2) -> SearchState:
    """Set pixel (x, y) to its error-minimizing level (ties: lowest index).

    Returns ``state`` itself when the pixel is already optimal; the returned
    error never exceeds the input error.
    """
    lv = levels(state.scheme)
    ws = ReplayWorkspace(state.hologram, state.target, metric)
    errs = ws.candidate_errors(x, y, lv)
    best = int(np.argmin(errs))
    current = state.hologram.values[y, x]
    if lv[best] == current:
        return state
    new_holo = np.array(state.hologram.values)
    new_holo[y, x] = lv[best]
    replay = apply_pixel_delta(state.replay, x, y, complex(lv[best] - current))
    return SearchState(
        ComplexField._wrap(new_holo),
        replay,
        float(min(errs[best], state.error)),
        state.scheme,
        state.target,
    )


def _validate_common(iterations, sample_stride, pixel_order, metric):
    if iterations < 1:
        raise ValueError(f"iterations must be >= 1, got {iterations}")
    if sample_stride < 1:
        raise ValueError(f"sample_stride must be >= 1, got {sample_stride}")
    if pixel_order not in PIXEL_ORDERS:
        raise ValueError(f"pixel_order must be one of {PIXEL_ORDERS}, got {pixel_order!r}")
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")


def _run(
    algorithm,
    target,
    scheme,
    iterations,
    seed,
    sample_stride,
    pixel_order,
    metric,
    t_initial=None,
    t_final=None,
):
    _validate_common(iterations, sample_stride, pixel_order, metric)
    started = time.perf_counter()

    holo0 = initial_hologram(target, scheme)
    lv = levels(scheme)
    level_count = lv.size
    ws = ReplayWorkspace(holo0, target, metric)
    cur_idx = nearest_level_index(holo0.values, scheme)
    error = ws.full_error()
    ny, nx = ws.shape

    selection, acceptance = (
        np.random.Generator(np.random.PCG64(s))
        for s in np.random.SeedSequence(seed).spawn(2)
    )
    if pixel_order == "random":
        pixels = selection.integers(0, nx * ny, size=iterations)
    else:
        pixels = np.arange(iterations, dtype=np.int64) % (nx * ny)
    if algorithm != BEST_VALUE_DS:
        # Draw in [0, L-1) and shift past the current index at use time to
        # get a uniform alternative level != current.
        alt_draws = selection.integers(0, level_count - 1, size=iterations)
        uniforms = acceptance.random(iterations)

    if algorithm == SIMULATED_ANNEALING:
        t_i = error if t_initial is None else float(t_initial)
        t_f = 1e-6 * error if t_final is None else float(t_final)
        if not (t_i >= t_f > 0.0):
            raise ValueError(
                f"temperatures must satisfy t_initial >= t_final > 0, got {t_i!r} >= {t_f!r}"
            )
        cooling = t_f / t_i
        best_error = error
        best_holo = ws.hologram.copy()

    sampled_iters = [0]
    sampled_errors = [error]

    for k in range(1, iterations + 1):
        flat = int(pixels[k - 1])
        y, x = divmod(flat, nx)
        if algorithm == BEST_VALUE_DS:
            errs = ws.candidate_errors(x, y, lv)
            best = int(np.argmin(errs))
            if best != cur_idx[y, x]:
                ws.set_pixel(x, y, complex(lv[best]))
                cur_idx[y, x] = best
                if errs[best] < error:
                    error = float(errs[best])
        else:
            j = int(alt_draws[k - 1])
            alt = j + (j >= cur_idx[y, x])
            cand = float(ws.candidate_errors(x, y, lv[alt : alt + 1])[0])
            delta_e = cand - error
            if algorithm == DIRECT_SEARCH:
                accept = delta_e < 0.0
            else:
                if delta_e <= 0.0:
                    accept = True
                else:
                    t_k = t_i * cooling ** (k / iterations)
                    accept = uniforms[k - 1] < math.exp(-delta_e / t_k)
            if accept:
                ws.set_pixel(x, y, complex(lv[alt]))
                cur_idx[y, x] = alt
                error = cand
                if algorithm == SIMULATED_ANNEALING and error < best_error:
                    best_error = error
                    best_holo = ws.hologram.copy()
        if k % sample_stride == 0 or k == iterations:
            sampled_iters.append(k)
            sampled_errors.append(error)

    elapsed = time.perf_counter() - started
    if algorithm == SIMULATED_ANNEALING:
        final_holo = ComplexField(best_holo)
        final_error = best_error
    else:
        final_holo = ComplexField(ws.hologram)
        final_error = error
    return ConvergenceTrace(
        algorithm=algorithm,
        scheme=scheme,
        seed=seed,
        iteration_indices=np.array(sampled_iters, dtype=np.int64),
        errors=np.array(sampled_errors, dtype=np.float64),
        final_state_summary=TraceSummary(float(final_error), int(iterations), elapsed),
        final_hologram=final_holo,
    )


def run_best_value_ds(
    target: ComplexField,
    scheme: ModulationScheme,
    iterations: int,
    seed: int,
    sample_stride: int = 10_000,
    *,
    pixel_order: str = "random",
    metric: str = METRIC_EQ2,
) -> ConvergenceTrace:
    """Per iteration, set one pixel to the best level of the whole set.

    The trace is non-increasing: a step never accepts a worse value.
    """
    return _run(BEST_VALUE_DS, target, scheme, iterations, seed, sample_stride, pixel_order, metric)


def run_direct_search(
    target: ComplexField,
    scheme: ModulationScheme,
    iterations: int,
    seed: int,
    sample_stride: int = 10_000,
    *,
    pixel_order: str = "random",
    metric: str = METRIC_EQ2,
) -> ConvergenceTrace:
    """Per iteration, try one random alternative level; keep it only on
    strict improvement. Binary schemes make the alternative deterministic."""
    return _run(DIRECT_SEARCH, target, scheme, iterations, seed, sample_stride, pixel_order, metric)


def run_simulated_annealing(
    target: ComplexField,
    scheme: ModulationScheme,
    iterations: int,
    seed: int,
    t_initial: float | None = None,
    t_final: float | None = None,
    sample_stride: int = 10_000,
    *,
    pixel_order: str = "random",
    metric: str = METRIC_EQ2,
) -> ConvergenceTrace:
    """Direct search that accepts uphill moves with probability exp(-dE/T).

    T follows geometric cooling t_initial -> t_final over the budget
    (defaults: the initial error and 1e-6 times it). The trace records the
    instantaneous error; the returned hologram is the best state seen.
    """
    return _run(
        SIMULATED_ANNEALING,
        target,
        scheme,
        iterations,
        seed,
        sample_stride,
        pixel_order,
        metric,
        t_initial=t_initial,
        t_final=t_final,
    )


def final_state(trace: ConvergenceTrace, target: ComplexField, metric: str = METRIC_EQ2) -> SearchState:
    """SearchState for a trace's returned hologram (replay recomputed)."""
    replay = dft(trace.final_hologram)
    ws = ReplayWorkspace(trace.final_hologram, target, metric)
    return SearchState(trace.final_hologram, replay, ws.full_error(), trace.scheme, target)
