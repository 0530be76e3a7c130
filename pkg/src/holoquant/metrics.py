"""Error metrics between a target image and a replay field.

Both metrics compare magnitudes only, so they are blind to any phase profile
of the replay: holography reconstructs intensity patterns and the replay
phase is unconstrained.
"""

from __future__ import annotations

import numpy as np

from .field import ComplexField, total_power


def _check_shapes(target: ComplexField, replay: ComplexField):
    if target.values.shape != replay.values.shape:
        raise ValueError(
            f"target shape {target.values.shape} != replay shape {replay.values.shape}"
        )


def mse_phase_insensitive(target: ComplexField, replay: ComplexField) -> float:
    """Mean squared difference of magnitudes, mean over all pixels."""
    _check_shapes(target, replay)
    d = np.abs(target.values) - np.abs(replay.values)
    return float(np.mean(d * d))


def mse_power_matched(target: ComplexField, replay: ComplexField) -> float:
    """Magnitude MSE after rescaling the replay to the target's total power.

    Removes the overall-brightness degree of freedom: only the shape of the
    replay pattern is scored. Raises ValueError on an all-zero replay, whose
    scale is undefined.
    """
    _check_shapes(target, replay)
    p_r = total_power(replay)
    if p_r == 0.0:
        raise ValueError("replay field has zero power; matched scale is undefined")
    scale = np.sqrt(total_power(target) / p_r)
    d = np.abs(target.values) - scale * np.abs(replay.values)
    return float(np.mean(d * d))


def relative_error_pct(e_final: float, e_initial: float) -> float:
    """Final error as a percentage of the initial error."""
    if e_initial <= 0.0:
        raise ValueError(f"initial error must be positive, got {e_initial!r}")
    return 100.0 * e_final / e_initial
