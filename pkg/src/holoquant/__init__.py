"""Far-field holography under quantized SLM constraints.

Simulates Fraunhofer-regime computer-generated holography where each
hologram pixel is restricted to a finite level set (binary or multi-level,
phase-only or amplitude-only), and measures how that quantization limits
reconstruction error under per-pixel search optimization.
"""

from ._replay import METRIC_EQ2, METRIC_POWER_MATCHED
from .experiments import (
    AggregateTrace,
    ExperimentConfig,
    build_config,
    load_magnitudes,
    parse_config_file,
    parse_metric,
    parse_schemes,
    run_convergence_experiment,
    run_sweep_experiment,
    run_win_rate_experiment,
    scale_target_for_scheme,
)
from .field import (
    ComplexField,
    FieldShapeError,
    apply_pixel_delta,
    dft,
    idft,
    pixel_phasor,
    total_power,
)
from .metrics import mse_phase_insensitive, mse_power_matched, relative_error_pct
from .modulation import (
    AMPLITUDE,
    PHASE,
    ModulationScheme,
    levels,
    nearest_level_index,
    quantize_field,
    quantize_nearest,
)
from .perturb import SweepCurve, WinRateResult, amplitude_sweep, phase_sweep, win_rate, win_rate_details
from .search import (
    ALGORITHMS,
    BEST_VALUE_DS,
    DIRECT_SEARCH,
    SIMULATED_ANNEALING,
    ConstraintError,
    ConvergenceTrace,
    SearchState,
    TraceSummary,
    best_value_step,
    candidate_error,
    final_state,
    initial_state,
    run_best_value_ds,
    run_direct_search,
    run_simulated_annealing,
)
from .target import (
    DegenerateTargetError,
    ImageFormatError,
    TargetSpec,
    build_target,
    crop_to_even,
    initial_hologram,
    load_grayscale,
    random_phase,
    rotate_180,
    save_grayscale,
    symmetrize_180,
    synthetic_scene,
    unquantized_hologram,
)

__version__ = "0.1.0"

__all__ = [
    "AggregateTrace",
    "ALGORITHMS",
    "AMPLITUDE",
    "BEST_VALUE_DS",
    "ComplexField",
    "ConstraintError",
    "ConvergenceTrace",
    "DIRECT_SEARCH",
    "DegenerateTargetError",
    "ExperimentConfig",
    "FieldShapeError",
    "ImageFormatError",
    "METRIC_EQ2",
    "METRIC_POWER_MATCHED",
    "ModulationScheme",
    "PHASE",
    "SIMULATED_ANNEALING",
    "SearchState",
    "SweepCurve",
    "TargetSpec",
    "TraceSummary",
    "WinRateResult",
    "amplitude_sweep",
    "apply_pixel_delta",
    "best_value_step",
    "build_config",
    "build_target",
    "candidate_error",
    "crop_to_even",
    "dft",
    "final_state",
    "idft",
    "initial_hologram",
    "initial_state",
    "levels",
    "load_grayscale",
    "load_magnitudes",
    "mse_phase_insensitive",
    "mse_power_matched",
    "nearest_level_index",
    "parse_config_file",
    "parse_metric",
    "parse_schemes",
    "phase_sweep",
    "pixel_phasor",
    "quantize_field",
    "quantize_nearest",
    "random_phase",
    "relative_error_pct",
    "rotate_180",
    "run_best_value_ds",
    "run_convergence_experiment",
    "run_direct_search",
    "run_simulated_annealing",
    "run_sweep_experiment",
    "run_win_rate_experiment",
    "save_grayscale",
    "scale_target_for_scheme",
    "symmetrize_180",
    "synthetic_scene",
    "total_power",
    "unquantized_hologram",
    "win_rate",
    "win_rate_details",
]
