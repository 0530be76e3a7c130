"""Configuration-driven experiment harness.

Loads an image, builds symmetrized random-phase targets, fans runs out over
schemes and seeds, and writes plot-ready CSV/JSON/PGM artifacts. Everything
is deterministic for a fixed config: run k uses seed base_seed + k, floats
are written with 17 significant digits, JSON keys are sorted, and no
wall-clock values reach any output file.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._replay import METRIC_EQ2, METRIC_POWER_MATCHED, METRICS
from .field import ComplexField, dft, total_power
from .metrics import relative_error_pct
from .modulation import AMPLITUDE, PHASE, ModulationScheme
from .perturb import amplitude_sweep, phase_sweep, win_rate_details
from .search import (
    ALGORITHMS,
    BEST_VALUE_DS,
    PIXEL_ORDERS,
    run_best_value_ds,
    run_direct_search,
    run_simulated_annealing,
)
from .target import (
    build_target,
    crop_to_even,
    load_grayscale,
    random_phase,
    save_grayscale,
    symmetrize_180,
)

EXPERIMENTS = ("convergence", "phase-sweep", "amplitude-sweep", "win-rate")

_DEFAULT_SCHEMES = (
    ModulationScheme.phase(2),
    ModulationScheme.phase(256),
    ModulationScheme.amplitude(2),
    ModulationScheme.amplitude(256),
)

# Number of pixels a sweep experiment traces.
SWEEP_PIXEL_COUNT = 10


@dataclass
class ExperimentConfig:
    """One experiment invocation. Defaults reproduce the desk-scale runs."""

    image_path: str | Path
    experiment: str = "convergence"
    schemes: tuple[ModulationScheme, ...] = _DEFAULT_SCHEMES
    algorithm: str = BEST_VALUE_DS
    iterations: int = 60_000
    runs: int = 5
    base_seed: int = 1
    sample_stride: int = 10_000
    metric: str = METRIC_EQ2
    pixel_order: str = "random"
    output_dir: str | Path = "holoquant-out"
    workers: int = 1
    sweep_samples: int = 256
    sweep_lo: float = 0.0
    sweep_hi: float = 2.0
    win_pixels: int = 1000
    t_initial: float | None = None
    t_final: float | None = None

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}; expected one of {EXPERIMENTS}")
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}; expected one of {ALGORITHMS}")
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}; expected one of {METRICS}")
        if self.pixel_order not in PIXEL_ORDERS:
            raise ValueError(f"pixel_order must be one of {PIXEL_ORDERS}, got {self.pixel_order!r}")
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.sample_stride < 1:
            raise ValueError(f"sample_stride must be >= 1, got {self.sample_stride}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if not self.schemes:
            raise ValueError("at least one scheme is required")
        self.schemes = tuple(self.schemes)


@dataclass(frozen=True)
class AggregateTrace:
    """Cross-run statistics of one convergence experiment."""

    algorithm: str
    iteration_grid: np.ndarray
    scheme_labels: tuple[str, ...]
    mean_errors: dict
    std_errors: dict
    relative_final_pct: dict


_BOOLEAN = {"true": True, "false": False, "yes": True, "no": False, "1": True, "0": False}

# Config-file key -> (attribute, parser). "seed"/"stride"/"out" are accepted
# aliases matching the CLI flag names.
_CONFIG_KEYS = {
    "image": ("image_path", str),
    "experiment": ("experiment", str),
    "schemes": ("schemes", "schemes"),
    "scheme": ("schemes", "schemes"),
    "algorithm": ("algorithm", str),
    "iterations": ("iterations", int),
    "runs": ("runs", int),
    "base_seed": ("base_seed", int),
    "seed": ("base_seed", int),
    "sample_stride": ("sample_stride", int),
    "stride": ("sample_stride", int),
    "metric": ("metric", "metric"),
    "pixel_order": ("pixel_order", str),
    "output_dir": ("output_dir", str),
    "out": ("output_dir", str),
    "workers": ("workers", int),
    "sweep_samples": ("sweep_samples", int),
    "sweep_lo": ("sweep_lo", float),
    "sweep_hi": ("sweep_hi", float),
    "win_pixels": ("win_pixels", int),
    "t_initial": ("t_initial", float),
    "t_final": ("t_final", float),
}


def parse_metric(text: str) -> str:
    """Accept 'eq2', 'power', or 'power-matched'."""
    text = text.strip()
    if text == "power":
        return METRIC_POWER_MATCHED
    if text in METRICS:
        return text
    raise ValueError(f"unknown metric {text!r}; expected eq2 or power")


def parse_schemes(text: str) -> tuple[ModulationScheme, ...]:
    """Comma-separated 'kind:levels' list."""
    return tuple(ModulationScheme.parse(part) for part in text.split(",") if part.strip())


def parse_config_file(path) -> dict:
    """Flat 'key = value' file ('#' comments); returns attribute overrides."""
    overrides = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lower()
        value = value.strip()
        if not sep or not key or not value:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
        attr, parser = _CONFIG_KEYS[key]
        if parser == "schemes":
            overrides[attr] = parse_schemes(value)
        elif parser == "metric":
            overrides[attr] = parse_metric(value)
        else:
            overrides[attr] = parser(value)
    return overrides


def build_config(file_path=None, overrides: dict | None = None) -> ExperimentConfig:
    """Merge config-file values and explicit overrides over defaults."""
    merged = {}
    if file_path is not None:
        merged.update(parse_config_file(file_path))
    if overrides:
        merged.update({k: v for k, v in overrides.items() if v is not None})
    if "image_path" not in merged:
        raise ValueError("an input image is required (config key 'image' or --image)")
    return ExperimentConfig(**merged)


def load_magnitudes(config: ExperimentConfig) -> np.ndarray:
    """The experiment's magnitude matrix: loaded, even-cropped, symmetrized."""
    return symmetrize_180(crop_to_even(load_grayscale(config.image_path)))


def scale_target_for_scheme(target: ComplexField, kind: str) -> ComplexField:
    """Rescale a target to the device's full-aperture output power.

    The target is scaled so total_power(target) = Nx*Ny: the power a
    phase-only hologram emits exactly (unit-magnitude pixels), and the most
    an amplitude-only hologram can emit (all pixels at 1). Physically this
    fixes the free illumination gain; numerically it stops the metric from
    being dominated by a global brightness mismatch no pixel search could
    remove. The factor cancels in relative errors.
    """
    if kind not in (PHASE, AMPLITUDE):
        raise ValueError(f"unknown modulation kind {kind!r}")
    power = total_power(target)
    if power == 0.0:
        raise ValueError("all-zero target cannot be scaled")
    factor = np.sqrt(target.values.size / power)
    return ComplexField._wrap(target.values * factor)


def _format_float(x) -> str:
    return format(float(x), ".17g")


def _write_csv(path: Path, header: list[str], rows):
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    path.write_text("\n".join(lines) + "\n", newline="\n")


def _convergence_job(args):
    (mags, kind, level_count, algorithm, iterations, seed, stride, pixel_order, metric, t_i, t_f) = args
    scheme = ModulationScheme(kind, level_count)
    h, w = mags.shape
    target = build_target(mags, random_phase(w, h, seed))
    target = scale_target_for_scheme(target, kind)
    kwargs = dict(pixel_order=pixel_order, metric=metric)
    if algorithm == BEST_VALUE_DS:
        trace = run_best_value_ds(target, scheme, iterations, seed, stride, **kwargs)
    elif algorithm == "direct-search":
        trace = run_direct_search(target, scheme, iterations, seed, stride, **kwargs)
    else:
        trace = run_simulated_annealing(target, scheme, iterations, seed, t_i, t_f, stride, **kwargs)
    replay_mag = np.abs(dft(trace.final_hologram).values)
    return {
        "label": scheme.label,
        "seed": seed,
        "iterations": trace.iteration_indices,
        "errors": trace.errors,
        "replay_magnitude": replay_mag,
    }


def run_convergence_experiment(config: ExperimentConfig) -> AggregateTrace:
    """Run schemes x runs, write trace CSVs, aggregate CSV, summary JSON,
    and final replay PGMs into config.output_dir."""
    mags = load_magnitudes(config)
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    jobs = [
        (
            mags,
            scheme.kind,
            scheme.level_count,
            config.algorithm,
            config.iterations,
            config.base_seed + run,
            config.sample_stride,
            config.pixel_order,
            config.metric,
            config.t_initial,
            config.t_final,
        )
        for scheme in config.schemes
        for run in range(config.runs)
    ]
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=min(config.workers, len(jobs))) as pool:
            results = list(pool.map(_convergence_job, jobs, chunksize=1))
    else:
        results = [_convergence_job(job) for job in jobs]

    grid = results[0]["iterations"]
    labels = tuple(s.label for s in config.schemes)
    mean_errors, std_errors, rel_pct = {}, {}, {}
    summary_schemes = []
    for i, scheme in enumerate(config.schemes):
        runs = results[i * config.runs : (i + 1) * config.runs]
        stack = np.vstack([r["errors"] for r in runs])
        for r, run_result in enumerate(runs):
            if not np.array_equal(run_result["iterations"], grid):
                raise RuntimeError("runs disagree on the sampling grid")
            _write_csv(
                out / f"trace_{scheme.label}_run{r:02d}.csv",
                ["iteration", "error"],
                (
                    [str(int(it)), _format_float(err)]
                    for it, err in zip(run_result["iterations"], run_result["errors"])
                ),
            )
            mag = run_result["replay_magnitude"]
            save_grayscale(out / f"replay_{scheme.label}_run{r:02d}.pgm", mag / mag.max())
        mean_errors[scheme.label] = stack.mean(axis=0)
        std_errors[scheme.label] = stack.std(axis=0)
        per_run_pct = [relative_error_pct(row[-1], row[0]) for row in stack]
        rel_pct[scheme.label] = per_run_pct
        summary_schemes.append(
            {
                "label": scheme.label,
                "kind": scheme.kind,
                "levels": scheme.level_count,
                "runs": [
                    {
                        "run": r,
                        "seed": config.base_seed + r,
                        "initial_error": float(stack[r, 0]),
                        "final_error": float(stack[r, -1]),
                        "relative_final_pct": per_run_pct[r],
                    }
                    for r in range(config.runs)
                ],
                "mean_relative_final_pct": float(np.mean(per_run_pct)),
                "std_relative_final_pct": float(np.std(per_run_pct)),
            }
        )

    agg_header = ["iteration"]
    for label in labels:
        agg_header += [f"mean_{label}", f"std_{label}"]
    agg_rows = []
    for j, it in enumerate(grid):
        row = [str(int(it))]
        for label in labels:
            row += [_format_float(mean_errors[label][j]), _format_float(std_errors[label][j])]
        agg_rows.append(row)
    _write_csv(out / "aggregate.csv", agg_header, agg_rows)

    summary = {
        "experiment": "convergence",
        "image": Path(config.image_path).name,
        "grid_shape": [int(mags.shape[0]), int(mags.shape[1])],
        "algorithm": config.algorithm,
        "iterations": config.iterations,
        "runs": config.runs,
        "base_seed": config.base_seed,
        "sample_stride": config.sample_stride,
        "metric": config.metric,
        "pixel_order": config.pixel_order,
        "schemes": summary_schemes,
    }
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")

    return AggregateTrace(
        algorithm=config.algorithm,
        iteration_grid=grid,
        scheme_labels=labels,
        mean_errors=mean_errors,
        std_errors=std_errors,
        relative_final_pct=rel_pct,
    )


def _sweep_target(config: ExperimentConfig):
    mags = load_magnitudes(config)
    h, w = mags.shape
    return build_target(mags, random_phase(w, h, config.base_seed))


def _sweep_pixels(config: ExperimentConfig, width: int, height: int) -> list[tuple[int, int]]:
    # Selection stream is separated from the phase-profile stream by the
    # extra entropy word, so both derive from base_seed without overlap.
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([config.base_seed, 1])))
    flats = rng.choice(width * height, size=SWEEP_PIXEL_COUNT, replace=False)
    return [(int(f % width), int(f // width)) for f in flats]


def run_sweep_experiment(config: ExperimentConfig) -> list[Path]:
    """Sweep 10 seeded pixels; one CSV per pixel plus the binary points."""
    target = _sweep_target(config)
    kind = PHASE if config.experiment == "phase-sweep" else AMPLITUDE
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    binary_rows = []
    for x, y in _sweep_pixels(config, target.width, target.height):
        if kind == PHASE:
            curve = phase_sweep(target, (x, y), config.sweep_samples)
        else:
            curve = amplitude_sweep(
                target, (x, y), config.sweep_lo, config.sweep_hi, config.sweep_samples
            )
        path = out / f"sweep_{kind}_x{x:03d}_y{y:03d}.csv"
        _write_csv(
            path,
            ["parameter", "delta_error"],
            (
                [_format_float(p), _format_float(d)]
                for p, d in zip(curve.parameter_values, curve.delta_errors)
            ),
        )
        paths.append(path)
        for param, derr in curve.binary_points:
            binary_rows.append([str(x), str(y), _format_float(param), _format_float(derr)])
    binary_path = out / f"binary_points_{kind}.csv"
    _write_csv(binary_path, ["pixel_x", "pixel_y", "parameter", "delta_error"], binary_rows)
    paths.append(binary_path)
    return paths


def run_win_rate_experiment(config: ExperimentConfig) -> dict:
    """Win-rate statistics for every multilevel scheme in the config."""
    target = _sweep_target(config)
    multilevel = [s for s in config.schemes if s.level_count > 2]
    if not multilevel:
        raise ValueError("win-rate needs at least one scheme with more than 2 levels")
    results = []
    for scheme in multilevel:
        details = win_rate_details(
            target, scheme.kind, scheme.level_count, config.win_pixels, config.base_seed
        )
        results.append(
            {
                "kind": scheme.kind,
                "levels": scheme.level_count,
                "pixel_count": details.pixel_count,
                "seed": details.seed,
                "win_fraction": details.fraction,
                "multilevel_worse_count": details.worse_count,
            }
        )
    payload = {
        "experiment": "win-rate",
        "image": Path(config.image_path).name,
        "base_seed": config.base_seed,
        "results": results,
    }
    out = Path(config.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / "win_rate.json").write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return payload
