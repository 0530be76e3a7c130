"""Release gate: every shipping criterion, checked at its stated tolerance.

Each test prints one summary line (PASS or FAIL with the measured numbers)
that stays visible under pytest's capture, then asserts. Criteria 4-6 carry
the ``slow`` marker; the full run including them takes about 15 minutes on
one core, dominated by criterion 5's reference-scale convergence runs.
"""

import json
import time

import numpy as np
import pytest

from holoquant import (
    ComplexField,
    ExperimentConfig,
    ModulationScheme,
    apply_pixel_delta,
    dft,
    idft,
    levels,
    mse_phase_insensitive,
    quantize_nearest,
    run_best_value_ds,
    run_convergence_experiment,
    run_win_rate_experiment,
    save_grayscale,
    synthetic_scene,
    total_power,
    win_rate_details,
)
from holoquant.cli import main as cli_main
from conftest import natural_target, random_field


def report(capsys, number: int, name: str, ok: bool, detail: str):
    with capsys.disabled():
        print(f"\nACCEPTANCE {number} {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {number} {name}: {detail}"


@pytest.fixture(scope="module")
def scene64(tmp_path_factory):
    path = tmp_path_factory.mktemp("acceptance") / "scene64.pgm"
    save_grayscale(path, synthetic_scene(64, 64, seed=2026))
    return path


@pytest.fixture(scope="module")
def scene128(tmp_path_factory):
    path = tmp_path_factory.mktemp("acceptance") / "scene128.pgm"
    save_grayscale(path, synthetic_scene(128, 128, seed=2026))
    return path


def test_criterion_1_transform_roundtrip(capsys):
    # 200 random fields, 2x2 through 128x128 with non-square shapes: the
    # inverse undoes the forward within 1e-10, power is conserved to 1e-9.
    rng = np.random.default_rng(11)
    sizes = [(2, 2), (2, 128), (128, 2), (128, 128), (64, 127)]
    while len(sizes) < 200:
        sizes.append((int(rng.integers(2, 129)), int(rng.integers(2, 129))))
    t0 = time.perf_counter()
    worst_roundtrip = 0.0
    worst_parseval = 0.0
    for height, width in sizes:
        f = random_field(rng, height, width)
        spectrum = dft(f)
        back = idft(spectrum)
        worst_roundtrip = max(worst_roundtrip, float(np.abs(back.values - f.values).max()))
        p_in = total_power(f)
        worst_parseval = max(worst_parseval, abs(total_power(spectrum) - p_in) / p_in)
    elapsed = time.perf_counter() - t0
    ok = worst_roundtrip < 1e-10 and worst_parseval < 1e-9 and elapsed < 10.0
    report(
        capsys, 1, "transform-roundtrip", ok,
        f"max roundtrip {worst_roundtrip:.2e}, max Parseval {worst_parseval:.2e}, {elapsed:.1f}s",
    )


def test_criterion_2_rank_one_replay_update(capsys):
    # Every pixel of 4x4 and 8x8 grids, 8 random deltas each: the O(N)
    # replay update equals a full retransform within 1e-10.
    rng = np.random.default_rng(22)
    t0 = time.perf_counter()
    worst = 0.0
    for size in (4, 8):
        holo = random_field(rng, size, size)
        replay = dft(holo)
        for y in range(size):
            for x in range(size):
                for _ in range(8):
                    delta = complex(rng.standard_normal() + 1j * rng.standard_normal())
                    fast = apply_pixel_delta(replay, x, y, delta)
                    modified = np.array(holo.values)
                    modified[y, x] += delta
                    slow = dft(ComplexField(modified))
                    worst = max(worst, float(np.abs(fast.values - slow.values).max()))
    elapsed = time.perf_counter() - t0
    ok = worst < 1e-10 and elapsed < 5.0
    report(capsys, 2, "rank-one-replay-update", ok, f"max deviation {worst:.2e}, {elapsed:.1f}s")


def test_criterion_3_quantizer_exactness(capsys):
    # 10^4 random complex values per scheme: the quantizer agrees with an
    # exhaustive nearest-level scan bit-for-bit and is idempotent.
    rng = np.random.default_rng(33)
    schemes = [
        ModulationScheme.phase(2),
        ModulationScheme.phase(4),
        ModulationScheme.phase(256),
        ModulationScheme.amplitude(2),
        ModulationScheme.amplitude(256),
    ]
    t0 = time.perf_counter()
    mismatches = 0
    non_idempotent = 0
    for scheme in schemes:
        vals = rng.standard_normal(10_000) + 1j * rng.standard_normal(10_000)
        lv = levels(scheme)
        dist = (vals.real[:, None] - lv.real[None, :]) ** 2 + (
            vals.imag[:, None] - lv.imag[None, :]
        ) ** 2
        exhaustive = lv[np.argmin(dist, axis=1)]
        got = np.array([quantize_nearest(complex(v), scheme) for v in vals])
        mismatches += int(np.sum(got != exhaustive))
        requantized = np.array([quantize_nearest(complex(v), scheme) for v in got])
        non_idempotent += int(np.sum(requantized != got))
    elapsed = time.perf_counter() - t0
    ok = mismatches == 0 and non_idempotent == 0 and elapsed < 5.0
    report(
        capsys, 3, "quantizer-exactness", ok,
        f"{mismatches} mismatches, {non_idempotent} idempotence breaks over 5x10^4 values, {elapsed:.1f}s",
    )


@pytest.mark.slow
def test_criterion_4_monotone_convergence(capsys):
    # 20 seeds x all four schemes on 16x16 random-phase natural targets:
    # every best-value trace sampled at stride 1 is non-increasing.
    schemes = [
        ModulationScheme.phase(2),
        ModulationScheme.phase(256),
        ModulationScheme.amplitude(2),
        ModulationScheme.amplitude(256),
    ]
    t0 = time.perf_counter()
    violations = 0
    traces = 0
    for k in range(20):
        target = natural_target(16, image_seed=300 + k, phase_seed=400 + k)
        for scheme in schemes:
            trace = run_best_value_ds(target, scheme, 768, seed=k, sample_stride=1)
            traces += 1
            violations += int(np.sum(np.diff(trace.errors) > 0.0))
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and elapsed < 120.0
    report(
        capsys, 4, "monotone-convergence", ok,
        f"{violations} increases across {traces} traces, {elapsed:.1f}s",
    )


@pytest.mark.slow
def test_criterion_5_quantization_depth_ordering(capsys, scene64, tmp_path):
    # Reference-scale comparison: 64x64 symmetrized natural image, 6x10^4
    # iterations, 5 runs per scheme. Required: (a) phase-256 mean relative
    # final error < 0.55x phase-2's; (b) amplitude-256's in [0.60, 1.00]x
    # amplitude-2's; (c) the ordering holds in every individual run.
    config = ExperimentConfig(
        image_path=scene64,
        iterations=60_000,
        runs=5,
        base_seed=1,
        sample_stride=10_000,
        output_dir=tmp_path / "reference",
    )
    aggregate = run_convergence_experiment(config)
    pct = {label: np.array(v) for label, v in aggregate.relative_final_pct.items()}
    phase_ratio = pct["phase-256"].mean() / pct["phase-2"].mean()
    amp_ratio = pct["amplitude-256"].mean() / pct["amplitude-2"].mean()
    per_run_ok = bool(
        np.all(pct["phase-256"] < pct["phase-2"])
        and np.all(pct["amplitude-256"] <= pct["amplitude-2"])
    )
    ok = phase_ratio < 0.55 and 0.60 <= amp_ratio <= 1.00 and per_run_ok
    report(
        capsys, 5, "quantization-depth-ordering", ok,
        f"phase ratio {phase_ratio:.3f} (<0.55), amplitude ratio {amp_ratio:.3f} "
        f"(in [0.60, 1.00]), per-run ordering {per_run_ok}",
    )


@pytest.mark.slow
def test_criterion_6_single_pixel_win_rates(capsys, scene128, tmp_path):
    # 128x128 symmetrized natural image, 1000 sampled pixels: the full phase
    # level set beats binary phase at >95% of pixels, the amplitude set at
    # <15%, and phase wins more often than amplitude.
    t0 = time.perf_counter()
    config = ExperimentConfig(
        image_path=scene128,
        experiment="win-rate",
        win_pixels=1000,
        base_seed=1,
        output_dir=tmp_path / "win",
    )
    payload = run_win_rate_experiment(config)
    fractions = {r["kind"]: r["win_fraction"] for r in payload["results"]}
    elapsed = time.perf_counter() - t0
    ok = (
        fractions["phase"] > 0.95
        and fractions["amplitude"] < 0.15
        and fractions["phase"] > fractions["amplitude"]
        and elapsed < 120.0
    )
    report(
        capsys, 6, "single-pixel-win-rates", ok,
        f"phase {fractions['phase']:.3f} (>0.95), amplitude {fractions['amplitude']:.3f} "
        f"(<0.15), {elapsed:.1f}s",
    )


def test_criterion_7_superset_dominance(capsys):
    # At every pixel of a 12x12 target, for level sets that contain both
    # binary values, the multilevel minimum error never exceeds the binary
    # minimum. Exact comparison, zero violations permitted.
    target = natural_target(12, image_seed=70, phase_seed=71)
    violations = 0
    checked = 0
    for kind, counts in (("phase", (4, 8, 256)), ("amplitude", (3, 17, 256))):
        for count in counts:
            res = win_rate_details(target, kind, count, pixel_count=144, seed=0)
            violations += int(np.sum(res.multilevel_min > res.binary_min))
            violations += res.worse_count
            checked += res.pixel_count
    ok = violations == 0
    report(capsys, 7, "superset-dominance", ok, f"{violations} violations over {checked} pixel checks")


def test_criterion_8_artifact_determinism(capsys, tmp_path):
    # Repeating any experiment through the CLI with an identical
    # command line reproduces every artifact byte for byte.
    image = tmp_path / "scene16.pgm"
    save_grayscale(image, synthetic_scene(16, 16, seed=5))
    commands = {
        "convergence": [
            "convergence", "--image", str(image), "--scheme", "phase:2",
            "--scheme", "amplitude:256", "--iterations", "400", "--runs", "2",
            "--stride", "100", "--seed", "3",
        ],
        "phase-sweep": ["phase-sweep", "--image", str(image), "--sweep-samples", "64"],
        "win-rate": ["win-rate", "--image", str(image), "--win-pixels", "50"],
    }
    diffs = []
    for name, argv in commands.items():
        out_a, out_b = tmp_path / f"{name}-a", tmp_path / f"{name}-b"
        assert cli_main(argv + ["--out", str(out_a)]) == 0
        assert cli_main(argv + ["--out", str(out_b)]) == 0
        names_a = sorted(p.name for p in out_a.iterdir())
        names_b = sorted(p.name for p in out_b.iterdir())
        if names_a != names_b:
            diffs.append(f"{name}: file sets differ")
            continue
        for fname in names_a:
            if (out_a / fname).read_bytes() != (out_b / fname).read_bytes():
                diffs.append(f"{name}/{fname}")
    ok = not diffs
    report(
        capsys, 8, "artifact-determinism", ok,
        "3 experiments byte-identical on rerun" if ok else "differs: " + ", ".join(diffs),
    )


def test_criterion_9_phase_insensitive_metric(capsys):
    # Scrambling the replay's per-pixel phases moves the metric by < 1e-12
    # on 100 random field pairs.
    rng = np.random.default_rng(99)
    worst = 0.0
    for _ in range(100):
        height, width = int(rng.integers(2, 33)), int(rng.integers(2, 33))
        target = random_field(rng, height, width)
        replay = random_field(rng, height, width)
        base = mse_phase_insensitive(target, replay)
        phases = np.exp(1j * rng.uniform(-np.pi, np.pi, (height, width)))
        scrambled = mse_phase_insensitive(target, ComplexField(replay.values * phases))
        worst = max(worst, abs(scrambled - base))
    ok = worst < 1e-12
    report(capsys, 9, "phase-insensitive-metric", ok, f"max shift {worst:.2e} over 100 pairs")
