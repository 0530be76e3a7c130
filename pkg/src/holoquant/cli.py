"""Command-line front end.

    holoquant <experiment> [--config FILE] [--image PATH] [options]

Experiments: convergence, phase-sweep, amplitude-sweep, win-rate. Options
override config-file keys, which override defaults; the HOLOQUANT_SEED
environment variable overrides the base seed last. Exit code 0 on success,
2 on failure with a message naming the failing stage.
"""

from __future__ import annotations

import argparse
import os
import sys

from .experiments import (
    build_config,
    load_grayscale,
    parse_metric,
    parse_schemes,
    run_convergence_experiment,
    run_sweep_experiment,
    run_win_rate_experiment,
)
from .search import ALGORITHMS, PIXEL_ORDERS

SEED_ENV_VAR = "HOLOQUANT_SEED"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="holoquant",
        description="Quantized-SLM holography experiments: binary vs multi-level modulation.",
    )
    sub = parser.add_subparsers(dest="experiment", required=True, metavar="experiment")
    for name, help_text in (
        ("convergence", "multi-run search convergence across schemes (CSV/JSON/PGM)"),
        ("phase-sweep", "error vs single-pixel phase offset, 10 pixels (CSV)"),
        ("amplitude-sweep", "error vs single-pixel amplitude, 10 pixels (CSV)"),
        ("win-rate", "fraction of pixels where multilevel beats binary (JSON)"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--image", help="input image (binary PGM or 8-bit grayscale PNG)")
        p.add_argument(
            "--scheme",
            action="append",
            metavar="KIND:LEVELS",
            help="modulation scheme, repeatable (e.g. phase:256); default all four",
        )
        p.add_argument("--algorithm", choices=ALGORITHMS)
        p.add_argument("--iterations", type=int)
        p.add_argument("--runs", type=int)
        p.add_argument("--seed", type=int, help="base seed; run k uses seed+k")
        p.add_argument("--stride", type=int, help="trace sampling stride")
        p.add_argument("--metric", choices=["eq2", "power"])
        p.add_argument("--pixel-order", choices=PIXEL_ORDERS)
        p.add_argument("--out", help="output directory")
        p.add_argument("--workers", type=int, help="parallel (scheme, run) jobs")
        p.add_argument("--win-pixels", type=int, help="pixels sampled by win-rate")
        p.add_argument("--sweep-samples", type=int, help="samples per sweep curve")
        p.add_argument("--sweep-lo", type=float, help="amplitude sweep lower bound")
        p.add_argument("--sweep-hi", type=float, help="amplitude sweep upper bound")
        p.add_argument("--t-initial", type=float, help="annealing start temperature")
        p.add_argument("--t-final", type=float, help="annealing end temperature")
    return parser


def _fail(stage: str, exc: BaseException) -> int:
    print(f"holoquant: {stage} failed: {exc}", file=sys.stderr)
    return 2


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)

    try:
        overrides = {
            "experiment": args.experiment,
            "image_path": args.image,
            "schemes": parse_schemes(",".join(args.scheme)) if args.scheme else None,
            "algorithm": args.algorithm,
            "iterations": args.iterations,
            "runs": args.runs,
            "base_seed": args.seed,
            "sample_stride": args.stride,
            "metric": parse_metric(args.metric) if args.metric else None,
            "pixel_order": args.pixel_order,
            "output_dir": args.out,
            "workers": args.workers,
            "win_pixels": args.win_pixels,
            "sweep_samples": args.sweep_samples,
            "sweep_lo": args.sweep_lo,
            "sweep_hi": args.sweep_hi,
            "t_initial": args.t_initial,
            "t_final": args.t_final,
        }
        env_seed = os.environ.get(SEED_ENV_VAR)
        if env_seed is not None:
            try:
                overrides["base_seed"] = int(env_seed)
            except ValueError:
                raise ValueError(f"{SEED_ENV_VAR}={env_seed!r} is not an integer") from None
        config = build_config(args.config, overrides)
    except (ValueError, OSError) as exc:
        return _fail("configuration", exc)

    try:
        load_grayscale(config.image_path)
    except (ValueError, OSError) as exc:
        return _fail("input image", exc)

    try:
        if config.experiment == "convergence":
            aggregate = run_convergence_experiment(config)
            for label in aggregate.scheme_labels:
                pct = aggregate.relative_final_pct[label]
                mean = sum(pct) / len(pct)
                print(f"{label}: mean relative final error {mean:.3f}% over {len(pct)} run(s)")
        elif config.experiment in ("phase-sweep", "amplitude-sweep"):
            paths = run_sweep_experiment(config)
            print(f"wrote {len(paths)} sweep files")
        else:
            payload = run_win_rate_experiment(config)
            for entry in payload["results"]:
                print(
                    f"{entry['kind']}-{entry['levels']}: win fraction {entry['win_fraction']:.4f} "
                    f"({entry['pixel_count']} pixels, {entry['multilevel_worse_count']} strictly worse)"
                )
        print(f"artifacts in {config.output_dir}")
    except (ValueError, OSError, RuntimeError) as exc:
        return _fail("experiment", exc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
