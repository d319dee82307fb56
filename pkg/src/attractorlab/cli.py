"""Batch front door: run experiments, sweep damping values, fit traces and
verify persisted attracting sets from the command line.

Exit codes: 0 success, 1 config error, 2 numerical blow-up, 3 unsatisfied
acceptance thresholds under --strict.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace

import numpy as np
import yaml

from .attracting import load_attracting_set, verify_attraction
from .covering import DecayTrace
from .criteria import fit_exponential_rate
from .dynamics import BlowUpError, entering_times
from .experiments import (
    load_experiment_config,
    run_experiment,
    sample_phase_ball,
    sweep_parameter,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_BLOWUP = 2
EXIT_THRESHOLD = 3


def _check_thresholds(headline: dict, thresholds: dict) -> int:
    """Thresholds are minima on headline numbers; missing or lower fails."""
    failures = []
    for key, minimum in thresholds.items():
        value = headline.get(key)
        if value is None or not math.isfinite(value) or value < minimum:
            failures.append(f"{key} = {value} < required {minimum}")
    if failures:
        for line in failures:
            print(f"threshold failed: {line}", file=sys.stderr)
        return EXIT_THRESHOLD
    return EXIT_OK


def _print_headline(headline: dict):
    for key in sorted(headline):
        print(f"{key} = {headline[key]:.6g}")


def _cmd_run(args) -> int:
    cfg = load_experiment_config(args.config)
    manifest = run_experiment(cfg)
    _print_headline(manifest.headline)
    print(f"wrote {len(manifest.files)} files to {cfg.output_dir}")
    if args.strict:
        return _check_thresholds(manifest.headline, cfg.thresholds)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = load_experiment_config(args.config)
    if args.values:
        values = tuple(float(v) for v in args.values.split(","))
    else:
        values = cfg.l_values
    if not values:
        raise ValueError("no damping values: pass --values or set grids.l_values")
    rows = sweep_parameter(replace(cfg, kind="sweep_l"), values)
    for row in rows:
        if row["status"] == "ok":
            print(
                f"l = {row['l']:g}: beta_hat = {row['beta_hat']:.6g}, "
                f"rate_energy = {row['rate_energy']:.6g}, "
                f"rate_contraction = {row['rate_contraction']:.6g}, "
                f"satisfied_fraction = {row['satisfied_fraction']:.6g}"
            )
        else:
            print(f"l = {row['l']:g}: FAILED ({row['error']})")
    if any(row["status"] != "ok" for row in rows):
        return EXIT_CONFIG
    if args.strict and "satisfied_fraction" in cfg.thresholds:
        worst = min(row["satisfied_fraction"] for row in rows)
        if worst < cfg.thresholds["satisfied_fraction"]:
            print(
                f"threshold failed: min satisfied_fraction {worst:g} < "
                f"{cfg.thresholds['satisfied_fraction']:g}",
                file=sys.stderr,
            )
            return EXIT_THRESHOLD
    return EXIT_OK


def _cmd_fit(args) -> int:
    trace = DecayTrace.from_csv(args.trace)
    fit = fit_exponential_rate(trace, args.floor)
    print(f"amplitude = {fit.amplitude:.10g}")
    print(f"rate = {fit.rate:.10g}")
    print(f"r_squared = {fit.r_squared:.10g}")
    print(f"window = [{fit.window[0]:g}, {fit.window[1]:g}]")
    return EXIT_OK


def _cmd_verify(args) -> int:
    cfg = load_experiment_config(args.config)
    aset = load_attracting_set(args.attractor_dir)
    with open(f"{args.attractor_dir}/manifest.json") as fh:
        stored = json.load(fh)
    radius = stored.get("absorbing_radius")
    if radius is None:
        raise ValueError("attractor manifest lacks absorbing_radius; cannot derive t_star")
    spec = cfg.metric
    rng = np.random.default_rng(cfg.seed)
    sample_phase_ball(rng, cfg.ensemble_count, cfg.ensemble_radius, spec, "probe")
    fresh = sample_phase_ball(rng, cfg.fresh_count, cfg.ensemble_radius, spec, "fresh")
    horizon = stored.get("burn_in", cfg.burn_in) + stored.get("window", cfg.window)
    t_star = max(entering_times(cfg.system, fresh.as_matrix(), radius, horizon))
    step = aset.orbit_sample_every
    t_lo = math.ceil((t_star + 1.0 + aset.m_range[0]) / step - 1e-9) * step
    t_grid = np.arange(t_lo, aset.t_orbit + 1e-9, step)
    certificate = verify_attraction(aset, fresh, t_star, t_grid, cfg.system, spec)
    print(f"t_star = {t_star:.6g}")
    print(f"checked_times = {len(certificate.times)}")
    print(f"satisfied_fraction = {certificate.satisfied_fraction:.6g}")
    if args.strict:
        return _check_thresholds(
            {"satisfied_fraction": certificate.satisfied_fraction}, cfg.thresholds
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="attractorlab",
        description="attracting-set experiments for damped wave dynamics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one experiment from a config file")
    p_run.add_argument("config")
    p_run.add_argument("--strict", action="store_true",
                       help="exit 3 if headline numbers miss config thresholds")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run the damping sweep")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--values", help="comma-separated damping values")
    p_sweep.add_argument("--strict", action="store_true")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_fit = sub.add_parser("fit", help="fit an exponential rate to a trace CSV")
    p_fit.add_argument("trace")
    p_fit.add_argument("--floor", type=float, default=1e-9,
                       help="ignore trace values at or below this floor")
    p_fit.set_defaults(func=_cmd_fit)

    p_verify = sub.add_parser("verify", help="verify a persisted attracting set")
    p_verify.add_argument("attractor_dir")
    p_verify.add_argument("config")
    p_verify.add_argument("--strict", action="store_true")
    p_verify.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BlowUpError as exc:
        print(f"numerical blow-up: {exc}", file=sys.stderr)
        return EXIT_BLOWUP
    except (ValueError, KeyError, OSError, yaml.YAMLError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
