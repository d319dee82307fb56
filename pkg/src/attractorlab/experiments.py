"""Config-driven experiment pipelines with reproducible outputs.

Every pipeline is a pure function of (config, seed): ensembles are drawn from
a seeded PCG64 generator (``numpy.random.default_rng``), all numeric output is
written with shortest round-trip ``repr`` so reruns are byte-identical, and a
manifest listing every emitted file with its SHA-256 checksum is written last.

Sampling algorithm (fixed so runs are portable): a direction uniform on the
unit sphere of the energy metric is drawn by normalizing a standard Gaussian
in embedded coordinates, then scaled by ``radius * U**(1 / (2N))`` with U
uniform on (0, 1); this is uniform in the energy-metric ball.
"""

from __future__ import annotations

import csv
import hashlib
import json
import math
import os
import time
from dataclasses import dataclass, field, replace

import numpy as np
import yaml

from . import __version__
from .attracting import build_attracting_set, save_attracting_set, verify_attraction
from .covering import DecayTrace, decay_trace
from .decay import DecayLaw
from .criteria import (
    check_hausdorff_criterion,
    contractive_inequality_check,
    fit_envelope_law,
    fit_exponential_rate,
    predicted_rate_bounds,
    quasistability_estimate,
    tail_projection_decay,
)
from .dynamics import (
    LinearModalConfig,
    WaveSystemConfig,
    absorbing_radius,
    entering_times,
    flow,
    flow_samples,
    modal_slow_rate,
    wave_config_from_dict,
    _num,
)
from .phase import Ensemble, MetricSpec

__all__ = [
    "ExperimentConfig",
    "RunManifest",
    "sample_phase_ball",
    "run_experiment",
    "sweep_parameter",
    "load_experiment_config",
]

EXPERIMENT_KINDS = (
    "oracle_decay",
    "wave_attractor",
    "sweep_l",
    "quasistability",
    "criteria_suite",
)


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    kind: str
    system: object
    output_dir: str
    seed: int = 0
    ensemble_count: int = 30
    ensemble_radius: float = 2.0
    fresh_count: int = 20
    t_grid: np.ndarray = field(default_factory=lambda: np.arange(0.0, 12.25, 0.25))
    m_range: tuple = (1, 4)
    l_values: tuple = ()
    burn_in: float = 4.0
    window: float = 2.0
    m_clusters: int = 3
    t_orbit: float = 12.0
    orbit_sample_every: float = 0.25
    fit_floor: float = 1e-9
    n_periods: int = 8
    low_mode_threshold: int = 4
    closeness: float | None = None
    quasi_period: float | None = None
    thresholds: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in EXPERIMENT_KINDS:
            raise ValueError(
                f"unknown experiment kind {self.kind!r}, expected one of {EXPERIMENT_KINDS}"
            )
        if not isinstance(self.system, (WaveSystemConfig, LinearModalConfig)):
            raise ValueError("system must be a wave or linear modal config")
        t = np.asarray(self.t_grid, dtype=float)
        if t.size == 0 or np.any(np.diff(t) <= 0):
            raise ValueError("t_grid must be nonempty and strictly increasing")
        object.__setattr__(self, "t_grid", t)
        if self.ensemble_count < 1 or self.fresh_count < 1:
            raise ValueError("ensemble counts must be positive")
        if self.ensemble_radius <= 0:
            raise ValueError("ensemble_radius must be positive")

    @property
    def metric(self) -> MetricSpec:
        if isinstance(self.system, LinearModalConfig):
            return MetricSpec(self.system.mode_eigenvalues)
        return MetricSpec.dirichlet_1d(self.system.mode_count)


@dataclass
class RunManifest:
    kind: str
    config: dict
    version: str
    duration_s: float
    files: dict
    headline: dict
    status: str = "ok"
    error: str = ""
    table: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "config": self.config,
            "artifact_version": self.version,
            "duration_s": self.duration_s,
            "files": self.files,
            "headline": self.headline,
            "status": self.status,
            "error": self.error,
            "table": self.table,
        }

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.as_dict(), fh, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# sampling and serialization helpers


def sample_phase_ball(rng, count: int, radius: float, spec: MetricSpec, label: str = "") -> Ensemble:
    """Uniform sample of the energy-metric ball; see the module docstring for
    the exact (fixed) algorithm."""
    dim = 2 * spec.mode_count
    g = rng.standard_normal((count, dim))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    r = radius * rng.random(count) ** (1.0 / dim)
    emb = g * r[:, None]
    n = spec.mode_count
    positions = emb[:, :n] / np.sqrt(spec.mode_eigenvalues)
    rows = np.concatenate([positions, emb[:, n:]], axis=1)
    return Ensemble.from_matrix(rows, label=label)


def system_to_dict(system) -> dict:
    if isinstance(system, LinearModalConfig):
        return {
            "type": "linear",
            "l": system.damping,
            "mode_eigenvalues": [float(v) for v in system.mode_eigenvalues],
        }
    return {
        "type": "wave",
        "mode_count": system.mode_count,
        "k": system.k,
        "p": system.p,
        "l": system.l,
        "f_coeffs": list(system.f_coeffs),
        "kernel": [{"weight": w, "coeffs": list(c)} for w, c in system.kernel],
        "h_coeffs": list(system.h_coeffs),
        "dt": system.dt,
        "collocation_points": system.collocation_points,
    }


def config_to_dict(cfg: ExperimentConfig) -> dict:
    return {
        "kind": cfg.kind,
        "output_dir": cfg.output_dir,
        "seed": cfg.seed,
        "ensemble": {
            "count": cfg.ensemble_count,
            "radius": cfg.ensemble_radius,
            "fresh_count": cfg.fresh_count,
        },
        "system": system_to_dict(cfg.system),
        "grids": {
            "t_grid": [float(t) for t in cfg.t_grid],
            "m_range": list(cfg.m_range),
            "l_values": list(cfg.l_values),
        },
        "pipeline": {
            "burn_in": cfg.burn_in,
            "window": cfg.window,
            "m_clusters": cfg.m_clusters,
            "t_orbit": cfg.t_orbit,
            "orbit_sample_every": cfg.orbit_sample_every,
            "fit_floor": cfg.fit_floor,
            "n_periods": cfg.n_periods,
            "low_mode_threshold": cfg.low_mode_threshold,
            "closeness": cfg.closeness,
            "quasi_period": cfg.quasi_period,
        },
        "thresholds": dict(cfg.thresholds),
    }


def write_csv(path, header, rows):
    """All floats go through repr so identical runs are byte-identical."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row]
            )


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _inventory(output_dir) -> dict:
    files = {}
    for root, _dirs, names in os.walk(output_dir):
        for name in sorted(names):
            full = os.path.join(root, name)
            rel = os.path.relpath(full, output_dir)
            if rel == "manifest.json":
                continue
            files[rel] = _sha256(full)
    return files


def _snapshots(system, states, t_grid):
    blocks = flow_samples(system, states, t_grid)
    return [(float(t), Ensemble.from_matrix(blocks[i])) for i, t in enumerate(t_grid)]


def _semidist_to_origin_trace(spec, snapshots) -> DecayTrace:
    values = [
        float(np.max(np.linalg.norm(ens.embed(spec), axis=1))) for _, ens in snapshots
    ]
    return DecayTrace(
        np.array([t for t, _ in snapshots]), np.array(values), "semidist"
    )


# ---------------------------------------------------------------------------
# pipelines


def _pipeline_oracle_decay(cfg: ExperimentConfig, out):
    system, spec = cfg.system, cfg.metric
    if not isinstance(system, LinearModalConfig):
        raise ValueError("oracle_decay runs on the linear modal system")
    rng = np.random.default_rng(cfg.seed)
    probe = sample_phase_ball(rng, cfg.ensemble_count, cfg.ensemble_radius, spec, "probe")
    snapshots = _snapshots(system, probe.as_matrix(), cfg.t_grid)

    semidist = _semidist_to_origin_trace(spec, snapshots)
    alpha = decay_trace(snapshots, cfg.m_clusters, spec)
    semidist.to_csv(out("trace_semidist.csv"))
    alpha.to_csv(out("trace_alpha.csv"))

    fit = fit_exponential_rate(semidist, cfg.fit_floor)
    fit_alpha = fit_exponential_rate(alpha, cfg.fit_floor)
    bounds = predicted_rate_bounds(system, spec)
    headline = {
        "beta_hat": fit.rate,
        "c_hat": fit.amplitude,
        "r_squared": fit.r_squared,
        "beta_hat_alpha": fit_alpha.rate,
        "rate_energy": bounds.rate_energy,
        "rate_contraction": bounds.rate_contraction,
        "envelope_rate": modal_slow_rate(system.damping, system.mode_eigenvalues),
    }
    return headline, []


def _pipeline_wave_attractor(cfg: ExperimentConfig, out):
    system, spec = cfg.system, cfg.metric
    if not isinstance(system, WaveSystemConfig):
        raise ValueError("wave_attractor runs on the wave system")
    rng = np.random.default_rng(cfg.seed)
    probe = sample_phase_ball(rng, cfg.ensemble_count, cfg.ensemble_radius, spec, "probe")
    fresh = sample_phase_ball(rng, cfg.fresh_count, cfg.ensemble_radius, spec, "fresh")

    radius, t_enter = absorbing_radius(system, probe, cfg.burn_in, cfg.window)
    # anchor the absorbing-ball sample at the probe's own entering time: later
    # states are over-contracted and would miscalibrate the law's amplitude
    snap = cfg.orbit_sample_every
    absorb_time = math.ceil(max(t_enter) / snap - 1e-9) * snap
    absorbed_states = (
        flow(system, probe.as_matrix(), absorb_time) if absorb_time > 0 else probe.as_matrix()
    )
    absorbed = Ensemble.from_matrix(absorbed_states, label="absorbed")

    snapshots = _snapshots(system, absorbed.as_matrix(), cfg.t_grid)
    alpha = decay_trace(snapshots, cfg.m_clusters, spec)
    alpha.to_csv(out("trace_alpha.csv"))
    bounds = predicted_rate_bounds(system, spec) if system.l > 0 else None
    degenerate = int(np.sum(alpha.values > cfg.fit_floor)) < 4
    if degenerate:
        # sample spread never rises above the floor (e.g. an exact equilibrium);
        # any positive envelope dominates, so use the predicted rate
        fit = None
        law = DecayLaw(
            "exponential", 10.0 * cfg.fit_floor,
            bounds.rate_energy if bounds else 1.0,
        )
    else:
        fit = fit_exponential_rate(alpha, cfg.fit_floor)
        law = fit_envelope_law(alpha, cfg.fit_floor)

    aset = build_attracting_set(
        absorbed, cfg.m_range, law, cfg.t_orbit, cfg.orbit_sample_every, system, spec
    )
    t_star = max(
        entering_times(system, fresh.as_matrix(), radius, cfg.burn_in + cfg.window)
    )
    step = cfg.orbit_sample_every
    t_lo = math.ceil((t_star + 1.0 + cfg.m_range[0]) / step - 1e-9) * step
    if t_lo > cfg.t_orbit:
        raise ValueError(
            f"verification window is empty: entering time {t_star:g} pushes the "
            f"first check past t_orbit = {cfg.t_orbit:g}"
        )
    t_grid_verify = np.arange(t_lo, cfg.t_orbit + 1e-9, step)
    certificate = verify_attraction(aset, fresh, t_star, t_grid_verify, system, spec)

    save_attracting_set(
        aset,
        out("attractor"),
        extra={"absorbing_radius": radius, "t_star": t_star,
               "burn_in": cfg.burn_in, "window": cfg.window},
    )
    certificate.to_csv(out("certificate.csv"))

    headline = {
        "c_env": law.amplitude,
        "satisfied_fraction": certificate.satisfied_fraction,
        "absorbing_radius": radius,
        "absorb_time": absorb_time,
        "t_star": t_star,
        "net_size": float(len(aset.net_entries)),
        "orbit_sample_count": float(len(aset.orbit_samples)),
        "degenerate_trace": float(degenerate),
    }
    if fit is not None:
        headline["beta_hat"] = fit.rate
        headline["r_squared"] = fit.r_squared
    if bounds is not None:
        headline["rate_energy"] = bounds.rate_energy
        headline["rate_contraction"] = bounds.rate_contraction
    return headline, []


def _with_damping(system: WaveSystemConfig, damping: float) -> WaveSystemConfig:
    return WaveSystemConfig(
        mode_count=system.mode_count,
        k=system.k,
        p=system.p,
        l=float(damping),
        f_coeffs=system.f_coeffs,
        kernel=system.kernel,
        h_coeffs=system.h_coeffs,
        dt=system.dt,
        collocation_points=system.collocation_points,
    )


def sweep_parameter(base: ExperimentConfig, values) -> list:
    """One wave_attractor run per damping value; emits sweep.csv in the base
    output directory.  Per-value failures are recorded in their row and the
    sweep continues."""
    values = [float(v) for v in values]
    if len(values) < 1:
        raise ValueError("need at least one damping value")
    if not isinstance(base.system, WaveSystemConfig):
        raise ValueError("sweep_l runs on the wave system")
    rows = []
    for i, val in enumerate(values):
        sub_dir = os.path.join(base.output_dir, f"l_{i}_{val:g}")
        sub = replace(
            base,
            kind="wave_attractor",
            system=_with_damping(base.system, val),
            output_dir=sub_dir,
            l_values=(),
        )
        row = {"l": val}
        try:
            manifest = run_experiment(sub)
            head = manifest.headline
            row.update(
                beta_hat=head.get("beta_hat", float("nan")),
                rate_energy=head.get("rate_energy", float("nan")),
                rate_contraction=head.get("rate_contraction", float("nan")),
                satisfied_fraction=head["satisfied_fraction"],
                status="ok",
                error="",
            )
        except Exception as exc:  # noqa: BLE001 - row-level fault isolation
            row.update(
                beta_hat=float("nan"),
                rate_energy=float("nan"),
                rate_contraction=float("nan"),
                satisfied_fraction=float("nan"),
                status="failed",
                error=str(exc),
            )
        rows.append(row)
    os.makedirs(base.output_dir, exist_ok=True)
    write_csv(
        os.path.join(base.output_dir, "sweep.csv"),
        ["l", "beta_hat", "rate_energy", "rate_contraction", "satisfied_fraction",
         "status", "error"],
        [
            [r["l"], r["beta_hat"], r["rate_energy"], r["rate_contraction"],
             r["satisfied_fraction"], r["status"], r["error"]]
            for r in rows
        ],
    )
    return rows


def _pipeline_sweep_l(cfg: ExperimentConfig, out):
    if not cfg.l_values:
        raise ValueError("sweep_l needs a nonempty l_values grid")
    rows = sweep_parameter(cfg, cfg.l_values)
    ok = [r for r in rows if r["status"] == "ok"]
    headline = {
        "rows_total": float(len(rows)),
        "rows_ok": float(len(ok)),
    }
    if ok:
        headline["min_satisfied_fraction"] = min(r["satisfied_fraction"] for r in ok)
        headline["max_beta_hat"] = max(r["beta_hat"] for r in ok)
    return headline, rows


def _pipeline_quasistability(cfg: ExperimentConfig, out):
    system, spec = cfg.system, cfg.metric
    rng = np.random.default_rng(cfg.seed)
    probe = sample_phase_ball(rng, cfg.ensemble_count, cfg.ensemble_radius, spec, "probe")
    if isinstance(system, WaveSystemConfig):
        absorbed = Ensemble.from_matrix(
            flow(system, probe.as_matrix(), cfg.burn_in + cfg.window), label="absorbed"
        )
    else:
        absorbed = probe
    period = cfg.quasi_period if cfg.quasi_period else 3.0 / float(system.l)
    report = quasistability_estimate(
        absorbed,
        period,
        cfg.n_periods,
        cfg.low_mode_threshold,
        cfg.closeness,
        system,
        spec,
        m_clusters=cfg.m_clusters,
    )
    rows = []
    for n, ratio in enumerate(report.per_period_alpha_ratios, start=1):
        rows.append([float(n), ratio, 2.0 * report.predicted_eta**n])
    write_csv(out("quasistability.csv"), ["n", "alpha_ratio", "bound"], rows)
    headline = {
        "eta_hat": report.eta_hat,
        "predicted_eta": report.predicted_eta,
        "period": report.period,
        "pair_count": float(report.pair_count),
        "excluded_pair_count": float(report.excluded_pair_count),
    }
    if report.per_period_alpha_ratios:
        excess = max(
            ratio / (2.0 * report.predicted_eta**n)
            for n, ratio in enumerate(report.per_period_alpha_ratios, start=1)
        )
        headline["max_ratio_over_bound"] = excess
    return headline, [dict(report.as_dict())]


def _pipeline_criteria_suite(cfg: ExperimentConfig, out):
    system, spec = cfg.system, cfg.metric
    rng = np.random.default_rng(cfg.seed)
    probe = sample_phase_ball(rng, cfg.ensemble_count, cfg.ensemble_radius, spec, "probe")
    if isinstance(system, WaveSystemConfig):
        absorbed = Ensemble.from_matrix(
            flow(system, probe.as_matrix(), cfg.burn_in + cfg.window), label="absorbed"
        )
    else:
        absorbed = probe

    snapshots = _snapshots(system, absorbed.as_matrix(), cfg.t_grid)
    alpha = decay_trace(snapshots, cfg.m_clusters, spec)
    alpha.to_csv(out("trace_alpha.csv"))
    law = fit_envelope_law(alpha, cfg.fit_floor)

    candidate = Ensemble.from_matrix(
        flow(system, absorbed.as_matrix(), 2.0 * cfg.t_orbit), label="candidate"
    )
    grid = cfg.t_grid[cfg.t_grid > 0]
    hausdorff = check_hausdorff_criterion(candidate, absorbed, grid, law, system, spec)
    hausdorff.to_csv(out("hausdorff_criterion.csv"))

    tail = tail_projection_decay(absorbed, cfg.low_mode_threshold, cfg.t_grid, system, spec)
    tail.to_csv(out("tail_trace.csv"))

    pts = absorbed.points
    pairs = [(pts[i], pts[j]) for i in range(len(pts)) for j in range(i + 1, len(pts))]
    contractive = contractive_inequality_check(
        pairs, grid, law, cfg.m_clusters, system, spec
    )
    contractive.to_csv(out("contractive_check.csv"))

    headline = {
        "law_rate": law.rate,
        "law_amplitude": law.amplitude,
        "hausdorff_satisfied_fraction": hausdorff.satisfied_fraction,
        "alpha_within_fraction": hausdorff.alpha_within_fraction,
        "contractive_conclusion_fraction": contractive.conclusion_fraction,
        "tail_final": float(tail.values[-1]),
    }
    return headline, []


_PIPELINES = {
    "oracle_decay": _pipeline_oracle_decay,
    "wave_attractor": _pipeline_wave_attractor,
    "sweep_l": _pipeline_sweep_l,
    "quasistability": _pipeline_quasistability,
    "criteria_suite": _pipeline_criteria_suite,
}


def run_experiment(cfg: ExperimentConfig) -> RunManifest:
    """Execute the configured pipeline; deterministic given (config, seed).

    The manifest is written last; on failure a manifest marked failed is still
    written and the error re-raised, with partial files retained.
    """
    os.makedirs(cfg.output_dir, exist_ok=True)

    def out(name: str) -> str:
        return os.path.join(cfg.output_dir, name)

    start = time.perf_counter()
    try:
        headline, table = _PIPELINES[cfg.kind](cfg, out)
    except Exception as exc:
        manifest = RunManifest(
            kind=cfg.kind,
            config=config_to_dict(cfg),
            version=__version__,
            duration_s=time.perf_counter() - start,
            files=_inventory(cfg.output_dir),
            headline={},
            status="failed",
            error=f"{type(exc).__name__}: {exc}",
        )
        manifest.save(out("manifest.json"))
        raise
    manifest = RunManifest(
        kind=cfg.kind,
        config=config_to_dict(cfg),
        version=__version__,
        duration_s=time.perf_counter() - start,
        files=_inventory(cfg.output_dir),
        headline=headline,
        table=table,
    )
    manifest.save(out("manifest.json"))
    return manifest


# ---------------------------------------------------------------------------
# config-file loading


def _parse_grid(raw, name: str) -> np.ndarray:
    if isinstance(raw, dict):
        keys = set(raw)
        if keys == {"start", "stop", "step"}:
            start, stop, step = (_num(raw[k], name) for k in ("start", "stop", "step"))
            return np.arange(start, stop + 1e-9 * max(1.0, abs(stop)), step)
        if keys == {"start", "stop", "count"}:
            return np.linspace(
                _num(raw["start"], name), _num(raw["stop"], name), int(raw["count"])
            )
        raise ValueError(f"{name} mapping must have keys start/stop/step or start/stop/count")
    return np.array([_num(v, name) for v in raw], dtype=float)


def _parse_system(raw: dict):
    if not isinstance(raw, dict) or "type" not in raw:
        raise ValueError("system section must be a mapping with a 'type' key")
    kind = raw["type"]
    body = {k: v for k, v in raw.items() if k != "type"}
    if kind == "wave":
        return wave_config_from_dict(body)
    if kind == "linear":
        damping = _num(body.pop("l", body.pop("damping", None)), "system.l")
        if "mode_eigenvalues" in body:
            lam = np.array([_num(v, "mode_eigenvalues") for v in body.pop("mode_eigenvalues")])
        elif "mode_count" in body:
            n = int(_num(body.pop("mode_count"), "mode_count"))
            lam = np.arange(1, n + 1, dtype=float) ** 2
        else:
            raise ValueError("linear system needs mode_count or mode_eigenvalues")
        if body:
            raise ValueError(f"unknown linear system keys: {sorted(body)}")
        return LinearModalConfig(damping, lam)
    raise ValueError(f"unknown system type {kind!r}, expected 'wave' or 'linear'")


def load_experiment_config(path) -> ExperimentConfig:
    """Read the documented YAML schema; numeric fields accept scientific
    notation whether or not YAML parsed them as strings."""
    with open(path) as fh:
        raw = yaml.safe_load(fh)
    if not isinstance(raw, dict):
        raise ValueError("experiment config must be a mapping")
    known = {"kind", "output_dir", "seed", "ensemble", "system", "grids",
             "pipeline", "thresholds"}
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown config sections: {sorted(unknown)}")
    for key in ("kind", "output_dir", "system"):
        if key not in raw:
            raise ValueError(f"config needs a {key!r} entry")

    ensemble = raw.get("ensemble") or {}
    grids = raw.get("grids") or {}
    pipeline = raw.get("pipeline") or {}
    kwargs = {
        "kind": raw["kind"],
        "system": _parse_system(raw["system"]),
        "output_dir": str(raw["output_dir"]),
        "seed": int(raw.get("seed", 0)),
        "ensemble_count": int(ensemble.get("count", 30)),
        "ensemble_radius": _num(ensemble.get("radius", 2.0), "ensemble.radius"),
        "fresh_count": int(ensemble.get("fresh_count", 20)),
        "thresholds": {
            str(k): _num(v, f"thresholds.{k}") for k, v in (raw.get("thresholds") or {}).items()
        },
    }
    if "t_grid" in grids:
        kwargs["t_grid"] = _parse_grid(grids["t_grid"], "t_grid")
    if "m_range" in grids:
        pair = [int(_num(v, "m_range")) for v in grids["m_range"]]
        if len(pair) != 2:
            raise ValueError("m_range must be a pair [m_min, m_max]")
        kwargs["m_range"] = tuple(pair)
    if "l_values" in grids:
        kwargs["l_values"] = tuple(_num(v, "l_values") for v in grids["l_values"])
    numeric_keys = {
        "burn_in", "window", "t_orbit", "orbit_sample_every", "fit_floor",
        "closeness", "quasi_period",
    }
    int_keys = {"m_clusters", "n_periods", "low_mode_threshold"}
    for key, value in pipeline.items():
        if key in numeric_keys:
            kwargs[key] = None if value is None else _num(value, key)
        elif key in int_keys:
            kwargs[key] = int(_num(value, key))
        else:
            raise ValueError(f"unknown pipeline key {key!r}")
    return ExperimentConfig(**kwargs)
