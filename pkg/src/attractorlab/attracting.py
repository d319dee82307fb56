"""Constructive finite surrogate of a compact attracting set, with verification.

The construction mirrors how such sets are built from a decaying cover of an
absorbing set: for each integer birth time m, evolve the absorbed sample to
time m and greedily select evolved points until every evolved sample lies
within ``law.eval(m)`` of a selected center (the finite net).  Forward orbits
of the net points over [0, t_orbit], together with a long-time evolved copy of
the absorbed sample (the omega-limit surrogate), form the computable target
set.  The attraction certificate then measures, for a held-out ensemble, the
Hausdorff semidistance to that target against the bound
``law.eval(t - t_star - 1)``.

Everything here truncates: birth times to [m_min, m_max] and orbits to
[0, t_orbit]; the certificate only claims the covered window.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass

import numpy as np

from .covering import semidist_arrays
from .decay import DecayLaw
from .dynamics import flow, flow_samples
from .phase import Ensemble, MetricSpec, PhasePoint

__all__ = [
    "DegenerateRadiusError",
    "ContinuityBudgetError",
    "NetEntry",
    "AttractingSetApprox",
    "AttractionCertificate",
    "build_net",
    "build_attracting_set",
    "perturbed_net",
    "verify_attraction",
    "save_attracting_set",
    "load_attracting_set",
]

RADIUS_FLOOR = 1e-10
QUANT_FLOOR = 1e-12


class DegenerateRadiusError(ValueError):
    """Covering radius fell below the distance resolution floor."""


class ContinuityBudgetError(RuntimeError):
    """Quantization could not be made fine enough to respect the bound."""


@dataclass(frozen=True, eq=False)
class NetEntry:
    birth_time: int
    seed: PhasePoint
    evolved: PhasePoint


@dataclass(frozen=True, eq=False)
class AttractingSetApprox:
    """Finite net points, their sampled forward orbits, and a long-time proxy
    of the omega-limit set; the computable attracting-set surrogate."""

    net_entries: tuple
    orbit_samples: tuple
    orbit_index: tuple  # (entry position, orbit time) per orbit sample
    attractor_proxy: Ensemble
    law_used: DecayLaw
    m_range: tuple
    t_orbit: float
    orbit_sample_every: float

    def target_matrix(self) -> np.ndarray:
        """Raw (Q, 2N) coefficients of orbit samples plus proxy points."""
        rows = [p.as_array() for p in self.orbit_samples]
        rows += [p.as_array() for p in self.attractor_proxy.points]
        return np.stack(rows)


@dataclass(frozen=True, eq=False)
class AttractionCertificate:
    times: np.ndarray
    measured_semidist: np.ndarray
    bound_values: np.ndarray
    satisfied_fraction: float

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["t", "measured_semidist", "bound", "satisfied"])
            for t, m, b in zip(self.times, self.measured_semidist, self.bound_values):
                writer.writerow(
                    [repr(float(t)), repr(float(m)), repr(float(b)), int(m <= b)]
                )


def _embed(states: np.ndarray, spec: MetricSpec) -> np.ndarray:
    states = np.atleast_2d(np.asarray(states, dtype=float))
    n = spec.mode_count
    return spec.embed(states[:, :n], states[:, n:])


def _cover_indices(embedded: np.ndarray, radius: float) -> list[int]:
    """Greedy farthest-point selection until every point is within radius of a
    chosen center.  Starts from the point of largest norm, ties to lowest index."""
    first = int(np.argmax(np.linalg.norm(embedded, axis=1)))
    chosen = [first]
    dist = np.linalg.norm(embedded - embedded[first], axis=1)
    while np.max(dist) > radius:
        far = int(np.argmax(dist))
        chosen.append(far)
        dist = np.minimum(dist, np.linalg.norm(embedded - embedded[far], axis=1))
    return chosen


def build_net(
    absorbed: Ensemble, m: int, law: DecayLaw, spec: MetricSpec, cfg
) -> tuple:
    """Evolve the absorbed sample to integer time m and select a finite net
    whose balls of radius ``law.eval(m)`` cover all evolved points.

    The caller is responsible for the absorbed ensemble actually sitting
    inside the empirical absorbing ball and for m being past the burn-in.
    """
    m = int(m)
    if m < 1:
        raise ValueError("birth time m must be a positive integer")
    radius = law.eval(m)
    if radius < RADIUS_FLOOR:
        raise DegenerateRadiusError(
            f"law.eval({m}) = {radius:g} is below the distance floor {RADIUS_FLOOR:g}"
        )
    evolved = flow(cfg, absorbed.as_matrix(), float(m))
    embedded = _embed(evolved, spec)
    chosen = _cover_indices(embedded, radius)
    gap = semidist_arrays(embedded, embedded[chosen])
    assert gap <= radius + 1e-12, "net construction failed to cover its own sample"
    return tuple(
        NetEntry(m, absorbed.points[i], PhasePoint.from_array(evolved[i]))
        for i in chosen
    )


def perturbed_net(
    absorbed: Ensemble,
    m: int,
    law: DecayLaw,
    eps: float,
    rounder: float,
    cfg,
    spec: MetricSpec,
) -> tuple:
    """Like ``build_net`` but with every seed snapped to a quantization grid.

    The grid step starts at ``rounder`` and halves until evolving a quantized
    seed moves its time-m image by less than ``eps * law.eval(m)``; the
    resulting cover radius is then measured and certified to stay within
    ``(1 + eps) * law.eval(m)``.  ``rounder = 0`` disables quantization.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if rounder < 0:
        raise ValueError("rounder must be nonnegative")
    if rounder == 0.0:
        return build_net(absorbed, m, law, spec, cfg)
    m = int(m)
    radius = law.eval(m)
    if radius < RADIUS_FLOOR:
        raise DegenerateRadiusError(
            f"law.eval({m}) = {radius:g} is below the distance floor {RADIUS_FLOOR:g}"
        )
    states = absorbed.as_matrix()
    evolved = flow(cfg, states, float(m))
    embedded = _embed(evolved, spec)

    step = float(rounder)
    while True:
        quantized = np.round(states / step) * step
        evolved_q = flow(cfg, quantized, float(m))
        shift = np.linalg.norm(_embed(evolved_q, spec) - embedded, axis=1)
        if np.max(shift) < eps * radius:
            break
        step *= 0.5
        if step < QUANT_FLOOR:
            raise ContinuityBudgetError(
                f"quantization step shrank below {QUANT_FLOOR:g} without meeting "
                f"the continuity budget eps * law.eval(m) = {eps * radius:g}"
            )

    chosen = _cover_indices(embedded, radius)
    measured = semidist_arrays(embedded, _embed(evolved_q, spec)[chosen])
    if measured > (1.0 + eps) * radius + 1e-12:
        raise ContinuityBudgetError(
            f"perturbed cover radius {measured:g} exceeds "
            f"(1+eps) * law.eval(m) = {(1 + eps) * radius:g}"
        )
    return tuple(
        NetEntry(m, PhasePoint.from_array(quantized[i]), PhasePoint.from_array(evolved_q[i]))
        for i in chosen
    )


def build_attracting_set(
    absorbed: Ensemble,
    m_range: tuple,
    law: DecayLaw,
    t_orbit: float,
    orbit_sample_every: float,
    cfg,
    spec: MetricSpec,
) -> AttractingSetApprox:
    """Union of nets over integer birth times in ``m_range`` with forward
    orbits sampled on [0, t_orbit] and a long-time omega-limit proxy."""
    m_min, m_max = int(m_range[0]), int(m_range[1])
    if m_min < 1 or m_max < m_min:
        raise ValueError("m_range must satisfy 1 <= m_min <= m_max")
    if t_orbit < m_max:
        raise ValueError("t_orbit must reach at least m_max")
    if orbit_sample_every <= 0:
        raise ValueError("orbit_sample_every must be positive")

    entries = []
    for m in range(m_min, m_max + 1):
        entries.extend(build_net(absorbed, m, law, spec, cfg))
    entries = tuple(entries)

    orbit_times = list(np.arange(0.0, t_orbit + 1e-12, orbit_sample_every))
    if abs(orbit_times[-1] - t_orbit) > 1e-9 * max(1.0, t_orbit):
        orbit_times.append(t_orbit)
    net_states = np.stack([e.evolved.as_array() for e in entries])
    orbit_blocks = flow_samples(cfg, net_states, orbit_times)  # (K, E, 2N)

    samples = []
    index = []
    for e_pos in range(len(entries)):
        for k_pos, tau in enumerate(orbit_times):
            samples.append(PhasePoint.from_array(orbit_blocks[k_pos, e_pos]))
            index.append((e_pos, float(tau)))

    proxy_states = flow(cfg, absorbed.as_matrix(), 2.0 * t_orbit)
    proxy = Ensemble.from_matrix(proxy_states, label="attractor_proxy")

    return AttractingSetApprox(
        net_entries=entries,
        orbit_samples=tuple(samples),
        orbit_index=tuple(index),
        attractor_proxy=proxy,
        law_used=law,
        m_range=(m_min, m_max),
        t_orbit=float(t_orbit),
        orbit_sample_every=float(orbit_sample_every),
    )


def verify_attraction(
    aset: AttractingSetApprox,
    fresh: Ensemble,
    t_star: float,
    t_grid,
    cfg,
    spec: MetricSpec,
) -> AttractionCertificate:
    """Measure dist(S(t) fresh, target) against law.eval(t - t_star - 1) on the
    covered window [t_star + 1 + m_min, t_orbit]."""
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.size == 0:
        raise ValueError("t_grid must be nonempty")
    lo = t_star + 1.0 + aset.m_range[0]
    if np.any(t_grid < lo - 1e-9) or np.any(t_grid > aset.t_orbit + 1e-9):
        raise ValueError(
            f"t_grid outside orbit coverage [{lo:g}, {aset.t_orbit:g}]"
        )
    target = _embed(aset.target_matrix(), spec)
    evolved = flow_samples(cfg, fresh.as_matrix(), t_grid)
    measured = np.array(
        [semidist_arrays(_embed(evolved[i], spec), target) for i in range(t_grid.size)]
    )
    bounds = np.array([aset.law_used.eval(t - t_star - 1.0) for t in t_grid])
    satisfied = float(np.mean(measured <= bounds * (1 + 1e-12)))
    return AttractionCertificate(t_grid, measured, bounds, satisfied)


# ---------------------------------------------------------------------------
# directory persistence


def _coeff_header(prefix_a: str, prefix_b: str, n: int) -> list[str]:
    return [f"{prefix_a}_{j}" for j in range(1, n + 1)] + [
        f"{prefix_b}_{j}" for j in range(1, n + 1)
    ]


def save_attracting_set(aset: AttractingSetApprox, directory, extra: dict | None = None):
    """Write net.csv, orbits.csv, proxy.csv and manifest.json to a directory."""
    os.makedirs(directory, exist_ok=True)
    n = aset.attractor_proxy.mode_count

    with open(os.path.join(directory, "net.csv"), "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["m"] + _coeff_header("seed_a", "seed_b", n) + _coeff_header("a", "b", n)
        )
        for e in aset.net_entries:
            row = [e.birth_time]
            row += [repr(float(c)) for c in e.seed.as_array()]
            row += [repr(float(c)) for c in e.evolved.as_array()]
            writer.writerow(row)

    with open(os.path.join(directory, "orbits.csv"), "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["entry", "t"] + _coeff_header("a", "b", n))
        for (e_pos, tau), point in zip(aset.orbit_index, aset.orbit_samples):
            writer.writerow(
                [e_pos, repr(float(tau))] + [repr(float(c)) for c in point.as_array()]
            )

    with open(os.path.join(directory, "proxy.csv"), "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_coeff_header("a", "b", n))
        for p in aset.attractor_proxy.points:
            writer.writerow([repr(float(c)) for c in p.as_array()])

    manifest = {
        "law": {
            "kind": aset.law_used.kind,
            "amplitude": aset.law_used.amplitude,
            "rate": aset.law_used.rate,
            "shift": aset.law_used.shift,
        },
        "m_range": list(aset.m_range),
        "t_orbit": aset.t_orbit,
        "orbit_sample_every": aset.orbit_sample_every,
        "mode_count": n,
        "net_size": len(aset.net_entries),
        "orbit_sample_count": len(aset.orbit_samples),
    }
    if extra:
        manifest.update(extra)
    with open(os.path.join(directory, "manifest.json"), "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)


def load_attracting_set(directory) -> AttractingSetApprox:
    with open(os.path.join(directory, "manifest.json")) as fh:
        manifest = json.load(fh)
    law = DecayLaw(**manifest["law"])

    def read_rows(name):
        with open(os.path.join(directory, name), newline="") as fh:
            return list(csv.reader(fh))

    net_rows = read_rows("net.csv")[1:]
    entries = []
    for row in net_rows:
        vals = np.array([float(v) for v in row[1:]])
        half = vals.size // 2
        entries.append(
            NetEntry(
                int(row[0]),
                PhasePoint.from_array(vals[:half]),
                PhasePoint.from_array(vals[half:]),
            )
        )

    orbit_rows = read_rows("orbits.csv")[1:]
    samples, index = [], []
    for row in orbit_rows:
        index.append((int(row[0]), float(row[1])))
        samples.append(PhasePoint.from_array(np.array([float(v) for v in row[2:]])))

    proxy_rows = read_rows("proxy.csv")[1:]
    proxy = Ensemble.from_matrix(
        np.array([[float(v) for v in row] for row in proxy_rows]),
        label="attractor_proxy",
    )

    return AttractingSetApprox(
        net_entries=tuple(entries),
        orbit_samples=tuple(samples),
        orbit_index=tuple(index),
        attractor_proxy=proxy,
        law_used=law,
        m_range=tuple(manifest["m_range"]),
        t_orbit=float(manifest["t_orbit"]),
        orbit_sample_every=float(manifest["orbit_sample_every"]),
    )
