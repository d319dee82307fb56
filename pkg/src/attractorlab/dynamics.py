"""Semigroup engines: spectral-Galerkin damped wave dynamics and a closed-form
linear modal oracle.

The wave system on the interval (0, pi) with Dirichlet ends, truncated to N
sine modes,

    u_tt + (k ||u_t||^p + l) u_t - u_xx + f(u) = (K u_t) + h,

becomes a first-order system for coefficients (a, b) = (u-hat, u_t-hat):

    a_j' = b_j
    b_j' = -lam_j a_j - (k (sum b^2)^(p/2) + l) b_j - fhat_j(a) + (K b)_j + h_j

with lam_j = j^2.  The nonlinearity is applied pseudo-spectrally: synthesize u
on a collocation grid of at least 2N+1 interior points, apply f pointwise,
project back with the matching quadrature.  Using the same quadrature for the
potential integral in the Lyapunov functional makes the semi-discrete energy
identity exact, so dissipation checks are meaningful at solver accuracy.

Integration is fixed-step classical Runge-Kutta; all state arrays may carry
leading batch dimensions, so whole ensembles evolve in one pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import yaml

from .phase import Ensemble, PhasePoint

__all__ = [
    "BlowUpError",
    "NonDissipativeError",
    "WaveSystemConfig",
    "LinearModalConfig",
    "TrajectoryRecord",
    "wave_rhs",
    "evolve",
    "evolve_states",
    "linear_modal_evolve",
    "modal_propagator",
    "flow",
    "flow_samples",
    "lyapunov",
    "absorbing_radius",
    "wave_config_from_dict",
    "load_wave_config",
]

MAX_STEPS = 5_000_000


class BlowUpError(RuntimeError):
    """Raised when the integrator produces a non-finite state."""

    def __init__(self, time: float):
        self.time = float(time)
        super().__init__(f"solution blew up (non-finite state) at t = {self.time:g}")


class NonDissipativeError(RuntimeError):
    """Raised when probe norms are still growing at the absorbing horizon."""


@lru_cache(maxsize=32)
def _sine_collocation(n_modes: int, n_points: int):
    """Interior grid, synthesis matrix and quadrature weight for the orthonormal
    sine basis sqrt(2/pi) sin(j x) on (0, pi).

    With G interior equispaced nodes the discrete sine transform is exactly
    orthogonal for modes j <= G, so analyze(synthesize(a)) == a.
    """
    g = np.arange(1, n_points + 1, dtype=float)
    x = g * np.pi / (n_points + 1)
    j = np.arange(1, n_modes + 1, dtype=float)
    synth = np.sqrt(2.0 / np.pi) * np.sin(np.outer(x, j))
    weight = np.pi / (n_points + 1)
    x.setflags(write=False)
    synth.setflags(write=False)
    return x, synth, weight


def _trim_poly(coeffs) -> np.ndarray:
    c = np.asarray(coeffs, dtype=float).ravel()
    nz = np.flatnonzero(c != 0.0)
    return c[: nz[-1] + 1] if nz.size else np.zeros(0)


@dataclass(frozen=True, eq=False)
class WaveSystemConfig:
    """All coefficients of the damped wave system plus discretization knobs.

    ``f_coeffs`` are polynomial coefficients of f, lowest degree first; a
    nonzero f must have odd top degree with positive leading coefficient
    (the structural stand-in for the dissipativity condition on f).
    ``kernel`` is a finite-rank velocity operator given as (weight, coeffs)
    pairs in the eigenbasis.  ``dt`` must respect the explicit stability
    guard dt <= 0.5 / sqrt(lam_N).
    """

    mode_count: int
    k: float = 0.0
    p: float = 2.0
    l: float = 0.0
    f_coeffs: tuple = ()
    kernel: tuple = ()
    h_coeffs: tuple = ()
    dt: float = 0.01
    collocation_points: int = 0

    def __post_init__(self):
        n = int(self.mode_count)
        if n < 1:
            raise ValueError("mode_count must be a positive integer")
        object.__setattr__(self, "mode_count", n)
        for name in ("k", "l"):
            v = float(getattr(self, name))
            if not (v >= 0 and np.isfinite(v)):
                raise ValueError(f"{name} must be finite and >= 0")
            object.__setattr__(self, name, v)
        if not (self.p > 0 and np.isfinite(self.p)):
            raise ValueError("damping exponent p must be > 0")
        object.__setattr__(self, "p", float(self.p))

        f = _trim_poly(self.f_coeffs)
        if f.size:
            degree = f.size - 1
            if degree % 2 == 0 or f[-1] <= 0:
                raise ValueError(
                    "nonzero f must have odd top degree with positive leading "
                    "coefficient (dissipative direction)"
                )
        object.__setattr__(self, "f_coeffs", tuple(float(c) for c in f))

        kern = []
        for entry in self.kernel:
            weight, coeffs = entry
            coeffs = np.asarray(coeffs, dtype=float).ravel()
            if coeffs.size != n or not np.all(np.isfinite(coeffs)):
                raise ValueError("kernel coefficient vectors must be finite with length mode_count")
            if not np.isfinite(weight):
                raise ValueError("kernel weights must be finite")
            kern.append((float(weight), tuple(coeffs)))
        object.__setattr__(self, "kernel", tuple(kern))

        h = np.asarray(self.h_coeffs, dtype=float).ravel()
        if h.size == 0:
            h = np.zeros(n)
        if h.size != n or not np.all(np.isfinite(h)):
            raise ValueError("h_coeffs must be finite with length mode_count")
        object.__setattr__(self, "h_coeffs", tuple(h))

        dt = float(self.dt)
        lam_max = float(n) ** 2
        dt_cap = 0.5 / np.sqrt(lam_max)
        if not (0 < dt <= dt_cap * (1 + 1e-12)):
            raise ValueError(
                f"dt must satisfy 0 < dt <= 0.5/sqrt(lam_N) = {dt_cap:g}, got {dt:g}"
            )
        object.__setattr__(self, "dt", dt)

        g = int(self.collocation_points) if self.collocation_points else 2 * n + 1
        if g < 2 * n + 1:
            raise ValueError(
                f"collocation_points must be >= 2*mode_count+1 = {2 * n + 1}, got {g}"
            )
        object.__setattr__(self, "collocation_points", g)

    @property
    def eigenvalues(self) -> np.ndarray:
        j = np.arange(1, self.mode_count + 1, dtype=float)
        return j**2

    def _tables(self):
        """Precomputed arrays for the right-hand side (cached per config)."""
        cached = self.__dict__.get("_tables_cache")
        if cached is None:
            _x, synth, weight = _sine_collocation(self.mode_count, self.collocation_points)
            f = np.asarray(self.f_coeffs)
            big_f = np.concatenate([[0.0], f / np.arange(1, f.size + 1)]) if f.size else None
            if self.kernel:
                kw = np.array([w for w, _ in self.kernel])
                kv = np.array([c for _, c in self.kernel])
            else:
                kw = kv = None
            cached = {
                "lam": self.eigenvalues,
                "synth": synth,
                "weight": weight,
                "f": f if f.size else None,
                "F": big_f,
                "h": np.asarray(self.h_coeffs),
                "kernel_weights": kw,
                "kernel_vectors": kv,
            }
            self.__dict__["_tables_cache"] = cached
        return cached


@dataclass(frozen=True, eq=False)
class LinearModalConfig:
    """Oracle system: uncoupled modes z'' + l z' + lam z = 0, solved exactly."""

    damping: float
    mode_eigenvalues: np.ndarray

    def __post_init__(self):
        if not (self.damping > 0 and np.isfinite(self.damping)):
            raise ValueError("modal oracle needs strictly positive damping")
        lam = np.asarray(self.mode_eigenvalues, dtype=float).ravel()
        if lam.size == 0 or np.any(lam <= 0) or not np.all(np.isfinite(lam)):
            raise ValueError("mode eigenvalues must be positive and finite")
        object.__setattr__(self, "damping", float(self.damping))
        object.__setattr__(self, "mode_eigenvalues", lam)

    @property
    def mode_count(self) -> int:
        return self.mode_eigenvalues.size

    @property
    def l(self) -> float:
        return self.damping

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.mode_eigenvalues


# ---------------------------------------------------------------------------
# wave system right-hand side and RK4 integration


def _rhs(y: np.ndarray, cfg: WaveSystemConfig) -> np.ndarray:
    n = cfg.mode_count
    tab = cfg._tables()
    a, b = y[..., :n], y[..., n:]
    sq = np.sum(b * b, axis=-1, keepdims=True)
    damp = cfg.l + (cfg.k * sq ** (cfg.p / 2.0) if cfg.k else 0.0)
    db = -tab["lam"] * a - damp * b + tab["h"]
    if tab["f"] is not None:
        u_vals = a @ tab["synth"].T
        f_vals = np.polynomial.polynomial.polyval(u_vals, tab["f"], tensor=False)
        db = db - tab["weight"] * (f_vals @ tab["synth"])
    if tab["kernel_weights"] is not None:
        proj = b @ tab["kernel_vectors"].T
        db = db + (proj * tab["kernel_weights"]) @ tab["kernel_vectors"]
    return np.concatenate([b, db], axis=-1)


def wave_rhs(state: PhasePoint, cfg: WaveSystemConfig) -> PhasePoint:
    """Time derivative of a state, returned in state shape."""
    if state.mode_count != cfg.mode_count:
        raise ValueError(
            f"state has {state.mode_count} modes, config expects {cfg.mode_count}"
        )
    dy = _rhs(state.as_array(), cfg)
    if not np.all(np.isfinite(dy)):
        raise BlowUpError(0.0)
    return PhasePoint.from_array(dy)


def _rk4_step(y: np.ndarray, cfg: WaveSystemConfig, dt: float) -> np.ndarray:
    k1 = _rhs(y, cfg)
    k2 = _rhs(y + 0.5 * dt * k1, cfg)
    k3 = _rhs(y + 0.5 * dt * k2, cfg)
    k4 = _rhs(y + dt * k3, cfg)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def _steps_for(cfg: WaveSystemConfig, t: float, what: str) -> int:
    k = int(round(t / cfg.dt))
    if abs(k * cfg.dt - t) > 1e-9 * max(1.0, abs(t)):
        raise ValueError(f"{what} = {t:g} is not a multiple of dt = {cfg.dt:g}")
    return k


def evolve_states(y0: np.ndarray, cfg: WaveSystemConfig, times) -> np.ndarray:
    """Integrate a (possibly batched) state array, sampling at the given times.

    Times must be nonnegative, nondecreasing multiples of dt.  Returns an
    array of shape (len(times),) + y0.shape.
    """
    times = np.asarray(times, dtype=float)
    if times.size == 0:
        raise ValueError("need at least one sample time")
    if np.any(times < 0) or np.any(np.diff(times) < 0):
        raise ValueError("sample times must be nonnegative and nondecreasing")
    marks = [_steps_for(cfg, t, "sample time") for t in times]
    if marks[-1] > MAX_STEPS:
        raise ValueError(
            f"horizon needs {marks[-1]} steps, above the cap of {MAX_STEPS}"
        )
    y = np.asarray(y0, dtype=float).copy()
    out = np.empty((times.size,) + y.shape)
    next_mark = 0
    # finiteness is checked every step, so let overflow reach the check silently
    with np.errstate(over="ignore", invalid="ignore"):
        for step in range(marks[-1] + 1):
            while next_mark < len(marks) and marks[next_mark] == step:
                out[next_mark] = y
                next_mark += 1
            if step == marks[-1]:
                break
            y = _rk4_step(y, cfg, cfg.dt)
            if not np.all(np.isfinite(y)):
                raise BlowUpError((step + 1) * cfg.dt)
    return out


@dataclass(frozen=True, eq=False)
class TrajectoryRecord:
    """A sampled trajectory with per-sample energy diagnostics."""

    config: WaveSystemConfig
    initial: PhasePoint
    samples: tuple
    energy_samples: tuple

    def to_csv(self, path):
        import csv

        n = self.initial.mode_count
        header = (
            ["t"]
            + [f"a_{j}" for j in range(1, n + 1)]
            + [f"b_{j}" for j in range(1, n + 1)]
            + ["E", "L"]
        )
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            for (t, point), (_, e_val, l_val) in zip(self.samples, self.energy_samples):
                row = [repr(float(t))]
                row += [repr(float(c)) for c in point.as_array()]
                row += [repr(float(e_val)), repr(float(l_val))]
                writer.writerow(row)


def evolve(
    initial: PhasePoint,
    cfg: WaveSystemConfig,
    horizon: float,
    sample_every: float,
) -> TrajectoryRecord:
    """Fixed-step RK4 trajectory from ``initial`` over [0, horizon].

    ``sample_every`` must be a positive multiple of dt; samples land on that
    cadence, always including t = 0 and the horizon itself.
    """
    if initial.mode_count != cfg.mode_count:
        raise ValueError("initial state and config disagree on mode count")
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    if sample_every <= 0:
        raise ValueError("sample_every must be positive")
    _steps_for(cfg, sample_every, "sample_every")
    _steps_for(cfg, horizon, "horizon")
    times = list(np.arange(0.0, horizon + 1e-12, sample_every))
    if not times or abs(times[-1] - horizon) > 1e-9 * max(1.0, horizon):
        times.append(horizon)
    states = evolve_states(initial.as_array(), cfg, times)
    samples = []
    energies = []
    for t, row in zip(times, states):
        point = PhasePoint.from_array(row)
        e_val, l_val = lyapunov(point, cfg)
        samples.append((float(t), point))
        energies.append((float(t), e_val, l_val))
    return TrajectoryRecord(cfg, initial, tuple(samples), tuple(energies))


# ---------------------------------------------------------------------------
# closed-form linear modal oracle


def modal_propagator(damping: float, lam: np.ndarray, t: float):
    """Per-mode 2x2 propagator entries (m11, m12, m21, m22) at time t for
    z'' + damping z' + lam z = 0, split over the three root branches."""
    lam = np.asarray(lam, dtype=float)
    sig = damping / 2.0
    disc = damping * damping - 4.0 * lam
    scale = np.maximum(damping * damping, 4.0 * lam)
    crit = np.abs(disc) <= 1e-12 * scale
    under = (disc < 0) & ~crit
    over = (disc > 0) & ~crit

    env = np.exp(-sig * t)

    om = np.sqrt(np.where(under, -disc, 4.0)) / 2.0
    cos_t, sin_t = np.cos(om * t), np.sin(om * t)
    m11_u = env * (cos_t + sig / om * sin_t)
    m12_u = env * sin_t / om
    m21_u = -env * lam / om * sin_t
    m22_u = env * (cos_t - sig / om * sin_t)

    m11_c = env * (1.0 + sig * t)
    m12_c = env * t
    m21_c = -lam * t * env
    m22_c = env * (1.0 - sig * t)

    # overdamped: assemble from the two real roots to keep exponents negative
    sq = np.sqrt(np.where(over, disc, 4.0)) / 2.0
    r_plus, r_minus = -sig + sq, -sig - sq
    e_plus, e_minus = np.exp(r_plus * t), np.exp(r_minus * t)
    dr = np.where(over, r_plus - r_minus, 1.0)
    m11_o = (-r_minus * e_plus + r_plus * e_minus) / dr
    m12_o = (e_plus - e_minus) / dr
    m21_o = lam * (e_minus - e_plus) / dr
    m22_o = (r_plus * e_plus - r_minus * e_minus) / dr

    def pick(u, c, o):
        return np.select([under, crit, over], [u, c, o])

    return (
        pick(m11_u, m11_c, m11_o),
        pick(m12_u, m12_c, m12_o),
        pick(m21_u, m21_c, m21_o),
        pick(m22_u, m22_c, m22_o),
    )


def modal_evolve_states(y: np.ndarray, cfg: LinearModalConfig, t: float) -> np.ndarray:
    y = np.asarray(y, dtype=float)
    n = cfg.mode_count
    m11, m12, m21, m22 = modal_propagator(cfg.damping, cfg.mode_eigenvalues, t)
    a, b = y[..., :n], y[..., n:]
    return np.concatenate([m11 * a + m12 * b, m21 * a + m22 * b], axis=-1)


def linear_modal_evolve(initial: PhasePoint, cfg: LinearModalConfig, t: float) -> PhasePoint:
    """Exact modal solution at time t >= 0; satisfies the semigroup property
    to roundoff."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if initial.mode_count != cfg.mode_count:
        raise ValueError("initial state and config disagree on mode count")
    return PhasePoint.from_array(modal_evolve_states(initial.as_array(), cfg, t))


# ---------------------------------------------------------------------------
# unified front door for either engine


def flow(cfg, states: np.ndarray, t: float) -> np.ndarray:
    """Advance a (batched) state array by time t under either engine."""
    if isinstance(cfg, LinearModalConfig):
        return modal_evolve_states(states, cfg, t)
    return evolve_states(states, cfg, [t])[0]


def flow_samples(cfg, states: np.ndarray, times) -> np.ndarray:
    """Sample a (batched) state array at many times; shape (len(times), ...)."""
    times = np.asarray(times, dtype=float)
    if isinstance(cfg, LinearModalConfig):
        return np.stack([modal_evolve_states(states, cfg, t) for t in times])
    return evolve_states(states, cfg, times)


def config_eigenvalues(cfg) -> np.ndarray:
    return cfg.eigenvalues


def states_norms(states: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """Energy norms of a (..., 2N) state array."""
    states = np.asarray(states, dtype=float)
    n = lam.size
    a, b = states[..., :n], states[..., n:]
    return np.sqrt(np.sum(lam * a * a, axis=-1) + np.sum(b * b, axis=-1))


# ---------------------------------------------------------------------------
# energy diagnostics and absorbing-ball identification


def lyapunov(state: PhasePoint, cfg: WaveSystemConfig):
    """Quadratic energy E and full Lyapunov functional L of a state.

    E = (||u_t||^2 + ||grad u||^2) / 2;  L adds the collocation quadrature of
    the potential F(u) (F' = f, F(0) = 0) and subtracts the forcing term
    (h, u).  With h = 0 and no kernel, L is nonincreasing along trajectories.
    """
    if state.mode_count != cfg.mode_count:
        raise ValueError("state and config disagree on mode count")
    tab = cfg._tables()
    a, b = state.position_coeffs, state.velocity_coeffs
    e_val = 0.5 * (np.dot(b, b) + np.dot(tab["lam"] * a, a))
    l_val = e_val - float(np.dot(tab["h"], a))
    if tab["F"] is not None:
        u_vals = a @ tab["synth"].T
        f_pot = np.polynomial.polynomial.polyval(u_vals, tab["F"], tensor=False)
        l_val += tab["weight"] * float(np.sum(f_pot))
    return float(e_val), float(l_val)


def absorbing_radius(
    cfg,
    probe: Ensemble,
    burn_in: float,
    window: float,
    sample_count: int = 200,
):
    """Empirical absorbing-ball radius and per-point entering times.

    Evolves every probe point over [0, burn_in + window]; the radius is 1.1x
    the largest norm seen on the trailing window, and each entering time is
    the first sample time after which the point's norm stays inside that
    radius.  Raises NonDissipativeError if windowed norms are still growing.
    """
    if burn_in <= 0 or window <= 0:
        raise ValueError("burn_in and window must be positive")
    horizon = burn_in + window
    lam = config_eigenvalues(cfg)
    if isinstance(cfg, LinearModalConfig):
        times = np.linspace(0.0, horizon, sample_count + 1)
    else:
        stride = max(1, int(round(horizon / (sample_count * cfg.dt))))
        times = np.arange(0, _steps_for(cfg, horizon, "burn_in + window") + 1, stride)
        times = times * cfg.dt
        if times[-1] < horizon - 1e-12:
            times = np.append(times, horizon)
    samples = flow_samples(cfg, probe.as_matrix(), times)
    norms = states_norms(samples, lam)  # (T, P)

    in_window = times >= burn_in - 1e-12
    windowed = norms[in_window]
    half = windowed.shape[0] // 2
    if half >= 1:
        first, second = np.max(windowed[:half]), np.max(windowed[half:])
        if second > first * 1.02 + 1e-12:
            raise NonDissipativeError(
                f"windowed max norm grew from {first:g} to {second:g}; "
                "increase burn_in or check the damping"
            )
    radius = 1.1 * float(np.max(windowed))

    # entering time: first sample from which the running future max stays inside
    future_max = np.maximum.accumulate(norms[::-1], axis=0)[::-1]
    t_enter = []
    for p in range(norms.shape[1]):
        inside = np.flatnonzero(future_max[:, p] <= radius + 1e-12)
        if inside.size == 0:
            raise NonDissipativeError("a probe point never settles inside the radius")
        t_enter.append(float(times[inside[0]]))
    return radius, t_enter


def entering_times(cfg, states: np.ndarray, radius: float, horizon: float, sample_count: int = 200):
    """First sample time per point after which its norm stays inside ``radius``.

    Raises NonDissipativeError for any point still outside at the horizon.
    """
    if isinstance(cfg, LinearModalConfig):
        times = np.linspace(0.0, horizon, sample_count + 1)
    else:
        stride = max(1, int(round(horizon / (sample_count * cfg.dt))))
        times = np.arange(0, _steps_for(cfg, horizon, "horizon") + 1, stride) * cfg.dt
        if times[-1] < horizon - 1e-12:
            times = np.append(times, horizon)
    norms = states_norms(flow_samples(cfg, np.atleast_2d(states), times), config_eigenvalues(cfg))
    future_max = np.maximum.accumulate(norms[::-1], axis=0)[::-1]
    out = []
    for p in range(norms.shape[1]):
        inside = np.flatnonzero(future_max[:, p] <= radius + 1e-12)
        if inside.size == 0:
            raise NonDissipativeError(
                f"a point never settles inside radius {radius:g} by t = {horizon:g}"
            )
        out.append(float(times[inside[0]]))
    return out


def modal_slow_rate(damping: float, lam) -> float:
    """Envelope decay rate of the slowest mode of the linear oracle: the
    smallest |real part| over the characteristic roots of z'' + l z' + lam z = 0."""
    lam = np.asarray(lam, dtype=float)
    sig = damping / 2.0
    disc = damping * damping - 4.0 * lam
    rates = np.where(disc < 0, sig, sig - np.sqrt(np.maximum(disc, 0.0)) / 2.0)
    return float(np.min(rates))


# ---------------------------------------------------------------------------
# config-file loading

_WAVE_KEYS = {
    "mode_count",
    "k",
    "p",
    "l",
    "f_coeffs",
    "kernel",
    "h_coeffs",
    "dt",
    "collocation_points",
}


def _num(value, name: str) -> float:
    """Numeric config field; strings are accepted so '1e-3' works in YAML."""
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ValueError(f"config field {name!r} is not numeric: {value!r}") from None


def _padded(values, n: int, name: str) -> np.ndarray:
    arr = np.array([_num(v, name) for v in np.atleast_1d(values)], dtype=float)
    if arr.size > n:
        raise ValueError(f"{name} has {arr.size} entries but mode_count is {n}")
    return np.concatenate([arr, np.zeros(n - arr.size)])


def wave_config_from_dict(raw: dict) -> WaveSystemConfig:
    """Build a WaveSystemConfig from a plain mapping (the file schema).

    Coefficient lists shorter than ``mode_count`` are zero-padded, so a
    single-mode forcing is just ``h_coeffs: [4.0]``.
    """
    if not isinstance(raw, dict):
        raise ValueError("wave config must be a mapping")
    unknown = set(raw) - _WAVE_KEYS
    if unknown:
        raise ValueError(f"unknown wave config keys: {sorted(unknown)}")
    if "mode_count" not in raw:
        raise ValueError("wave config needs mode_count")
    n = int(_num(raw["mode_count"], "mode_count"))
    kernel = []
    for entry in raw.get("kernel") or ():
        if not isinstance(entry, dict) or set(entry) != {"weight", "coeffs"}:
            raise ValueError("kernel entries must be mappings with keys weight, coeffs")
        kernel.append((_num(entry["weight"], "kernel.weight"),
                       _padded(entry["coeffs"], n, "kernel.coeffs")))
    return WaveSystemConfig(
        mode_count=n,
        k=_num(raw.get("k", 0.0), "k"),
        p=_num(raw.get("p", 2.0), "p"),
        l=_num(raw.get("l", 0.0), "l"),
        f_coeffs=tuple(_num(c, "f_coeffs") for c in raw.get("f_coeffs") or ()),
        kernel=tuple(kernel),
        h_coeffs=tuple(_padded(raw.get("h_coeffs", ()), n, "h_coeffs")),
        dt=_num(raw["dt"], "dt") if "dt" in raw else 0.5 / n,
        collocation_points=int(_num(raw.get("collocation_points", 0), "collocation_points")),
    )


def load_wave_config(path) -> WaveSystemConfig:
    with open(path) as fh:
        raw = yaml.safe_load(fh)
    return wave_config_from_dict(raw)
