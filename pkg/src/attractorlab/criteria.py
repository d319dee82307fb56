"""Decay criteria as measurements: rate fitting, compact-target and
tail-projection checks, the contractive-pair test, and per-period
quasi-stability contraction.

Each check follows the same pattern: evolve a sample of the absorbing ball,
measure the relevant quantity on a time grid, and compare against a decay law.
The checks report satisfied fractions rather than booleans; finite samples
cannot certify the underlying hypotheses, only fail to falsify them.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .covering import DecayTrace, alpha_proxy, semidist_arrays
from .decay import DecayLaw
from .dynamics import flow, flow_samples
from .phase import Ensemble, MetricSpec, PhasePoint

__all__ = [
    "RateFit",
    "QuasiStabilityReport",
    "HausdorffCriterionReport",
    "ContractiveCheckReport",
    "RateBounds",
    "ThresholdTooTightError",
    "fit_exponential_rate",
    "fit_envelope_law",
    "check_hausdorff_criterion",
    "tail_projection_decay",
    "contractive_inequality_check",
    "quasistability_estimate",
    "predicted_rate_bounds",
    "predicted_contraction",
    "repeated_liminf_diag",
]


class ThresholdTooTightError(ValueError):
    """No pair of sample points passes the pseudometric closeness threshold."""


# ---------------------------------------------------------------------------
# rate fitting


@dataclass(frozen=True)
class RateFit:
    """Log-linear least-squares fit value = amplitude * exp(-rate * t)."""

    amplitude: float
    rate: float
    r_squared: float
    window: tuple
    floor_used: float

    def as_dict(self) -> dict:
        return {
            "amplitude": self.amplitude,
            "rate": self.rate,
            "r_squared": self.r_squared,
            "window": list(self.window),
            "floor": self.floor_used,
        }


def fit_exponential_rate(trace: DecayTrace, floor: float) -> RateFit:
    """Least squares on ln(value) over samples above ``floor``.

    Needs at least four usable samples; raises if the fitted slope is not a
    decay (rate <= 0).
    """
    mask = trace.values > floor
    if int(mask.sum()) < 4:
        raise ValueError(
            f"need at least 4 trace values above floor {floor:g}, got {int(mask.sum())}"
        )
    t = trace.times[mask]
    logv = np.log(trace.values[mask])
    slope, intercept = np.polyfit(t, logv, 1)
    fitted = slope * t + intercept
    ss_res = float(np.sum((logv - fitted) ** 2))
    ss_tot = float(np.sum((logv - logv.mean()) ** 2))
    r_sq = 1.0 if ss_tot == 0.0 and ss_res == 0.0 else 1.0 - ss_res / max(ss_tot, 1e-300)
    if slope >= 0:
        raise ValueError(f"trace does not decay on the fit window (slope {slope:g})")
    return RateFit(
        amplitude=float(np.exp(intercept)),
        rate=float(-slope),
        r_squared=float(r_sq),
        window=(float(t[0]), float(t[-1])),
        floor_used=float(floor),
    )


def fit_envelope_law(trace: DecayTrace, floor: float) -> DecayLaw:
    """Exponential law dominating the trace: least-squares exponent, amplitude
    lifted to the smallest value whose curve sits above every fitted sample."""
    fit = fit_exponential_rate(trace, floor)
    mask = trace.values > floor
    amplitude = float(np.max(trace.values[mask] * np.exp(fit.rate * trace.times[mask])))
    return DecayLaw("exponential", amplitude, fit.rate)


# ---------------------------------------------------------------------------
# predicted bounds


@dataclass(frozen=True)
class RateBounds:
    """Analytic decay-rate predictions for the damped wave system.

    ``rate_energy`` comes from the energy-multiplier route, min(sqrt(lam_1)/2,
    l/4); ``rate_contraction`` from the per-period contraction route, whose
    per-period factor 1/sqrt(1 + l T) at T = 3/l gives (l/3) ln 2 in
    natural-log units.  Both are lower bounds on attainable attraction rates,
    directly comparable with fitted exponents.
    """

    rate_energy: float
    rate_contraction: float
    period: float

    def as_dict(self) -> dict:
        return {
            "rate_energy": self.rate_energy,
            "rate_contraction": self.rate_contraction,
            "period": self.period,
        }


def predicted_rate_bounds(cfg, spec: MetricSpec) -> RateBounds:
    damping = float(cfg.l)
    if damping <= 0:
        raise ValueError("rate predictions require strictly positive linear damping l")
    lam1 = float(spec.mode_eigenvalues[0])
    return RateBounds(
        rate_energy=min(math.sqrt(lam1) / 2.0, damping / 4.0),
        rate_contraction=(damping / 3.0) * math.log(2.0),
        period=3.0 / damping,
    )


def predicted_contraction(damping: float, period: float) -> float:
    """Per-period contraction factor 1/sqrt(1 + l T)."""
    if damping < 0 or period <= 0:
        raise ValueError("need damping >= 0 and period > 0")
    return 1.0 / math.sqrt(1.0 + damping * period)


# ---------------------------------------------------------------------------
# criterion: distance to a fixed compact candidate implies a 2x alpha bound


@dataclass(frozen=True, eq=False)
class HausdorffCriterionReport:
    times: np.ndarray
    semidist: np.ndarray
    bounds: np.ndarray
    satisfied_fraction: float
    implied_alpha_bounds: np.ndarray  # 2 * bound, the cover-doubling consequence
    alpha_values: np.ndarray
    alpha_within_fraction: float
    m_clusters: int

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["t", "semidist", "bound", "implied_alpha_bound", "alpha_value"]
            )
            for row in zip(
                self.times, self.semidist, self.bounds,
                self.implied_alpha_bounds, self.alpha_values,
            ):
                writer.writerow([repr(float(v)) for v in row])


def check_hausdorff_criterion(
    candidate: Ensemble, absorbed: Ensemble, t_grid, law: DecayLaw, cfg, spec: MetricSpec
) -> HausdorffCriterionReport:
    """Measure dist(S(t) absorbed, candidate) against law.eval(t); when the
    candidate attracts at that speed, covers by its points force the cluster
    measure of the evolved sample below twice the law."""
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.size == 0 or np.any(np.diff(t_grid) <= 0):
        raise ValueError("t_grid must be nonempty and strictly increasing")
    m_clusters = len(candidate)
    cand = candidate.embed(spec)
    evolved = flow_samples(cfg, absorbed.as_matrix(), t_grid)
    n = spec.mode_count
    semidists, alphas = [], []
    for block in evolved:
        semidists.append(semidist_arrays(spec.embed(block[:, :n], block[:, n:]), cand))
        ens = Ensemble.from_matrix(block)
        alphas.append(alpha_proxy(ens, m_clusters, spec).max_diameter)
    semidists = np.array(semidists)
    alphas = np.array(alphas)
    bounds = np.array([law.eval(t) for t in t_grid])
    implied = 2.0 * bounds
    return HausdorffCriterionReport(
        times=t_grid,
        semidist=semidists,
        bounds=bounds,
        satisfied_fraction=float(np.mean(semidists <= bounds * (1 + 1e-12))),
        implied_alpha_bounds=implied,
        alpha_values=alphas,
        alpha_within_fraction=float(np.mean(alphas <= implied * (1 + 1e-12))),
        m_clusters=m_clusters,
    )


# ---------------------------------------------------------------------------
# criterion: spectral tail projection


def tail_projection_decay(
    absorbed: Ensemble, n_low_modes: int, t_grid, cfg, spec: MetricSpec
) -> DecayTrace:
    """Sup over the ensemble of the energy norm restricted to modes above
    ``n_low_modes``, sampled on the grid."""
    n = spec.mode_count
    if not (0 < n_low_modes < n):
        raise ValueError("n_low_modes must satisfy 0 < n_low_modes < mode_count")
    t_grid = np.asarray(t_grid, dtype=float)
    evolved = flow_samples(cfg, absorbed.as_matrix(), t_grid)
    lam_tail = spec.mode_eigenvalues[n_low_modes:]
    a_tail = evolved[..., n_low_modes:n]
    b_tail = evolved[..., n + n_low_modes :]
    norms = np.sqrt(
        np.sum(lam_tail * a_tail * a_tail, axis=-1) + np.sum(b_tail * b_tail, axis=-1)
    )
    return DecayTrace(t_grid, np.max(norms, axis=-1), "tail_norm")


# ---------------------------------------------------------------------------
# criterion: contractive pair residuals


@dataclass(frozen=True, eq=False)
class ContractiveCheckReport:
    times: np.ndarray
    pair_residual_max: np.ndarray
    pair_residual_mean: np.ndarray
    alpha_values: np.ndarray
    alpha_bounds: np.ndarray  # 3 * law, the conclusion side
    conclusion_fraction: float
    liminf_diagnostics: np.ndarray
    pair_count: int

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(
                ["t", "residual_max", "residual_mean", "alpha_value",
                 "alpha_bound", "liminf_diag"]
            )
            for row in zip(
                self.times, self.pair_residual_max, self.pair_residual_mean,
                self.alpha_values, self.alpha_bounds, self.liminf_diagnostics,
            ):
                writer.writerow([repr(float(v)) for v in row])


def _unique_points(pairs):
    points: list[PhasePoint] = []
    keys: list[bytes] = []
    index = []
    for y1, y2 in pairs:
        pair_idx = []
        for y in (y1, y2):
            key = y.as_array().tobytes()
            try:
                pos = keys.index(key)
            except ValueError:
                pos = len(points)
                keys.append(key)
                points.append(y)
            pair_idx.append(pos)
        index.append(tuple(pair_idx))
    return points, index


def contractive_inequality_check(
    pairs, t_grid, law: DecayLaw, m_clusters: int, cfg, spec: MetricSpec
) -> ContractiveCheckReport:
    """Pairwise residuals max(0, d(S(t)y1, S(t)y2) - law.eval(t)) as the
    empirical stand-in for the contractive correction term, plus the
    conclusion-side check alpha <= 3 * law.eval(t) on the evolved points.

    The full residual matrix over the distinct points feeds the repeated
    tail-infimum diagnostic; with finite data that diagnostic is evidence,
    not certification.
    """
    if not pairs:
        raise ValueError("need at least one pair")
    t_grid = np.asarray(t_grid, dtype=float)
    points, pair_index = _unique_points(pairs)
    ens = Ensemble(tuple(points), label="pair_points")
    evolved = flow_samples(cfg, ens.as_matrix(), t_grid)
    n = spec.mode_count

    res_max, res_mean, alphas, bounds3, diags = [], [], [], [], []
    for k, t in enumerate(t_grid):
        emb = spec.embed(evolved[k][:, :n], evolved[k][:, n:])
        dist = cdist(emb, emb)
        phi = law.eval(float(t))
        residual_matrix = np.maximum(0.0, dist - phi)
        pair_res = np.array([residual_matrix[i, j] for i, j in pair_index])
        res_max.append(float(pair_res.max()))
        res_mean.append(float(pair_res.mean()))
        alphas.append(alpha_proxy(Ensemble.from_matrix(evolved[k]), m_clusters, spec).max_diameter)
        bounds3.append(3.0 * phi)
        if residual_matrix.shape[0] >= 2:
            diags.append(repeated_liminf_diag(residual_matrix))
        else:
            diags.append(float(residual_matrix[-1, -1]))
    alphas = np.array(alphas)
    bounds3 = np.array(bounds3)
    return ContractiveCheckReport(
        times=t_grid,
        pair_residual_max=np.array(res_max),
        pair_residual_mean=np.array(res_mean),
        alpha_values=alphas,
        alpha_bounds=bounds3,
        conclusion_fraction=float(np.mean(alphas <= bounds3 * (1 + 1e-12))),
        liminf_diagnostics=np.array(diags),
        pair_count=len(pairs),
    )


# ---------------------------------------------------------------------------
# quasi-stability


@dataclass(frozen=True, eq=False)
class QuasiStabilityReport:
    """Empirical per-period contraction of a sample of the absorbing ball.

    ``eta_hat`` is the 95th percentile of one-period contraction ratios over
    pairs whose pseudometric separations stay within the closeness threshold
    (a sup over finite noisy samples would be noise-dominated).
    """

    period: float
    eta_hat: float
    pair_count: int
    pseudometric_threshold: float
    per_period_alpha_ratios: tuple
    excluded_pair_count: int
    predicted_eta: float

    def as_dict(self) -> dict:
        return {
            "period": self.period,
            "eta_hat": self.eta_hat,
            "pair_count": self.pair_count,
            "pseudometric_threshold": self.pseudometric_threshold,
            "per_period_alpha_ratios": list(self.per_period_alpha_ratios),
            "excluded_pair_count": self.excluded_pair_count,
            "predicted_eta": self.predicted_eta,
        }


def quasistability_estimate(
    absorbed: Ensemble,
    period: float,
    n_periods: int,
    low_mode_threshold: int,
    closeness: float | None,
    cfg,
    spec: MetricSpec,
    m_clusters: int = 3,
    trajectory_samples: int = 32,
) -> QuasiStabilityReport:
    """Estimate the one-period contraction factor and track the cluster
    measure across ``n_periods`` periods.

    Pseudometrics conditioning the contraction ratios: (i) the plain L2
    distance of the low-mode position coefficients at time 0, and (ii) the sup
    over [0, period] of the position-only L2 distance along the trajectories.
    ``closeness`` defaults to 10% of the sample diameter; pairs with zero
    initial separation are excluded and counted.
    """
    if len(absorbed) < 2:
        raise ValueError("need at least two points")
    if period <= 0 or n_periods < 0:
        raise ValueError("period must be positive and n_periods nonnegative")
    n = spec.mode_count
    if not (0 < low_mode_threshold <= n):
        raise ValueError("low_mode_threshold must be in 1..mode_count")
    states = absorbed.as_matrix()
    count = states.shape[0]

    if hasattr(cfg, "dt"):
        stride = max(1, int(round(period / (trajectory_samples * cfg.dt))))
        marks = np.arange(0, int(round(period / cfg.dt)) + 1, stride) * cfg.dt
        times = marks if abs(marks[-1] - period) < 1e-12 else np.append(marks, period)
    else:
        times = np.linspace(0.0, period, trajectory_samples + 1)
    traj = flow_samples(cfg, states, times)  # (K, P, 2N)

    emb0 = spec.embed(states[:, :n], states[:, n:])
    d0 = cdist(emb0, emb0)
    end = traj[-1]
    emb_t = spec.embed(end[:, :n], end[:, n:])
    d_end = cdist(emb_t, emb_t)

    rho_low = cdist(states[:, :low_mode_threshold], states[:, :low_mode_threshold])
    rho_sup = np.zeros((count, count))
    for k in range(times.size):
        rho_sup = np.maximum(rho_sup, cdist(traj[k][:, :n], traj[k][:, :n]))

    iu = np.triu_indices(count, k=1)
    if closeness is None:
        closeness = 0.1 * float(np.max(d0))
    nonzero = d0[iu] > 0
    conditioned = nonzero & (rho_low[iu] <= closeness) & (rho_sup[iu] <= closeness)
    excluded = int(iu[0].size - conditioned.sum())
    if not np.any(conditioned):
        raise ThresholdTooTightError(
            f"no pair passes the closeness threshold {closeness:g}"
        )
    ratios = d_end[iu][conditioned] / d0[iu][conditioned]
    eta_hat = float(np.percentile(ratios, 95))

    base_alpha = alpha_proxy(absorbed, m_clusters, spec).max_diameter
    per_period = []
    y = states
    for _ in range(int(n_periods)):
        y = flow(cfg, y, period)
        alpha_n = alpha_proxy(Ensemble.from_matrix(y), m_clusters, spec).max_diameter
        per_period.append(alpha_n / base_alpha if base_alpha > 0 else 0.0)

    return QuasiStabilityReport(
        period=float(period),
        eta_hat=eta_hat,
        pair_count=int(conditioned.sum()),
        pseudometric_threshold=float(closeness),
        per_period_alpha_ratios=tuple(per_period),
        excluded_pair_count=excluded,
        predicted_eta=predicted_contraction(float(cfg.l), float(period)),
    )


# ---------------------------------------------------------------------------
# repeated tail-infimum diagnostic


def repeated_liminf_diag(a) -> float:
    """Tail-of-tails infimum surrogate on a finite nonnegative matrix:
    the largest, over tail starts (M, N), of the minimum over the tail block
    a[M:, N:].  Zero exactly when some deep tail reaches zero."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] < 2 or a.shape[1] < 2:
        raise ValueError("need a matrix of shape at least 2x2")
    if np.any(a < 0) or not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite and nonnegative")
    tail_min = np.minimum.accumulate(
        np.minimum.accumulate(a[::-1, ::-1], axis=0), axis=1
    )[::-1, ::-1]
    return float(np.max(tail_min))
