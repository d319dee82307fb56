"""Phase-space geometry: Galerkin states, ensembles and the weighted energy metric.

A state is a pair of eigen-coefficient vectors (position, velocity) for the
first N Dirichlet eigenmodes of -Laplace on the domain.  The metric is the
energy norm

    dist(a, b)^2 = sum_j lam_j (a.pos_j - b.pos_j)^2 + sum_j (a.vel_j - b.vel_j)^2

which is plain Euclidean distance after rescaling positions by sqrt(lam_j);
``MetricSpec.embed`` performs that rescaling so downstream geometry
(clustering, Hausdorff semidistances) can run on flat arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "MetricSpec",
    "PhasePoint",
    "Ensemble",
    "phase_distance",
    "ensemble_radius",
]


def _as_finite_vector(x, name: str) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError(f"{name} must be a 1-d vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} contains non-finite entries")
    return v


@dataclass(frozen=True, eq=False)
class MetricSpec:
    """Eigenvalues of -Laplace defining the energy metric.

    ``mode_eigenvalues`` must be positive and nondecreasing.  For the 1-d
    interval (0, pi) the eigenvalues are j^2, so the first one is exactly 1.
    """

    mode_eigenvalues: np.ndarray
    spatial_dim: int = 1

    def __post_init__(self):
        lam = _as_finite_vector(self.mode_eigenvalues, "mode_eigenvalues")
        if lam.size == 0:
            raise ValueError("need at least one eigenvalue")
        if np.any(lam <= 0):
            raise ValueError("eigenvalues must be strictly positive")
        if np.any(np.diff(lam) < 0):
            raise ValueError("eigenvalues must be nondecreasing")
        if self.spatial_dim not in (1, 2):
            raise ValueError("spatial_dim must be 1 or 2")
        object.__setattr__(self, "mode_eigenvalues", lam)

    @classmethod
    def dirichlet_1d(cls, n_modes: int) -> "MetricSpec":
        """Eigenvalues j^2 for j = 1..n_modes on the interval (0, pi)."""
        j = np.arange(1, int(n_modes) + 1, dtype=float)
        return cls(j**2, spatial_dim=1)

    @classmethod
    def dirichlet_2d(cls, n_per_axis: int) -> "MetricSpec":
        """Sorted eigenvalues j^2 + k^2 on the square (0, pi)^2."""
        j = np.arange(1, int(n_per_axis) + 1, dtype=float)
        lam = np.sort((j[:, None] ** 2 + j[None, :] ** 2).ravel())
        return cls(lam, spatial_dim=2)

    @property
    def mode_count(self) -> int:
        return self.mode_eigenvalues.size

    def embed(self, positions, velocities) -> np.ndarray:
        """Map (..., N) position/velocity coefficients to flat (..., 2N) coordinates
        in which the energy metric is Euclidean."""
        a = np.asarray(positions, dtype=float)
        b = np.asarray(velocities, dtype=float)
        if a.shape != b.shape or a.shape[-1] != self.mode_count:
            raise ValueError(
                f"coefficient shape {a.shape}/{b.shape} does not match "
                f"{self.mode_count} metric eigenvalues"
            )
        return np.concatenate([a * np.sqrt(self.mode_eigenvalues), b], axis=-1)


@dataclass(frozen=True, eq=False)
class PhasePoint:
    """One Galerkin state (u, u_t) as two N-vectors of eigen-coefficients."""

    position_coeffs: np.ndarray
    velocity_coeffs: np.ndarray

    def __post_init__(self):
        a = _as_finite_vector(self.position_coeffs, "position_coeffs")
        b = _as_finite_vector(self.velocity_coeffs, "velocity_coeffs")
        if a.size != b.size:
            raise ValueError(
                f"position/velocity lengths differ: {a.size} vs {b.size}"
            )
        if a.size == 0:
            raise ValueError("state needs at least one mode")
        object.__setattr__(self, "position_coeffs", a)
        object.__setattr__(self, "velocity_coeffs", b)

    @property
    def mode_count(self) -> int:
        return self.position_coeffs.size

    def as_array(self) -> np.ndarray:
        """Raw coefficients concatenated as [positions, velocities]."""
        return np.concatenate([self.position_coeffs, self.velocity_coeffs])

    @classmethod
    def from_array(cls, y) -> "PhasePoint":
        y = np.asarray(y, dtype=float)
        if y.ndim != 1 or y.size % 2 != 0:
            raise ValueError(f"expected flat [pos, vel] array, got shape {y.shape}")
        n = y.size // 2
        return cls(y[:n].copy(), y[n:].copy())

    @classmethod
    def zero(cls, n_modes: int) -> "PhasePoint":
        return cls(np.zeros(n_modes), np.zeros(n_modes))


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Finite labeled collection of states standing in for a bounded set."""

    points: tuple
    label: str = ""

    def __post_init__(self):
        pts = tuple(self.points)
        if not pts:
            raise ValueError("ensemble must be nonempty")
        n = pts[0].mode_count
        for p in pts:
            if not isinstance(p, PhasePoint):
                raise ValueError("ensemble entries must be PhasePoint instances")
            if p.mode_count != n:
                raise ValueError("all ensemble points must share one mode count")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def mode_count(self) -> int:
        return self.points[0].mode_count

    def as_matrix(self) -> np.ndarray:
        """(P, 2N) raw coefficients, one row [positions, velocities] per point."""
        return np.stack([p.as_array() for p in self.points])

    def embed(self, spec: MetricSpec) -> np.ndarray:
        """(P, 2N) flat coordinates in which phase_distance is Euclidean."""
        m = self.as_matrix()
        n = self.mode_count
        return spec.embed(m[:, :n], m[:, n:])

    @classmethod
    def from_matrix(cls, rows, label: str = "") -> "Ensemble":
        rows = np.asarray(rows, dtype=float)
        if rows.ndim != 2:
            raise ValueError("expected a (P, 2N) matrix of stacked states")
        return cls(tuple(PhasePoint.from_array(r) for r in rows), label=label)


def _check_compatible(a: PhasePoint, b: PhasePoint, spec: MetricSpec):
    if a.mode_count != b.mode_count or a.mode_count != spec.mode_count:
        raise ValueError(
            f"mode counts disagree: points have {a.mode_count}/{b.mode_count}, "
            f"metric has {spec.mode_count}"
        )


def phase_distance(a: PhasePoint, b: PhasePoint, spec: MetricSpec) -> float:
    """Energy-metric distance sqrt(sum lam_j (da_j)^2 + sum (db_j)^2)."""
    _check_compatible(a, b, spec)
    da = a.position_coeffs - b.position_coeffs
    db = a.velocity_coeffs - b.velocity_coeffs
    return float(np.sqrt(np.dot(spec.mode_eigenvalues * da, da) + np.dot(db, db)))


def phase_norm(p: PhasePoint, spec: MetricSpec) -> float:
    """Distance to the origin state."""
    return phase_distance(p, PhasePoint.zero(p.mode_count), spec)


def ensemble_radius(e: Ensemble, spec: MetricSpec) -> float:
    """Largest energy norm over the ensemble (bounding radius around the origin)."""
    return float(np.max(np.linalg.norm(e.embed(spec), axis=1)))
