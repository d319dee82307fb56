import numpy as np
import pytest

from attractorlab.phase import Ensemble, MetricSpec, PhasePoint


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_point(rng, spec, scale=1.0) -> PhasePoint:
    n = spec.mode_count
    return PhasePoint(
        scale * rng.standard_normal(n) / np.sqrt(spec.mode_eigenvalues),
        scale * rng.standard_normal(n),
    )


def random_ensemble(rng, spec, count, scale=1.0, label="test") -> Ensemble:
    return Ensemble(
        tuple(random_point(rng, spec, scale) for _ in range(count)), label=label
    )


def velocity_line_ensemble(values, n_modes=1) -> Ensemble:
    """Scalar values embedded as mode-1 velocities: pairwise phase distances
    equal the scalar differences."""
    points = []
    for v in values:
        vel = np.zeros(n_modes)
        vel[0] = v
        points.append(PhasePoint(np.zeros(n_modes), vel))
    return Ensemble(tuple(points), label="line")
