import numpy as np
import pytest

from attractorlab.attracting import (
    AttractingSetApprox,
    ContinuityBudgetError,
    DegenerateRadiusError,
    build_attracting_set,
    build_net,
    load_attracting_set,
    perturbed_net,
    save_attracting_set,
    verify_attraction,
)
from attractorlab.covering import semidist_arrays
from attractorlab.decay import DecayLaw
from attractorlab.dynamics import (
    LinearModalConfig,
    WaveSystemConfig,
    flow,
    modal_evolve_states,
    modal_propagator,
)
from attractorlab.phase import Ensemble, MetricSpec, PhasePoint, ensemble_radius

from conftest import random_ensemble


def modal_preimage(cfg, targets, t):
    """Seeds whose exact evolution at time t hits the target states."""
    m11, m12, m21, m22 = modal_propagator(cfg.damping, cfg.mode_eigenvalues, t)
    det = m11 * m22 - m12 * m21
    n = cfg.mode_count
    a, b = targets[:, :n], targets[:, n:]
    return np.concatenate(
        [(m22 * a - m12 * b) / det, (-m21 * a + m11 * b) / det], axis=1
    )


def min_interval_cover_count(xs, r):
    """Optimal number of data-centered radius-r intervals covering line points."""
    xs = np.sort(np.asarray(xs, dtype=float))
    count, i = 0, 0
    while i < xs.size:
        center = xs[xs <= xs[i] + r][-1]
        count += 1
        i = int(np.searchsorted(xs, center + r, side="right"))
    return count


@pytest.fixture
def modal_setup():
    spec = MetricSpec(np.array([4.0, 9.0]))
    cfg = LinearModalConfig(2.0, spec.mode_eigenvalues)
    return spec, cfg


class TestBuildNet:
    def test_collapsed_ensemble_single_entry(self, modal_setup):
        spec, cfg = modal_setup
        p = PhasePoint(np.array([0.1, 0.2]), np.array([0.0, -0.1]))
        absorbed = Ensemble((p, p, p))
        entries = build_net(absorbed, 1, DecayLaw("exponential", 1.0, 0.1), spec, cfg)
        assert len(entries) == 1
        assert entries[0].birth_time == 1

    def test_large_radius_single_entry(self, rng, modal_setup):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 8)
        law = DecayLaw("exponential", 1e3, 0.01)
        entries = build_net(absorbed, 2, law, spec, cfg)
        assert len(entries) == 1

    def test_line_cover_matches_interval_oracle(self, modal_setup):
        spec, cfg = modal_setup
        m = 1
        targets = np.zeros((10, 4))
        targets[:, 2] = np.arange(10.0)  # mode-1 velocities 0..9, spacing 1
        seeds = modal_preimage(cfg, targets, float(m))
        absorbed = Ensemble.from_matrix(seeds)
        law = DecayLaw("exponential", np.exp(0.5 * m), 0.5)  # law.eval(m) == 1
        entries = build_net(absorbed, m, law, spec, cfg)
        evolved_line = np.array([e.evolved.velocity_coeffs[0] for e in entries])
        optimal = min_interval_cover_count(targets[:, 2], 1.0)
        assert optimal <= len(entries) <= 2 * optimal
        # every target point is within the radius of a selected center
        gaps = np.min(
            np.abs(targets[:, 2][:, None] - evolved_line[None, :]), axis=1
        )
        assert np.max(gaps) <= 1.0 + 1e-9

    def test_degenerate_radius_rejected(self, rng, modal_setup):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 3)
        law = DecayLaw("exponential", 1e-12, 1.0)
        with pytest.raises(DegenerateRadiusError):
            build_net(absorbed, 1, law, spec, cfg)

    def test_net_covers_evolved_sample(self, rng, modal_setup):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 12)
        law = DecayLaw("exponential", 0.5, 0.3)
        m = 2
        entries = build_net(absorbed, m, law, spec, cfg)
        evolved = flow(cfg, absorbed.as_matrix(), float(m))
        n = spec.mode_count
        emb = spec.embed(evolved[:, :n], evolved[:, n:])
        centers = np.stack([e.evolved.as_array() for e in entries])
        emb_c = spec.embed(centers[:, :n], centers[:, n:])
        assert semidist_arrays(emb, emb_c) <= law.eval(m) + 1e-12


class TestPerturbedNet:
    def test_zero_rounder_identical_to_build_net(self, rng, modal_setup):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 6)
        law = DecayLaw("exponential", 1.0, 0.4)
        plain = build_net(absorbed, 1, law, spec, cfg)
        quant = perturbed_net(absorbed, 1, law, eps=0.1, rounder=0.0, cfg=cfg, spec=spec)
        assert len(plain) == len(quant)
        for a, b in zip(plain, quant):
            assert np.array_equal(a.seed.as_array(), b.seed.as_array())

    def test_huge_eps_accepts_coarse_grid(self, rng, modal_setup):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 6)
        law = DecayLaw("exponential", 1.0, 0.4)
        entries = perturbed_net(absorbed, 1, law, eps=1e6, rounder=0.5, cfg=cfg, spec=spec)
        for e in entries:
            snapped = np.round(e.seed.as_array() / 0.5) * 0.5
            assert np.array_equal(e.seed.as_array(), snapped)

    def test_certified_cover_radius(self, rng, modal_setup):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 10)
        law = DecayLaw("exponential", 1.0, 0.4)
        m, eps = 1, 0.1
        entries = perturbed_net(absorbed, m, law, eps=eps, rounder=0.25, cfg=cfg, spec=spec)
        evolved = flow(cfg, absorbed.as_matrix(), float(m))
        n = spec.mode_count
        emb = spec.embed(evolved[:, :n], evolved[:, n:])
        centers = np.stack([e.evolved.as_array() for e in entries])
        emb_c = spec.embed(centers[:, :n], centers[:, n:])
        assert semidist_arrays(emb, emb_c) <= (1 + eps) * law.eval(m) + 1e-12

    def test_budget_error_when_eps_unreachable(self, rng, modal_setup):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 4)
        law = DecayLaw("exponential", 1.0, 0.4)
        with pytest.raises(ContinuityBudgetError):
            perturbed_net(absorbed, 1, law, eps=1e-30, rounder=0.25, cfg=cfg, spec=spec)


class TestBuildAttractingSet:
    def test_linear_oracle_proxy_near_origin(self, rng, modal_setup):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 6, scale=1.5)
        law = DecayLaw("exponential", 4.0, 0.5)
        aset = build_attracting_set(absorbed, (1, 2), law, 12.0, 0.5, cfg, spec)
        assert ensemble_radius(aset.attractor_proxy, spec) < 1e-6
        # orbit samples decay along each orbit
        n = spec.mode_count
        for e_pos in range(len(aset.net_entries)):
            taus = [t for (p, t) in aset.orbit_index if p == e_pos]
            pts = [
                aset.orbit_samples[i]
                for i, (p, _) in enumerate(aset.orbit_index)
                if p == e_pos
            ]
            norms = [
                np.linalg.norm(spec.embed(q.position_coeffs, q.velocity_coeffs))
                for q in pts
            ]
            assert norms[-1] <= norms[0] + 1e-12

    def test_m_range_single(self, rng, modal_setup):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 5)
        law = DecayLaw("exponential", 1.0, 0.5)
        aset = build_attracting_set(absorbed, (1, 1), law, 4.0, 0.5, cfg, spec)
        assert all(e.birth_time == 1 for e in aset.net_entries)

    def test_orbit_replay_modal(self, rng, modal_setup):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 4)
        law = DecayLaw("exponential", 1.0, 0.5)
        aset = build_attracting_set(absorbed, (1, 1), law, 3.0, 0.5, cfg, spec)
        by_entry = {}
        for (e_pos, tau), point in zip(aset.orbit_index, aset.orbit_samples):
            by_entry.setdefault(e_pos, []).append((tau, point))
        for chain in by_entry.values():
            for (t0, p0), (t1, p1) in zip(chain, chain[1:]):
                stepped = modal_evolve_states(p0.as_array(), cfg, t1 - t0)
                assert np.max(np.abs(stepped - p1.as_array())) <= 1e-12

    def test_orbit_replay_wave(self, rng):
        spec = MetricSpec.dirichlet_1d(4)
        cfg = WaveSystemConfig(
            mode_count=4, k=1.0, p=2.0, l=1.0, f_coeffs=(0.0, -1.0, 0.0, 1.0), dt=0.125
        )
        absorbed = random_ensemble(rng, spec, 4)
        law = DecayLaw("exponential", 5.0, 0.3)
        aset = build_attracting_set(absorbed, (1, 1), law, 3.0, 0.5, cfg, spec)
        chain = [
            (tau, aset.orbit_samples[i])
            for i, (e_pos, tau) in enumerate(aset.orbit_index)
            if e_pos == 0
        ]
        for (t0, p0), (t1, p1) in zip(chain, chain[1:]):
            stepped = flow(cfg, p0.as_array(), t1 - t0)
            assert np.max(np.abs(stepped - p1.as_array())) <= 1e-8

    def test_first_orbit_sample_is_net_point(self, rng, modal_setup):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 5)
        law = DecayLaw("exponential", 1.0, 0.5)
        aset = build_attracting_set(absorbed, (1, 2), law, 4.0, 0.5, cfg, spec)
        for (e_pos, tau), point in zip(aset.orbit_index, aset.orbit_samples):
            if tau == 0.0:
                assert np.array_equal(
                    point.as_array(), aset.net_entries[e_pos].evolved.as_array()
                )

    def test_horizon_must_reach_m_max(self, rng, modal_setup):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 3)
        law = DecayLaw("exponential", 1.0, 0.5)
        with pytest.raises(ValueError):
            build_attracting_set(absorbed, (1, 5), law, 3.0, 0.5, cfg, spec)


class TestVerifyAttraction:
    def _build(self, rng, spec, cfg, law, absorbed, m_range=(1, 2), t_orbit=10.0):
        return build_attracting_set(absorbed, m_range, law, t_orbit, 0.25, cfg, spec)

    def test_building_ensemble_covered_at_birth_time(self, rng, modal_setup):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 8)
        law = DecayLaw("exponential", 1.0, 0.3)
        aset = self._build(rng, spec, cfg, law, absorbed)
        m = 2
        cert = verify_attraction(aset, absorbed, 0.0, [float(m)], cfg, spec)
        assert cert.measured_semidist[0] <= law.eval(m) + 1e-12

    def test_linear_oracle_fitted_law_fully_satisfied(self, rng, modal_setup):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 10, scale=1.5)
        # energy-multiplier envelope: |S(t)x| <= sqrt(3) |x| exp(-t/2) for l = 2
        radius = ensemble_radius(absorbed, spec)
        law = DecayLaw("exponential", 2.0 * np.sqrt(3.0) * radius, 0.5)
        aset = self._build(rng, spec, cfg, law, absorbed)
        fresh = random_ensemble(rng, spec, 6, scale=1.5, label="fresh")
        t_grid = np.arange(2.0, 10.25, 0.25)
        cert = verify_attraction(aset, fresh, 0.0, t_grid, cfg, spec)
        assert cert.satisfied_fraction == 1.0

    def test_contained_fresh_measures_zero(self, rng, modal_setup):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 5)
        # tiny radius forces every evolved point into the net
        law = DecayLaw("exponential", 1e-9, 1e-6)
        aset = self._build(rng, spec, cfg, law, absorbed)
        t_grid = [2.0, 2.25, 3.0]
        cert = verify_attraction(aset, absorbed, 0.0, t_grid, cfg, spec)
        assert np.all(cert.measured_semidist <= 1e-10)

    def test_window_validation(self, rng, modal_setup):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 4)
        law = DecayLaw("exponential", 1.0, 0.3)
        aset = self._build(rng, spec, cfg, law, absorbed)
        with pytest.raises(ValueError, match="coverage"):
            verify_attraction(aset, absorbed, 0.0, [1.0], cfg, spec)  # below t*+1+m_min
        with pytest.raises(ValueError, match="coverage"):
            verify_attraction(aset, absorbed, 0.0, [11.0], cfg, spec)  # past t_orbit

    def test_monotone_refinement(self, rng, modal_setup):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 8)
        law = DecayLaw("exponential", 1.0, 0.3)
        fresh = random_ensemble(rng, spec, 5, label="fresh")
        t_grid = np.arange(4.0, 8.25, 0.5)
        small = build_attracting_set(absorbed, (1, 2), law, 10.0, 0.25, cfg, spec)
        big = build_attracting_set(absorbed, (1, 4), law, 10.0, 0.25, cfg, spec)
        cert_small = verify_attraction(small, fresh, 0.0, t_grid, cfg, spec)
        cert_big = verify_attraction(big, fresh, 0.0, t_grid, cfg, spec)
        assert np.all(cert_big.measured_semidist <= cert_small.measured_semidist + 1e-12)

    def test_certificate_slope_matches_rate(self, rng, modal_setup):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 10, scale=1.5)
        radius = ensemble_radius(absorbed, spec)
        beta = 0.5
        law = DecayLaw("exponential", 2.0 * np.sqrt(3.0) * radius, beta)
        aset = self._build(rng, spec, cfg, law, absorbed)
        fresh = random_ensemble(rng, spec, 6, scale=1.5, label="fresh")
        t_grid = np.arange(2.0, 10.25, 0.25)
        cert = verify_attraction(aset, fresh, 0.0, t_grid, cfg, spec)
        mask = cert.measured_semidist > 1e-8
        slope = np.polyfit(
            cert.times[mask], np.log(cert.measured_semidist[mask]), 1
        )[0]
        assert slope <= -0.9 * beta


class TestPersistence:
    def test_round_trip(self, rng, modal_setup, tmp_path):
        spec, cfg = modal_setup
        absorbed = random_ensemble(rng, spec, 5)
        law = DecayLaw("exponential", 1.2, 0.35)
        aset = build_attracting_set(absorbed, (1, 2), law, 4.0, 0.5, cfg, spec)
        save_attracting_set(aset, tmp_path / "aset", extra={"absorbing_radius": 2.0})
        back = load_attracting_set(tmp_path / "aset")
        assert back.law_used == law
        assert back.m_range == aset.m_range
        assert back.t_orbit == aset.t_orbit
        assert len(back.net_entries) == len(aset.net_entries)
        for a, b in zip(aset.net_entries, back.net_entries):
            assert a.birth_time == b.birth_time
            assert np.array_equal(a.seed.as_array(), b.seed.as_array())
            assert np.array_equal(a.evolved.as_array(), b.evolved.as_array())
        assert np.array_equal(aset.target_matrix(), back.target_matrix())
        assert back.orbit_index == aset.orbit_index
