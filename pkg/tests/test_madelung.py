"""Velocity-field decomposition, quasi-currents, quantum potential/force,
gauge transforms and integrated identities."""
import math

import numpy as np
import pytest

from abtool.annulus import AnnulusConfig, eigenstate, solenoid_potential
from abtool.madelung import (AnnulusDomain, Constants, DensityFloorError,
                             LineDomain, VectorPotentialSpec, WaveField,
                             decompose, energy_density_operator_residual,
                             gauge_transform, integrated_energy_identity,
                             kinetic_energy_density, osmotic_expectation,
                             phase_winding, quantum_force, quantum_potential,
                             quasi_currents)
from abtool.numerics import QuadratureSpec
from abtool.wavepackets import GaussianPacketConfig, gaussian_wavefield

CONSTS = Constants()
CFG = AnnulusConfig()                  # natural units, a=1, b=3, B=1
STATE = eigenstate(CFG, 1, 1)          # lambda=-1/2, nu=1/2
A_SPEC = solenoid_potential(CFG)


def plane_wave(k0):
    def amplitude(p):
        return np.exp(1j * k0 * np.asarray(p, dtype=float)[..., 0])

    def gradient(p):
        return (1j * k0 * amplitude(p))[..., None]

    return WaveField(amplitude, gradient, dimension=1)


def fd_derivative(f, x, h=1e-5):
    return (f(x + h) - f(x - h)) / (2.0 * h)


class TestDecompose:
    def test_plane_wave(self):
        pw = plane_wave(1.3)
        dec = decompose(pw, None, CONSTS, np.array([0.4]))
        assert dec.eta[0] == pytest.approx(1.3, rel=1e-14)
        assert dec.xi_real[0] == pytest.approx(0.0, abs=1e-12)
        assert dec.xi_imag[0] == 0.0

    def test_annulus_state_at_r2(self):
        # eta = m hbar / (M r) e_theta, v_quasi = (m + lambda) hbar / (M r) e_theta
        dec = decompose(STATE, A_SPEC, CFG, np.array([2.0, 0.0]))
        assert dec.eta[0] == pytest.approx(0.0, abs=1e-15)
        assert dec.eta[1] == pytest.approx(0.5, rel=1e-12)
        assert dec.v_quasi[1] == pytest.approx(0.25, rel=1e-12)
        # xi_imag carries (q/Mc) A
        assert dec.xi_imag[1] == pytest.approx(0.25, rel=1e-12)
        assert np.array_equal(dec.zeta_real, -dec.xi_real)
        assert np.array_equal(dec.zeta_imag, -dec.xi_imag)

    def test_real_field_has_zero_eta_and_fd_xi(self):
        def amplitude(p):
            x = np.asarray(p, dtype=float)[..., 0]
            return np.exp(-x ** 2) + 0.0j

        field = WaveField(amplitude, None, dimension=1)
        x0 = 0.37
        dec = decompose(field, None, CONSTS, np.array([x0]))
        assert abs(dec.eta[0]) <= 1e-12

        def rho(x):
            return float(np.exp(-x ** 2) ** 2)

        expected = -(CONSTS.hbar / (2 * CONSTS.mass)) * fd_derivative(rho, x0) / rho(x0)
        assert dec.xi_real[0] == pytest.approx(expected, rel=1e-8)

    def test_gamma_delta_consistency(self):
        # rho * v_quasi equals the directly assembled quasi-current
        pts = np.array([[1.5, 0.3], [2.4, -0.8], [-1.1, 1.9]])
        dec = decompose(STATE, A_SPEC, CFG, pts)
        gamma, delta = quasi_currents(STATE, A_SPEC, CFG, pts)
        assert np.abs(gamma - dec.rho[:, None] * dec.v_quasi).max() <= 1e-12
        assert np.abs(delta - dec.rho[:, None] * dec.w_quasi).max() <= 1e-12

    def test_density_floor(self):
        with pytest.raises(DensityFloorError):
            decompose(STATE, A_SPEC, CFG, np.array([1.0, 0.0]))   # on the wall

    def test_batch_shapes(self):
        pts = np.array([[2.0, 0.0], [0.0, 2.0]])
        dec = decompose(STATE, None, CFG, pts)
        assert dec.rho.shape == (2,)
        assert dec.eta.shape == (2, 2)


class TestQuasiCurrents:
    def test_orthogonality_at_point(self):
        gamma, delta = quasi_currents(STATE, A_SPEC, CFG, np.array([2.0, 0.0]))
        # gamma tangential, delta radial at theta = 0
        assert abs(gamma[0]) <= 1e-15
        assert abs(delta[1]) <= 1e-15
        assert abs(np.dot(gamma, delta)) <= 1e-15

    def test_reduces_to_plain_current_without_potential(self):
        p = np.array([1.7, 0.6])
        gamma, _ = quasi_currents(STATE, None, CFG, p)
        dec = decompose(STATE, None, CFG, p)
        assert np.abs(gamma - dec.rho * dec.eta).max() <= 1e-14

    def test_delta_finite_near_inner_wall(self):
        # delta = -(hbar/2M) grad rho stays finite as rho -> 0 at the wall
        r = 1.0 + 1e-6
        gamma, delta = quasi_currents(STATE, A_SPEC, CFG, np.array([r, 0.0]))
        assert np.all(np.isfinite(delta))

        def rho_of_x(x):
            return float(STATE.density(np.array([x, 0.0])))

        expected = -(CFG.hbar / (2 * CFG.mass)) * fd_derivative(rho_of_x, r, 1e-8)
        assert delta[0] == pytest.approx(expected, rel=1e-5)

    def test_two_routes_agree_over_sample(self):
        rng = np.random.default_rng(3)
        r = 1.05 + 1.9 * rng.random(500)
        th = 2 * np.pi * rng.random(500)
        pts = np.stack([r * np.cos(th), r * np.sin(th)], axis=-1)
        dec = decompose(STATE, A_SPEC, CFG, pts)
        gamma, _ = quasi_currents(STATE, A_SPEC, CFG, pts)
        scale = np.abs(gamma).max()
        assert np.abs(gamma - dec.rho[:, None] * dec.v_quasi).max() <= 1e-10 * scale


class TestQuantumPotential:
    def test_plane_wave_zero(self):
        pw = plane_wave(2.0)
        assert quantum_potential(pw, CONSTS, np.array([0.1])) == pytest.approx(0.0, abs=1e-9)
        assert np.abs(quantum_force(pw, CONSTS, np.array([0.1]))).max() <= 1e-8

    def test_gaussian_force_example(self):
        cfg = GaussianPacketConfig(alpha=1.0, k0=0.0)
        field = gaussian_wavefield(cfg, 0.0)
        f = quantum_force(field, CONSTS, np.array([0.3]), h=1e-3)
        assert f[0] == pytest.approx(1.2, rel=1e-6)

    def test_force_is_minus_grad_potential(self):
        p = np.array([1.8, 0.7])
        f = quantum_force(STATE, CFG, p, h=1e-3)
        h = 1e-2
        grad = np.empty(2)
        for ax in range(2):
            def q_along(t, ax=ax):
                q = p.copy()
                q[ax] = t
                return quantum_potential(STATE, CFG, q, h=1e-3)
            grad[ax] = (q_along(p[ax] + h) - q_along(p[ax] - h)) / (2 * h)
        assert np.abs(f + grad).max() <= 1e-4 * max(1.0, np.abs(f).max())

    def test_annulus_against_plain_fd_oracle(self):
        # independent plain second differences of sqrt(rho), no Richardson
        p = np.array([0.0, 2.2])
        got = quantum_potential(STATE, CFG, p, h=1e-3)

        def sq(x, y):
            return math.sqrt(float(STATE.density(np.array([x, y]))))

        h = 1e-4
        lap = ((sq(p[0] + h, p[1]) - 2 * sq(*p) + sq(p[0] - h, p[1])) / h ** 2
               + (sq(p[0], p[1] + h) - 2 * sq(*p) + sq(p[0], p[1] - h)) / h ** 2)
        oracle = -(CFG.hbar ** 2 / (2 * CFG.mass)) * lap / sq(*p)
        assert got == pytest.approx(oracle, rel=1e-6)


class TestGaugeTransform:
    def test_constant_lambda_changes_nothing(self):
        gauged = gauge_transform(STATE, lambda p: 4.2 * np.ones(np.asarray(p).shape[:-1]),
                                 CFG)
        pts = np.array([[1.6, 0.4], [2.2, -1.0]])
        dec0 = decompose(STATE, None, CFG, pts)
        dec1 = decompose(gauged, None, CFG, pts)
        assert np.abs(dec0.eta - dec1.eta).max() <= 1e-9
        assert np.array_equal(gauged.density(pts), STATE.density(pts))
        assert dec1.rho == pytest.approx(dec0.rho, rel=1e-14)

    def test_angular_lambda_shifts_eta(self):
        sigma = 0.6

        def lam(p):
            return sigma * np.arctan2(p[..., 1], p[..., 0])

        gauged = gauge_transform(STATE, lam, CFG)   # gradient of Lambda by FD
        r = 1.9
        p = np.array([r * math.cos(0.5), r * math.sin(0.5)])
        dec0 = decompose(STATE, None, CFG, p)
        dec1 = decompose(gauged, None, CFG, p)
        shift = dec1.eta - dec0.eta
        e_th = np.array([-math.sin(0.5), math.cos(0.5)])
        expected = (CFG.charge * sigma) / (CFG.mass * CFG.c * r)
        assert np.dot(shift, e_th) == pytest.approx(expected, rel=1e-7)
        assert abs(np.dot(shift, np.array([math.cos(0.5), math.sin(0.5)]))) <= 1e-8

    def test_rho_preserved_exactly(self):
        rng = np.random.default_rng(8)
        r = 1.05 + 1.9 * rng.random(1000)
        th = 2 * np.pi * rng.random(1000)
        pts = np.stack([r * np.cos(th), r * np.sin(th)], axis=-1)
        gauged = gauge_transform(STATE, lambda p: 0.31 * p[..., 0], CFG)
        assert np.array_equal(gauged.density(pts), STATE.density(pts))


class TestOsmoticExpectation:
    def test_reference_state(self):
        spec = QuadratureSpec(rel_tol=1e-9, abs_tol=1e-10)
        out = osmotic_expectation(STATE, A_SPEC, CFG, CFG.domain(), spec)
        assert np.abs(out["real_part"]).max() <= 1e-8
        # directional part equals (q/Mc) <B a^2 / (2 r)> by an independent
        # radial trapezoid
        rg = np.linspace(CFG.a, CFG.b, 40_001)
        rho = STATE.radial_density(rg)
        a_theta = CFG.B * CFG.a ** 2 / (2.0 * rg)
        oracle = (CFG.charge / (CFG.mass * CFG.c)) * np.trapezoid(
            rho * a_theta * 2 * np.pi * rg, rg)
        assert out["directional_theta"] == pytest.approx(oracle, rel=1e-7)

    def test_no_field_no_direction(self):
        cfg0 = AnnulusConfig(B=0.0)
        state0 = eigenstate(cfg0, 1, 1)
        out = osmotic_expectation(state0, solenoid_potential(cfg0), cfg0,
                                  cfg0.domain(), QuadratureSpec(rel_tol=1e-9,
                                                                abs_tol=1e-10))
        assert np.abs(out["real_part"]).max() <= 1e-8
        assert out["directional_theta"] == pytest.approx(0.0, abs=1e-12)


class TestEnergyIdentity:
    def test_ring_phase_wave_density(self):
        # constant-modulus angular wave: kinetic density is purely rotational
        m = 2

        def amplitude(p):
            th = np.arctan2(p[..., 1], p[..., 0])
            return np.exp(1j * m * th)

        def gradient(p):
            x, y = p[..., 0], p[..., 1]
            r2 = x * x + y * y
            amp = amplitude(p)
            return np.stack([-1j * m * y / r2 * amp, 1j * m * x / r2 * amp],
                            axis=-1)

        ring = WaveField(amplitude, gradient, dimension=2)
        p = np.array([1.4, -0.9])
        r2 = float(p @ p)
        got = kinetic_energy_density(ring, None, CONSTS, p)
        assert got == pytest.approx(CONSTS.hbar ** 2 * m ** 2 / (2 * CONSTS.mass * r2),
                                    rel=1e-12)

    def test_gaussian_moment_oracle(self):
        cfg = GaussianPacketConfig(alpha=1.0, k0=1.0)
        field = gaussian_wavefield(cfg, 0.0)
        lhs, rhs, res = integrated_energy_identity(field, None, CONSTS,
                                                   LineDomain(-5.8, 5.8))
        expected = cfg.hbar ** 2 / (2 * cfg.mass * cfg.alpha ** 2) \
            * (1.0 + cfg.k0 ** 2 * cfg.alpha ** 2)
        assert res <= 1e-12
        assert lhs == pytest.approx(expected, rel=1e-10)

    def test_annulus_state(self):
        from abtool.annulus import _energy_domain
        lhs, rhs, res = integrated_energy_identity(
            STATE, A_SPEC, CFG, _energy_domain(CFG, None))
        assert res <= 1e-6

    def test_operator_residual_is_reported_not_bounded(self):
        # the operator-form density differs pointwise by a total divergence
        val = energy_density_operator_residual(STATE, A_SPEC, CFG,
                                               np.array([1.9, 0.4]))
        assert np.isfinite(val)


class TestPhaseWinding:
    def test_integer_winding(self):
        w = phase_winding(STATE, CFG, radius=2.0)
        assert w == pytest.approx(2.0 * np.pi * STATE.m, rel=1e-10)


class TestWaveField:
    def test_fd_gradient_matches_analytic(self):
        pts = np.array([[1.7, 0.5], [2.3, -1.1], [0.2, 2.1]])
        fd_field = WaveField(STATE.amplitude, None, dimension=2, fd_step=1e-6)
        g_fd = fd_field.gradient(pts)
        g_an = STATE.gradient(pts)
        scale = np.abs(g_an).max()
        assert np.abs(g_fd - g_an).max() <= 1e-6 * scale

    def test_invalid_constants(self):
        with pytest.raises(ValueError):
            Constants(hbar=0.0)

    def test_vector_potential_spec_callable(self):
        spec = VectorPotentialSpec(a_field=lambda p: 0.5 * p)
        assert np.allclose(spec(np.array([2.0, 0.0])), [1.0, 0.0])


class TestDomains:
    def test_line_domain(self):
        dom = LineDomain(0.0, 2.0)
        val = dom.integrate(lambda pts: pts[:, 0] ** 2)
        assert val == pytest.approx(8.0 / 3.0, rel=1e-12)

    def test_annulus_domain_area(self):
        dom = AnnulusDomain(1.0, 3.0)
        val = dom.integrate(lambda pts: np.ones(pts.shape[0]))
        assert val == pytest.approx(8.0 * np.pi, rel=1e-12)
