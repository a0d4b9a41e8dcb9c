"""Special functions, quadrature, differencing and random streams.

Oracles are intentionally independent of the code under test: a direct-sum
Bessel/Airy series built on math.gamma, stdlib closed forms, bisection on
those series, and dense trapezoid sums.
"""
import math

import numpy as np
import pytest

from abtool.numerics import (NonConvergenceError, QuadratureSpec, RandomStream,
                             airy_ai, airy_ai_zero, assoc_laguerre,
                             assoc_legendre, bessel_j, bessel_j_prime,
                             bessel_j_zero, central_diff, central_diff_2nd,
                             chi2_sf, gamma, integrate_1d, integrate_annulus,
                             normal_variates)
from abtool.numerics import _bessel_series, _bessel_hankel


# ---------------------------------------------------------------------------
# Independent oracles (kept deliberately naive).
# ---------------------------------------------------------------------------

def oracle_bessel(nu, x, terms=80):
    """Direct-sum ascending series on math.gamma."""
    total = 0.0
    for k in range(terms):
        total += (-1.0) ** k / (math.factorial(k) * math.gamma(nu + k + 1.0)) \
            * (x / 2.0) ** (2 * k + nu)
    return total


def oracle_airy(x, terms=60):
    """Maclaurin series for Ai built on math.gamma (good for |x| < ~6)."""
    c1 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
    c2 = 3.0 ** (-1.0 / 3.0) / math.gamma(1.0 / 3.0)
    f = g = 0.0
    cf, cg = 1.0, x
    for k in range(terms):
        f += cf
        g += cg
        cf = cf * x ** 3 / ((3 * k + 2.0) * (3 * k + 3.0))
        cg = cg * x ** 3 / ((3 * k + 3.0) * (3 * k + 4.0))
    return c1 * f - c2 * g


def oracle_bisect(f, a, b, iters=120):
    fa = f(a)
    for _ in range(iters):
        m = 0.5 * (a + b)
        fm = f(m)
        if fa * fm <= 0.0:
            b = m
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


class TestGamma:
    def test_integers_exact(self):
        for k in range(1, 10):
            assert gamma(k) == math.factorial(k - 1)

    def test_half_integer(self):
        assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
        assert gamma(2.5) == pytest.approx(1.5 * 0.5 * math.sqrt(math.pi), rel=1e-14)

    def test_pole(self):
        with pytest.raises(ValueError):
            gamma(0.0)


class TestBesselJ:
    def test_j0_at_zero_is_one(self):
        assert bessel_j(0, 0.0) == 1.0

    @pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
    def test_half_integer_closed_form(self, x):
        assert bessel_j(0.5, x) == pytest.approx(
            math.sqrt(2.0 / (math.pi * x)) * math.sin(x), abs=1e-12)

    def test_half_integer_identity_on_range(self):
        xs = np.linspace(0.05, 30.0, 600)
        lhs = bessel_j(0.5, xs) * np.sqrt(np.pi * xs / 2.0)
        assert np.abs(lhs - np.sin(xs)).max() <= 1e-10

    def test_first_j0_zero_against_bisection_oracle(self):
        root = oracle_bisect(lambda x: oracle_bessel(0.0, x), 2.0, 3.0)
        assert root == pytest.approx(2.404825557695773, abs=1e-12)
        assert abs(bessel_j(0, root)) <= 1e-8

    @pytest.mark.parametrize("nu", [0.0, 0.25, 1.0, 1.75, 3.0])
    def test_series_matches_oracle(self, nu):
        xs = np.linspace(0.1, 9.0, 24)
        mine = bessel_j(nu, xs)
        ref = np.array([oracle_bessel(nu, x) for x in xs])
        assert np.abs(mine - ref).max() <= 1e-12

    @pytest.mark.parametrize("nu", [0.0, 0.5, 1.5, 2.5, 4.0])
    def test_seam_agreement(self, nu):
        seam = max(12.0, 2.0 * nu)
        a = _bessel_series(nu, np.array([seam]))[0]
        b = _bessel_hankel(nu, np.array([seam]))[0]
        assert abs(a - b) <= 1e-10

    def test_large_argument_half_integer(self):
        # Hankel branch is exact for order 1/2
        for x in (50.0, 400.0, 9000.0):
            assert bessel_j(0.5, x) == pytest.approx(
                math.sqrt(2.0 / (math.pi * x)) * math.sin(x), abs=1e-13)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            bessel_j(-0.5, 1.0)
        with pytest.raises(ValueError):
            bessel_j(1.0, -0.1)

    def test_pure(self):
        a = bessel_j(1.25, np.linspace(0.1, 40, 50))
        b = bessel_j(1.25, np.linspace(0.1, 40, 50))
        assert np.array_equal(a, b)

    def test_derivative_identity(self):
        # J_0' = -J_1
        for x in (0.3, 1.0, 5.0, 14.0):
            assert bessel_j_prime(0.0, x) == pytest.approx(-bessel_j(1.0, x),
                                                           abs=1e-12)


class TestBesselZeros:
    def test_half_integer_zeros_are_n_pi(self):
        for n in range(1, 11):
            assert abs(bessel_j_zero(0.5, n) - n * math.pi) <= 1e-10

    def test_first_j0_zero(self):
        assert bessel_j_zero(0.0, 1) == pytest.approx(2.404825557695773, abs=1e-10)

    def test_residual_at_zero(self):
        for nu in (0.0, 0.3, 1.5):
            for n in (1, 3, 7):
                assert abs(bessel_j(nu, bessel_j_zero(nu, n))) <= 1e-10

    def test_interlacing(self):
        for nu in (0.0, 0.5, 1.0):
            for n in range(1, 6):
                t_nn = bessel_j_zero(nu, n)
                t_up = bessel_j_zero(nu + 1.0, n)
                t_next = bessel_j_zero(nu, n + 1)
                assert t_nn < t_up < t_next

    def test_high_index(self):
        # zero number 100 of J_{1/2} is exactly 100 pi
        assert bessel_j_zero(0.5, 100) == pytest.approx(100 * math.pi, abs=1e-9)

    def test_bad_args(self):
        with pytest.raises(ValueError):
            bessel_j_zero(0.5, 0)
        with pytest.raises(ValueError):
            bessel_j_zero(-1.0, 1)


class TestAiry:
    def test_value_at_zero(self):
        # 3^(-2/3)/Gamma(2/3) through the stdlib
        expected = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
        assert airy_ai(0.0) == pytest.approx(expected, abs=1e-14)
        assert expected == pytest.approx(0.3550280539, abs=1e-9)

    def test_series_window_against_oracle(self):
        xs = np.linspace(-5.5, 5.5, 45)
        mine = airy_ai(xs)
        ref = np.array([oracle_airy(x) for x in xs])
        assert np.abs(mine - ref).max() <= 1e-12

    def test_positive_decay(self):
        vals = [airy_ai(x) for x in (2.0, 5.0, 10.0)]
        assert all(v > 0.0 for v in vals)
        assert vals[0] > vals[1] > vals[2]

    def test_first_zero_against_bisection_oracle(self):
        z1 = oracle_bisect(oracle_airy, -3.0, -2.0)
        assert z1 == pytest.approx(-2.338107410459767, abs=1e-12)
        assert airy_ai_zero(1) == pytest.approx(z1, abs=1e-10)

    def test_zero_residuals_and_ordering(self):
        prev = 0.0
        for n in range(1, 51):
            z = airy_ai_zero(n)
            assert z < 0.0
            assert z < prev
            assert abs(airy_ai(z)) <= 1e-8
            prev = z


class TestOrthogonalPolynomials:
    def test_laguerre_order_zero(self):
        assert assoc_laguerre(0, 1.7, 0.3) == 1.0

    def test_laguerre_order_one(self):
        # L_1^{(q)}(x) = 1 + q - x
        assert assoc_laguerre(1, 2.0, 0.5) == pytest.approx(2.5, rel=1e-15)

    def test_legendre_p1(self):
        xs = np.linspace(-1, 1, 11)
        assert np.allclose(assoc_legendre(1, 0, xs), xs, atol=1e-15)

    def test_legendre_p21_closed_form(self):
        x = 0.5
        assert assoc_legendre(2, 1, x) == pytest.approx(
            -3.0 * x * math.sqrt(1.0 - x * x), rel=1e-14)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            assoc_legendre(2, 3, 0.5)
        with pytest.raises(ValueError):
            assoc_legendre(2, 1, 1.5)
        with pytest.raises(ValueError):
            assoc_laguerre(-1, 0.0, 0.5)


class TestQuadrature:
    def test_linear(self):
        assert integrate_1d(lambda x: x, 0.0, 1.0) == pytest.approx(0.5, abs=1e-14)

    def test_annulus_area(self):
        class Geo:
            a, b = 1.0, 3.0
        val = integrate_annulus(lambda r, th: np.ones_like(r), Geo())
        assert val == pytest.approx(8.0 * math.pi, rel=1e-12)

    def test_airy_squared_integral_against_trapezoid_oracle(self):
        z1 = airy_ai_zero(1)
        xs = np.linspace(0.0, 20.0, 200_001)
        ys = airy_ai(xs + z1) ** 2
        oracle = np.trapezoid(ys, xs)
        val = integrate_1d(lambda x: airy_ai(x + z1) ** 2, 0.0, 20.0)
        assert val == pytest.approx(oracle, abs=1e-8)
        assert val == pytest.approx(0.4917, abs=5e-4)

    def test_nonconvergence_carries_best_estimate(self):
        with pytest.raises(NonConvergenceError) as err:
            integrate_1d(lambda x: 1.0 / np.sqrt(x), 0.0, 1.0,
                         QuadratureSpec(rel_tol=1e-12, abs_tol=0.0))
        assert err.value.best_estimate == pytest.approx(2.0, abs=1e-6)
        assert err.value.error_bound > 0.0

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(rel_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(abs_tol=-1.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_depth=0)


class TestCentralDiff:
    def test_sin(self):
        assert central_diff(math.sin, 0.0, 1e-3) == pytest.approx(1.0, abs=1e-10)

    def test_exp(self):
        assert central_diff(math.exp, 1.0, 1e-3) == pytest.approx(math.e, abs=1e-9)

    def test_bessel_derivative_identity(self):
        got = central_diff(lambda x: bessel_j(0.0, x), 1.0, 1e-3)
        assert got == pytest.approx(-bessel_j(1.0, 1.0), abs=1e-8)

    def test_second_derivative(self):
        assert central_diff_2nd(math.sin, 0.7, 1e-3) == pytest.approx(
            -math.sin(0.7), abs=1e-9)

    def test_h_validation(self):
        with pytest.raises(ValueError):
            central_diff(math.sin, 0.0, 0.0)


class TestRandomStream:
    def test_determinism(self):
        a = RandomStream(123, 5).normals(1000)
        b = RandomStream(123, 5).normals(1000)
        assert np.array_equal(a, b)

    def test_call_pattern_invariance(self):
        s1 = RandomStream(9, 0)
        s2 = RandomStream(9, 0)
        left = np.concatenate([s1.normals(3), s1.normals(3)])
        right = s2.normals(6)
        assert np.array_equal(left, right)

    def test_mean_bound(self):
        z = normal_variates(RandomStream(2024, 0), 100_000)
        assert abs(z.mean()) <= 4.0 / math.sqrt(100_000)

    def test_variance_bound(self):
        z = RandomStream(77, 1).normals(10_000)
        assert abs(z.var() - 1.0) <= 0.1

    def test_stream_independence(self):
        a = RandomStream(31, 0).normals(10_000)
        b = RandomStream(31, 1).normals(10_000)
        r = np.corrcoef(a, b)[0, 1]
        assert abs(r) <= 0.02

    def test_counter_tracks_draws(self):
        s = RandomStream(1, 0)
        s.normals(7)
        assert s.counter == 7

    def test_count_validation(self):
        with pytest.raises(ValueError):
            RandomStream(1, 0).normals(0)


class TestChiSquareTail:
    def test_two_dof_closed_form(self):
        # Q(1, x/2) = exp(-x/2) for dof = 2
        for x in (0.5, 2.0, 7.3):
            assert chi2_sf(x, 2) == pytest.approx(math.exp(-x / 2.0), rel=1e-12)

    def test_monotone_in_x(self):
        vals = [chi2_sf(x, 5) for x in (1.0, 3.0, 9.0, 20.0)]
        assert vals == sorted(vals, reverse=True)

    def test_bounds(self):
        assert chi2_sf(0.0, 3) == 1.0
        assert 0.0 < chi2_sf(60.0, 3) < 1e-11
