"""Reference systems: hydrogen bound-state currents and the one-dimensional
bound-model zoo (linear potential / Airy levels, half-harmonic well, box)
with mass-scaling exponents.

Hydrogen conventions: R_{n,l} normalized with integral R^2 r^2 dr = 1,
Theta_l^m with integral Theta^2 sin(theta) dtheta = 1, azimuthal factor
1/sqrt(2 pi), so rho = R^2 Theta^2 / (2 pi) and the probability current is
J = e_phi m_l hbar rho / (M r sin theta).  Vectors are returned in the
spherical basis (e_r, e_theta, e_phi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import (airy_ai, airy_ai_zero, assoc_laguerre, assoc_legendre,
                       assoc_legendre_deriv)


@dataclass(frozen=True)
class HydrogenState:
    n: int
    l: int
    m_l: int
    a0: float = 1.0
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.n < 1 or not (0 <= self.l < self.n) or abs(self.m_l) > self.l:
            raise ValueError("need n >= 1, 0 <= l < n, |m_l| <= l")
        if self.l > 4:
            raise ValueError("l > 4 outside the supported range")


def _radial_norm(state):
    n, l, a0 = state.n, state.l, state.a0
    return math.sqrt((2.0 / (n * a0)) ** 3
                     * math.factorial(n - l - 1)
                     / (2.0 * n * math.factorial(n + l)))


def hydrogen_radial(state, r):
    """R_{n,l}(r), physics normalization."""
    r = np.asarray(r, dtype=float)
    n, l = state.n, state.l
    rho_t = 2.0 * r / (n * state.a0)
    lag = assoc_laguerre(n - l - 1, 2 * l + 1, rho_t)
    return _radial_norm(state) * np.exp(-rho_t / 2.0) * rho_t ** l * lag


def hydrogen_radial_deriv(state, r):
    """dR/dr via dL_p^q(x)/dx = -L_{p-1}^{q+1}(x)."""
    r = np.asarray(r, dtype=float)
    n, l = state.n, state.l
    s = 2.0 / (n * state.a0)
    x = s * r
    p = n - l - 1
    lag = assoc_laguerre(p, 2 * l + 1, x)
    dlag = -assoc_laguerre(p - 1, 2 * l + 2, x) if p >= 1 else np.zeros_like(x)
    core = (-0.5 * x ** l * lag
            + (l * x ** (l - 1) * lag if l >= 1 else 0.0)
            + x ** l * dlag)
    return _radial_norm(state) * s * np.exp(-x / 2.0) * core


def _theta_norm(l, m):
    return math.sqrt((2.0 * l + 1.0) / 2.0
                     * math.factorial(l - m) / math.factorial(l + m))


def hydrogen_theta(state, theta):
    """Theta_l^{|m_l|}(theta), normalized against sin(theta) d theta."""
    theta = np.asarray(theta, dtype=float)
    m = abs(state.m_l)
    return _theta_norm(state.l, m) * assoc_legendre(state.l, m, np.cos(theta))


def hydrogen_theta_deriv(state, theta):
    theta = np.asarray(theta, dtype=float)
    m = abs(state.m_l)
    x = np.cos(theta)
    sin_t = np.sin(theta)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = _theta_norm(state.l, m) * assoc_legendre_deriv(state.l, m, x) * (-sin_t)
    # on the polar axis the theta derivative vanishes for the m = 0 states
    # (m != 0 states are rejected there before reaching this)
    return np.where(sin_t == 0.0, 0.0, val)


def hydrogen_density(state, r, theta):
    rr = hydrogen_radial(state, r)
    th = hydrogen_theta(state, theta)
    return rr * rr * th * th / (2.0 * math.pi)


def hydrogen_fields(state, r, theta):
    """{rho, J, D, eta} at (r, theta); J, D, eta in the spherical basis.

    J and D follow the printed bound-current expressions; D is built from
    the derivative of R^2 and Theta^2 with the -hbar/(4 pi m) prefactor,
    which under the density convention above equals -(hbar/2m) grad(rho).
    """
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    sin_t = np.sin(theta)
    if state.m_l != 0 and np.any(sin_t == 0.0):
        raise ValueError("J diverges on the polar axis for m_l != 0")
    hbar, mass = state.hbar, state.mass
    rr = hydrogen_radial(state, r)
    drr = hydrogen_radial_deriv(state, r)
    th = hydrogen_theta(state, theta)
    dth = hydrogen_theta_deriv(state, theta)
    rho = rr * rr * th * th / (2.0 * math.pi)

    shape = np.broadcast(r, theta).shape
    j_vec = np.zeros(shape + (3,))
    d_vec = np.zeros(shape + (3,))
    eta_vec = np.zeros(shape + (3,))
    coef = -hbar / (4.0 * math.pi * mass)
    d_vec[..., 0] = coef * (2.0 * rr * drr) * th * th
    d_vec[..., 1] = coef * (1.0 / r) * rr * rr * (2.0 * th * dth)
    if state.m_l != 0:
        j_vec[..., 2] = state.m_l * hbar / (mass * r * sin_t) * rho
        eta_vec[..., 2] = state.m_l * hbar / (mass * r * sin_t)
    return {"rho": rho, "J": j_vec, "D": d_vec, "eta": eta_vec}


def hydrogen_grad_rho(state, r, theta):
    """grad(rho) in the spherical basis via log-derivatives of the factors,
    an independent assembly used to cross-check the printed D."""
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    rho = hydrogen_density(state, r, theta)
    rr = hydrogen_radial(state, r)
    drr = hydrogen_radial_deriv(state, r)
    th = hydrogen_theta(state, theta)
    dth = hydrogen_theta_deriv(state, theta)
    shape = np.broadcast(r, theta).shape
    out = np.zeros(shape + (3,))
    out[..., 0] = rho * 2.0 * drr / rr
    out[..., 1] = rho * 2.0 * dth / th / r
    return out


# ---------------------------------------------------------------------------
# Bound models with closed-form levels, and their mass-scaling exponents.
# ---------------------------------------------------------------------------

def linear_airy_model(k, m, n, hbar=1.0):
    """Linear potential on x > 0 with an infinite wall at the origin.

    rho_n(x) = c (pi / sqrt(-z_n)) Ai(c x + z_n)^2 with c the packet scale
    (2 m k)^(1/3)/hbar^(2/3) included so the density integrates to ~1 (the
    sqrt(-z_n) normalization is asymptotic in n, ~1% off at n = 1); the
    level is E_n = -z_n (hbar^2 k^2 / 2m)^(1/3), exact.
    """
    if n < 1 or n > 20:
        raise ValueError("n must be in 1..20")
    z_n = airy_ai_zero(n)
    c = (2.0 * m * k) ** (1.0 / 3.0) / hbar ** (2.0 / 3.0)

    def rho(x):
        x = np.asarray(x, dtype=float)
        if np.any(x < 0.0):
            raise ValueError("density is defined on x >= 0")
        return c * math.pi / math.sqrt(-z_n) * airy_ai(c * x + z_n) ** 2

    energy = -z_n * (hbar ** 2 * k ** 2 / (2.0 * m)) ** (1.0 / 3.0)
    return {"rho": rho, "E_n": energy, "z_n": z_n, "scale": c}


def half_harmonic_energy(k, m, n, hbar=1.0):
    """Half-oscillator (V = k x^2 / 2 on x > 0, wall at 0):
    E_n = (2n + 3/2) hbar sqrt(k/m), n = 0, 1, 2, ..."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return (2.0 * n + 1.5) * hbar * math.sqrt(k / m)


def box_energy(box_length, m, n, hbar=1.0):
    """Infinite box of length L: E_n = n^2 pi^2 hbar^2 / (2 m L^2), n >= 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return n ** 2 * math.pi ** 2 * hbar ** 2 / (2.0 * m * box_length ** 2)


@dataclass(frozen=True)
class ScalingModel:
    """One bound model at a fixed level, exposing E(mass)."""
    kind: str               # linear_airy | half_harmonic | box
    parameter: float        # force constant k, or box length L
    level: int
    hbar: float = 1.0

    def __post_init__(self):
        if self.kind not in ("linear_airy", "half_harmonic", "box"):
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.parameter <= 0.0:
            raise ValueError("model parameter must be > 0")

    def energy(self, mass):
        if self.kind == "linear_airy":
            return linear_airy_model(self.parameter, mass, self.level, self.hbar)["E_n"]
        if self.kind == "half_harmonic":
            return half_harmonic_energy(self.parameter, mass, self.level, self.hbar)
        return box_energy(self.parameter, mass, self.level, self.hbar)


def mass_scaling_fit(model_kind, n, masses, parameter=1.0, hbar=1.0):
    """Least-squares slope of log E_n against log m.

    The closed-form levels are exact power laws in the mass, so the fit
    recovers -1/3 (linear/Airy), -1/2 (half-harmonic) or -1 (box) to
    round-off.
    """
    masses = np.asarray(masses, dtype=float)
    if masses.size < 3:
        raise ValueError("need at least 3 masses")
    if np.unique(masses).size < 2:
        raise ValueError("degenerate mass list")
    model = ScalingModel(kind=model_kind, parameter=parameter, level=n, hbar=hbar)
    log_m = np.log(masses)
    log_e = np.log([model.energy(m) for m in masses])
    lm = log_m - log_m.mean()
    return float(np.dot(lm, log_e - log_e.mean()) / np.dot(lm, lm))
