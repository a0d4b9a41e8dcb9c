"""Sampling the bound-state diffusion process: forward/backward drifts, an
Euler-Maruyama integrator with diffusion coefficient beta^2 = hbar/2M, and
stationarity statistics against |psi|^2.

The forward process is dX = b(X) dt + sqrt(2 beta^2) dW with b = v + u,
where v is the current velocity and u = (hbar/2M) grad(rho)/rho the osmotic
velocity; |psi|^2 is its stationary density.  Integration is Cartesian (no
polar drift corrections), trajectories carry their own independent variate
streams, and runs are bit-reproducible for a fixed configuration.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .madelung import RHO_FLOOR, decompose
from .numerics import RandomStream, chi2_sf

_HALVING_LIMIT = 8
_NOISE_CHUNK = 4096


@dataclass(frozen=True)
class SdeConfig:
    dt: float = 1e-3
    steps: int = 200_000
    burn_in: int = 20_000
    n_trajectories: int = 64
    seed: int = 20240801
    boundary_policy: str = "reject_resample"
    max_retries: int = 4

    def __post_init__(self):
        if self.dt <= 0.0:
            raise ValueError("dt must be > 0")
        if not (0 <= self.burn_in < self.steps):
            raise ValueError("need 0 <= burn_in < steps")
        if self.n_trajectories < 1:
            raise ValueError("n_trajectories must be >= 1")
        if self.boundary_policy != "reject_resample":
            raise ValueError(f"unknown boundary policy {self.boundary_policy!r}")
        if self.max_retries < 1:
            raise ValueError("max_retries must be >= 1")


@dataclass
class Trajectory:
    positions: np.ndarray          # retained (post burn-in) points, (n, 2)
    dt: float
    seed: int
    stream_id: int
    retry_stream_id: int
    rejected_steps: int = 0
    aborted: bool = False
    diagnostic: str = ""

    def radii(self):
        return np.hypot(self.positions[:, 0], self.positions[:, 1])

    def angles(self):
        return np.arctan2(self.positions[:, 1], self.positions[:, 0])


def drifts(psi, A, cfg, p):
    """Forward/backward drifts and mean derivatives at p.

    u = (hbar/2M) grad(rho)/rho (osmotic), v = eta (current velocity);
    b = v + u, b* = v - u; the mean derivatives are the complex combinations
    D+- = eta +- i xi built from the momentum density with the plain
    momentum operator.
    """
    dec = decompose(psi, A, cfg, p)
    u = -dec.xi_real
    v = dec.eta
    return {
        "forward": v + u,
        "backward": v - u,
        "mean_forward": dec.eta + 1j * dec.xi_real,
        "mean_backward": dec.eta - 1j * dec.xi_real,
    }


def _drift_field(state, cfg, pts):
    """Vectorized b = v + u for valid points (no floor checks here)."""
    amp, grad = state.value_and_gradient(pts)
    rho = (amp * np.conj(amp)).real
    cross = np.conj(amp)[..., None] * grad
    rho_col = rho[..., None]
    eta = (cfg.hbar / cfg.mass) * cross.imag / rho_col
    u = (cfg.hbar / cfg.mass) * cross.real / rho_col   # (hbar/2M) grad rho / rho
    return eta + u


def _valid_mask(state, cfg, pts):
    r = np.hypot(pts[:, 0], pts[:, 1])
    ok = (r > cfg.a) & (r < cfg.b)
    rho = np.zeros_like(r)
    if ok.any():
        rho[ok] = state.density(pts[ok])
    return ok & (rho > RHO_FLOOR)


class _SeparableStepKernel:
    """Drift/validity kernel for separable annulus states R(r) e^{i m theta}.

    The proposal-validity pass evaluates the radial pair (R, R'), which is
    exactly what the next drift needs, so each step costs one radial
    evaluation instead of three.  The drift it produces is b = v + u with
    v = (m hbar / M r) e_theta and u = (hbar / M) (R'/R) e_r, identical to
    the generic decomposition route for these states.
    """

    def __init__(self, state, cfg):
        self.state = state
        self.cfg = cfg
        self.coef = cfg.hbar / cfg.mass
        self._r = None
        self._ratio = None   # R'/R at the current positions

    def seed(self, pos):
        r = np.hypot(pos[:, 0], pos[:, 1])
        rr, drr = self.state.radial_parts(r)
        self._r = r
        self._ratio = drr / rr

    def drift(self, pos):
        r = self._r
        u_r = self.coef * self._ratio
        v_t = self.coef * self.state.m / r
        x, y = pos[:, 0], pos[:, 1]
        bx = (u_r * x - v_t * y) / r
        by = (u_r * y + v_t * x) / r
        return np.stack([bx, by], axis=1)

    def validity(self, pts, idx=None):
        """Validity of proposals; caches (r, R'/R) for the accepted ones."""
        r = np.hypot(pts[:, 0], pts[:, 1])
        cfg = self.cfg
        ok = (r > cfg.a) & (r < cfg.b)
        rr, drr = self.state.radial_parts(r)
        ok &= rr * rr > RHO_FLOOR
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(ok, drr / np.where(rr != 0.0, rr, 1.0), 0.0)
        if idx is None:
            keep = ok
            self._r = np.where(keep, r, self._r)
            self._ratio = np.where(keep, ratio, self._ratio)
        else:
            good = idx[ok]
            self._r[good] = r[ok]
            self._ratio[good] = ratio[ok]
        return ok


def simulate(state, sde_cfg, geometry=None):
    """Euler-Maruyama sampling of the stationary state's diffusion process.

    Proposals landing outside the annulus or below the density floor are
    resampled with fresh noise up to max_retries, after which the step size
    is halved (cascade depth 8) before the trajectory is declared aborted.
    Every trajectory owns two variate streams (main and retry), so results
    are reproducible and independent of how the work is scheduled.

    `geometry` (constants plus annulus walls) defaults to the state's own
    configuration; pass it explicitly for a bare WaveField over the annulus.
    """
    cfg = geometry if geometry is not None else state.cfg
    n_traj = sde_cfg.n_trajectories
    dt = sde_cfg.dt
    sigma = np.sqrt(2.0 * cfg.beta_sq * dt)

    main = [RandomStream(sde_cfg.seed, 2 * i) for i in range(n_traj)]
    retry = [RandomStream(sde_cfg.seed, 2 * i + 1) for i in range(n_traj)]
    init = RandomStream(sde_cfg.seed, 2 * n_traj)

    r0 = 0.5 * (cfg.a + cfg.b)
    th0 = 2.0 * np.pi * init.uniforms(n_traj)
    pos = np.stack([r0 * np.cos(th0), r0 * np.sin(th0)], axis=1)

    kernel = None
    if hasattr(state, "radial_parts") and hasattr(state, "m"):
        kernel = _SeparableStepKernel(state, cfg)
        kernel.seed(pos)

    def drift_at(p):
        return kernel.drift(p) if kernel else _drift_field(state, cfg, p)

    def valid(pts, idx=None):
        if kernel is not None:
            return kernel.validity(pts, idx)
        return _valid_mask(state, cfg, pts)

    kept = np.empty((sde_cfg.steps - sde_cfg.burn_in, n_traj, 2))
    rejected = np.zeros(n_traj, dtype=int)
    aborted = np.zeros(n_traj, dtype=bool)
    diagnostics = [""] * n_traj

    step = 0
    while step < sde_cfg.steps:
        block = min(_NOISE_CHUNK, sde_cfg.steps - step)
        noise = np.empty((block, n_traj, 2))
        for i, stream in enumerate(main):
            noise[:, i, :] = stream.normals(2 * block).reshape(block, 2)
        for s in range(block):
            b = drift_at(pos)
            prop = pos + b * dt + sigma * noise[s]
            if aborted.any():
                prop[aborted] = pos[aborted]
                alive = np.nonzero(~aborted)[0]
                ok = np.ones(n_traj, dtype=bool)
                ok[alive] = valid(prop[alive], alive)
            else:
                ok = valid(prop)
            if not ok.all():
                tries = np.zeros(n_traj, dtype=int)
                halvings = np.zeros(n_traj, dtype=int)
                dt_loc = np.full(n_traj, dt)
                while not ok.all():
                    bad = np.nonzero(~ok)[0]
                    rejected[bad] += 1
                    tries[bad] += 1
                    exhausted = bad[tries[bad] > sde_cfg.max_retries]
                    if exhausted.size:
                        tries[exhausted] = 0
                        halvings[exhausted] += 1
                        dt_loc[exhausted] *= 0.5
                        dead = exhausted[halvings[exhausted] > _HALVING_LIMIT]
                        if dead.size:
                            for i in dead:
                                aborted[i] = True
                                diagnostics[i] = (
                                    f"step {step + s}: no valid proposal after "
                                    f"{sde_cfg.max_retries} retries and "
                                    f"{_HALVING_LIMIT} halvings")
                            ok[dead] = True
                            prop[dead] = pos[dead]
                            bad = np.setdiff1d(bad, dead)
                            if bad.size == 0:
                                break
                    xi = np.stack([retry[i].normals(2) for i in bad])
                    dtb = dt_loc[bad, None]
                    prop[bad] = (pos[bad] + b[bad] * dtb
                                 + np.sqrt(2.0 * cfg.beta_sq * dtb) * xi)
                    ok2 = valid(prop[bad], bad)
                    ok[bad[ok2]] = True
            pos = prop
            if step + s >= sde_cfg.burn_in:
                kept[step + s - sde_cfg.burn_in] = pos
        step += block

    out = []
    for i in range(n_traj):
        out.append(Trajectory(positions=kept[:, i, :].copy(), dt=dt,
                              seed=sde_cfg.seed, stream_id=2 * i,
                              retry_stream_id=2 * i + 1,
                              rejected_steps=int(rejected[i]),
                              aborted=bool(aborted[i]),
                              diagnostic=diagnostics[i]))
    return out


def rejection_fraction(trajectories, sde_cfg):
    total = sum(t.rejected_steps for t in trajectories)
    return total / (sde_cfg.steps * sde_cfg.n_trajectories)


# ---------------------------------------------------------------------------
# Radial target distribution and goodness-of-fit statistics.
# ---------------------------------------------------------------------------

def radial_target(state, grid_points=8193):
    """(r grid, pdf, cdf) for the radial marginal p(r) = 2 pi r rho(r)."""
    cfg = state.cfg
    rg = np.linspace(cfg.a, cfg.b, grid_points)
    pdf = 2.0 * np.pi * rg * state.radial_density(rg)
    cdf = np.concatenate([[0.0], np.cumsum(0.5 * (pdf[1:] + pdf[:-1]) * np.diff(rg))])
    pdf = pdf / cdf[-1]
    cdf = cdf / cdf[-1]
    return rg, pdf, cdf


def target_radial_sampler(state, stream, count):
    """Direct draws from the radial marginal by inverse CDF (the oracle
    sampler used to calibrate the goodness-of-fit statistics)."""
    rg, _, cdf = radial_target(state)
    u = stream.uniforms(count)
    return np.interp(u, cdf, rg)


def _pooled_radii(trajectories):
    if isinstance(trajectories, np.ndarray):
        return np.asarray(trajectories, dtype=float).ravel()
    return np.concatenate([t.radii() for t in trajectories])


def ks_distance(samples, state):
    """Kolmogorov-Smirnov sup distance between the sample radii and the
    radial target CDF."""
    rg, _, cdf = radial_target(state)
    xs = np.sort(np.asarray(samples, dtype=float))
    f = np.interp(xs, rg, cdf)
    n = xs.size
    emp_hi = np.arange(1, n + 1) / n
    emp_lo = np.arange(0, n) / n
    return float(max(np.abs(emp_hi - f).max(), np.abs(f - emp_lo).max()))


def stationarity_test(trajectories, state, bins=40, thin=1):
    """{ks_distance, chi2, p_value, dof, n_samples} for the radial marginal.

    KS uses every pooled sample.  The chi-square uses equal-probability bins
    (expected count >= 20 enforced by shrinking the bin count) on samples
    thinned by `thin`; for Markov-chain input choose `thin` near the chain's
    correlation time, otherwise the chi-square calibration is meaningless.
    """
    radii = _pooled_radii(trajectories)
    if radii.size < 10_000:
        raise ValueError("need at least 1e4 pooled samples")
    ks = ks_distance(radii, state)
    thinned = radii[::thin]
    nbins = int(min(bins, thinned.size // 20))
    if nbins < 2:
        raise ValueError("too few thinned samples for a chi-square")
    rg, _, cdf = radial_target(state)
    edges = np.interp(np.linspace(0.0, 1.0, nbins + 1), cdf, rg)
    counts, _ = np.histogram(thinned, bins=edges)
    expected = thinned.size / nbins
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    dof = nbins - 1
    return {"ks_distance": ks, "chi2": chi2, "p_value": chi2_sf(chi2, dof),
            "dof": dof, "n_samples": int(radii.size),
            "n_chi2_samples": int(thinned.size)}


def angular_uniformity_test(trajectories, bins=16, thin=1):
    """Chi-square of the pooled (thinned) angles against the uniform law."""
    if isinstance(trajectories, np.ndarray):
        angles = np.asarray(trajectories, dtype=float).ravel()
    else:
        angles = np.concatenate([t.angles() for t in trajectories])
    thinned = angles[::thin]
    nbins = int(min(bins, thinned.size // 20))
    if nbins < 2:
        raise ValueError("too few thinned samples for a chi-square")
    counts, _ = np.histogram(thinned, bins=nbins, range=(-np.pi, np.pi))
    expected = thinned.size / nbins
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    dof = nbins - 1
    return {"chi2": chi2, "p_value": chi2_sf(chi2, dof), "dof": dof,
            "n_samples": int(thinned.size)}


def ergodic_angular_momentum(trajectories, state, block=500_000, thin=1):
    """Ensemble/time average of M r v_quasi,theta over retained samples,
    with the standard error across trajectory means.

    `thin` strides the retained samples before averaging; consecutive
    positions are strongly correlated, so moderate thinning changes the
    estimate only at the noise level while cutting the evaluation cost.
    """
    from .annulus import solenoid_potential
    cfg = state.cfg
    A = solenoid_potential(cfg)

    def mean_for(all_positions):
        positions = all_positions[::thin]
        total = 0.0
        count = 0
        for lo in range(0, len(positions), block):
            pts = positions[lo:lo + block]
            dec = decompose(state, A, cfg, pts)
            r = np.hypot(pts[:, 0], pts[:, 1])
            e_th_x = -pts[:, 1] / r
            e_th_y = pts[:, 0] / r
            v_th = dec.v_quasi[:, 0] * e_th_x + dec.v_quasi[:, 1] * e_th_y
            total += float(np.sum(cfg.mass * r * v_th))
            count += len(pts)
        return total / count

    means = np.array([mean_for(t.positions) for t in trajectories])
    value = float(means.mean())
    stderr = float(means.std(ddof=1) / np.sqrt(len(means))) if len(means) > 1 else 0.0
    return {"value": value, "stderr": stderr}
