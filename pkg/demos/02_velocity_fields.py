#!/usr/bin/env python3
"""Velocity-field anatomy of one bound state.

Decomposes psi into the current velocity eta, the dispersive velocity xi
(real radial part + imaginary flux part), the quasi-current velocity
v = eta + Im(-xi), and the quasi-currents Gamma = rho v, Delta = rho w.
Shows that Gamma stays tangential, Delta radial, and the two are orthogonal
everywhere, and that the kinetic energy splits into the matching rotational
and radial pieces.
"""
import numpy as np

from abtool import AnnulusConfig, decompose, eigenstate, solenoid_potential
from abtool.annulus import energy_decomposition

cfg = AnnulusConfig()
state = eigenstate(cfg, 1, 1)
a_spec = solenoid_potential(cfg)

print(f"state: m = {state.m}, n = {state.n}, lambda = {state.lam}, "
      f"nu = {state.nu}\n")
print(f"{'r':>5} {'rho':>9} {'eta_t':>8} {'Im(-xi)_t':>10} {'v_t':>8} "
      f"{'w_r':>9} {'|Gamma.Delta|':>14}")
for r in np.linspace(1.15, 2.85, 12):
    p = np.array([r, 0.0])
    dec = decompose(state, a_spec, cfg, p)
    dot = abs(float(np.dot(dec.gamma, dec.delta)))
    print(f"{r:5.2f} {dec.rho:9.5f} {dec.eta[1]:8.4f} {-dec.xi_imag[1]:10.4f} "
          f"{dec.v_quasi[1]:8.4f} {dec.w_quasi[0]:9.4f} {dot:14.2e}")

print("""
The current velocity eta = m hbar/(M r) e_theta ignores the flux entirely;
the vector potential enters only through Im(xi) = (q/Mc) A, which subtracts
lambda's worth of rotation. The radial dispersive part w points away from
the density crest and grows without bound at the walls.
""")

dec = energy_decomposition(state)
print("kinetic-energy split (wall-inset integrals):")
print(f"  rotational (1/2 M rho v^2): {dec['rotational']:.6f}")
print(f"  radial     (1/2 M rho w^2): {dec['radial']:.6f}")
print(f"  total      |P' psi|^2/2M  : {dec['total']:.6f}")
print(f"  identity residual         : {dec['residual']:.2e}")
print("""
For this nu = 1/2 state the radial piece is dominated by the wall cusp of
the separable profile; the identity between the decomposition and the raw
momentum density holds pointwise and therefore at any inset.
""")
