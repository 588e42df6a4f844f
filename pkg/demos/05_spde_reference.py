"""The transport-noise stochastic heat equation, integrated exactly.

Every Fourier mode follows a linear SDE driven by one shared Brownian
motion, solved in closed form per step.  With sigma^2 = 2 nu the real
part of each mode's exponent vanishes: mode moduli are conserved path by
path, which is the fingerprint of transport noise.  The derived
stationary autocovariance rho(1-rho) exp(-lambda_k t) is confirmed by
Monte Carlo over the exact integrator before any experiment uses it.
"""

import numpy as np

from rlab import (SpdeParams, spde_autocovariance_mc, spde_init_equilibrium,
                  spde_mode_autocovariance, spde_psi_pairings, spde_step,
                  stream)
from rlab.rng import DOMAIN_SPDE

params = SpdeParams.matched(nu=0.25, vdrift=1.0, K=8, rho=0.5)
print(f"nu={params.nu}, drift={params.vdrift}, sigma={params.sigma:.4f} "
      f"(matched: sigma^2 = 2 nu)")

state = spde_init_equilibrium(params, stream(5, 0, DOMAIN_SPDE))
start = np.abs(state.modes.copy())
for _ in range(50):
    spde_step(state, 0.002)
print("modulus drift after 50 exact steps:",
      np.abs(np.abs(state.modes) - start).max())
print("field pairings X(psi_k), k=-2..2:",
      np.round(spde_psi_pairings(state)[params.K - 2:params.K + 3], 4))

print("\nderived autocovariance vs Monte Carlo (100k exact paths), k=1")
ts = [0.02, 0.05, 0.1]
est, ses = spde_autocovariance_mc(params, 1, ts, 100_000,
                                  stream(6, 0, DOMAIN_SPDE))
for t, e, s in zip(ts, est, ses):
    target = spde_mode_autocovariance(params, 1, t)
    print(f"  t={t:<5} mc {e.real:+.5f}{e.imag:+.5f}i  "
          f"formula {target.real:+.5f}{target.imag:+.5f}i  "
          f"(se {s.real:.5f})")
print("\nphase advances at 2 pi * drift * t; modulus decays at nu (2 pi)^2 t.")
