"""Equilibrium fluctuations in both time scales against analytic targets.

Hyperbolic scale: the fluctuation field is a stationary Gaussian process
whose autocovariance rotates with the transport semigroup,
E[Y_t(psi_1) Y_0(psi_1)] = rho(1-rho) cos(2 pi kappa t).

Diffusive scale: pairing with exp(-2 pi i k u) gives complex modes whose
autocovariance relaxes like exp(-lambda_k t) with
lambda_k = c (2 pi k)^2 - 2 pi i gamma k.
"""

import numpy as np

from rlab import (EventClock, FourierBasis, SpdeParams, preset, replica_stats,
                  run_until, sample_bernoulli, spde_mode_autocovariance,
                  stream)

rho = 0.5
q = rho * (1 - rho)

print("hyperbolic scale (rudvalis, kappa=1, n=512, 1500 replicas)")
n, M = 512, 1500
scheme = preset("rudvalis")
basis = FourierBasis(n, 2)
times = [0.1, 0.25]
prods = {t: [] for t in times}
for r in range(M):
    rng = stream(7, r)
    state = sample_bernoulli(n, rho, rng)
    y0 = basis.fluctuation(state, rho)[basis.K + 1]
    res = run_until(state, scheme, EventClock(rng=rng), times[-1],
                    observe_at=times,
                    observe=lambda t, s: basis.fluctuation(s, rho)[basis.K + 1])
    for t, y in zip(times, res.observations):
        prods[t].append(y * y0)
for t in times:
    mean, se, _ = replica_stats(np.array(prods[t]))
    target = q * np.cos(2 * np.pi * t)
    print(f"  t={t:<5}: E[Y_t Y_0] = {mean:+.4f} +- {se:.4f}   "
          f"target {target:+.4f}")

print("\ndiffusive scale (symmetric, c=1/4, n=256, 1500 replicas)")
n, M = 256, 1500
scheme = preset("symmetric")
params = SpdeParams.matched(nu=scheme.c, vdrift=scheme.gamma, K=2, rho=rho)
basis = FourierBasis(n, 2)
times = [0.02, 0.05]
prods = {t: [] for t in times}
for r in range(M):
    rng = stream(8, r)
    state = sample_bernoulli(n, rho, rng)
    y0 = basis.fluctuation_modes(state, rho)[basis.K + 1]
    res = run_until(state, scheme, EventClock(rng=rng), times[-1],
                    observe_at=times,
                    observe=lambda t, s: basis.fluctuation_modes(s, rho)[basis.K + 1])
    for t, y in zip(times, res.observations):
        prods[t].append(y * np.conj(y0))
for t in times:
    mean, se, _ = replica_stats(np.array(prods[t]))
    target = spde_mode_autocovariance(params, 1, t)
    print(f"  t={t:<5}: E[Y_t conj(Y_0)] = {mean.real:+.4f}{mean.imag:+.4f}i "
          f"+- {se.real:.4f}   target {target.real:+.4f}{target.imag:+.4f}i")
