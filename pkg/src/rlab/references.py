"""Reference objects the scaling experiments are checked against.

Three exactly-known limits:

* the transport semigroup ``T_t f(u) = f(u + theta t)`` of the hyperbolic
  law of large numbers, realized in Fourier space as a rotation of the
  ``(k, -k)`` coefficient pairs;
* the stationary covariance ``rho (1-rho) <T_t f, g>`` of the hyperbolic
  fluctuation field;
* the transport-noise stochastic heat equation of the diffusive limits,
  integrated exactly mode by mode.  Pairing the field with ``g_k`` turns
  the equation into independent-in-k linear SDEs

      d X_k = -lambda_k X_k dt + i theta_k X_k dB,
      lambda_k = nu (2 pi k)^2 - 2 pi i v k,   theta_k = 2 pi k sigma,

  all driven by the *same* scalar Brownian motion B, whose strong solution
  over a step is the geometric factor
  ``exp(-lambda_k dt + i theta_k dB + theta_k^2 dt / 2)``.  When
  ``sigma^2 = 2 nu`` the real part of the per-step exponent vanishes, so
  each mode's modulus is conserved path by path - the signature of
  transport-type noise, and the regime matching the particle system
  (``nu = c``, ``v = gamma``, ``sigma = sqrt(2c)``).

The stationary mode autocovariance ``rho(1-rho) exp(-lambda_k t)`` is
derived, not quoted: the experiments confirm it against the exact
integrator by Monte Carlo before using it as a comparison target.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fields import replica_stats

__all__ = [
    "transport_solution",
    "transport_fourier",
    "transport_modes",
    "heat_transport_fourier",
    "heat_transport_modes",
    "clt1_covariance",
    "SpdeParams",
    "SpdeState",
    "spde_init_equilibrium",
    "spde_step",
    "spde_psi_pairings",
    "spde_mode_autocovariance",
    "spde_autocovariance_mc",
]


def transport_solution(profile, theta, t, u):
    """Weak solution of the transport equation: ``profile((u + theta t) % 1)``."""
    return profile((u + theta * t) % 1.0)


def heat_transport_modes(modes, nu, vdrift, t):
    """Apply ``exp(-lambda_k t)`` to complex coefficients ``k = -K..K``."""
    modes = np.asarray(modes, dtype=complex)
    K = (len(modes) - 1) // 2
    ks = np.arange(-K, K + 1)
    lam = nu * (2.0 * np.pi * ks) ** 2 - 2j * np.pi * vdrift * ks
    return modes * np.exp(-lam * t)


def heat_transport_fourier(coeffs, nu, vdrift, t):
    """Same flow on real psi-coefficients: pair rotation plus heat decay.

    For k > 0 the pair ``(c_k, c_-k)`` rotates by ``2 pi k v t`` and decays
    by ``exp(-nu (2 pi k)^2 t)``; the mass mode is untouched by drift.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    K = (len(coeffs) - 1) // 2
    out = coeffs.copy()
    for k in range(1, K + 1):
        w = 2.0 * np.pi * k * vdrift * t
        decay = np.exp(-nu * (2.0 * np.pi * k) ** 2 * t)
        ck, cmk = coeffs[K + k], coeffs[K - k]
        out[K + k] = decay * (np.cos(w) * ck + np.sin(w) * cmk)
        out[K - k] = decay * (-np.sin(w) * ck + np.cos(w) * cmk)
    return out


def transport_fourier(coeffs, theta, t):
    """Transport semigroup on real psi-coefficients (pure rotation)."""
    return heat_transport_fourier(coeffs, 0.0, theta, t)


def transport_modes(modes, theta, t):
    """Transport on complex coefficients: mode k times ``exp(2 pi i k theta t)``."""
    return heat_transport_modes(modes, 0.0, theta, t)


def clt1_covariance(f_coeffs, g_coeffs, dt, rho, kappa):
    """Stationary hyperbolic fluctuation covariance ``rho(1-rho) <T_dt f, g>``."""
    f_rot = transport_fourier(np.asarray(f_coeffs, dtype=float), kappa, dt)
    g_coeffs = np.asarray(g_coeffs, dtype=float)
    if f_rot.shape != g_coeffs.shape:
        raise ValueError("coefficient vectors must share a cutoff")
    return rho * (1.0 - rho) * float(f_rot @ g_coeffs)


@dataclass(frozen=True)
class SpdeParams:
    """Parameters of the spectral reference SPDE."""

    nu: float            # viscosity
    vdrift: float        # transport drift
    sigma: float         # noise strength
    K: int               # mode cutoff
    rho: float           # equilibrium density of the initial law

    def __post_init__(self):
        if self.nu <= 0.0:
            raise ValueError("viscosity must be positive")
        if self.K < 1:
            raise ValueError("cutoff K must be at least 1")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError("density must lie in [0, 1]")

    @classmethod
    def matched(cls, nu, vdrift, K, rho):
        """Noise strength tied to the viscosity: ``sigma = sqrt(2 nu)``."""
        return cls(nu=nu, vdrift=vdrift, sigma=float(np.sqrt(2.0 * nu)),
                   K=K, rho=rho)

    @classmethod
    def from_scheme(cls, scheme, K, rho):
        """Diffusive-limit parameters of a weakly-asymmetric scheme."""
        if scheme.beta != 2:
            raise ValueError("the SPDE limit needs the diffusive time scale")
        if scheme.c <= 0.0:
            raise ValueError("the SPDE limit needs c > 0")
        return cls.matched(nu=scheme.c, vdrift=scheme.gamma, K=K, rho=rho)

    @property
    def is_matched(self):
        return abs(self.sigma**2 - 2.0 * self.nu) < 1e-12

    def lam(self, k):
        """Mode relaxation rate ``nu (2 pi k)^2 - 2 pi i v k``."""
        k = np.asarray(k)
        return (self.nu * (2.0 * np.pi * k) ** 2
                - 2j * np.pi * self.vdrift * k)

    def theta(self, k):
        """Mode noise coupling ``2 pi k sigma``."""
        return 2.0 * np.pi * np.asarray(k, dtype=float) * self.sigma


@dataclass
class SpdeState:
    """Mode amplitudes ``X_k`` for ``|k| <= K`` plus the shared Brownian path.

    ``modes[K + k]`` holds mode ``k``; conjugate symmetry
    ``modes[K - k] == conj(modes[K + k])`` is maintained exactly, so the
    synthesized field is real.
    """

    params: SpdeParams
    modes: np.ndarray
    rng: np.random.Generator
    t: float = 0.0
    brownian: float = 0.0

    ks: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        K = self.params.K
        if self.modes.shape != (2 * K + 1,):
            raise ValueError("mode vector length must be 2K+1")
        self.ks = np.arange(-K, K + 1)

    def mode(self, k):
        return self.modes[self.params.K + k]


def spde_init_equilibrium(params, rng):
    """Equilibrium initial law: centered complex Gaussian modes.

    Mode 0 is pinned to zero (the field is centered); for ``k > 0`` the
    real and imaginary parts are independent ``N(0, rho(1-rho)/2)``, giving
    ``E|X_k|^2 = rho(1-rho)`` and, for any real test function orthogonal to
    constants, a Gaussian pairing of variance ``rho(1-rho) ||f||^2``
    within the cutoff.
    """
    K = params.K
    q = params.rho * (1.0 - params.rho)
    modes = np.zeros(2 * K + 1, dtype=complex)
    if q > 0.0:
        z = rng.normal(0.0, np.sqrt(q / 2.0), size=(K, 2))
        modes[K + 1:] = z[:, 0] + 1j * z[:, 1]
        modes[:K] = np.conj(modes[K + 1:][::-1])
    return SpdeState(params=params, modes=modes, rng=rng)


def spde_step(state, dt, db=None):
    """Advance all modes by ``dt`` with the exact per-mode solution.

    One shared Brownian increment drives every mode; passing ``db``
    explicitly reruns a known path (flow composition, common-noise tests).
    Positive modes are updated and negative modes mirrored, so conjugate
    symmetry is exact.
    """
    if dt <= 0.0:
        raise ValueError("step size must be positive")
    if db is None:
        db = float(state.rng.normal(0.0, np.sqrt(dt)))
    p = state.params
    K = p.K
    kpos = np.arange(1, K + 1)
    lam = p.lam(kpos)
    th = p.theta(kpos)
    factor = np.exp(-lam * dt + 1j * th * db + 0.5 * th**2 * dt)
    state.modes[K + 1:] *= factor
    state.modes[:K] = np.conj(state.modes[K + 1:][::-1])
    state.t += dt
    state.brownian += db
    return state


def spde_psi_pairings(state):
    """Real-basis pairings ``X(psi_k)`` for ``k = -K..K``.

    ``X(psi_k) = sqrt(2) Re X_k`` and ``X(psi_-k) = -sqrt(2) Im X_k`` for
    ``k > 0``; the synthesized field being real, ``X(psi_0)`` is ``Re X_0``.
    """
    K = state.params.K
    out = np.empty(2 * K + 1)
    out[K] = state.modes[K].real
    pos = state.modes[K + 1:]
    out[K + 1:] = np.sqrt(2.0) * pos.real
    out[:K] = (-np.sqrt(2.0) * pos.imag)[::-1]
    return out


def spde_mode_autocovariance(params, k, t):
    """Derived stationary autocovariance ``rho(1-rho) exp(-lambda_k t)``.

    Valid in the matched-noise regime started from equilibrium; confirm it
    with :func:`spde_autocovariance_mc` before using it as a test target.
    """
    q = params.rho * (1.0 - params.rho)
    return q * np.exp(-params.lam(k) * t)


def spde_autocovariance_mc(params, k, ts, paths, rng):
    """Monte Carlo ``E[X_t(k) conj(X_0(k))]`` from the exact integrator.

    The mode SDE is autonomous in ``k``, so a single-mode ensemble
    suffices.  Returns ``(estimates, ses)`` aligned with the sorted
    strictly-positive times ``ts``; standard errors are componentwise.
    """
    ts = [float(t) for t in ts]
    if any(t <= 0 for t in ts) or sorted(ts) != ts:
        raise ValueError("times must be positive and sorted")
    q = params.rho * (1.0 - params.rho)
    z = rng.normal(0.0, np.sqrt(q / 2.0), size=(paths, 2))
    x0 = z[:, 0] + 1j * z[:, 1]
    x = x0.copy()
    lam = params.lam(k)
    th = complex(params.theta(k)).real
    estimates, ses = [], []
    t_prev = 0.0
    for t in ts:
        dt = t - t_prev
        if dt > 0:
            db = rng.normal(0.0, np.sqrt(dt), size=paths)
            x = x * np.exp(-lam * dt + 1j * th * db + 0.5 * th**2 * dt)
            t_prev = t
        prod = x * np.conj(x0)
        mean, se, _ = replica_stats(prod)
        estimates.append(complex(mean))
        ses.append(complex(se))
    return estimates, ses
