"""Measurement layer: Fourier pairings of configurations and fields.

Positions ``p = 1..n`` of the deck sit on the grid ``u_p = (p mod n)/n`` of
the unit torus (the bottom card sits at ``u = 0``).  The empirical measure
puts mass ``1/n`` on each particle's grid point; the fluctuation field is
the centered, ``n**-0.5``-scaled version.  Both are observed through their
pairings with the real trigonometric basis

    psi_k(u) = sqrt(2) cos(2 pi k u)    for k > 0,
    psi_0    = 1,
    psi_k(u) = sqrt(2) sin(2 pi |k| u)  for k < 0,

and with the complex modes, for which this module reports the coefficient

    hat(v)(k) = <v, g_k> = sum_x v(x) exp(-2 pi i k u_x) * weight,

so that ``hat(v)(-k) == conj(hat(v)(k))`` for real data and, for k > 0,
``psi-coefficient(k) = sqrt(2) Re hat(v)(k)`` and
``psi-coefficient(-k) = -sqrt(2) Im hat(v)(k)``.

On the grid the basis is exactly orthonormal as long as all mode products
stay below the aliasing threshold, which the cutoff rule ``K <= n/4``
guarantees.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "position_grid",
    "psi",
    "gamma_k",
    "FourierBasis",
    "fourier_profile",
    "profile_coefficient_vector",
    "pair_empirical",
    "pair_fluctuation",
    "sobolev_minus_norm",
    "replica_stats",
    "FieldSample",
    "CSV_HEADER",
]


def position_grid(n):
    """Torus coordinates ``(p mod n)/n`` of logical positions ``p = 1..n``."""
    return (np.arange(1, n + 1) % n) / n


def psi(k, u):
    """Real orthonormal trigonometric basis function of index ``k``."""
    u = np.asarray(u, dtype=float)
    if k > 0:
        return np.sqrt(2.0) * np.cos(2.0 * np.pi * k * u)
    if k < 0:
        return np.sqrt(2.0) * np.sin(2.0 * np.pi * (-k) * u)
    return np.ones_like(u)


def gamma_k(k):
    """Eigenvalue ``1 + 4 pi^2 k^2`` of ``1 - Laplacian`` on mode ``k``."""
    k = np.asarray(k, dtype=float)
    return 1.0 + 4.0 * np.pi**2 * k**2


class FourierBasis:
    """Evaluations of the basis on the position grid, modes ``|k| <= K``.

    ``K <= n/4`` is enforced to stay within the exact discrete
    orthogonality regime of the grid.
    """

    def __init__(self, n, K):
        if K < 1:
            raise ValueError("cutoff K must be at least 1")
        if 4 * K > n:
            raise ValueError(f"cutoff K={K} exceeds n/4 with n={n}")
        self.n = int(n)
        self.K = int(K)
        self.ks = np.arange(-K, K + 1)
        self.u = position_grid(n)
        self.psi_matrix = np.vstack([psi(k, self.u) for k in self.ks])
        # row k+K holds exp(-2 pi i k u), the <., g_k> weight
        self.mode_matrix = np.exp(-2j * np.pi * np.outer(self.ks, self.u))

    def index(self, k):
        """Row index of mode ``k``."""
        if abs(k) > self.K:
            raise ValueError(f"mode {k} beyond cutoff {self.K}")
        return k + self.K

    def empirical(self, state):
        """Pairings ``<pi, psi_k> = (1/n) sum_x eta(x) psi_k(x/n)``."""
        v = state.to_vector().astype(float)
        return self.psi_matrix @ v / self.n

    def empirical_modes(self, state):
        """Complex coefficients ``(1/n) sum_x eta(x) exp(-2 pi i k x/n)``."""
        v = state.to_vector().astype(float)
        return self.mode_matrix @ v / self.n

    def fluctuation(self, state, rho):
        """Pairings ``Y(psi_k) = n**-0.5 sum_x (eta(x) - rho) psi_k(x/n)``."""
        v = state.to_vector().astype(float) - rho
        return self.psi_matrix @ v / np.sqrt(self.n)

    def fluctuation_modes(self, state, rho):
        """Complex fluctuation coefficients ``hat(Y)(k)``."""
        v = state.to_vector().astype(float) - rho
        return self.mode_matrix @ v / np.sqrt(self.n)

    def orthonormality_defect(self):
        """``max |(1/n) sum_x psi_j psi_k - delta_jk|`` over the cutoff."""
        gram = self.psi_matrix @ self.psi_matrix.T / self.n
        return float(np.abs(gram - np.eye(len(self.ks))).max())


def fourier_profile(coeffs):
    """Callable profile ``u -> sum_k c_k psi_k(u)`` from a ``{k: c}`` dict."""
    items = sorted((int(k), float(c)) for k, c in coeffs.items())

    def profile(u):
        return float(sum(c * psi(k, u) for k, c in items))

    return profile


def profile_coefficient_vector(coeffs, K):
    """Exact psi-coefficients of a truncated-Fourier profile, ``|k| <= K``."""
    out = np.zeros(2 * K + 1)
    for k, c in coeffs.items():
        k = int(k)
        if abs(k) > K:
            raise ValueError(f"profile mode {k} beyond cutoff {K}")
        out[k + K] = float(c)
    return out


def pair_empirical(state, f_values):
    """``(1/n) sum_x eta(x) f(x/n)`` for ``f`` evaluated on the grid."""
    f_values = np.asarray(f_values, dtype=float)
    if f_values.shape != (state.n,):
        raise ValueError("f must be evaluated on the n-point position grid")
    return float(state.to_vector() @ f_values) / state.n


def pair_fluctuation(state, rho, f_values):
    """``n**-0.5 sum_x (eta(x) - rho) f(x/n)`` on the position grid."""
    if not 0.0 <= rho <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    f_values = np.asarray(f_values, dtype=float)
    if f_values.shape != (state.n,):
        raise ValueError("f must be evaluated on the n-point position grid")
    centered = state.to_vector().astype(float) - rho
    return float(centered @ f_values) / np.sqrt(state.n)


def sobolev_minus_norm(coeffs, m, ks=None):
    """Truncated negative-Sobolev norm ``(sum |c_k|^2 gamma_k^-m)**0.5``.

    ``coeffs`` holds the values for ``k = -K..K`` unless ``ks`` is given.
    ``m`` must be positive; this is the dual-norm role.
    """
    if m <= 0:
        raise ValueError("regularity index m must be positive")
    coeffs = np.asarray(coeffs)
    if ks is None:
        K = (len(coeffs) - 1) // 2
        if len(coeffs) != 2 * K + 1:
            raise ValueError("coefficient vector must have odd length 2K+1")
        ks = np.arange(-K, K + 1)
    weights = gamma_k(ks) ** (-float(m))
    return float(np.sqrt(np.sum(np.abs(coeffs) ** 2 * weights)))


def replica_stats(samples):
    """Mean, standard errors and covariance across replicas.

    ``samples`` has one row per replica.  Returns ``(mean, se, cov)`` with
    the unbiased covariance estimator; complex input is handled
    componentwise for the standard errors.
    """
    samples = np.asarray(samples)
    M = samples.shape[0]
    if M < 2:
        raise ValueError("need at least 2 replicas")
    mean = samples.mean(axis=0)
    if np.iscomplexobj(samples):
        se = (samples.real.std(axis=0, ddof=1)
              + 1j * samples.imag.std(axis=0, ddof=1)) / np.sqrt(M)
    else:
        se = samples.std(axis=0, ddof=1) / np.sqrt(M)
    flat = samples.reshape(M, -1)
    cov = np.cov(flat, rowvar=False, ddof=1)
    return mean, se, cov


CSV_HEADER = "experiment,n,beta,t,k,kind,re,im,replica,seed"


@dataclass(frozen=True)
class FieldSample:
    """One observed coefficient, in the shared CSV schema."""

    experiment: str
    n: int
    beta: int
    t: float
    k: int
    kind: str  # empirical | fluctuation | spde
    re: float
    im: float
    replica: int
    seed: int

    def csv_row(self):
        return (f"{self.experiment},{self.n},{self.beta},{self.t:.17g},"
                f"{self.k},{self.kind},{self.re:.17g},{self.im:.17g},"
                f"{self.replica},{self.seed}")
