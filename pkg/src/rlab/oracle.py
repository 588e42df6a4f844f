"""Exact finite-state oracle for the projected chain (n <= 12).

Enumerates the full configuration space ``{0,1}^n`` (state ``s`` encodes
``eta(p) = (s >> (p-1)) & 1``), builds the generator as a sparse matrix by
applying the *simulator's own* move semantics to every state, and evaluates
every closed-form identity exactly:

* stationarity of the product measure and of each hyperplane uniform,
* the coordinate action of the generator on ``eta(x)`` for boundary and
  bulk positions,
* the drift and quadratic-variation expansions of the empirical-measure
  pairing, term by term,
* the Dirichlet-form symmetrization identity,
* expectations of the semigroup by uniformization, with a certified
  truncation bound.

Everything here is a pure function of immutable inputs and safe to run in
parallel across parameter grids.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from .fields import position_grid
from .states import MoveKind, OccupancyState

__all__ = [
    "MAX_N",
    "GeneratorMatrix",
    "build_generator",
    "bits_matrix",
    "move_maps",
    "nu_rho",
    "hyperplane_uniform",
    "check_invariance",
    "pairing_vector",
    "carre_du_champ",
    "dirichlet_form",
    "quadratic_form",
    "generator_inner",
    "coordinate_formula",
    "drift_rhs",
    "qv_integrand",
    "exact_expectation",
    "exact_distribution",
    "validation_report",
]

MAX_N = 12  # 2**12 states; beyond this the dense state vectors get silly


def _check_n(n):
    if not 4 <= n <= MAX_N:
        raise ValueError(f"oracle supports 4 <= n <= {MAX_N}, got {n}")


@lru_cache(maxsize=None)
def bits_matrix(n):
    """All configurations as rows: ``B[s, p-1] = eta_s(p)``.  Read-only."""
    _check_n(n)
    s = np.arange(1 << n, dtype=np.int64)
    B = ((s[:, None] >> np.arange(n)) & 1).astype(float)
    B.flags.writeable = False
    return B


@lru_cache(maxsize=None)
def move_maps(n):
    """State-index maps of the four moves, from the simulator semantics."""
    _check_n(n)
    weights = 1 << np.arange(n, dtype=np.int64)
    maps = {}
    for move in MoveKind:
        out = np.empty(1 << n, dtype=np.int64)
        for s in range(1 << n):
            bits = (s >> np.arange(n)) & 1
            state = OccupancyState(bits.astype(np.uint8))
            state.apply(move)
            out[s] = int(state.to_vector() @ weights)
        out.flags.writeable = False
        maps[move] = out
    return maps


@dataclass(frozen=True)
class GeneratorMatrix:
    n: int
    rates: tuple          # realized (a_n, b_n, c_n, d_n)
    beta: int
    Q: sp.csr_matrix      # unspeeded generator; speeded chain is n**beta * Q

    @property
    def size(self):
        return 1 << self.n


_MOVE_ORDER = (MoveKind.TOP_TO_PENULTIMATE, MoveKind.TOP_TO_BOTTOM,
               MoveKind.BOTTOM_TO_TOP, MoveKind.SWAP_TOP_TWO)


def build_generator(n, scheme):
    """Sparse generator ``Q f(eta) = sum_m r_m (f(eta^m) - f(eta))``."""
    _check_n(n)
    rates = scheme.realized(n)
    maps = move_maps(n)
    size = 1 << n
    rows, cols, data = [], [], []
    src = np.arange(size, dtype=np.int64)
    for move, r in zip(_MOVE_ORDER, rates):
        if r == 0.0:
            continue
        dst = maps[move]
        rows.append(src)
        cols.append(dst)
        data.append(np.full(size, r))
        rows.append(src)
        cols.append(src)
        data.append(np.full(size, -r))
    Q = sp.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(size, size),
    ).tocsr()
    return GeneratorMatrix(n=n, rates=rates, beta=scheme.beta, Q=Q)


def nu_rho(n, rho):
    """Product Bernoulli measure as a vector over all configurations."""
    _check_n(n)
    if not 0.0 <= rho <= 1.0:
        raise ValueError("density must lie in [0, 1]")
    counts = bits_matrix(n).sum(axis=1)
    return rho**counts * (1.0 - rho) ** (n - counts)


def hyperplane_uniform(n, ell):
    """Uniform measure on configurations with exactly ``ell`` particles."""
    _check_n(n)
    if not 0 <= ell <= n:
        raise ValueError(f"particle count {ell} outside [0, {n}]")
    counts = bits_matrix(n).sum(axis=1)
    mu = (counts == ell).astype(float)
    return mu / mu.sum()


def check_invariance(gen, mu):
    """Max-norm stationarity residual ``max |mu^T Q|``."""
    mu = np.asarray(mu, dtype=float)
    if mu.shape != (gen.size,):
        raise ValueError("measure dimension mismatch")
    return float(np.abs(gen.Q.T @ mu).max())


def pairing_vector(n, f_values):
    """``F[s] = <pi(eta_s), f> = (1/n) sum_x eta_s(x) f(x/n)`` per state."""
    f_values = np.asarray(f_values, dtype=float)
    if f_values.shape != (n,):
        raise ValueError("f must be evaluated on the n-point position grid")
    return bits_matrix(n) @ f_values / n


def carre_du_champ(gen, F):
    """``Gamma(F) = Q(F^2) - 2 F Q(F)``, the squared-jump form of Q."""
    F = np.asarray(F, dtype=float)
    return gen.Q @ (F * F) - 2.0 * F * (gen.Q @ F)


def _move_sum(n, rates, values_fn):
    maps = move_maps(n)
    total = np.zeros(1 << n)
    for move, r in zip(_MOVE_ORDER, rates):
        if r == 0.0:
            continue
        total += r * values_fn(maps[move])
    return total


def quadratic_form(h, n, scheme, rho):
    """``sum_m (r_m/2) Int (h(eta^m) - h(eta))^2 d nu_rho``.

    Equals ``<(-Q) h, h>_{nu_rho}`` exactly, because every move is a
    coordinate permutation and the product measure is exchangeable.
    """
    h = np.asarray(h, dtype=float)
    nu = nu_rho(n, rho)
    rates = scheme.realized(n)
    return 0.5 * float(
        nu @ _move_sum(n, rates, lambda mp: (h[mp] - h) ** 2)
    )


def dirichlet_form(g, n, scheme, rho):
    """Density-form Dirichlet energy ``sum_m (r_m/2) Int (sqrt g(eta^m) - sqrt g)^2 d nu``."""
    g = np.asarray(g, dtype=float)
    if g.min() < 0.0:
        raise ValueError("square-root form needs a nonnegative function")
    return quadratic_form(np.sqrt(g), n, scheme, rho)


def generator_inner(gen, h, mu):
    """``<(-Q) h, h>_mu``."""
    h = np.asarray(h, dtype=float)
    mu = np.asarray(mu, dtype=float)
    return -float(mu @ (h * (gen.Q @ h)))


def coordinate_formula(n, scheme, x):
    """Closed-form ``Q eta(x)`` as a vector over all states.

    Boundary positions 1, 2, n-1, n have their own expressions; bulk
    positions feel only the net left/right insertion pressure.
    """
    _check_n(n)
    if not 1 <= x <= n:
        raise ValueError(f"position {x} outside 1..{n}")
    a, b, c, d = scheme.realized(n)
    B = bits_matrix(n)
    eta = lambda p: B[:, p - 1]
    if x == 1:
        return (a + b + d) * (eta(2) - eta(1)) + c * (eta(n) - eta(1))
    if x == 2:
        return (a + b) * (eta(3) - eta(2)) + (c + d) * (eta(1) - eta(2))
    if x == n - 1:
        return (a * (eta(1) - eta(n - 1)) + b * (eta(n) - eta(n - 1))
                + c * (eta(n - 2) - eta(n - 1)))
    if x == n:
        return b * (eta(1) - eta(n)) + c * (eta(n - 1) - eta(n))
    return (a + b) * (eta(x + 1) - eta(x)) + c * (eta(x - 1) - eta(x))


def _gradients(n, f_values):
    f_values = np.asarray(f_values, dtype=float)
    grad_minus = n * (f_values - np.roll(f_values, 1))
    grad_plus = np.roll(grad_minus, -1)
    return grad_minus, grad_plus


def drift_rhs(n, scheme, beta, f_values):
    """Termwise drift of the pairing: ``n**beta Q <pi, f>`` per state.

    The four terms are the two lattice-gradient sums and the two boundary
    corrections produced by the penultimate insertion and the top swap.
    """
    a, b, c, d = scheme.realized(n)
    B = bits_matrix(n)
    gm, gp = _gradients(n, f_values)
    scale = float(n) ** (beta - 2)
    eta1 = B[:, 0]
    eta2 = B[:, 1]
    etan = B[:, n - 1]
    return scale * (
        -(a + b) * (B @ gm)
        + c * (B @ gp)
        - a * (eta1 - etan) * gm[n - 1]
        + d * (eta1 - eta2) * gp[0]
    )


def qv_integrand(n, scheme, beta, f_values):
    """Five-term quadratic-variation integrand of the pairing martingale.

    Evaluated per state; equals ``n**beta Gamma(<pi, f>)`` exactly.
    """
    a, b, c, d = scheme.realized(n)
    B = bits_matrix(n)
    gm, gp = _gradients(n, f_values)
    pi_gm = B @ gm / n
    pi_gp = B @ gp / n
    eta1 = B[:, 0]
    eta2 = B[:, 1]
    etan = B[:, n - 1]
    nb = float(n) ** beta
    return (
        (a + b) * nb / n**2 * pi_gm**2
        + c * nb / n**2 * pi_gp**2
        + 2.0 * a * nb / n**3 * (eta1 - etan) * gm[n - 1] * pi_gm
        + a * nb / n**4 * (eta1 - etan) ** 2 * gm[n - 1] ** 2
        + d * nb / n**4 * (eta1 - eta2) ** 2 * gp[0] ** 2
    )


def _uniformized(gen):
    lam = float(np.abs(gen.Q.diagonal()).max())
    if lam == 0.0:
        return None, 0.0
    P = sp.eye(gen.size, format="csr") + gen.Q / lam
    return P.T.tocsr(), lam


def exact_distribution(gen, mu0, t, tol=1e-12, max_terms=200_000):
    """Law at chain time ``t``: ``mu0^T exp(t Q)`` by uniformization.

    Truncation is certified: the neglected Poisson tail bounds the total
    variation error by ``tol``.  ``t`` is in the time units of ``Q``; a
    chain speeded by ``n**beta`` reaches it at macroscopic ``t / n**beta``.
    """
    mu = np.asarray(mu0, dtype=float).copy()
    if t < 0:
        raise ValueError("time must be nonnegative")
    PT, lam = _uniformized(gen)
    if PT is None or t == 0.0:
        return mu
    lt = lam * t
    w = float(np.exp(-lt))
    acc = w * mu
    covered = w
    j = 0
    while 1.0 - covered > tol:
        j += 1
        if j > max_terms:
            raise RuntimeError(
                f"uniformization needs more than {max_terms} terms; "
                f"tail mass {1.0 - covered:.3e}")
        mu = PT @ mu
        w *= lt / j
        acc += w * mu
        covered += w
    return acc


def exact_expectation(gen, mu0, F, t, tol=1e-10, max_terms=200_000):
    """``E[F(eta_t)]`` from initial law ``mu0`` to absolute tolerance ``tol``."""
    F = np.asarray(F, dtype=float)
    scale = float(np.abs(F).max()) or 1.0
    mu_t = exact_distribution(gen, mu0, t, tol=tol / scale,
                              max_terms=max_terms)
    return float(mu_t @ F)


def validation_report(ns=(4, 5, 6, 7, 8, 9, 10), rhos=(0.25, 0.5, 0.9),
                      schemes=None, mode_cutoff=3, n_random=50, seed=20240801):
    """Run every exact identity over a parameter grid; residuals only.

    Returns a JSON-ready dict: one entry per (n, scheme) with the maximum
    residual of each identity family.  All residuals should sit at the
    floating-point floor; the caller decides the pass threshold.
    """
    from .fields import psi  # local import keeps module load light
    from .rates import preset

    if schemes is None:
        schemes = {
            "rudvalis": preset("rudvalis"),
            "symmetric": preset("symmetric"),
            "weak-asym": preset("weak-asym", gamma=1.0),
        }
    rng = np.random.default_rng(seed)
    checks = []
    for n in ns:
        u = position_grid(n)
        test_fns = {f"psi_{k}": psi(k, u)
                    for k in range(-mode_cutoff, mode_cutoff + 1)}
        for name, scheme in schemes.items():
            gen = build_generator(n, scheme)
            B = bits_matrix(n)

            res_rows = float(np.abs(gen.Q @ np.ones(gen.size)).max())
            res_nu = max(check_invariance(gen, nu_rho(n, r)) for r in rhos)
            res_hyper = max(check_invariance(gen, hyperplane_uniform(n, ell))
                            for ell in range(n + 1))
            res_coord = max(
                float(np.abs(gen.Q @ B[:, x - 1]
                             - coordinate_formula(n, scheme, x)).max())
                for x in range(1, n + 1))
            res_drift = max(
                float(np.abs(float(n) ** beta * (gen.Q @ pairing_vector(n, f))
                             - drift_rhs(n, scheme, beta, f)).max())
                for beta in (1, 2) for f in test_fns.values())
            res_qv = max(
                float(np.abs(float(n) ** beta
                             * carre_du_champ(gen, pairing_vector(n, f))
                             - qv_integrand(n, scheme, beta, f)).max())
                for beta in (1, 2) for f in test_fns.values())
            res_dirichlet = 0.0
            for rho in rhos:
                nu = nu_rho(n, rho)
                for _ in range(n_random):
                    h = rng.standard_normal(gen.size)
                    res_dirichlet = max(
                        res_dirichlet,
                        abs(generator_inner(gen, h, nu)
                            - quadratic_form(h, n, scheme, rho)))

            checks.append({
                "n": n,
                "scheme": name,
                "rates": list(gen.rates),
                "row_sums": res_rows,
                "product_invariance": res_nu,
                "hyperplane_invariance": res_hyper,
                "coordinate_formulas": res_coord,
                "drift_identity": res_drift,
                "qv_identity": res_qv,
                "dirichlet_symmetrization": res_dirichlet,
            })
    worst = {key: max(c[key] for c in checks)
             for key in ("row_sums", "product_invariance",
                         "hyperplane_invariance", "coordinate_formulas",
                         "drift_identity", "qv_identity",
                         "dirichlet_symmetrization")}
    return {"grid": {"n": list(ns), "rho": list(rhos),
                     "schemes": sorted(schemes)},
            "checks": checks, "worst": worst}
