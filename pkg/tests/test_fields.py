"""Measurement layer: orthonormality, pairings, norms, replica stats."""

import itertools

import numpy as np
import pytest

from rlab import (EventClock, FieldSample, FourierBasis, OccupancyState,
                  gamma_k, pair_empirical, pair_fluctuation, position_grid,
                  preset, psi, replica_stats, run_until, sample_bernoulli,
                  sobolev_minus_norm)
from rlab.fields import CSV_HEADER
from rlab.rng import stream


@pytest.mark.parametrize("n,K", [(16, 4), (64, 8), (256, 16), (33, 8)])
def test_discrete_orthonormality(n, K):
    assert FourierBasis(n, K).orthonormality_defect() <= 1e-12


def test_cutoff_guard():
    with pytest.raises(ValueError):
        FourierBasis(16, 5)
    with pytest.raises(ValueError):
        FourierBasis(16, 0)


def test_pair_empirical_frozen_examples():
    n = 8
    ones = OccupancyState(np.ones(n, dtype=np.uint8))
    zeros = OccupancyState(np.zeros(n, dtype=np.uint8))
    grid = position_grid(n)
    assert pair_empirical(ones, psi(0, grid)) == pytest.approx(1.0)
    for k in range(-3, 4):
        assert pair_empirical(zeros, psi(k, grid)) == 0.0
    # n=4, eta=(1,0,1,0) against psi_1: the two particle sites cancel
    state = OccupancyState(np.array([1, 0, 1, 0], dtype=np.uint8))
    assert pair_empirical(state, psi(1, position_grid(4))) == pytest.approx(0.0, abs=1e-15)


def test_real_complex_consistency():
    rng = np.random.default_rng(3)
    basis = FourierBasis(64, 8)
    for _ in range(20):
        state = OccupancyState(rng.integers(0, 2, 64).astype(np.uint8),
                               origin=int(rng.integers(0, 64)))
        real = basis.empirical(state)
        modes = basis.empirical_modes(state)
        K = basis.K
        rebuilt = np.empty_like(real)
        rebuilt[K] = modes[K].real
        for k in range(1, K + 1):
            rebuilt[K + k] = np.sqrt(2) * modes[K + k].real
            rebuilt[K - k] = -np.sqrt(2) * modes[K + k].imag
        assert np.abs(real - rebuilt).max() <= 1e-12
        # conjugate symmetry of the occupancy modes
        assert np.abs(modes[:K] - np.conj(modes[K + 1:][::-1])).max() <= 1e-14


def test_mass_mode_constant_along_trajectory():
    scheme = preset("symmetric")
    rng = stream(11, 0)
    state = sample_bernoulli(128, 0.5, rng)
    basis = FourierBasis(128, 4)
    mass0 = basis.empirical(state)[basis.K]
    res = run_until(state, scheme, EventClock(rng=rng), 0.005,
                    observe_at=[0.001, 0.003, 0.005],
                    observe=lambda t, s: basis.empirical(s)[basis.K])
    assert all(abs(m - mass0) <= 1e-15 for m in res.observations)


def test_fluctuation_zero_and_bounds():
    zeros = OccupancyState(np.zeros(16, dtype=np.uint8))
    grid = position_grid(16)
    assert pair_fluctuation(zeros, 0.0, psi(2, grid)) == 0.0
    with pytest.raises(ValueError):
        pair_fluctuation(zeros, 1.5, psi(2, grid))
    # empirical coefficients bounded by sqrt(2)
    rng = np.random.default_rng(0)
    basis = FourierBasis(32, 8)
    for _ in range(10):
        state = OccupancyState(rng.integers(0, 2, 32).astype(np.uint8))
        assert np.abs(basis.empirical(state)).max() <= np.sqrt(2) + 1e-12


def test_complex_mode_variance_exact_by_enumeration():
    # E|Y(k)|^2 = rho(1-rho), summed exactly over all 2^n configurations
    n, rho = 8, 0.3
    basis = FourierBasis(n, 2)
    total = np.zeros(2 * basis.K + 1)
    for bits in itertools.product((0, 1), repeat=n):
        weight = rho ** sum(bits) * (1 - rho) ** (n - sum(bits))
        state = OccupancyState(np.array(bits, dtype=np.uint8))
        total += weight * np.abs(basis.fluctuation_modes(state, rho)) ** 2
    assert np.abs(total - rho * (1 - rho)).max() <= 1e-12


def test_fluctuation_variance_monte_carlo():
    n, rho, reps = 1024, 0.5, 10_000
    basis = FourierBasis(n, 1)
    vals = np.array([
        basis.fluctuation(sample_bernoulli(n, rho, stream(5, r)), rho)[basis.K + 1]
        for r in range(reps)])
    mean_sq = (vals ** 2).mean()
    se = (vals ** 2).std(ddof=1) / np.sqrt(reps)
    assert abs(mean_sq - 0.25) <= 4 * se
    # mean of the field itself vanishes
    assert abs(vals.mean()) <= 4 * vals.std(ddof=1) / np.sqrt(reps)


def test_sobolev_norm_values():
    K = 4
    e0 = np.zeros(2 * K + 1)
    e0[K] = 1.0
    for m in (1, 2, 5):
        assert sobolev_minus_norm(e0, m) == pytest.approx(1.0)
    e1 = np.zeros(2 * K + 1)
    e1[K + 1] = 1.0
    assert sobolev_minus_norm(e1, 2) == pytest.approx(1.0 / (1 + 4 * np.pi**2))
    with pytest.raises(ValueError):
        sobolev_minus_norm(e1, 0)
    # monotone decreasing in m for fixed coefficients
    coeffs = np.full(2 * K + 1, 0.7)
    norms = [sobolev_minus_norm(coeffs, m) for m in (1, 2, 3)]
    assert norms[0] > norms[1] > norms[2]


def test_sobolev_partial_sum_bound():
    # all coefficients at the sqrt(2) cap, m=2, K=64
    K = 64
    ks = np.arange(-K, K + 1)
    coeffs = np.full(2 * K + 1, np.sqrt(2))
    bound = np.sqrt(2.0) * np.sqrt((gamma_k(ks) ** -2).sum())
    assert sobolev_minus_norm(coeffs, 2, ks=ks) <= bound + 1e-12


def test_sobolev_sup_along_trajectory_is_bounded():
    # tightness-style diagnostic: the truncated negative norm of the
    # fluctuation field stays below its coefficient-cap bound for all t
    n, K, rho, m = 256, 8, 0.5, 2
    scheme = preset("rudvalis")
    rng = stream(19, 0)
    state = sample_bernoulli(n, rho, rng)
    basis = FourierBasis(n, K)
    times = np.linspace(0.05, 1.0, 20)
    res = run_until(state, scheme, EventClock(rng=rng), 1.0,
                    observe_at=times,
                    observe=lambda t, s: sobolev_minus_norm(
                        basis.fluctuation(s, rho), m))
    # |Y(psi_k)| <= sqrt(2 n): crude cap, uniform over time and modes
    cap = np.sqrt(2 * n) * np.sqrt((gamma_k(basis.ks) ** -m).sum())
    sup_norm = max(res.observations)
    assert 0.0 < sup_norm <= cap


def test_replica_stats_basics():
    same = np.ones((5, 3))
    mean, se, cov = replica_stats(same)
    assert np.all(mean == 1.0) and np.all(se == 0.0)
    rng = np.random.default_rng(12)
    M = 10_000
    x = rng.standard_normal((M, 2))
    mean, se, cov = replica_stats(x)
    assert np.abs(mean).max() <= 4 / np.sqrt(M)
    assert cov[0, 0] == pytest.approx(np.var(x[:, 0], ddof=1))
    with pytest.raises(ValueError):
        replica_stats(x[:1])


def test_field_sample_csv_row():
    s = FieldSample("demo", 64, 1, 0.25, -3, "empirical", 0.125, -0.5, 7, 42)
    row = s.csv_row()
    assert row.split(",")[0] == "demo"
    assert len(row.split(",")) == len(CSV_HEADER.split(","))
    assert "0.25" in row and "-3" in row
