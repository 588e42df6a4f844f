"""Exact-oracle identities and the simulator cross-checks against them."""

import numpy as np
import pytest
from scipy import stats as sps

from rlab import EventClock, preset, psi, position_grid, run_until, RateScheme
from rlab import oracle as oc
from rlab.dynamics import sample_hyperplane
from rlab.rng import stream
from rlab.states import OccupancyState

RUDVALIS = preset("rudvalis")
SYMMETRIC = preset("symmetric")
WEAK = preset("weak-asym", gamma=1.0)
QUARTERS = RateScheme(a=0.25, b=0.25, c=0.25, d=0.25)


def test_row_sums_vanish():
    gen = oc.build_generator(4, QUARTERS)
    assert np.abs(gen.Q @ np.ones(16)).max() == 0.0


def test_coordinate_action_on_first_position_all_states():
    # Q eta(1) = (a+b+d)(eta(2)-eta(1)) + c(eta(n)-eta(1)) on all 16 states
    gen = oc.build_generator(4, QUARTERS)
    B = oc.bits_matrix(4)
    direct = gen.Q @ B[:, 0]
    a, b, c, d = gen.rates
    expected = (a + b + d) * (B[:, 1] - B[:, 0]) + c * (B[:, 3] - B[:, 0])
    assert np.abs(direct - expected).max() == 0.0


def test_coordinate_action_bulk_n8():
    gen = oc.build_generator(8, SYMMETRIC)
    B = oc.bits_matrix(8)
    a, b, c, d = gen.rates
    for x in (3, 4, 5, 6):
        direct = gen.Q @ B[:, x - 1]
        expected = ((a + b) * (B[:, x] - B[:, x - 1])
                    + c * (B[:, x - 2] - B[:, x - 1]))
        assert np.abs(direct - expected).max() == 0.0


@pytest.mark.parametrize("scheme", [RUDVALIS, SYMMETRIC, WEAK, QUARTERS],
                         ids=["rudvalis", "symmetric", "weak-asym", "quarters"])
@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_coordinate_formulas_every_position(n, scheme):
    gen = oc.build_generator(n, scheme)
    B = oc.bits_matrix(n)
    for x in range(1, n + 1):
        resid = np.abs(gen.Q @ B[:, x - 1]
                       - oc.coordinate_formula(n, scheme, x)).max()
        assert resid <= 1e-14


@pytest.mark.parametrize("rho", [0.0, 0.25, 0.5, 0.9])
@pytest.mark.parametrize("n", range(4, 11))
def test_product_measure_invariance_grid(n, rho):
    for scheme in (RUDVALIS, SYMMETRIC, WEAK):
        gen = oc.build_generator(n, scheme)
        assert oc.check_invariance(gen, oc.nu_rho(n, rho)) <= 1e-12


def test_hyperplane_invariance():
    gen = oc.build_generator(6, RUDVALIS)
    for ell in range(7):
        resid = oc.check_invariance(gen, oc.hyperplane_uniform(6, ell))
        assert resid <= 1e-12


def test_point_mass_on_empty_configuration_is_fixed():
    # colour-blind moves fix the all-zeros pattern: exact zero residual
    gen = oc.build_generator(5, QUARTERS)
    mu = np.zeros(32)
    mu[0] = 1.0
    assert oc.check_invariance(gen, mu) == 0.0


def test_dirichlet_form_frozen_cases():
    # constants have zero energy
    assert oc.dirichlet_form(np.ones(32), 5, SYMMETRIC, 0.5) == 0.0
    # h(eta) = eta(1), n=5, rates (0, 1/4, 1/4, 1/4), rho = 1/2
    gen = oc.build_generator(5, SYMMETRIC)
    h = oc.bits_matrix(5)[:, 0]
    lhs = oc.generator_inner(gen, h, oc.nu_rho(5, 0.5))
    rhs = oc.quadratic_form(h, 5, SYMMETRIC, 0.5)
    assert abs(lhs - rhs) <= 1e-14
    # homogeneity of the square-root form
    g = np.abs(np.random.default_rng(0).standard_normal(32)) + 0.1
    for lam in (0.5, 2.0, 7.0):
        assert oc.dirichlet_form(lam**2 * g, 5, SYMMETRIC, 0.5) == pytest.approx(
            lam**2 * oc.dirichlet_form(g, 5, SYMMETRIC, 0.5))
    with pytest.raises(ValueError):
        oc.dirichlet_form(-g, 5, SYMMETRIC, 0.5)


@pytest.mark.parametrize("scheme", [RUDVALIS, SYMMETRIC, WEAK],
                         ids=["rudvalis", "symmetric", "weak-asym"])
@pytest.mark.parametrize("n", [5, 6, 8])
def test_dirichlet_symmetrization_random_functions(n, scheme):
    gen = oc.build_generator(n, scheme)
    rng = np.random.default_rng(n)
    for rho in (0.25, 0.5, 0.9):
        nu = oc.nu_rho(n, rho)
        for _ in range(50):
            h = rng.standard_normal(gen.size)
            assert abs(oc.generator_inner(gen, h, nu)
                       - oc.quadratic_form(h, n, scheme, rho)) <= 1e-12


def test_carre_du_champ_frozen_cases():
    gen = oc.build_generator(6, RUDVALIS)
    # constants are annihilated
    assert np.abs(oc.carre_du_champ(gen, np.full(64, 3.7))).max() <= 1e-14
    # nonnegativity (squared-jump form)
    rng = np.random.default_rng(1)
    for _ in range(10):
        F = rng.standard_normal(64)
        assert oc.carre_du_champ(gen, F).min() >= -1e-13
    # matches the five-term integrand for f = psi_1 on all 64 states
    f = psi(1, position_grid(6))
    F = oc.pairing_vector(6, f)
    for beta in (1, 2):
        lhs = 6.0**beta * oc.carre_du_champ(gen, F)
        rhs = oc.qv_integrand(6, RUDVALIS, beta, f)
        assert np.abs(lhs - rhs).max() <= 1e-14


@pytest.mark.parametrize("scheme", [RUDVALIS, SYMMETRIC, WEAK],
                         ids=["rudvalis", "symmetric", "weak-asym"])
@pytest.mark.parametrize("n", [4, 6, 9])
def test_drift_and_qv_identities_low_modes(n, scheme):
    gen = oc.build_generator(n, scheme)
    for k in range(-3, 4):
        f = psi(k, position_grid(n))
        F = oc.pairing_vector(n, f)
        for beta in (1, 2):
            drift = np.abs(float(n)**beta * (gen.Q @ F)
                           - oc.drift_rhs(n, scheme, beta, f)).max()
            qv = np.abs(float(n)**beta * oc.carre_du_champ(gen, F)
                        - oc.qv_integrand(n, scheme, beta, f)).max()
            assert drift <= 1e-12
            assert qv <= 1e-12


def test_exact_expectation_basics():
    gen = oc.build_generator(6, RUDVALIS)
    B = oc.bits_matrix(6)
    mu = oc.nu_rho(6, 0.3)
    F = B[:, 0]
    # t = 0 reduces to the initial average
    assert oc.exact_expectation(gen, mu, F, 0.0) == pytest.approx(float(mu @ F))
    # stationarity: E[eta_t(1)] stays rho for all t
    for t in (0.1, 1.0, 5.0):
        assert oc.exact_expectation(gen, mu, F, t) == pytest.approx(0.3, abs=1e-9)


def test_exact_distribution_is_a_law_and_converges_to_uniform():
    gen = oc.build_generator(5, SYMMETRIC)
    mu0 = np.zeros(32)
    mu0[int("00011", 2)] = 1.0
    law = oc.exact_distribution(gen, mu0, 400.0)
    assert law.min() >= -1e-15
    assert law.sum() == pytest.approx(1.0, abs=1e-9)
    # long-time law is uniform on the 2-particle hyperplane
    target = oc.hyperplane_uniform(5, 2)
    assert np.abs(law - target).max() <= 1e-6


def test_monte_carlo_matches_uniformization():
    # n=6, Rudvalis rates, point-mass start, F = eta(1), macroscopic t=0.3
    n, t, reps = 6, 0.3, 100_000
    gen = oc.build_generator(n, RUDVALIS)
    start_bits = np.array([1, 1, 0, 1, 0, 0], dtype=np.uint8)
    mu0 = np.zeros(64)
    mu0[int("".join(map(str, start_bits[::-1])), 2)] = 1.0
    F = oc.bits_matrix(n)[:, 0]
    target = oc.exact_expectation(gen, mu0, F, t * n**RUDVALIS.beta)
    hits = 0
    for r in range(reps):
        rng = stream(2024, r)
        state = OccupancyState(start_bits.copy())
        run_until(state, RUDVALIS, EventClock(rng=rng), t)
        hits += int(state.get(1))
    p_hat = hits / reps
    se = np.sqrt(max(p_hat * (1 - p_hat), 1e-12) / reps)
    assert abs(p_hat - target) <= 4 * se


def test_simulated_law_matches_uniformization_chi_square():
    # n=5, point mass on a 2-particle state, three macroscopic times
    n, reps = 5, 20_000
    scheme = preset("symmetric", beta=1)
    gen = oc.build_generator(n, scheme)
    start = np.array([1, 0, 1, 0, 0], dtype=np.uint8)
    code0 = int(start @ (1 << np.arange(n)))
    mu0 = np.zeros(32)
    mu0[code0] = 1.0
    times = [0.1, 0.3, 1.0]
    weights = 1 << np.arange(n)
    counts = {t: np.zeros(32) for t in times}
    for r in range(reps):
        rng = stream(555, r)
        state = OccupancyState(start.copy())
        res = run_until(state, scheme, EventClock(rng=rng), times[-1],
                        observe_at=times,
                        observe=lambda t, s: int(s.to_vector() @ weights))
        for t, code in zip(times, res.observations):
            counts[t][code] += 1
    for t in times:
        law = oc.exact_distribution(gen, mu0, t * n**scheme.beta)
        support = law > 1e-12
        assert counts[t][~support].sum() == 0  # hyperplane is preserved
        expected = law[support] * reps
        stat = ((counts[t][support] - expected) ** 2 / expected).sum()
        dof = int(support.sum()) - 1
        assert stat <= sps.chi2.ppf(0.99, dof)


def test_size_guards():
    with pytest.raises(ValueError):
        oc.build_generator(13, RUDVALIS)
    with pytest.raises(ValueError):
        oc.build_generator(3, RUDVALIS)


def test_validation_report_clean():
    report = oc.validation_report(ns=(4, 5, 6), n_random=10)
    assert max(report["worst"].values()) <= 1e-12
    assert {c["scheme"] for c in report["checks"]} == {
        "rudvalis", "symmetric", "weak-asym"}
