"""rlab: a desk-scale laboratory for the generalized Rudvalis shuffle.

Simulates the four-move card shuffle and its black/red particle
projection, measures empirical and fluctuation fields in Fourier space,
and checks them against exact finite-state generators, the transport
semigroup, and an exactly-integrated transport-noise stochastic heat
equation.
"""

from .states import MoveKind, OccupancyState, DeckState, apply_move, project_deck
from .rates import RateScheme, preset
from .rng import stream
from .dynamics import (
    EventClock,
    RunResult,
    step,
    run_until,
    sample_bernoulli,
    sample_hyperplane,
    boundary_integral_sup,
)
from .fields import (
    FourierBasis,
    FieldSample,
    CSV_HEADER,
    position_grid,
    psi,
    gamma_k,
    fourier_profile,
    profile_coefficient_vector,
    pair_empirical,
    pair_fluctuation,
    sobolev_minus_norm,
    replica_stats,
)
from .references import (
    SpdeParams,
    SpdeState,
    transport_solution,
    transport_fourier,
    transport_modes,
    heat_transport_fourier,
    heat_transport_modes,
    clt1_covariance,
    spde_init_equilibrium,
    spde_step,
    spde_psi_pairings,
    spde_mode_autocovariance,
    spde_autocovariance_mc,
)

__version__ = "0.1.0"

__all__ = [
    "MoveKind", "OccupancyState", "DeckState", "apply_move", "project_deck",
    "RateScheme", "preset", "stream",
    "EventClock", "RunResult", "step", "run_until",
    "sample_bernoulli", "sample_hyperplane", "boundary_integral_sup",
    "FourierBasis", "FieldSample", "CSV_HEADER", "position_grid", "psi",
    "gamma_k", "fourier_profile", "profile_coefficient_vector",
    "pair_empirical", "pair_fluctuation", "sobolev_minus_norm",
    "replica_stats",
    "SpdeParams", "SpdeState", "transport_solution", "transport_fourier",
    "transport_modes", "heat_transport_fourier", "heat_transport_modes",
    "clt1_covariance", "spde_init_equilibrium", "spde_step",
    "spde_psi_pairings", "spde_mode_autocovariance", "spde_autocovariance_mc",
]
