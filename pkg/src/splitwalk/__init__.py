"""Conventional, split-step and Dirac-automaton quantum walks on a line."""

from .entanglement import (
    ReducedCoinDensity,
    entanglement_entropy,
    entropy_sweep,
    entropy_time_series,
    omega_sweep,
    reduced_coin_density,
    theta_sweep,
)
from .lattice import (
    BoundaryError,
    DomainError,
    InitialCondition,
    LatticeSpec,
    SpinorState,
    UnitsConfig,
    make_initial_state,
    position_distribution,
    state_norm,
)
from .spectral import (
    EigenSystem,
    EffectiveHamiltonian,
    MomentumUnitary,
    dirac_limit_residual,
    effective_hamiltonian,
    eigensystem,
    mass_from_angles,
    momentum_unitary,
)
from .walk import (
    CoinParams,
    DcaParams,
    SplitStepParams,
    coin_matrix,
    dca_equivalence_residual,
    evolve,
    step_conventional,
    step_dca,
    step_split,
)
from .zitter import (
    CoinObservable,
    EnergySuperposition,
    expectation_series,
    extract_frequency,
    zb_amplitude,
    zb_frequency,
    zb_matrix_element,
)

__version__ = "0.1.0"
