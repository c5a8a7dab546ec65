"""Wigner-negativity budgets for excitation-preserving quantum dynamics."""

from .budget import (
    Trajectory,
    block2_reduced_state,
    chain_trajectory,
    damped_two_body_trajectory,
    seed_comparison,
    seed_trajectory,
    tracking_infidelity,
    two_body_trajectory,
)
from .dynamics import (
    CouplingProfile,
    ExchangeParams,
    SectorAmplitudes,
    beam_splitter_propagator,
    concurrence_closed_form,
    concurrence_from_purity,
    evolve_seed,
    pst_couplings,
    sector_propagate,
    site_mixture,
    transfer_time,
    xy_two_qubit_state,
)
from .dwigner import (
    DiscreteWignerDistribution,
    discrete_sum_negativity,
    discrete_wigner,
    phase_point_operators,
    qutrit_stabilizer_states,
    reconstruct,
    strange_state,
)
from .errors import GridError, NumericalContractError, TruncationError
from .fock import (
    DensityOperator,
    ModeOperator,
    StateVector,
    coherent_state,
    fock_state,
    odd_cat_state,
    partial_trace,
    squeezed_fock_state,
    tensor_product,
)
from .phase_space import (
    KernelTable,
    PhaseGrid,
    WignerField,
    default_grid,
    default_two_mode_grid,
    export_field_csv,
    mixture_negativity_closed_form,
    negativity,
    single_photon_negativity_exact,
    state_negativity,
    two_mode_negativity,
    wigner_kernel,
    wigner_single_mode,
    wigner_two_mode,
)

__version__ = "0.1.0"
