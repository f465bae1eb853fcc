"""Lower bounds on adaptive quantum channel discrimination via port-based
teleportation simulation, with application bounds for optical resolution,
quantum illumination, metrology, and secret-key rates."""

from .applications import (
    IlluminationParams,
    KeyRateBound,
    KeyRateParams,
    MetrologyBound,
    QfiEstimate,
    ResolutionParams,
    binary_entropy,
    illumination_bound,
    illumination_chois,
    illumination_fidelity_approx,
    illumination_fidelity_exact,
    key_rate_bound_asymptotic,
    key_rate_bound_finite,
    key_rate_minimize_m,
    m_tilde,
    metrology_bound,
    qfi_choi,
    resolution_bound,
    resolution_chois,
    resolution_fidelity,
)
from .channels import (
    ChoiMatrix,
    KrausChannel,
    amplitude_damping,
    apply,
    apply_to_subsystem,
    choi,
    depolarizing,
    maximally_entangled,
)
from .discrimination import (
    BoundReport,
    ad_discrimination_sweep,
    ad_fidelity,
    block_bounds_ad,
    block_upper_fidelity,
    bound_B,
    bound_B_analytic_M,
    bound_B_near_identity,
    bound_B_optimized,
    d_upper_fuchs,
    d_upper_pinsker,
    d_upper_subadd,
    default_m_grid,
    lower_bound_tightened,
)
from .linalg import (
    DensityMatrix,
    bures_distance,
    eig_hermitian,
    fidelity,
    kron,
    partial_trace,
    psd_sqrt,
    relative_entropy,
    trace_distance,
    trace_norm,
)
from .pbt import (
    PbtQuantities,
    delta_ad,
    delta_exact_qubit,
    delta_upper,
    diamond_via_choi_scalar_check,
    entanglement_fidelity_qubit,
    pbt_choi_qubit,
    pbt_quantities,
    simulate_channel_choi,
    xi,
)
from .pbt_oracle import PbtEnsemble, build_ensemble, oracle_channel_choi, oracle_xi

__version__ = "0.1.0"
