//! Talbot-effect logical gates on time-frequency GKP states.
//!
//! Frequencies are in units of the comb spacing `ω̄ = 1`, times in `1/ω̄`,
//! and chirps either in absolute units (`β_T = π`) or as multiples of `β_T`.

pub mod analytic;
pub mod biphoton;
pub mod comb;
pub mod error;
pub mod error_correction;
pub mod fidelity;
pub mod grid;
pub mod phase_space;
pub mod propagation;
pub mod transform;

pub use analytic::{
    analytic_overlap_freq, analytic_overlap_time, asymptotic_overlap_freq, asymptotic_overlap_time,
    normalization_factors, NormalizationFactors,
};
pub use biphoton::{build_jsa, reduce_to_minus, JsaGrid, JsaSpec};
pub use comb::{
    build_physical_state, build_time_codeword, overlap, CombSpec, Domain, LogicalLabel, SpectralState,
    DEFAULT_MAX_CHIRP,
};
pub use error::{Error, Result};
pub use error_correction::{
    error_map, p_error_exact, p_no_error_asymptotic, p_no_error_exact, ModularSpec, DEFAULT_THRESHOLD_FRACTION,
};
pub use fidelity::{
    chirped_state_fidelity, fidelity_sweep, gate_fidelity, gate_fidelity_from_matrix, implemented_gate,
    orthonormal_logical_basis, state_fidelity, BasisTag, CellWarning, FidelityMap, GateMatrix, SweepTarget,
};
pub use grid::GridSpec;
pub use phase_space::{
    hom_coincidence, ideal_lattice, ideal_sign, shear_check, visibility, visibility_map, wigner_at, wigner_minus,
    IdealLattice, MapKind, PhaseSpaceMap, MU_PITCH, TAU_PITCH,
};
pub use propagation::{
    apply_chirp, chirp_capacity, linspace, talbot_carpet, talbot_carpet_in, time_amplitudes_at, to_freq_domain,
    to_time_domain, Chirp, TalbotCarpet, BETA_TALBOT,
};
