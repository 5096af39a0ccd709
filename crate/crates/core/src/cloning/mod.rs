//! From logical input to clones: the simulation pipeline over the
//! truncated-Fock engine, and the reduction of region states to
//! single-clone density matrices.

pub mod dicke;
pub mod qubit;
pub mod simulate;

pub use dicke::dicke_single_clone;
pub use qubit::{LogicalQubit, QubitDensityMatrix};
pub use simulate::{
    canonical_inputs, clone_outcome_from_state, n_to_m_fidelity_curve, simulate_clone_fidelity,
    simulate_clone_outcome, simulate_region_states, universality_spread, CloningChannel,
    EvolvedChannelState, SimOptions, SimOutcome,
};
