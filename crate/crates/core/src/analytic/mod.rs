//! Closed-form cloning results: post-selected states, occupation
//! distributions, and `N -> M` fidelities.
//!
//! Everything combinatorial is generic over [`crate::scalar::Num`], so the
//! identities can be evaluated exactly with `BigRational`; the late-time
//! formulas involve exponentials and are generic over [`crate::scalar::Real`].

pub mod early;
pub mod late;

pub use early::{
    anticlone_fidelity, antiparticle_input_clone_fidelity, antiparticle_input_clone_fidelity_value,
    antiparticle_input_distribution, antiparticle_input_postselect_probability,
    antiparticle_input_postselected_state, antiparticle_input_weights, classical_limit_fidelity,
    early_time_anticlone_value, early_time_clone_fidelity, early_time_clone_fidelity_value,
    early_time_postselect_probability, early_time_postselected_state,
    early_time_postselected_weights, optimal_fidelity, InputKind, PostselectedAmplitudes,
};
pub use late::{
    late_time_antiparticle_distribution, late_time_fidelity_1m, late_time_fidelity_closed_form,
    late_time_fidelity_postselect_sum, late_time_ln_prob_antiparticle, late_time_ln_prob_particle,
    late_time_particle_distribution,
};
