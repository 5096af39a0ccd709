//! Brute-force engine: truncated Fock spaces, quadratic Hamiltonians,
//! exact (spectral) unit-time propagators, and reduced-state extraction.
//!
//! This is the oracle side of the library: nothing in here knows any
//! closed-form answer. States live in an occupation basis cut off at
//! `n_max` per mode, evolution is the exact exponential of the truncated
//! generator evaluated per conserved-charge block, and region states are
//! obtained by partial traces and post-selection on quanta counts.

pub mod branches;
pub mod checks;
pub mod hamiltonian;
pub mod linalg;
pub mod propagator;
pub mod reduce;
pub mod space;
pub mod truncation;
pub mod vector;

pub use branches::{BranchSpec, SectorBranches};
pub use checks::{heisenberg_defect_for, late_heisenberg_defect};
pub use hamiltonian::{BosonicHamiltonian, CouplingTerm};
pub use linalg::{hermitian_min_eigenvalue, orthogonal_exp};
pub use propagator::{evolve, evolve_inverse, Propagator};
pub use reduce::{
    region1_reduced_state, region2_conditional_state, CountBlock, RegionDensity,
};
pub use space::{FockSpace, Mode, ModeKind, Sector};
pub use truncation::{
    choose_truncation, negative_binomial_tail_bound, DEFAULT_N_MAX_CEILING,
};
pub use vector::FockVector;
