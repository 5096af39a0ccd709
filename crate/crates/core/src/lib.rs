//! Numerical core for modeling an evaporating horizon as a universal quantum
//! cloning channel.
//!
//! A mode falling toward the horizon is amplified by stimulated emission
//! (gain `alpha^2`), accompanied by spontaneous pair noise (`beta^2`) and a
//! reflected component (`gamma^2`). Post-selecting `M` quanta outside the
//! horizon turns the channel into an approximately universal `N -> M` cloner
//! whose fidelity approaches the optimal-cloning bound. This crate provides:
//!
//! * [`bogoliubov`] — channel coefficients, couplings, and their inversions;
//! * [`analytic`] — closed-form fidelities, post-selected states, and
//!   occupation distributions (generic over exact rational or float scalars);
//! * [`fock`] — a truncated Fock-space engine: Hamiltonian construction,
//!   spectral-decomposition evolution, and region reductions;
//! * [`cloning`] — the simulation pipeline from logical input to single-clone
//!   density matrix, plus universality checks.
//!
//! All numerics are generic over the scalar type ([`scalar::Real`], plus
//! [`scalar::Num`] where exact rationals make sense); the `*64` aliases below
//! fix the `f64` instantiation the CLI uses.

pub mod analytic;
pub mod bogoliubov;
pub mod cloning;
pub mod dist;
pub mod error;
pub mod fock;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};

/// `f64` instantiations of the core parameter types.
pub type BlackHoleParams64 = bogoliubov::BlackHoleParams<f64>;
pub type EarlyTimeParams64 = bogoliubov::EarlyTimeParams<f64>;
pub type CouplingConstants64 = bogoliubov::CouplingConstants<f64>;
pub type NumberDistribution64 = dist::NumberDistribution<f64>;
pub type CloneReport64 = report::CloneReport<f64>;
pub type FockVector64 = fock::FockVector<f64>;
pub type LogicalQubit64 = cloning::LogicalQubit<f64>;
