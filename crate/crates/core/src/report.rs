//! Result records shared by the analytic formulas and the simulator.

use crate::scalar::Real;

/// How a fidelity value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Closed-form expression.
    Analytic,
    /// Truncated Fock-space simulation.
    Simulated,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Analytic => "analytic",
            Method::Simulated => "simulate",
        }
    }
}

/// Outcome of one N -> M cloning computation.
///
/// `postselect_probability` is `None` when the producing route has no notion
/// of it (closed forms conditioned on post-selection); `anticlone_fidelity`
/// is `None` when no anticlone quanta exist (e.g. early-time `M = N`).
#[derive(Debug, Clone, PartialEq)]
pub struct CloneReport<R: Real> {
    pub n: usize,
    pub m: usize,
    pub fidelity: R,
    pub anticlone_fidelity: Option<R>,
    pub postselect_probability: Option<R>,
    pub method: Method,
    /// Per-mode occupation cutoff actually used (simulation only).
    pub n_max: Option<usize>,
    /// Dimension of one sector basis (simulation only).
    pub basis_dim: Option<usize>,
    /// Truncation-tail bound attached to the reported numbers.
    pub tail_mass: R,
}

impl<R: Real> CloneReport<R> {
    /// Analytic record with no simulation diagnostics.
    pub fn analytic(n: usize, m: usize, fidelity: R) -> Self {
        CloneReport {
            n,
            m,
            fidelity,
            anticlone_fidelity: None,
            postselect_probability: None,
            method: Method::Analytic,
            n_max: None,
            basis_dim: None,
            tail_mass: R::zero(),
        }
    }
}
