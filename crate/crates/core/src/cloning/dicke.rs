//! Reduction of a fixed-total-count bosonic block to a single logical clone.
//!
//! A region-I state with `m` particles and `M - m` antiparticles is, as a
//! state of `M` indistinguishable logical qubits, the symmetric Dicke state
//! with `m` excitations. Tracing out all but one qubit maps
//!
//! * `|D_m><D_m|`   to  `(m/M) |1><1| + ((M-m)/M) |0><0|`, and
//! * `|D_{m+1}><D_m|` to `(sqrt((m+1)(M-m)) / M) |1><0|`,
//!
//! with higher count differences contributing nothing. Applying this map
//! entrywise to a count block gives the single-clone density matrix. An
//! independent oracle (explicit expansion of the symmetric states over
//! `2^M` qubit configurations) verifies the map in the integration tests.

use num_complex::Complex;

use crate::cloning::qubit::QubitDensityMatrix;
use crate::error::{Error, Result};
use crate::fock::reduce::CountBlock;
use crate::scalar::{r, Real};

pub fn dicke_single_clone<R: Real>(block: &CountBlock<R>) -> Result<QubitDensityMatrix<R>> {
    let m_total = block.total();
    if m_total == 0 {
        return Err(Error::domain(
            "single-clone reduction needs at least one quantum in the block",
        ));
    }
    let inv_m = R::one() / r::<R>(m_total as f64);
    let zero = Complex::new(R::zero(), R::zero());
    let mut one_one = zero;
    let mut zero_zero = zero;
    let mut one_zero = zero;
    let mut zero_one = zero;
    for m in 0..=m_total {
        let diag = block.element(m, m);
        one_one = one_one + diag * Complex::new(r::<R>(m as f64) * inv_m, R::zero());
        zero_zero =
            zero_zero + diag * Complex::new(r::<R>((m_total - m) as f64) * inv_m, R::zero());
        if m < m_total {
            let w = num_traits::Float::sqrt(r::<R>(((m + 1) * (m_total - m)) as f64)) * inv_m;
            let w = Complex::new(w, R::zero());
            one_zero = one_zero + block.element(m + 1, m) * w;
            zero_one = zero_one + block.element(m, m + 1) * w;
        }
    }
    Ok(QubitDensityMatrix::from_parts(
        one_one, one_zero, zero_one, zero_zero,
    ))
}
