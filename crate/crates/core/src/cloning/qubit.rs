//! The dual-rail logical qubit carried by the channel and 2x2 density
//! matrices over it.
//!
//! Logical `|1>` is a particle (momentum `k`) and logical `|0>` an
//! antiparticle (momentum `-k`); an arbitrary input is
//! `|psi> = sigma |1> + tau |0>`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{r, strict_tol, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogicalQubit<R: Real> {
    sigma: Complex<R>,
    tau: Complex<R>,
}

impl<R: Real> LogicalQubit<R> {
    pub fn new(sigma: Complex<R>, tau: Complex<R>) -> Result<Self> {
        let norm = sigma.norm_sqr() + tau.norm_sqr();
        if num_traits::Float::abs(norm - R::one()) > strict_tol::<R>() {
            return Err(Error::domain(format!(
                "logical qubit is not normalized: |sigma|^2 + |tau|^2 deviates from 1 by {}",
                num_traits::Float::abs(norm - R::one())
            )));
        }
        Ok(LogicalQubit { sigma, tau })
    }

    /// `|1>`: a pure particle.
    pub fn particle() -> Self {
        LogicalQubit {
            sigma: Complex::new(R::one(), R::zero()),
            tau: Complex::new(R::zero(), R::zero()),
        }
    }

    /// `|0>`: a pure antiparticle.
    pub fn antiparticle() -> Self {
        LogicalQubit {
            sigma: Complex::new(R::zero(), R::zero()),
            tau: Complex::new(R::one(), R::zero()),
        }
    }

    /// `(|1> + |0>) / sqrt(2)`.
    pub fn superposition_plus() -> Self {
        let h = num_traits::Float::sqrt(r::<R>(0.5));
        LogicalQubit {
            sigma: Complex::new(h, R::zero()),
            tau: Complex::new(h, R::zero()),
        }
    }

    /// `(|1> + i |0>) / sqrt(2)`.
    pub fn superposition_plus_i() -> Self {
        let h = num_traits::Float::sqrt(r::<R>(0.5));
        LogicalQubit {
            sigma: Complex::new(h, R::zero()),
            tau: Complex::new(R::zero(), h),
        }
    }

    pub fn sigma(&self) -> Complex<R> {
        self.sigma
    }

    pub fn tau(&self) -> Complex<R> {
        self.tau
    }

    /// The state orthogonal to this one,
    /// `|psi_perp> = tau* |1> - sigma* |0>` (the target of a universal NOT).
    pub fn orthogonal(&self) -> Self {
        LogicalQubit {
            sigma: self.tau.conj(),
            tau: -self.sigma.conj(),
        }
    }
}

/// A 2x2 density matrix over the logical basis, stored entrywise so that
/// hermiticity defects introduced upstream remain observable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitDensityMatrix<R: Real> {
    one_one: Complex<R>,
    one_zero: Complex<R>,
    zero_one: Complex<R>,
    zero_zero: Complex<R>,
}

impl<R: Real> QubitDensityMatrix<R> {
    pub fn from_parts(
        one_one: Complex<R>,
        one_zero: Complex<R>,
        zero_one: Complex<R>,
        zero_zero: Complex<R>,
    ) -> Self {
        QubitDensityMatrix {
            one_one,
            one_zero,
            zero_one,
            zero_zero,
        }
    }

    pub fn pure(psi: &LogicalQubit<R>) -> Self {
        QubitDensityMatrix {
            one_one: psi.sigma() * psi.sigma().conj(),
            one_zero: psi.sigma() * psi.tau().conj(),
            zero_one: psi.tau() * psi.sigma().conj(),
            zero_zero: psi.tau() * psi.tau().conj(),
        }
    }

    /// `<1|rho|1>`.
    pub fn one_one(&self) -> Complex<R> {
        self.one_one
    }

    /// `<1|rho|0>`.
    pub fn one_zero(&self) -> Complex<R> {
        self.one_zero
    }

    /// `<0|rho|1>`.
    pub fn zero_one(&self) -> Complex<R> {
        self.zero_one
    }

    /// `<0|rho|0>`.
    pub fn zero_zero(&self) -> Complex<R> {
        self.zero_zero
    }

    pub fn trace(&self) -> Complex<R> {
        self.one_one + self.zero_zero
    }

    pub fn hermiticity_defect(&self) -> R {
        let off = self.one_zero - self.zero_one.conj();
        let mut worst = num_traits::Float::sqrt(off.norm_sqr());
        for d in [self.one_one.im, self.zero_zero.im] {
            let d = num_traits::Float::abs(d);
            if d > worst {
                worst = d;
            }
        }
        worst
    }

    /// `<psi|rho|psi>`, the fidelity of `rho` against the pure state `psi`.
    pub fn fidelity(&self, psi: &LogicalQubit<R>) -> R {
        let s = psi.sigma();
        let t = psi.tau();
        let val = s.conj() * self.one_one * s
            + s.conj() * self.one_zero * t
            + t.conj() * self.zero_one * s
            + t.conj() * self.zero_zero * t;
        val.re
    }

    /// Smaller eigenvalue of the Hermitian part; slightly negative values
    /// bound the accumulated numerical error.
    pub fn min_eigenvalue(&self) -> R {
        let half = r::<R>(0.5);
        let t = (self.one_one.re + self.zero_zero.re) * half;
        let d = (self.one_one.re - self.zero_zero.re) * half;
        let off = (self.one_zero + self.zero_one.conj()) * Complex::new(half, R::zero());
        t - num_traits::Float::sqrt(d * d + off.norm_sqr())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c64(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn rejects_unnormalized_input() {
        assert!(LogicalQubit::<f64>::new(c64(0.9, 0.0), c64(0.9, 0.0)).is_err());
        assert!(LogicalQubit::<f64>::new(c64(0.6, 0.0), c64(0.0, 0.8)).is_ok());
    }

    #[test]
    fn orthogonal_state_is_orthogonal() {
        let psi = LogicalQubit::<f64>::new(c64(0.6, 0.0), c64(0.0, 0.8)).unwrap();
        let perp = psi.orthogonal();
        let overlap = psi.sigma().conj() * perp.sigma() + psi.tau().conj() * perp.tau();
        assert!(overlap.norm() < 1e-15);
        // psi_perp is itself normalized.
        assert!((perp.sigma().norm_sqr() + perp.tau().norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pure_state_fidelities() {
        let psi = LogicalQubit::<f64>::superposition_plus_i();
        let rho = QubitDensityMatrix::pure(&psi);
        assert!((rho.fidelity(&psi) - 1.0).abs() < 1e-15);
        assert!(rho.fidelity(&psi.orthogonal()).abs() < 1e-15);
        assert!((rho.trace().re - 1.0).abs() < 1e-15);
        assert!(rho.hermiticity_defect() < 1e-15);
    }

    #[test]
    fn min_eigenvalue_of_known_matrices() {
        let maximally_mixed = QubitDensityMatrix::from_parts(
            c64(0.5, 0.0),
            c64(0.0, 0.0),
            c64(0.0, 0.0),
            c64(0.5, 0.0),
        );
        assert!((maximally_mixed.min_eigenvalue() - 0.5).abs() < 1e-15);
        let pure = QubitDensityMatrix::pure(&LogicalQubit::<f64>::particle());
        assert!(pure.min_eigenvalue().abs() < 1e-15);
    }
}
