//! State vectors over a truncated Fock space.

use std::collections::BTreeSet;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fock::space::{FockSpace, Mode};
use crate::scalar::Real;

/// A (generally unnormalized) state vector with complex amplitudes over the
/// occupation basis of a [`FockSpace`].
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector<R: Real> {
    space: FockSpace,
    amps: Vec<Complex<R>>,
}

impl<R: Real> FockVector<R> {
    pub fn zero(space: FockSpace) -> Self {
        let dim = space.dim();
        FockVector {
            space,
            amps: vec![Complex::new(R::zero(), R::zero()); dim],
        }
    }

    /// The basis state with the given occupation tuple.
    pub fn basis_state(space: FockSpace, occ: &[usize]) -> Result<Self> {
        let idx = space.index_of(occ)?;
        let mut v = FockVector::zero(space);
        v.amps[idx] = Complex::new(R::one(), R::zero());
        Ok(v)
    }

    pub fn from_amplitudes(space: FockSpace, amps: Vec<Complex<R>>) -> Result<Self> {
        if amps.len() != space.dim() {
            return Err(Error::domain(format!(
                "amplitude vector has length {} but the space has dimension {}",
                amps.len(),
                space.dim()
            )));
        }
        Ok(FockVector { space, amps })
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &[Complex<R>] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex<R>] {
        &mut self.amps
    }

    pub fn amplitude(&self, occ: &[usize]) -> Result<Complex<R>> {
        Ok(self.amps[self.space.index_of(occ)?])
    }

    pub fn norm_sqr(&self) -> R {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> R {
        num_traits::Float::sqrt(self.norm_sqr())
    }

    /// Inner product `<self|other>` (conjugate-linear in `self`).
    pub fn dot(&self, other: &FockVector<R>) -> Result<Complex<R>> {
        if self.space != other.space {
            return Err(Error::domain("inner product between different spaces"));
        }
        let mut acc = Complex::new(R::zero(), R::zero());
        for (a, b) in self.amps.iter().zip(&other.amps) {
            acc = acc + a.conj() * *b;
        }
        Ok(acc)
    }

    pub fn scale(&mut self, factor: Complex<R>) {
        for a in &mut self.amps {
            *a = *a * factor;
        }
    }

    pub fn add_scaled(&mut self, factor: Complex<R>, other: &FockVector<R>) -> Result<()> {
        if self.space != other.space {
            return Err(Error::domain("sum of vectors from different spaces"));
        }
        for (a, b) in self.amps.iter_mut().zip(&other.amps) {
            *a = *a + factor * *b;
        }
        Ok(())
    }

    /// Tensor product on the joined space (`self` varies slowest).
    pub fn tensor(&self, other: &FockVector<R>) -> Result<FockVector<R>> {
        let space = self.space.join(&other.space)?;
        let mut amps = Vec::with_capacity(space.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(*a * *b);
            }
        }
        FockVector::from_amplitudes(space, amps)
    }

    /// Probability mass on basis states where any mode sits exactly at the
    /// cutoff `n_max`; a proxy for how much amplitude is pressing against
    /// the truncation boundary.
    pub fn boundary_mass(&self) -> R {
        let n_max = self.space.n_max();
        let k = self.space.modes().len();
        let mut mass = R::zero();
        for (i, a) in self.amps.iter().enumerate() {
            let at_edge = (0..k).any(|p| self.space.occupation_at(i, p) == n_max);
            if at_edge {
                mass = mass + a.norm_sqr();
            }
        }
        mass
    }

    /// Charges carrying nonzero amplitude.
    pub fn charges_present(&self) -> BTreeSet<i64> {
        let mut set = BTreeSet::new();
        for (i, a) in self.amps.iter().enumerate() {
            if a.norm_sqr() > R::zero() {
                set.insert(self.space.charge_of(i));
            }
        }
        set
    }

    /// Expectation of the conserved charge in this (normalized) state.
    pub fn charge_expectation(&self) -> R {
        let mut acc = R::zero();
        for (i, a) in self.amps.iter().enumerate() {
            acc = acc + crate::scalar::r::<R>(self.space.charge_of(i) as f64) * a.norm_sqr();
        }
        acc
    }

    /// Mean occupation of the mode at `position`.
    pub fn mean_occupation(&self, position: usize) -> R {
        let mut acc = R::zero();
        for (i, a) in self.amps.iter().enumerate() {
            let occ = self.space.occupation_at(i, position);
            acc = acc + crate::scalar::r::<R>(occ as f64) * a.norm_sqr();
        }
        acc
    }

    /// Apply the annihilation operator of `mode`: `(a psi)[n-1] = sqrt(n) psi[n]`.
    pub fn annihilate(&self, mode: Mode) -> Result<FockVector<R>> {
        let pos = self
            .space
            .mode_position(mode)
            .ok_or_else(|| Error::domain(format!("mode {mode:?} not in this space")))?;
        let stride = self.space.stride(pos);
        let mut out = FockVector::zero(self.space.clone());
        for (i, a) in self.amps.iter().enumerate() {
            let n = self.space.occupation_at(i, pos);
            if n > 0 {
                let root = num_traits::Float::sqrt(crate::scalar::r::<R>(n as f64));
                out.amps[i - stride] = out.amps[i - stride] + *a * Complex::new(root, R::zero());
            }
        }
        Ok(out)
    }

    /// Apply the creation operator of `mode`; amplitude that would exceed the
    /// cutoff is dropped (truncated).
    pub fn create(&self, mode: Mode) -> Result<FockVector<R>> {
        let pos = self
            .space
            .mode_position(mode)
            .ok_or_else(|| Error::domain(format!("mode {mode:?} not in this space")))?;
        let stride = self.space.stride(pos);
        let n_max = self.space.n_max();
        let mut out = FockVector::zero(self.space.clone());
        for (i, a) in self.amps.iter().enumerate() {
            let n = self.space.occupation_at(i, pos);
            if n < n_max {
                let root = num_traits::Float::sqrt(crate::scalar::r::<R>((n + 1) as f64));
                out.amps[i + stride] = out.amps[i + stride] + *a * Complex::new(root, R::zero());
            }
        }
        Ok(out)
    }

    /// `<psi| a_mode |psi>`, used for Heisenberg-picture checks.
    pub fn expect_annihilation(&self, mode: Mode) -> Result<Complex<R>> {
        self.dot(&self.annihilate(mode)?)
    }
}
