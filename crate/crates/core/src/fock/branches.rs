//! Two-sector product states written as a sum of a few product branches.
//!
//! The channel factorizes over the two momentum sectors, and every input we
//! care about is a short sum of products of basis states, one factor per
//! sector. Evolving each branch factor separately (the Hamiltonian is a sum
//! of commuting single-sector pieces) keeps the largest object a
//! three-mode vector instead of a six-mode one.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fock::hamiltonian::BosonicHamiltonian;
use crate::fock::propagator::Propagator;
use crate::fock::space::FockSpace;
use crate::fock::vector::FockVector;
use crate::scalar::{strict_tol, LinalgReal, Real};

/// One product branch `coeff * |occ_plus> (x) |occ_minus>`.
#[derive(Debug, Clone)]
pub struct BranchSpec<R: Real> {
    pub coeff: Complex<R>,
    pub occ_plus: Vec<usize>,
    pub occ_minus: Vec<usize>,
}

/// A normalized state `sum_b coeff_b |v_b^+> (x) |v_b^->` on the product of
/// a plus-sector and a minus-sector space.
#[derive(Debug, Clone)]
pub struct SectorBranches<R: Real> {
    coeffs: Vec<Complex<R>>,
    plus: Vec<FockVector<R>>,
    minus: Vec<FockVector<R>>,
}

impl<R: Real> SectorBranches<R> {
    pub fn from_basis_branches(
        space_plus: &FockSpace,
        space_minus: &FockSpace,
        specs: &[BranchSpec<R>],
    ) -> Result<Self> {
        if specs.is_empty() {
            return Err(Error::domain("a branched state needs at least one branch"));
        }
        if space_plus.n_max() != space_minus.n_max() {
            return Err(Error::domain("sector spaces must share n_max"));
        }
        let total: R = specs.iter().map(|s| s.coeff.norm_sqr()).sum();
        if num_traits::Float::abs(total - R::one()) > strict_tol::<R>() {
            return Err(Error::domain(format!(
                "branch coefficients are not normalized: sum of squares deviates by {}",
                num_traits::Float::abs(total - R::one())
            )));
        }
        let mut coeffs = Vec::with_capacity(specs.len());
        let mut plus = Vec::with_capacity(specs.len());
        let mut minus = Vec::with_capacity(specs.len());
        for s in specs {
            coeffs.push(s.coeff);
            plus.push(FockVector::basis_state(space_plus.clone(), &s.occ_plus)?);
            minus.push(FockVector::basis_state(space_minus.clone(), &s.occ_minus)?);
        }
        Ok(SectorBranches {
            coeffs,
            plus,
            minus,
        })
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> &[Complex<R>] {
        &self.coeffs
    }

    pub fn plus_vectors(&self) -> &[FockVector<R>] {
        &self.plus
    }

    pub fn minus_vectors(&self) -> &[FockVector<R>] {
        &self.minus
    }

    pub fn space_plus(&self) -> &FockSpace {
        self.plus[0].space()
    }

    pub fn space_minus(&self) -> &FockSpace {
        self.minus[0].space()
    }

    /// Total squared norm `sum_b |c_b|^2 |v_b^+|^2 |v_b^-|^2`; this ignores
    /// cross terms and is exact when branch factors stay orthogonal across
    /// branches (true here: branches occupy distinct charge blocks).
    pub fn norm_sqr_total(&self) -> R {
        let mut acc = R::zero();
        for (c, (p, m)) in self.coeffs.iter().zip(self.plus.iter().zip(&self.minus)) {
            acc = acc + c.norm_sqr() * p.norm_sqr() * m.norm_sqr();
        }
        acc
    }

    /// Probability mass pressed against the occupation cutoff, summed over
    /// branches and sectors.
    pub fn boundary_mass(&self) -> R {
        let mut acc = R::zero();
        for (c, (p, m)) in self.coeffs.iter().zip(self.plus.iter().zip(&self.minus)) {
            acc = acc + c.norm_sqr() * (p.boundary_mass() + m.boundary_mass());
        }
        acc
    }
}

impl<R: LinalgReal> SectorBranches<R> {
    /// Evolve every branch factor by the per-sector propagators, building
    /// each needed charge block exactly once.
    pub fn evolve(
        &self,
        h_plus: &BosonicHamiltonian<R>,
        h_minus: &BosonicHamiltonian<R>,
    ) -> Result<SectorBranches<R>> {
        let mut charges_plus = std::collections::BTreeSet::new();
        let mut charges_minus = std::collections::BTreeSet::new();
        for v in &self.plus {
            charges_plus.extend(v.charges_present());
        }
        for v in &self.minus {
            charges_minus.extend(v.charges_present());
        }
        let u_plus = Propagator::for_charges(h_plus, &charges_plus)?;
        let u_minus = Propagator::for_charges(h_minus, &charges_minus)?;
        let plus = self
            .plus
            .iter()
            .map(|v| u_plus.apply(v))
            .collect::<Result<Vec<_>>>()?;
        let minus = self
            .minus
            .iter()
            .map(|v| u_minus.apply(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(SectorBranches {
            coeffs: self.coeffs.clone(),
            plus,
            minus,
        })
    }

    /// Materialize the full product-space vector (small spaces only; used by
    /// cross-checks against monolithic evolution).
    pub fn to_full_vector(&self) -> Result<FockVector<R>> {
        let mut out: Option<FockVector<R>> = None;
        for (c, (p, m)) in self.coeffs.iter().zip(self.plus.iter().zip(&self.minus)) {
            let prod = p.tensor(m)?;
            match &mut out {
                None => {
                    let mut v = prod;
                    v.scale(*c);
                    out = Some(v);
                }
                Some(acc) => acc.add_scaled(*c, &prod)?,
            }
        }
        Ok(out.expect("at least one branch"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::space::Sector;

    fn c64(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn rejects_unnormalized_branches() {
        let sp = FockSpace::pair(Sector::Plus, 2).unwrap();
        let sm = FockSpace::pair(Sector::Minus, 2).unwrap();
        let specs = vec![BranchSpec {
            coeff: c64(0.5, 0.0),
            occ_plus: vec![0, 0],
            occ_minus: vec![0, 0],
        }];
        assert!(SectorBranches::from_basis_branches(&sp, &sm, &specs).is_err());
    }

    #[test]
    fn full_vector_matches_hand_tensor() {
        let sp = FockSpace::pair(Sector::Plus, 2).unwrap();
        let sm = FockSpace::pair(Sector::Minus, 2).unwrap();
        let inv_rt2 = std::f64::consts::FRAC_1_SQRT_2;
        let specs = vec![
            BranchSpec {
                coeff: c64(inv_rt2, 0.0),
                occ_plus: vec![1, 0],
                occ_minus: vec![0, 0],
            },
            BranchSpec {
                coeff: c64(0.0, inv_rt2),
                occ_plus: vec![0, 0],
                occ_minus: vec![1, 0],
            },
        ];
        let b = SectorBranches::from_basis_branches(&sp, &sm, &specs).unwrap();
        assert!((b.norm_sqr_total() - 1.0).abs() < 1e-15);
        let full = b.to_full_vector().unwrap();
        assert!((full.amplitude(&[1, 0, 0, 0]).unwrap() - c64(inv_rt2, 0.0)).norm() < 1e-15);
        assert!((full.amplitude(&[0, 0, 1, 0]).unwrap() - c64(0.0, inv_rt2)).norm() < 1e-15);
        assert!((full.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn evolve_keeps_total_norm() {
        let sp = FockSpace::pair(Sector::Plus, 8).unwrap();
        let sm = FockSpace::pair(Sector::Minus, 8).unwrap();
        let g = 0.5f64;
        let hp = BosonicHamiltonian::early(&sp, Sector::Plus, g).unwrap();
        let hm = BosonicHamiltonian::early(&sm, Sector::Minus, g).unwrap();
        let specs = vec![
            BranchSpec {
                coeff: c64(0.6, 0.0),
                occ_plus: vec![1, 0],
                occ_minus: vec![0, 0],
            },
            BranchSpec {
                coeff: c64(0.0, 0.8),
                occ_plus: vec![0, 0],
                occ_minus: vec![1, 0],
            },
        ];
        let b = SectorBranches::from_basis_branches(&sp, &sm, &specs).unwrap();
        let evolved = b.evolve(&hp, &hm).unwrap();
        assert!((evolved.norm_sqr_total() - 1.0).abs() < 1e-12);
        assert!(evolved.boundary_mass() < 1e-3);
    }
}
