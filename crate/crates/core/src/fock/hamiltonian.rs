//! Quadratic mode-coupling Hamiltonians on a truncated Fock space.
//!
//! Every Hamiltonian here has the form `H = i A` with `A` real antisymmetric
//! in the occupation basis, built from two kinds of charge-neutral couplings:
//!
//! * pair creation `i g (a_i^ a_j^ - a_i a_j)` (two-mode squeezing), and
//! * excitation exchange `i g (a_i^ a_j - a_i a_j^)` (beam splitter),
//!
//! writing `^` for the dagger. Truncation at `n_max` preserves the exact
//! antisymmetry of `A` (matrix elements crossing the cutoff vanish in
//! symmetric pairs), so the propagator `e^A` stays exactly orthogonal.

use nalgebra::DMatrix;

use crate::bogoliubov::CouplingConstants;
use crate::error::{Error, Result};
use crate::fock::space::{FockSpace, Mode, ModeKind, Sector};
use crate::scalar::{r, LinalgReal, Real};

/// One charge-neutral quadratic coupling between two modes, identified by
/// their positions in the parent [`FockSpace`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CouplingTerm<R> {
    /// `i g (a_i^ a_j^ - a_i a_j)` with `i = first`, `j = second`.
    PairCreation { first: usize, second: usize, gain: R },
    /// `i g (a_i^ a_j - a_i a_j^)` with `i = raise`, `j = lower`.
    Exchange { raise: usize, lower: usize, gain: R },
}

/// A sum of [`CouplingTerm`]s acting on one Fock space.
#[derive(Debug, Clone)]
pub struct BosonicHamiltonian<R: Real> {
    space: FockSpace,
    terms: Vec<CouplingTerm<R>>,
}

impl<R: Real> BosonicHamiltonian<R> {
    pub fn empty(space: FockSpace) -> Self {
        BosonicHamiltonian {
            space,
            terms: Vec::new(),
        }
    }

    pub fn with_terms(space: FockSpace, terms: Vec<CouplingTerm<R>>) -> Result<Self> {
        let mut h = BosonicHamiltonian::empty(space);
        for t in terms {
            h.push_term(t)?;
        }
        Ok(h)
    }

    /// Early-time squeezing of one sector pair, `i g (a^ b^ - a b)` between
    /// `Exterior(sector)` and `Interior(-sector)`.
    pub fn early(space: &FockSpace, sector: Sector, gain: R) -> Result<Self> {
        let mut h = BosonicHamiltonian::empty(space.clone());
        h.add_early_sector(sector, gain)?;
        Ok(h)
    }

    /// Late-time channel of one sector triple: squeezing between
    /// `Exterior(sector)` and `Interior(-sector)` at gain `g`, plus exchange
    /// between `Exterior(sector)` and `Signal(sector)` at gain `g'`.
    pub fn late(space: &FockSpace, sector: Sector, couplings: &CouplingConstants<R>) -> Result<Self> {
        let mut h = BosonicHamiltonian::empty(space.clone());
        h.add_late_sector(sector, couplings)?;
        Ok(h)
    }

    pub fn add_early_sector(&mut self, sector: Sector, gain: R) -> Result<()> {
        let a = self.require_mode(Mode::new(ModeKind::Exterior, sector))?;
        let b = self.require_mode(Mode::new(ModeKind::Interior, sector.conjugate()))?;
        self.push_term(CouplingTerm::PairCreation {
            first: a,
            second: b,
            gain,
        })
    }

    pub fn add_late_sector(&mut self, sector: Sector, couplings: &CouplingConstants<R>) -> Result<()> {
        let a = self.require_mode(Mode::new(ModeKind::Exterior, sector))?;
        let b = self.require_mode(Mode::new(ModeKind::Interior, sector.conjugate()))?;
        let c = self.require_mode(Mode::new(ModeKind::Signal, sector))?;
        self.push_term(CouplingTerm::PairCreation {
            first: a,
            second: b,
            gain: couplings.g,
        })?;
        self.push_term(CouplingTerm::Exchange {
            raise: a,
            lower: c,
            gain: couplings.g_prime,
        })
    }

    fn require_mode(&self, mode: Mode) -> Result<usize> {
        self.space
            .mode_position(mode)
            .ok_or_else(|| Error::domain(format!("mode {mode:?} not in this space")))
    }

    fn push_term(&mut self, term: CouplingTerm<R>) -> Result<()> {
        let modes = self.space.modes();
        let check = |p: usize| -> Result<i64> {
            modes
                .get(p)
                .map(|m| m.charge_weight())
                .ok_or_else(|| Error::domain(format!("mode position {p} out of range")))
        };
        match term {
            CouplingTerm::PairCreation { first, second, .. } => {
                if first == second {
                    return Err(Error::domain("pair creation needs two distinct modes"));
                }
                if check(first)? + check(second)? != 0 {
                    return Err(Error::domain(
                        "pair creation must pair modes of opposite charge weight",
                    ));
                }
            }
            CouplingTerm::Exchange { raise, lower, .. } => {
                if raise == lower {
                    return Err(Error::domain("exchange needs two distinct modes"));
                }
                if check(raise)? != check(lower)? {
                    return Err(Error::domain(
                        "exchange must pair modes of equal charge weight",
                    ));
                }
            }
        }
        self.terms.push(term);
        Ok(())
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn terms(&self) -> &[CouplingTerm<R>] {
        &self.terms
    }

    /// Nonzero entries of column `col` of the antisymmetric generator `A`
    /// (where `H = i A`), appended to `out` as `(row, value)` pairs.
    pub fn generator_column(&self, col: usize, out: &mut Vec<(usize, R)>) {
        let n_max = self.space.n_max();
        for term in &self.terms {
            match *term {
                CouplingTerm::PairCreation {
                    first,
                    second,
                    gain,
                } => {
                    let ni = self.space.occupation_at(col, first);
                    let nj = self.space.occupation_at(col, second);
                    let si = self.space.stride(first);
                    let sj = self.space.stride(second);
                    if ni < n_max && nj < n_max {
                        let val = gain
                            * num_traits::Float::sqrt(r::<R>(((ni + 1) * (nj + 1)) as f64));
                        out.push((col + si + sj, val));
                    }
                    if ni > 0 && nj > 0 {
                        let val = -gain * num_traits::Float::sqrt(r::<R>((ni * nj) as f64));
                        out.push((col - si - sj, val));
                    }
                }
                CouplingTerm::Exchange { raise, lower, gain } => {
                    let ni = self.space.occupation_at(col, raise);
                    let nj = self.space.occupation_at(col, lower);
                    let si = self.space.stride(raise);
                    let sj = self.space.stride(lower);
                    if ni < n_max && nj > 0 {
                        let val = gain * num_traits::Float::sqrt(r::<R>(((ni + 1) * nj) as f64));
                        out.push((col + si - sj, val));
                    }
                    if ni > 0 && nj < n_max {
                        let val = -gain * num_traits::Float::sqrt(r::<R>((ni * (nj + 1)) as f64));
                        out.push((col - si + sj, val));
                    }
                }
            }
        }
    }
}

impl<R: LinalgReal> BosonicHamiltonian<R> {
    /// Dense antisymmetric generator `A` (so `H = i A`); for modest spaces
    /// and diagnostics. The propagator works block-by-block and never
    /// materializes this for large spaces.
    pub fn dense_generator(&self) -> DMatrix<R> {
        let d = self.space.dim();
        let mut m = DMatrix::zeros(d, d);
        let mut col_entries = Vec::new();
        for col in 0..d {
            col_entries.clear();
            self.generator_column(col, &mut col_entries);
            for &(row, val) in &col_entries {
                m[(row, col)] += val;
            }
        }
        m
    }

    /// `max |A + A^T|` over the dense generator; zero up to rounding by
    /// construction.
    pub fn antisymmetry_defect(&self) -> R {
        let a = self.dense_generator();
        let mut worst = R::zero();
        for i in 0..a.nrows() {
            for j in 0..a.ncols() {
                let d = num_traits::Float::abs(a[(i, j)] + a[(j, i)]);
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::vector::FockVector;
    use num_complex::Complex;

    #[test]
    fn early_matrix_element_convention() {
        // <1,1| H |0,0> = i g for the squeeze term, i.e. A[|1,1>, |0,0>] = g.
        let s = FockSpace::pair(Sector::Plus, 3).unwrap();
        let h = BosonicHamiltonian::<f64>::early(&s, Sector::Plus, 0.37).unwrap();
        let a = h.dense_generator();
        let vac = s.index_of(&[0, 0]).unwrap();
        let pair = s.index_of(&[1, 1]).unwrap();
        assert!((a[(pair, vac)] - 0.37).abs() < 1e-15);
        assert!((a[(vac, pair)] + 0.37).abs() < 1e-15);
    }

    #[test]
    fn late_matrix_element_convention() {
        // <1,0,0| H |0,0,1> = i g' for the exchange term.
        let s = FockSpace::triple(Sector::Plus, 2).unwrap();
        let cc = CouplingConstants {
            g: 0.21,
            g_prime: 0.53,
        };
        let h = BosonicHamiltonian::<f64>::late(&s, Sector::Plus, &cc).unwrap();
        let a = h.dense_generator();
        let signal = s.index_of(&[0, 0, 1]).unwrap();
        let ext = s.index_of(&[1, 0, 0]).unwrap();
        let vac = s.index_of(&[0, 0, 0]).unwrap();
        let pair = s.index_of(&[1, 1, 0]).unwrap();
        assert!((a[(ext, signal)] - 0.53).abs() < 1e-15);
        assert!((a[(signal, ext)] + 0.53).abs() < 1e-15);
        assert!((a[(pair, vac)] - 0.21).abs() < 1e-15);
    }

    #[test]
    fn generator_is_exactly_antisymmetric_despite_truncation() {
        let s = FockSpace::triple(Sector::Minus, 3).unwrap();
        let cc = CouplingConstants {
            g: 0.9,
            g_prime: 1.3,
        };
        let h = BosonicHamiltonian::<f64>::late(&s, Sector::Minus, &cc).unwrap();
        assert_eq!(h.antisymmetry_defect(), 0.0);
    }

    #[test]
    fn ladder_factors_match_operator_application() {
        // A |n_a, n_b> from the squeeze term must equal
        // g (a^ b^ - a b) |n_a, n_b> computed via the ladder operators.
        let s = FockSpace::pair(Sector::Plus, 4).unwrap();
        let g = 0.83;
        let h = BosonicHamiltonian::<f64>::early(&s, Sector::Plus, g).unwrap();
        let a_mode = Mode::new(ModeKind::Exterior, Sector::Plus);
        let b_mode = Mode::new(ModeKind::Interior, Sector::Minus);
        let v = FockVector::<f64>::basis_state(s.clone(), &[2, 3]).unwrap();
        let mut expected = FockVector::zero(s.clone());
        expected
            .add_scaled(
                Complex::new(g, 0.0),
                &v.create(a_mode).unwrap().create(b_mode).unwrap(),
            )
            .unwrap();
        expected
            .add_scaled(
                Complex::new(-g, 0.0),
                &v.annihilate(a_mode).unwrap().annihilate(b_mode).unwrap(),
            )
            .unwrap();
        let col = s.index_of(&[2, 3]).unwrap();
        let mut entries = Vec::new();
        h.generator_column(col, &mut entries);
        let mut applied = FockVector::<f64>::zero(s);
        for (row, val) in entries {
            applied.amplitudes_mut()[row] += Complex::new(val, 0.0);
        }
        let mut diff = applied.clone();
        diff.add_scaled(Complex::new(-1.0, 0.0), &expected).unwrap();
        assert!(diff.norm() < 1e-14);
    }

    #[test]
    fn charge_neutrality_is_enforced() {
        let s = FockSpace::triple(Sector::Plus, 2).unwrap();
        // Exterior-Signal pair creation would change the charge by 2.
        let bad = CouplingTerm::PairCreation {
            first: 0,
            second: 2,
            gain: 1.0,
        };
        assert!(BosonicHamiltonian::<f64>::with_terms(s.clone(), vec![bad]).is_err());
        // Exterior-Interior exchange would also break the charge.
        let bad = CouplingTerm::Exchange {
            raise: 0,
            lower: 1,
            gain: 1.0,
        };
        assert!(BosonicHamiltonian::<f64>::with_terms(s, vec![bad]).is_err());
    }
}
