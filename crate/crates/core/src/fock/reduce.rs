//! Reduced density matrices of the exterior (region I) and interior
//! (region II) modes, computed from branched two-sector states without ever
//! materializing the six-mode density matrix.
//!
//! Region I is spanned by the two `Exterior` modes: its occupation pair
//! `(p, a)` counts outgoing particles (`k`, plus sector) and antiparticles
//! (`-k`, minus sector). Region II is spanned by the two `Interior` modes:
//! there the particle count is the `Interior/Plus` occupation, which lives
//! in the minus-sector factor, and vice versa.

use num_complex::Complex;

use crate::dist::NumberDistribution;
use crate::error::{Error, Result};
use crate::fock::branches::SectorBranches;
use crate::fock::space::ModeKind;
use crate::fock::vector::FockVector;
use crate::scalar::{strict_tol, LinalgReal, Real};

/// Outcomes with probability at or below this are treated as numerically
/// empty: squared working precision, below which a projected block is
/// rounding dust rather than signal.
fn postselection_floor<R: Real>() -> R {
    let t = strict_tol::<R>();
    t * t
}

/// Reduced density matrix of one two-mode region, indexed by the pair
/// `(particle count, antiparticle count)`, each running `0..=n_max`.
#[derive(Debug, Clone)]
pub struct RegionDensity<R: Real> {
    n_max: usize,
    /// Row-major over the flattened pair index `p * (n_max + 1) + a`.
    mat: Vec<Complex<R>>,
    tail_mass: R,
}

/// The normalized region-I state restricted to a fixed total count `M`,
/// written over the particle count `p = 0..=M` (antiparticle count `M - p`).
#[derive(Debug, Clone)]
pub struct CountBlock<R: Real> {
    total: usize,
    mat: Vec<Complex<R>>,
}

impl<R: Real> CountBlock<R> {
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn element(&self, p: usize, p_prime: usize) -> Complex<R> {
        self.mat[p * (self.total + 1) + p_prime]
    }

    pub fn trace(&self) -> Complex<R> {
        let mut acc = Complex::new(R::zero(), R::zero());
        for p in 0..=self.total {
            acc = acc + self.element(p, p);
        }
        acc
    }
}

impl<R: Real> RegionDensity<R> {
    fn zeros(n_max: usize, tail_mass: R) -> Self {
        let d = n_max + 1;
        RegionDensity {
            n_max,
            mat: vec![Complex::new(R::zero(), R::zero()); d * d * d * d],
            tail_mass,
        }
    }

    #[inline]
    fn flat(&self, p: usize, a: usize) -> usize {
        p * (self.n_max + 1) + a
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Dimension of the flattened two-mode space, `(n_max + 1)^2`.
    pub fn dim(&self) -> usize {
        (self.n_max + 1) * (self.n_max + 1)
    }

    pub fn tail_mass(&self) -> R {
        self.tail_mass
    }

    /// Raise the recorded truncation-tail estimate (e.g. to an a-priori
    /// analytic bound when it exceeds the empirical boundary mass).
    pub fn raise_tail_mass(&mut self, tail: R) {
        if tail > self.tail_mass {
            self.tail_mass = tail;
        }
    }

    pub fn element(&self, p: usize, a: usize, p_prime: usize, a_prime: usize) -> Complex<R> {
        self.mat[self.flat(p, a) * self.dim() + self.flat(p_prime, a_prime)]
    }

    fn add_element(&mut self, row: usize, col: usize, val: Complex<R>) {
        let d = self.dim();
        self.mat[row * d + col] = self.mat[row * d + col] + val;
    }

    pub fn trace(&self) -> R {
        let d = self.dim();
        let mut acc = R::zero();
        for i in 0..d {
            acc = acc + self.mat[i * d + i].re;
        }
        acc
    }

    pub fn hermiticity_defect(&self) -> R {
        let d = self.dim();
        let mut worst = R::zero();
        for i in 0..d {
            for j in 0..d {
                let diff = self.mat[i * d + j] - self.mat[j * d + i].conj();
                let n = num_traits::Float::sqrt(diff.norm_sqr());
                if n > worst {
                    worst = n;
                }
            }
        }
        worst
    }

    /// Marginal distribution of the particle count.
    pub fn particle_marginal(&self) -> Result<NumberDistribution<R>> {
        let d1 = self.n_max + 1;
        let mut probs = vec![R::zero(); d1];
        for p in 0..d1 {
            for a in 0..d1 {
                let i = self.flat(p, a);
                probs[p] = probs[p] + self.mat[i * self.dim() + i].re;
            }
        }
        NumberDistribution::new(probs, self.tail_mass)
    }

    /// Marginal distribution of the antiparticle count.
    pub fn antiparticle_marginal(&self) -> Result<NumberDistribution<R>> {
        let d1 = self.n_max + 1;
        let mut probs = vec![R::zero(); d1];
        for p in 0..d1 {
            for a in 0..d1 {
                let i = self.flat(p, a);
                probs[a] = probs[a] + self.mat[i * self.dim() + i].re;
            }
        }
        NumberDistribution::new(probs, self.tail_mass)
    }

    /// Marginal distribution of the total count `p + a`.
    pub fn total_count_distribution(&self) -> Result<NumberDistribution<R>> {
        let d1 = self.n_max + 1;
        let mut probs = vec![R::zero(); 2 * self.n_max + 1];
        for p in 0..d1 {
            for a in 0..d1 {
                let i = self.flat(p, a);
                probs[p + a] = probs[p + a] + self.mat[i * self.dim() + i].re;
            }
        }
        NumberDistribution::new(probs, self.tail_mass)
    }

    /// Project onto total count `m` and renormalize. Returns the normalized
    /// block and the probability of the outcome; refuses outcomes of
    /// (numerically) zero probability.
    pub fn postselect_total(&self, m: usize) -> Result<(CountBlock<R>, R)> {
        let d1 = self.n_max + 1;
        let dim = m + 1;
        let mut block = vec![Complex::new(R::zero(), R::zero()); dim * dim];
        let mut prob = R::zero();
        for p in 0..dim.min(d1) {
            let a = m - p;
            if a >= d1 {
                continue;
            }
            for p2 in 0..dim.min(d1) {
                let a2 = m - p2;
                if a2 >= d1 {
                    continue;
                }
                let v = self.mat[self.flat(p, a) * self.dim() + self.flat(p2, a2)];
                block[p * dim + p2] = v;
                if p == p2 {
                    prob = prob + v.re;
                }
            }
        }
        if prob <= postselection_floor::<R>() {
            return Err(Error::EmptyPostselection {
                probability: num_traits::ToPrimitive::to_f64(&prob).unwrap_or(f64::NAN),
            });
        }
        let inv = Complex::new(R::one() / prob, R::zero());
        for v in &mut block {
            *v = *v * inv;
        }
        Ok((
            CountBlock {
                total: m,
                mat: block,
            },
            prob,
        ))
    }
}

impl<R: LinalgReal> RegionDensity<R> {
    /// Smallest eigenvalue; a clean density matrix is positive semidefinite
    /// up to rounding and truncation error.
    pub fn min_eigenvalue(&self) -> Result<R> {
        let d = self.dim();
        let mut x = nalgebra::DMatrix::<R>::zeros(d, d);
        let mut y = nalgebra::DMatrix::<R>::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                x[(i, j)] = self.mat[i * d + j].re;
                y[(i, j)] = self.mat[i * d + j].im;
            }
        }
        crate::fock::linalg::hermitian_min_eigenvalue(&x, &y)
    }
}

/// Cross-Gram matrix over the `Exterior` occupation of one sector factor:
/// `G[x, x'] = sum_rest v[x, rest] conj(w[x', rest])`.
fn exterior_gram<R: Real>(v: &FockVector<R>, w: &FockVector<R>) -> Vec<Complex<R>> {
    let space = v.space();
    let pos = space
        .kind_position(ModeKind::Exterior)
        .expect("sector space has an exterior mode");
    let stride = space.stride(pos);
    let d1 = space.n_max() + 1;
    let mut g = vec![Complex::new(R::zero(), R::zero()); d1 * d1];
    let va = v.amplitudes();
    let wa = w.amplitudes();
    for base in 0..space.dim() {
        if space.occupation_at(base, pos) != 0 {
            continue;
        }
        for x in 0..d1 {
            let vx = va[base + x * stride];
            if vx.norm_sqr() == R::zero() {
                continue;
            }
            for xp in 0..d1 {
                g[x * d1 + xp] = g[x * d1 + xp] + vx * wa[base + xp * stride].conj();
            }
        }
    }
    g
}

/// Cross-Gram matrices over the `Interior` occupation, resolved on the
/// (diagonal) `Exterior` occupation `y`:
/// `W[y][b, b'] = sum_sig v[y, b, sig] conj(w[y, b', sig])`.
fn interior_gram_by_exterior<R: Real>(
    v: &FockVector<R>,
    w: &FockVector<R>,
) -> Vec<Vec<Complex<R>>> {
    let space = v.space();
    let ext = space
        .kind_position(ModeKind::Exterior)
        .expect("sector space has an exterior mode");
    let int = space
        .kind_position(ModeKind::Interior)
        .expect("sector space has an interior mode");
    let stride = space.stride(int);
    let d1 = space.n_max() + 1;
    let mut out = vec![vec![Complex::new(R::zero(), R::zero()); d1 * d1]; d1];
    let va = v.amplitudes();
    let wa = w.amplitudes();
    for base in 0..space.dim() {
        if space.occupation_at(base, int) != 0 {
            continue;
        }
        let y = space.occupation_at(base, ext);
        let slot = &mut out[y];
        for b in 0..d1 {
            let vb = va[base + b * stride];
            if vb.norm_sqr() == R::zero() {
                continue;
            }
            for bp in 0..d1 {
                slot[b * d1 + bp] = slot[b * d1 + bp] + vb * wa[base + bp * stride].conj();
            }
        }
    }
    out
}

/// Reduced state of region I (the two `Exterior` modes), tracing out the
/// interior and signal modes of both sectors. The recorded tail mass is the
/// boundary mass of the branched state; callers may raise it to an analytic
/// truncation bound.
pub fn region1_reduced_state<R: Real>(branches: &SectorBranches<R>) -> Result<RegionDensity<R>> {
    let n_max = branches.space_plus().n_max();
    if branches.space_minus().n_max() != n_max {
        return Err(Error::domain("sector spaces must share n_max"));
    }
    let d1 = n_max + 1;
    let coeffs = branches.coefficients();
    let nb = coeffs.len();
    let mut rho = RegionDensity::zeros(n_max, branches.boundary_mass());
    for b1 in 0..nb {
        for b2 in 0..nb {
            let weight = coeffs[b1] * coeffs[b2].conj();
            if weight.norm_sqr() == R::zero() {
                continue;
            }
            let g_plus = exterior_gram(&branches.plus_vectors()[b1], &branches.plus_vectors()[b2]);
            let g_minus =
                exterior_gram(&branches.minus_vectors()[b1], &branches.minus_vectors()[b2]);
            for p in 0..d1 {
                for pp in 0..d1 {
                    let gp = g_plus[p * d1 + pp];
                    if gp.norm_sqr() == R::zero() {
                        continue;
                    }
                    let wgp = weight * gp;
                    for a in 0..d1 {
                        for ap in 0..d1 {
                            let val = wgp * g_minus[a * d1 + ap];
                            rho.add_element(p * d1 + a, pp * d1 + ap, val);
                        }
                    }
                }
            }
        }
    }
    Ok(rho)
}

/// Conditional state of region II (the two `Interior` modes) given that
/// region I holds exactly `region1_total` quanta. Returns the normalized
/// conditional density matrix and the probability of the condition.
pub fn region2_conditional_state<R: Real>(
    branches: &SectorBranches<R>,
    region1_total: usize,
) -> Result<(RegionDensity<R>, R)> {
    let n_max = branches.space_plus().n_max();
    if branches.space_minus().n_max() != n_max {
        return Err(Error::domain("sector spaces must share n_max"));
    }
    let d1 = n_max + 1;
    let coeffs = branches.coefficients();
    let nb = coeffs.len();
    let mut rho = RegionDensity::zeros(n_max, branches.boundary_mass());
    for b1 in 0..nb {
        for b2 in 0..nb {
            let weight = coeffs[b1] * coeffs[b2].conj();
            if weight.norm_sqr() == R::zero() {
                continue;
            }
            // Region-II particles are Interior/Plus quanta, which live in the
            // minus-sector factor; antiparticles live in the plus factor.
            let w_plus = interior_gram_by_exterior(
                &branches.plus_vectors()[b1],
                &branches.plus_vectors()[b2],
            );
            let w_minus = interior_gram_by_exterior(
                &branches.minus_vectors()[b1],
                &branches.minus_vectors()[b2],
            );
            for y_plus in 0..d1.min(region1_total + 1) {
                let y_minus = region1_total - y_plus;
                if y_minus >= d1 {
                    continue;
                }
                let wp = &w_plus[y_plus];
                let wm = &w_minus[y_minus];
                for p in 0..d1 {
                    for pp in 0..d1 {
                        let m_entry = wm[p * d1 + pp];
                        if m_entry.norm_sqr() == R::zero() {
                            continue;
                        }
                        let wmp = weight * m_entry;
                        for a in 0..d1 {
                            for ap in 0..d1 {
                                let val = wmp * wp[a * d1 + ap];
                                rho.add_element(p * d1 + a, pp * d1 + ap, val);
                            }
                        }
                    }
                }
            }
        }
    }
    let prob = rho.trace();
    if prob <= postselection_floor::<R>() {
        return Err(Error::EmptyPostselection {
            probability: num_traits::ToPrimitive::to_f64(&prob).unwrap_or(f64::NAN),
        });
    }
    let inv = Complex::new(R::one() / prob, R::zero());
    for v in &mut rho.mat {
        *v = *v * inv;
    }
    Ok((rho, prob))
}
