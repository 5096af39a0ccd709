//! Early-time (pure two-mode squeezing) cloning results.
//!
//! Sending `N` particles across a freshly formed horizon and post-selecting
//! `M` quanta outside leaves the outside/inside pair in
//!
//! ```text
//! |M>  ~  sum_j sqrt(C(M-j, N)) |M-j, j>_out |j, M-N-j>_in ,  j = 0..M-N,
//! ```
//!
//! which reproduces the optimal universal-cloning fidelity
//! `F = (M(N+1) + N) / (M(N+2))` exactly, with the `M - N` inside quanta
//! forming anticlones of fidelity `(N+1)/(N+2)`. The antiparticle-input
//! variant weights region-I occupations by `C(j+N, N)` instead.

use crate::error::{Error, Result};
use crate::report::CloneReport;
use crate::scalar::{strict_tol, Num, Real};

/// Which logical basis state fed the channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Particle,
    Antiparticle,
}

/// Post-selected amplitude vector for a basis-state input.
#[derive(Debug, Clone, PartialEq)]
pub struct PostselectedAmplitudes<R: Real> {
    pub n: usize,
    pub m: usize,
    pub kind: InputKind,
    /// Non-negative, unit-norm amplitudes, indexed by `j` (see module docs).
    pub amplitudes: Vec<R>,
}

impl<R: Real> PostselectedAmplitudes<R> {
    /// Squared amplitudes.
    pub fn probabilities(&self) -> Vec<R> {
        self.amplitudes.iter().map(|a| *a * *a).collect()
    }

    pub fn norm_defect(&self) -> R {
        (self.probabilities().into_iter().sum::<R>() - R::one()).abs()
    }
}

fn check_nm(_n: usize, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::domain("M must be at least 1"));
    }
    Ok(())
}

fn check_particle_nm(n: usize, m: usize) -> Result<()> {
    check_nm(n, m)?;
    if m < n {
        return Err(Error::domain(format!(
            "particle input needs M >= N (region I never holds fewer than the N injected quanta), got N = {n}, M = {m}"
        )));
    }
    Ok(())
}

fn from_usize<T: Num>(k: usize) -> T {
    T::from_usize(k).expect("count representable in scalar")
}

/// Optimal universal `N -> M` cloning fidelity `(M(N+1) + N) / (M(N+2))`.
pub fn optimal_fidelity<T: Num>(n: usize, m: usize) -> Result<T> {
    check_particle_nm(n, m)?;
    let (nt, mt): (T, T) = (from_usize(n), from_usize(m));
    let num = mt.clone() * (nt.clone() + T::one()) + nt.clone();
    let den = mt * (nt + T::one() + T::one());
    Ok(num / den)
}

/// Fidelity of each anticlone (and of classical N-copy estimation):
/// `(N+1)/(N+2)`.
pub fn anticlone_fidelity<T: Num>(n: usize) -> Result<T> {
    let nt: T = from_usize(n);
    Ok((nt.clone() + T::one()) / (nt + T::one() + T::one()))
}

/// Best fidelity achievable by measuring `N` copies and repreparing:
/// `(N+1)/(N+2)`, the `M -> infinity` limit of [`optimal_fidelity`].
pub fn classical_limit_fidelity<T: Num>(n: usize) -> Result<T> {
    anticlone_fidelity(n)
}

/// Normalized region-I weights `C(M-j, N) / sum_j C(M-j, N)` for a particle
/// input, indexed by `j = 0..=M-N` (`j` = antiparticle count outside).
///
/// Computed by downward ratios from `j = 0`, so nothing ever overflows.
pub fn early_time_postselected_weights<T: Num>(n: usize, m: usize) -> Result<Vec<T>> {
    check_particle_nm(n, m)?;
    let mut w = Vec::with_capacity(m - n + 1);
    let mut cur = T::one();
    for j in 0..=(m - n) {
        w.push(cur.clone());
        if j < m - n {
            // C(M-j-1, N) / C(M-j, N) = (M-j-N) / (M-j)
            cur = cur * from_usize::<T>(m - j - n) / from_usize::<T>(m - j);
        }
    }
    let total = w.iter().cloned().fold(T::zero(), |a, b| a + b);
    Ok(w.into_iter().map(|x| x / total.clone()).collect())
}

/// Post-selected outside/inside amplitudes `sqrt(C(M-j, N))`, normalized.
pub fn early_time_postselected_state<R: Real>(
    n: usize,
    m: usize,
) -> Result<PostselectedAmplitudes<R>> {
    let weights = early_time_postselected_weights::<R>(n, m)?;
    Ok(PostselectedAmplitudes {
        n,
        m,
        kind: InputKind::Particle,
        amplitudes: weights.into_iter().map(|w| w.sqrt()).collect(),
    })
}

/// Explicit clone-fidelity sum `sum_j ((M-j)/M) C(M-j, N) / sum_j C(M-j, N)`.
/// Equal to [`optimal_fidelity`] (an exact combinatorial identity).
pub fn early_time_clone_fidelity_value<T: Num>(n: usize, m: usize) -> Result<T> {
    let weights = early_time_postselected_weights::<T>(n, m)?;
    let mt: T = from_usize(m);
    Ok(weights
        .into_iter()
        .enumerate()
        .map(|(j, w)| w * from_usize::<T>(m - j) / mt.clone())
        .fold(T::zero(), |a, b| a + b))
}

/// Region-II anticlone fidelity sum
/// `sum_j ((M-N-j)/(M-N)) C(M-j, N) / sum_j C(M-j, N)`; requires `M > N`.
/// Equal to `(N+1)/(N+2)` (exact identity).
pub fn early_time_anticlone_value<T: Num>(n: usize, m: usize) -> Result<T> {
    if m <= n {
        return Err(Error::domain(
            "anticlones exist only for M > N in the early-time channel",
        ));
    }
    let weights = early_time_postselected_weights::<T>(n, m)?;
    let span: T = from_usize(m - n);
    Ok(weights
        .into_iter()
        .enumerate()
        .map(|(j, w)| w * from_usize::<T>(m - n - j) / span.clone())
        .fold(T::zero(), |a, b| a + b))
}

/// Full early-time `N -> M` report, with a self-consistency gate comparing
/// the explicit sum against the closed form.
pub fn early_time_clone_fidelity<R: Real>(n: usize, m: usize) -> Result<CloneReport<R>> {
    let sum: R = early_time_clone_fidelity_value(n, m)?;
    let closed: R = optimal_fidelity(n, m)?;
    if (sum - closed).abs() > strict_tol::<R>() {
        return Err(Error::numerical(format!(
            "early-time fidelity sum {sum} disagrees with closed form {closed}"
        )));
    }
    let mut report = CloneReport::analytic(n, m, closed);
    if m > n {
        report.anticlone_fidelity = Some(anticlone_fidelity(n)?);
    }
    Ok(report)
}

/// Probability that exactly `M` quanta appear in region I at early times for
/// an `N`-particle input: `(1-q)^{N+2} q^{M-N} C(M+1, N+1)`, `q = e^{-x}`.
pub fn early_time_postselect_probability<R: Real>(
    omega_over_t: R,
    n: usize,
    m: usize,
) -> Result<R> {
    check_particle_nm(n, m)?;
    if !(omega_over_t > R::zero()) {
        return Err(Error::NonPositiveFrequencyRatio(
            omega_over_t.to_f64().unwrap_or(f64::NAN),
        ));
    }
    let q = (-omega_over_t).exp();
    let binom: R = binomial(m + 1, n + 1);
    Ok((R::one() - q).powi(n as i32 + 2) * q.powi((m - n) as i32) * binom)
}

/// Region-I occupation weights `C(j+N, N) / C(M+N+1, N+1)` for an
/// antiparticle input, indexed by `j = 0..=M` (`j` = particle count outside).
pub fn antiparticle_input_weights<T: Num>(n: usize, m: usize) -> Result<Vec<T>> {
    check_nm(n, m)?;
    let mut w = Vec::with_capacity(m + 1);
    let mut cur = T::one();
    for j in 0..=m {
        w.push(cur.clone());
        // C(j+1+N, N) / C(j+N, N) = (j+1+N) / (j+1)
        cur = cur * from_usize::<T>(j + 1 + n) / from_usize::<T>(j + 1);
    }
    let total = w.iter().cloned().fold(T::zero(), |a, b| a + b);
    Ok(w.into_iter().map(|x| x / total.clone()).collect())
}

/// Region-I number distribution for an `N`-antiparticle input, post-selected
/// on `M` quanta outside.
pub fn antiparticle_input_distribution<R: Real>(
    n: usize,
    m: usize,
) -> Result<crate::dist::NumberDistribution<R>> {
    crate::dist::NumberDistribution::new(antiparticle_input_weights(n, m)?, R::zero())
}

/// Post-selected amplitudes `sqrt(C(j+N, N))`, normalized.
pub fn antiparticle_input_postselected_state<R: Real>(
    n: usize,
    m: usize,
) -> Result<PostselectedAmplitudes<R>> {
    let weights = antiparticle_input_weights::<R>(n, m)?;
    Ok(PostselectedAmplitudes {
        n,
        m,
        kind: InputKind::Antiparticle,
        amplitudes: weights.into_iter().map(|w| w.sqrt()).collect(),
    })
}

/// Fidelity of the region-I quanta as clones of the *particle* state after an
/// `N`-antiparticle input: `sum_j (j/M) p(j)`. Equal to `(N+1)/(N+2)` for
/// every `M` (exact identity) — the outside quanta are anticlones of the
/// input, i.e. classical clones of its orthogonal complement.
pub fn antiparticle_input_clone_fidelity_value<T: Num>(n: usize, m: usize) -> Result<T> {
    let weights = antiparticle_input_weights::<T>(n, m)?;
    let mt: T = from_usize(m);
    Ok(weights
        .into_iter()
        .enumerate()
        .map(|(j, w)| w * from_usize::<T>(j) / mt.clone())
        .fold(T::zero(), |a, b| a + b))
}

/// Report form of [`antiparticle_input_clone_fidelity_value`], gated against
/// the `(N+1)/(N+2)` closed form.
pub fn antiparticle_input_clone_fidelity<R: Real>(n: usize, m: usize) -> Result<CloneReport<R>> {
    let sum: R = antiparticle_input_clone_fidelity_value(n, m)?;
    let closed: R = anticlone_fidelity(n)?;
    if (sum - closed).abs() > strict_tol::<R>() {
        return Err(Error::numerical(format!(
            "antiparticle-input fidelity sum {sum} disagrees with closed form {closed}"
        )));
    }
    Ok(CloneReport::analytic(n, m, closed))
}

/// Probability of `M` region-I quanta for an `N`-antiparticle input:
/// `(1-q)^{N+2} q^M C(M+N+1, N+1)`.
pub fn antiparticle_input_postselect_probability<R: Real>(
    omega_over_t: R,
    n: usize,
    m: usize,
) -> Result<R> {
    check_nm(n, m)?;
    if !(omega_over_t > R::zero()) {
        return Err(Error::NonPositiveFrequencyRatio(
            omega_over_t.to_f64().unwrap_or(f64::NAN),
        ));
    }
    let q = (-omega_over_t).exp();
    let binom: R = binomial(m + n + 1, n + 1);
    Ok((R::one() - q).powi(n as i32 + 2) * q.powi(m as i32) * binom)
}

/// Binomial coefficient via the multiplicative recurrence.
fn binomial<T: Num>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 1..=k {
        acc = acc * from_usize::<T>(n - k + i) / from_usize::<T>(i);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn ratio(num: i64, den: i64) -> BigRational {
        BigRational::new(num.into(), den.into())
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial::<f64>(5, 2), 10.0);
        assert_eq!(binomial::<f64>(6, 3), 20.0);
        assert_eq!(binomial::<f64>(4, 0), 1.0);
        assert_eq!(binomial::<f64>(3, 5), 0.0);
        assert_eq!(binomial::<BigRational>(10, 5), ratio(252, 1));
    }

    #[test]
    fn optimal_fidelity_frozen_values() {
        // Enumerated by hand from the closed form.
        assert_eq!(optimal_fidelity::<BigRational>(1, 1).unwrap(), ratio(1, 1));
        assert_eq!(optimal_fidelity::<BigRational>(1, 2).unwrap(), ratio(5, 6));
        assert_eq!(optimal_fidelity::<BigRational>(1, 5).unwrap(), ratio(11, 15));
        assert_eq!(optimal_fidelity::<BigRational>(2, 4).unwrap(), ratio(7, 8));
        assert!((optimal_fidelity::<f64>(1, 5).unwrap() - 11.0 / 15.0).abs() < 1e-15);
        assert!(optimal_fidelity::<f64>(3, 2).is_err());
        assert!(optimal_fidelity::<f64>(1, 0).is_err());
    }

    #[test]
    fn anticlone_fidelity_values() {
        assert_eq!(anticlone_fidelity::<BigRational>(1).unwrap(), ratio(2, 3));
        assert_eq!(anticlone_fidelity::<BigRational>(2).unwrap(), ratio(3, 4));
        assert_eq!(
            classical_limit_fidelity::<BigRational>(5).unwrap(),
            ratio(6, 7)
        );
    }

    #[test]
    fn postselected_state_1_to_2() {
        // Amplitudes proportional to (sqrt 2, 1), normalized by sqrt 3.
        let s = early_time_postselected_state::<f64>(1, 2).unwrap();
        assert_eq!(s.amplitudes.len(), 2);
        assert!((s.amplitudes[0] - (2f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((s.amplitudes[1] - (1f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!(s.norm_defect() < 1e-14);
    }

    #[test]
    fn postselected_state_vacuum_input() {
        // N = 0, M = 1: both amplitudes equal — the spontaneous pair carries
        // no information about particle vs antiparticle.
        let s = early_time_postselected_state::<f64>(0, 1).unwrap();
        assert_eq!(s.amplitudes.len(), 2);
        assert!((s.amplitudes[0] - s.amplitudes[1]).abs() < 1e-15);
        assert!((s.amplitudes[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn clone_fidelity_sum_equals_closed_form_exactly() {
        for n in 0..=12usize {
            for m in n.max(1)..=12 {
                let sum = early_time_clone_fidelity_value::<BigRational>(n, m).unwrap();
                let closed = if n == 0 {
                    ratio(1, 2)
                } else {
                    optimal_fidelity::<BigRational>(n, m).unwrap()
                };
                assert_eq!(sum, closed, "mismatch at N = {n}, M = {m}");
            }
        }
    }

    #[test]
    fn anticlone_sum_equals_closed_form_exactly() {
        for n in 1..=10usize {
            for m in (n + 1)..=12 {
                let sum = early_time_anticlone_value::<BigRational>(n, m).unwrap();
                assert_eq!(
                    sum,
                    anticlone_fidelity::<BigRational>(n).unwrap(),
                    "mismatch at N = {n}, M = {m}"
                );
            }
        }
        assert!(early_time_anticlone_value::<f64>(2, 2).is_err());
    }

    #[test]
    fn report_includes_anticlone_only_when_present() {
        let full = early_time_clone_fidelity::<f64>(1, 3).unwrap();
        assert_eq!(full.anticlone_fidelity, Some(2.0 / 3.0));
        let saturated = early_time_clone_fidelity::<f64>(2, 2).unwrap();
        assert_eq!(saturated.anticlone_fidelity, None);
        assert_eq!(saturated.fidelity, 1.0);
    }

    #[test]
    fn antiparticle_weights_frozen_values() {
        // N = 1: weights C(j+1, 1) = 1, 2, ..., M+1.
        let w = antiparticle_input_weights::<BigRational>(1, 1).unwrap();
        assert_eq!(w, vec![ratio(1, 3), ratio(2, 3)]);
        let w = antiparticle_input_weights::<BigRational>(1, 2).unwrap();
        assert_eq!(w, vec![ratio(1, 6), ratio(2, 6), ratio(3, 6)]);
        // N = 0: uniform.
        let w = antiparticle_input_weights::<f64>(0, 3).unwrap();
        assert!(w.iter().all(|&x| (x - 0.25).abs() < 1e-15));
    }

    #[test]
    fn antiparticle_weights_denominator_is_hockey_stick() {
        // sum_j C(j+N, N) = C(M+N+1, N+1): unnormalized total check.
        for n in 0..=8usize {
            for m in 1..=12 {
                let w0 = antiparticle_input_weights::<BigRational>(n, m).unwrap()[0].clone();
                let expect = BigRational::new(1.into(), 1.into())
                    / binomial::<BigRational>(m + n + 1, n + 1);
                assert_eq!(w0, expect, "w_0 = 1/C(M+N+1, N+1) at N = {n}, M = {m}");
            }
        }
    }

    #[test]
    fn antiparticle_clone_fidelity_identity_exact() {
        for n in 0..=8usize {
            for m in 1..=12 {
                let sum = antiparticle_input_clone_fidelity_value::<BigRational>(n, m).unwrap();
                assert_eq!(
                    sum,
                    anticlone_fidelity::<BigRational>(n).unwrap(),
                    "mismatch at N = {n}, M = {m}"
                );
            }
        }
    }

    #[test]
    fn postselect_probabilities_normalize() {
        // Summing over M recovers 1 for both input kinds.
        let x = 1.3f64;
        let total: f64 = (1..=400)
            .map(|m| early_time_postselect_probability(x, 1, m).unwrap())
            .sum();
        assert!((total - 1.0).abs() < 1e-12, "particle total {total}");
        let m0 = (1.0 - x.exp().recip()).powi(3); // M = 0 term: (1-q)^{N+2} C(N+1, N+1)
        let total: f64 = (1..=400)
            .map(|m| antiparticle_input_postselect_probability(x, 1, m).unwrap())
            .sum::<f64>()
            + m0;
        assert!((total - 1.0).abs() < 1e-12, "antiparticle total {total}");
    }

    #[test]
    fn postselect_probability_tiny_thermal_bath() {
        // For omega/T large the channel is almost quiet: P(M = N) -> 1.
        let p = early_time_postselect_probability(30.0f64, 2, 2).unwrap();
        assert!((p - 1.0).abs() < 1e-11);
        let p_extra = early_time_postselect_probability(30.0f64, 2, 3).unwrap();
        assert!(p_extra < 1e-11);
    }
}
