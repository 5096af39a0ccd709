//! Shared helpers for the integration suites: an independent dense matrix
//! exponential (scaling-and-squaring Taylor, no eigendecomposition anywhere)
//! and seeded randomness.

#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use horizon_core::fock::{FockSpace, FockVector};
use num_complex::Complex;

/// Dense `e^A` by scaling-and-squaring with a plain Taylor series. Deliberately
/// shares no code path with the library's spectral exponential.
pub fn expm_series(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    // 1-norm (max absolute column sum) controls the Taylor remainder.
    let norm = (0..n)
        .map(|j| (0..n).map(|i| a[(i, j)].abs()).sum::<f64>())
        .fold(0.0f64, f64::max);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a / 2f64.powi(squarings as i32);
    let mut result = DMatrix::<f64>::identity(n, n);
    let mut term = DMatrix::<f64>::identity(n, n);
    for k in 1..=40 {
        term = (&term * &scaled) / (k as f64);
        result += &term;
        let term_norm = term.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if term_norm < 1e-300 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random normalized state with complex amplitudes on every basis vector.
pub fn random_state(space: &FockSpace, rng: &mut ChaCha8Rng) -> FockVector<f64> {
    let amps = (0..space.dim())
        .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect::<Vec<_>>();
    let mut v = FockVector::from_amplitudes(space.clone(), amps).unwrap();
    let norm = v.norm();
    v.scale(Complex::new(1.0 / norm, 0.0));
    v
}

/// Per-charge probability mass of a state, as a sorted list.
pub fn charge_mass_profile(v: &FockVector<f64>) -> Vec<(i64, f64)> {
    let mut acc = std::collections::BTreeMap::<i64, f64>::new();
    for (idx, amp) in v.amplitudes().iter().enumerate() {
        *acc.entry(v.space().charge_of(idx)).or_insert(0.0) += amp.norm_sqr();
    }
    acc.into_iter().collect()
}
