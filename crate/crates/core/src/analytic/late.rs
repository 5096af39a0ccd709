//! Late-time occupation distributions and the `1 -> M` fidelity.
//!
//! With `q = beta^2/(1 + beta^2)` the region-I occupation distribution is
//!
//! ```text
//! p(m|1) = [alpha^2/(1+beta^2)^2] q^m (1 + m xi)      (particle sent in)
//! p(m|0) = [1/(1+beta^2)]        q^m                  (vacuum / spectator)
//! ```
//!
//! and post-selecting `M` total quanta across the particle/antiparticle pair
//! of modes gives the closed-form clone fidelity
//!
//! ```text
//! F(M) = (3 + xi + 2 xi M) / (3 (2 + xi M)),
//! ```
//!
//! which interpolates between `2/3` (full absorption, `xi = 1`) and the
//! best-possible `2/3 + 1/(3M)` (strong reflection, `xi -> inf`). All
//! routines work in `1/xi` or logarithms so that strongly reflecting
//! channels never overflow.

use crate::bogoliubov::BlackHoleParams;
use crate::dist::NumberDistribution;
use crate::error::{Error, Result};
use crate::report::CloneReport;
use crate::scalar::{r, strict_tol, Real};

fn thermal_q<R: Real>(params: &BlackHoleParams<R>) -> R {
    params.beta2 / (R::one() + params.beta2)
}

/// `ln(e^a + e^b)` without overflow.
fn log_add_exp<R: Real>(a: R, b: R) -> R {
    if a == R::neg_infinity() {
        return b;
    }
    if b == R::neg_infinity() {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Region-I number distribution for a single incoming particle, truncated at
/// `m_max` with the analytic geometric remainder recorded as the tail.
pub fn late_time_particle_distribution<R: Real>(
    params: &BlackHoleParams<R>,
    m_max: usize,
    tail_tol: Option<R>,
) -> Result<NumberDistribution<R>> {
    let q = thermal_q(params);
    let one_plus = R::one() + params.beta2;
    let mut probs = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        // p(m|1) split as stimulated + spontaneous-noise parts; the second
        // form avoids ever dividing by beta^2.
        let t1 = params.alpha2 * q.powi(m as i32) / (one_plus * one_plus);
        let t2 = if m == 0 {
            R::zero()
        } else {
            params.gamma2 * r::<R>(m as f64) * q.powi(m as i32 - 1) / (one_plus * one_plus * one_plus)
        };
        probs.push(t1 + t2);
    }
    let tail = particle_tail(params, m_max);
    if let Some(tol) = tail_tol {
        if tail > tol {
            return Err(Error::Truncation {
                context: format!("particle distribution at m_max = {m_max}"),
                tail: tail.to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    NumberDistribution::new(probs, tail)
}

/// Analytic remainder `sum_{m > n} p(m|1)`.
fn particle_tail<R: Real>(params: &BlackHoleParams<R>, n: usize) -> R {
    let q = thermal_q(params);
    let one_plus = R::one() + params.beta2;
    let nf = r::<R>(n as f64);
    let t1 = params.alpha2 * q.powi(n as i32 + 1) / one_plus;
    let t2 = params.gamma2 * q.powi(n as i32) * ((nf + R::one()) - nf * q) / one_plus;
    t1 + t2
}

/// Region-I number distribution of the spectator (thermal) mode.
pub fn late_time_antiparticle_distribution<R: Real>(
    params: &BlackHoleParams<R>,
    m_max: usize,
    tail_tol: Option<R>,
) -> Result<NumberDistribution<R>> {
    let q = thermal_q(params);
    let one_plus = R::one() + params.beta2;
    let probs = (0..=m_max)
        .map(|m| q.powi(m as i32) / one_plus)
        .collect::<Vec<_>>();
    let tail = q.powi(m_max as i32 + 1);
    if let Some(tol) = tail_tol {
        if tail > tol {
            return Err(Error::Truncation {
                context: format!("thermal distribution at m_max = {m_max}"),
                tail: tail.to_f64().unwrap_or(f64::NAN),
                tol: tol.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    NumberDistribution::new(probs, tail)
}

/// `ln p(m|1)`, stable across the whole parameter range (including
/// `beta^2 = 0`, where the distribution collapses onto `m <= 1`).
pub fn late_time_ln_prob_particle<R: Real>(params: &BlackHoleParams<R>, m: usize) -> R {
    let q = thermal_q(params);
    let ln_q = q.ln();
    let ln_one_plus = params.beta2.ln_1p();
    let two = r::<R>(2.0);
    let three = r::<R>(3.0);
    let ln_t1 = if m == 0 {
        params.alpha2.ln() - two * ln_one_plus
    } else {
        params.alpha2.ln() + r::<R>(m as f64) * ln_q - two * ln_one_plus
    };
    let ln_t2 = match m {
        0 => R::neg_infinity(),
        1 => params.gamma2.ln() - three * ln_one_plus,
        _ => {
            params.gamma2.ln() + r::<R>(m as f64).ln() + r::<R>((m - 1) as f64) * ln_q
                - three * ln_one_plus
        }
    };
    log_add_exp(ln_t1, ln_t2)
}

/// `ln p(m|0)`.
pub fn late_time_ln_prob_antiparticle<R: Real>(params: &BlackHoleParams<R>, m: usize) -> R {
    let q = thermal_q(params);
    let ln_one_plus = params.beta2.ln_1p();
    if m == 0 {
        -ln_one_plus
    } else {
        r::<R>(m as f64) * q.ln() - ln_one_plus
    }
}

/// Closed-form `1 -> M` fidelity, evaluated through `1/xi` so that strongly
/// reflecting channels (`xi` astronomically large) stay finite.
pub fn late_time_fidelity_closed_form<R: Real>(params: &BlackHoleParams<R>, m: usize) -> Result<R> {
    if m == 0 {
        return Err(Error::domain("M must be at least 1"));
    }
    let zeta = params.inv_xi();
    let mf = r::<R>(m as f64);
    let three = r::<R>(3.0);
    let two = r::<R>(2.0);
    Ok((three * zeta + R::one() + two * mf) / (three * (two * zeta + mf)))
}

/// Explicit post-selection route: weights `(M-j)/M` over the products
/// `p(M-j|1) p(j|0)`, summed in log space. Returns `(fidelity, probability)`.
pub fn late_time_fidelity_postselect_sum<R: Real>(
    params: &BlackHoleParams<R>,
    m: usize,
) -> Result<(R, R)> {
    if m == 0 {
        return Err(Error::domain("M must be at least 1"));
    }
    let q = thermal_q(params);
    if q == R::zero() {
        // Perfect reflector: the scattered quantum is the only thing region I
        // can receive, so M = 1 happens with certainty and M >= 2 never.
        if m == 1 {
            return Ok((R::one(), R::one()));
        }
        return Err(Error::EmptyPostselection { probability: 0.0 });
    }
    // Joint term for k particles and M - k antiparticles:
    // p(k|1) p(M-k|0) = q^M (1-q) * s(k), with the common factor q^M pulled
    // out so the ratio below involves no large powers at all:
    // s(k) = alpha^2/(1+beta^2)^2 + gamma^2 k / (q (1+beta^2)^3).
    let one_plus = R::one() + params.beta2;
    let a = params.alpha2 / (one_plus * one_plus);
    let b = params.gamma2 / (q * one_plus * one_plus * one_plus);
    let mut den = R::zero();
    let mut num = R::zero();
    for k in 0..=m {
        let s = a + b * r::<R>(k as f64);
        den = den + s;
        num = num + s * r::<R>(k as f64);
    }
    let fidelity = num / (den * r::<R>(m as f64));
    // The outcome probability does need the q^M factor; assemble it in log
    // space and let it underflow to zero gracefully when negligible.
    let ln_prob = r::<R>(m as f64) * q.ln() + (R::one() - q).ln() + den.ln();
    Ok((fidelity, ln_prob.exp()))
}

/// Late-time `1 -> M` report: closed form cross-checked against the explicit
/// post-selection sum, with the post-selection probability attached.
pub fn late_time_fidelity_1m<R: Real>(
    params: &BlackHoleParams<R>,
    m: usize,
) -> Result<CloneReport<R>> {
    let closed = late_time_fidelity_closed_form(params, m)?;
    match late_time_fidelity_postselect_sum(params, m) {
        Ok((sum, prob)) => {
            if (closed - sum).abs() > strict_tol::<R>() {
                return Err(Error::numerical(format!(
                    "late-time fidelity closed form {closed} disagrees with post-selection sum {sum}"
                )));
            }
            let mut report = CloneReport::analytic(1, m, closed);
            report.postselect_probability = Some(prob);
            Ok(report)
        }
        // A perfectly reflecting channel cannot populate M > 1; the closed
        // form still carries the conditional limit value.
        Err(Error::EmptyPostselection { .. }) => {
            let mut report = CloneReport::analytic(1, m, closed);
            report.postselect_probability = Some(R::zero());
            Ok(report)
        }
        Err(e) => Err(e),
    }
}
