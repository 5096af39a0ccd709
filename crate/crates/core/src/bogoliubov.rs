//! Mode-mixing coefficients of the horizon channel.
//!
//! Two regimes are covered. At early times the horizon acts as a pure
//! two-mode squeezer: an outside mode `a` pairs with an inside mode `b`,
//! with `alpha^2 = 1/(1 - exp(-omega/T))` and `beta^2 = 1/(exp(omega/T) - 1)`
//! at Hawking temperature `T`. At late times a third, incoming signal mode
//! `c` couples in, and the channel is described by the absorption parameter
//! `Gamma0` together with `omega/T`:
//!
//! ```text
//! alpha^2 = Gamma0              (stimulated amplification)
//! beta^2  = Gamma0 e^{-omega/T} (spontaneous pair production)
//! gamma^2 = 1 - Gamma           (reflection), Gamma = Gamma0 (1 - e^{-omega/T})
//! ```
//!
//! satisfying `alpha^2 - beta^2 + gamma^2 = 1` and the detailed-balance ratio
//! `beta^2/alpha^2 = e^{-omega/T}`. The noise-to-signal ratio
//! `xi = gamma^2/(alpha^2 beta^2)` controls every late-time fidelity and is
//! kept as a logarithm because it spans hundreds of orders of magnitude.

use crate::error::{Error, Result};
use crate::scalar::{r, strict_tol, Real};

/// Early-time (free-field) squeezing parameters for one field mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EarlyTimeParams<R: Real> {
    pub omega_over_t: R,
    /// `cosh^2 g = 1/(1 - e^{-omega/T})`
    pub alpha2: R,
    /// `sinh^2 g = 1/(e^{omega/T} - 1)`
    pub beta2: R,
    /// Squeezing gain `g = arcosh(alpha)`.
    pub squeeze_gain: R,
}

/// Late-time channel coefficients for one field mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlackHoleParams<R: Real> {
    pub gamma0: R,
    pub omega_over_t: R,
    pub alpha2: R,
    pub beta2: R,
    pub gamma2: R,
    /// Classical absorption probability `Gamma = Gamma0 (1 - e^{-omega/T})`.
    pub big_gamma: R,
    /// `ln xi` with `xi = gamma^2/(alpha^2 beta^2) >= 1` (`+inf` at `Gamma0 = 0`).
    pub ln_xi: R,
}

/// Squeezer/beamsplitter gains realizing a given late-time channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingConstants<R: Real> {
    /// Pair-production gain `g` (couples `a` with `b`).
    pub g: R,
    /// Exchange gain `g'` (couples `a` with `c`); `g' >= g`.
    pub g_prime: R,
}

fn check_frequency_ratio<R: Real>(omega_over_t: R) -> Result<()> {
    if !(omega_over_t > R::zero()) || !omega_over_t.is_finite() {
        return Err(Error::NonPositiveFrequencyRatio(
            omega_over_t.to_f64().unwrap_or(f64::NAN),
        ));
    }
    Ok(())
}

/// Free-field squeezing coefficients at frequency-to-temperature ratio `omega/T`.
pub fn early_time_coeffs<R: Real>(omega_over_t: R) -> Result<EarlyTimeParams<R>> {
    check_frequency_ratio(omega_over_t)?;
    // 1 - e^{-x} via expm1 keeps precision for small x.
    let one_minus_em = -(-omega_over_t).exp_m1();
    let alpha2 = one_minus_em.recip();
    let beta2 = alpha2 - R::one(); // exactly alpha^2 - beta^2 = 1
    let squeeze_gain = alpha2.sqrt().acosh();
    Ok(EarlyTimeParams {
        omega_over_t,
        alpha2,
        beta2,
        squeeze_gain,
    })
}

/// Late-time channel coefficients from `(Gamma0, omega/T)`.
///
/// `Gamma0 = 0` (perfect reflector) is accepted here — the coefficients and
/// `ln xi = +inf` are well defined — but has no coupling realization.
pub fn late_time_coeffs<R: Real>(gamma0: R, omega_over_t: R) -> Result<BlackHoleParams<R>> {
    check_frequency_ratio(omega_over_t)?;
    if !(gamma0 >= R::zero() && gamma0 <= R::one()) {
        return Err(Error::domain(format!(
            "Gamma0 must lie in [0, 1], got {gamma0}"
        )));
    }
    let em = (-omega_over_t).exp();
    let alpha2 = gamma0;
    let beta2 = gamma0 * em;
    let big_gamma = gamma0 * -(-omega_over_t).exp_m1();
    // As a sum of non-negative terms this form never cancels, unlike 1 - Gamma.
    let gamma2 = (R::one() - gamma0) + beta2;
    let ln_xi = if gamma0 == R::zero() {
        R::infinity()
    } else if gamma0 == R::one() {
        // gamma^2 = beta^2 exactly, so xi = 1/alpha^2 = 1.
        R::zero()
    } else {
        // ln xi = ln gamma^2 - ln alpha^2 - ln beta^2, with
        // ln beta^2 = ln Gamma0 - x.
        gamma2.ln() - gamma0.ln() - (gamma0.ln() - omega_over_t)
    };
    Ok(BlackHoleParams {
        gamma0,
        omega_over_t,
        alpha2,
        beta2,
        gamma2,
        big_gamma,
        ln_xi,
    })
}

impl<R: Real> BlackHoleParams<R> {
    /// `xi` in linear scale; may overflow to `+inf` for strongly reflecting
    /// channels, which every consumer in this crate tolerates.
    pub fn xi(&self) -> R {
        self.ln_xi.exp()
    }

    /// `1/xi`, always finite since `xi >= 1`.
    pub fn inv_xi(&self) -> R {
        (-self.ln_xi).exp()
    }

    /// Largest violation among the algebraic constraints tying the
    /// coefficients together; used by tests and `validate`.
    pub fn constraint_defect(&self) -> R {
        let unitarity = (self.alpha2 - self.beta2 + self.gamma2 - R::one()).abs();
        let balance = if self.gamma0 == R::zero() {
            R::zero()
        } else {
            (self.beta2 / self.alpha2 - (-self.omega_over_t).exp()).abs()
        };
        let absorption = (self.gamma0 - self.big_gamma - self.beta2).abs();
        unitarity.max(balance).max(absorption)
    }
}

/// Inverts `(Gamma0, omega/T)` into squeezer/beamsplitter gains `(g, g')`.
///
/// Uses `theta = arccos(sqrt(Gamma0))`, `r = beta^2/gamma^2`,
/// `g' = theta/sqrt(1 - r)`, `g = sqrt(r) g'`; the fully absorbing limit
/// `Gamma0 = 1` degenerates to `g = g' = e^{-omega/(2T)}`. `Gamma0 = 0` has
/// no realization (the exchange gain would need to vanish while the pair
/// gain stays finite) and is refused.
pub fn couplings_from_params<R: Real>(params: &BlackHoleParams<R>) -> Result<CouplingConstants<R>> {
    let g0 = params.gamma0;
    if g0 == R::zero() {
        return Err(Error::domain(
            "Gamma0 = 0 (perfect reflector) has no coupling realization; use the analytic route",
        ));
    }
    if g0 == R::one() {
        let g = (-params.omega_over_t / r::<R>(2.0)).exp();
        return Ok(CouplingConstants { g, g_prime: g });
    }
    let theta = g0.sqrt().acos();
    let ratio = params.beta2 / params.gamma2; // (g/g')^2
    let g_prime = theta / (R::one() - ratio).sqrt();
    let g = ratio.sqrt() * g_prime;
    Ok(CouplingConstants { g, g_prime })
}

/// Forward map from gains to channel coefficients (primarily a test oracle
/// for [`couplings_from_params`], but useful on its own).
pub fn params_from_couplings<R: Real>(
    couplings: &CouplingConstants<R>,
    omega_over_t: R,
) -> Result<BlackHoleParams<R>> {
    check_frequency_ratio(omega_over_t)?;
    let (g, gp) = (couplings.g, couplings.g_prime);
    if !(g >= R::zero()) || !(gp > R::zero()) || g > gp {
        return Err(Error::domain("couplings must satisfy 0 <= g <= g', g' > 0"));
    }
    let w2 = R::one() - (g / gp).powi(2);
    let u = (gp.powi(2) - g.powi(2)).sqrt();
    let (alpha2, beta2, gamma2) = if w2 == R::zero() {
        // Degenerate beamsplitter-free limit: sin(u)/w -> g'.
        (R::one(), gp.powi(2), gp.powi(2))
    } else {
        let s2 = u.sin().powi(2);
        (u.cos().powi(2), (g / gp).powi(2) * s2 / w2, s2 / w2)
    };
    let gamma0 = alpha2;
    let big_gamma = R::one() - gamma2;
    let ln_xi = gamma2.ln() - alpha2.ln() - beta2.ln();
    Ok(BlackHoleParams {
        gamma0,
        omega_over_t,
        alpha2,
        beta2,
        gamma2,
        big_gamma,
        ln_xi,
    })
}

/// Hawking temperature of a Schwarzschild horizon of the given mass
/// (geometric units, `T = 1/(8 pi M)`).
pub fn temperature_from_mass<R: Real>(mass: R) -> Result<R> {
    if !(mass > R::zero()) || !mass.is_finite() {
        return Err(Error::domain(format!("mass must be positive, got {mass}")));
    }
    Ok((r::<R>(8.0) * R::from_f64(std::f64::consts::PI).unwrap() * mass).recip())
}

/// Validates the internal consistency of freshly built parameters.
/// Exposed for the CLI `validate` command.
pub fn check_params<R: Real>(params: &BlackHoleParams<R>) -> Result<()> {
    let tol = strict_tol::<R>();
    let defect = params.constraint_defect();
    if defect > tol {
        return Err(Error::numerical(format!(
            "coefficient constraints violated by {defect}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn early_coeffs_at_ln_two() {
        // x = ln 2: alpha^2 = 2, beta^2 = 1.
        let p = early_time_coeffs(std::f64::consts::LN_2).unwrap();
        assert!((p.alpha2 - 2.0).abs() < 1e-14);
        assert!((p.beta2 - 1.0).abs() < 1e-14);
        assert!((p.alpha2 - p.beta2 - 1.0).abs() < 1e-15);
        // cosh^2(g) - 1 = sinh^2(g) consistency
        assert!((p.squeeze_gain.cosh().powi(2) - p.alpha2).abs() < 1e-13);
    }

    #[test]
    fn early_coeffs_reject_bad_ratio() {
        assert!(matches!(
            early_time_coeffs(0.0),
            Err(Error::NonPositiveFrequencyRatio(_))
        ));
        assert!(early_time_coeffs(-3.0).is_err());
        assert!(early_time_coeffs(f64::INFINITY).is_err());
    }

    #[test]
    fn late_coeffs_fully_absorbing_at_ln_two() {
        let p = late_time_coeffs(1.0, std::f64::consts::LN_2).unwrap();
        assert!((p.alpha2 - 1.0).abs() < 1e-15);
        assert!((p.beta2 - 0.5).abs() < 1e-15);
        assert!((p.big_gamma - 0.5).abs() < 1e-15);
        assert!((p.gamma2 - 0.5).abs() < 1e-15);
        assert_eq!(p.ln_xi, 0.0); // xi = 1 exactly in the absorbing limit
    }

    #[test]
    fn late_coeffs_frozen_point() {
        // Independently evaluated: xi = (e^x - Gamma0 (e^x - 1)) / Gamma0^2
        // at Gamma0 = 0.95, x = 4 gives 4.07746, and survives the log round trip.
        let p = late_time_coeffs(0.95, 4.0).unwrap();
        let e4 = 4.0f64.exp();
        let xi_direct = (e4 - 0.95 * (e4 - 1.0)) / (0.95 * 0.95);
        assert!((p.xi() - xi_direct).abs() / xi_direct < 1e-13);
        assert!((p.xi() - 4.0775).abs() < 1e-3);
        assert!(p.constraint_defect() < 1e-14);
    }

    #[test]
    fn late_coeffs_perfect_reflector() {
        let p = late_time_coeffs(0.0, 4.0).unwrap();
        assert_eq!(p.ln_xi, f64::INFINITY);
        assert_eq!(p.inv_xi(), 0.0);
        assert_eq!(p.beta2, 0.0);
        assert!((p.gamma2 - 1.0).abs() < 1e-15);
        assert!(couplings_from_params(&p).is_err());
    }

    #[test]
    fn xi_stays_exact_in_absorbing_limit_at_large_ratio() {
        // The naive 1 - Gamma form would cancel to zero here; the stable form
        // must keep xi = 1 even when e^{-x} underflows the subtraction.
        let p = late_time_coeffs(1.0f64, 500.0).unwrap();
        assert!(p.ln_xi.abs() < 1e-10);
    }

    #[test]
    fn couplings_absorbing_limit_value() {
        let p = late_time_coeffs(1.0, 2.0).unwrap();
        let c = couplings_from_params(&p).unwrap();
        let expected = (-1.0f64).exp();
        assert!((c.g - expected).abs() < 1e-15);
        assert!((c.g_prime - expected).abs() < 1e-15);
    }

    #[test]
    fn coupling_round_trip_on_grid() {
        for &gamma0 in &[1e-4f64, 0.1, 0.3, 0.5, 0.9, 0.95, 0.99, 0.999999, 1.0] {
            for &x in &[0.5, 1.0, 2.0, 4.0, 10.0, 20.0] {
                let p = late_time_coeffs(gamma0, x).unwrap();
                let c = couplings_from_params(&p).unwrap();
                assert!(c.g <= c.g_prime + 1e-15, "g <= g' at {gamma0}, {x}");
                let back = params_from_couplings(&c, x).unwrap();
                assert!(
                    (back.gamma0 - gamma0).abs() < 1e-10,
                    "Gamma0 round trip at ({gamma0}, {x}): {}",
                    back.gamma0
                );
                assert!(
                    (back.beta2 - p.beta2).abs() < 1e-10,
                    "beta^2 round trip at ({gamma0}, {x})"
                );
                assert!(
                    (back.gamma2 - p.gamma2).abs() < 1e-10,
                    "gamma^2 round trip at ({gamma0}, {x})"
                );
            }
        }
    }

    #[test]
    fn xi_monotone_and_bounded_below() {
        // xi decreases with Gamma0, increases with omega/T, and xi >= 1 with
        // equality only at Gamma0 = 1.
        let xi = |g0: f64, x: f64| late_time_coeffs(g0, x).unwrap().ln_xi;
        assert!(xi(0.3, 4.0) > xi(0.5, 4.0));
        assert!(xi(0.5, 4.0) > xi(0.9, 4.0));
        assert!(xi(0.9, 4.0) > xi(1.0, 4.0));
        assert!(xi(0.5, 10.0) > xi(0.5, 4.0));
        for &g0 in &[0.1, 0.5, 0.9, 0.99] {
            assert!(xi(g0, 2.0) > 0.0);
        }
        assert_eq!(xi(1.0, 2.0), 0.0);
    }

    #[test]
    fn temperature_from_mass_scales_inversely() {
        let t1: f64 = temperature_from_mass(1.0).unwrap();
        let t2: f64 = temperature_from_mass(2.0).unwrap();
        assert!((t1 / t2 - 2.0).abs() < 1e-14);
        assert!((t1 - 1.0 / (8.0 * std::f64::consts::PI)).abs() < 1e-16);
        assert!(temperature_from_mass(0.0f64).is_err());
    }

    #[test]
    fn generic_instantiation_with_f32_stays_consistent() {
        let p = late_time_coeffs(0.9f32, 3.0f32).unwrap();
        assert!(p.constraint_defect() < 1e-5);
        let c = couplings_from_params(&p).unwrap();
        let back = params_from_couplings(&c, 3.0f32).unwrap();
        assert!((back.gamma0 - 0.9).abs() < 1e-4);
    }
}
