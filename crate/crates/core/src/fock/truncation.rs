//! A-priori choice of the Fock cutoff from a geometric tail bound.
//!
//! Every channel here populates each mode with (at most) negative-binomial
//! statistics: starting from `n_input` seed quanta, occupation `n_input + j`
//! carries weight proportional to `C(j + p, p) q^j` with `p = n_input` and
//! `q = beta^2 / (1 + beta^2)` the thermal Boltzmann factor. Summing the
//! geometric-ratio majorant gives a rigorous tail bound used to pick the
//! cutoff before any state is built.

use crate::error::{Error, Result};
use crate::scalar::{r, Real};

/// Default ceiling on the per-mode cutoff; simulations that would need more
/// refuse to run rather than degrade silently.
pub const DEFAULT_N_MAX_CEILING: usize = 40;

/// Upper bound on the negative-binomial tail
/// `sum_{j > n} C(j + p, p) q^j (1 - q)^{p+1}`,
/// via the ratio test: successive terms shrink by at least
/// `rho = q (n + 2 + p) / (n + 2)`, so the tail is at most
/// `first_term / (1 - rho)` (infinite if `rho >= 1`).
pub fn negative_binomial_tail_bound<R: Real>(q: R, degree: usize, n: usize) -> R {
    if q <= R::zero() {
        return R::zero();
    }
    if q >= R::one() {
        return num_traits::Float::infinity();
    }
    let p = r::<R>(degree as f64);
    let np2 = r::<R>((n + 2) as f64);
    let rho = q * (np2 + p) / np2;
    if rho >= R::one() {
        return num_traits::Float::infinity();
    }
    // C(n + 1 + degree, degree) as a running product.
    let mut binom = R::one();
    for i in 1..=degree {
        binom = binom * r::<R>((n + 1 + i) as f64) / r::<R>(i as f64);
    }
    let first = binom
        * num_traits::Float::powi(q, (n + 1) as i32)
        * num_traits::Float::powi(R::one() - q, (degree + 1) as i32);
    first / (R::one() - rho)
}

/// Pick a per-mode cutoff `n_max` for a channel with thermal occupation
/// `beta2` per mode, `n_input` injected quanta and post-selection on up to
/// `m_out` outgoing quanta.
///
/// The cutoff is the smallest `n_input + j` whose tail bound drops below
/// `tol`, doubled once for safety, and never below `n_input + m_out + 1`.
/// If that exceeds `ceiling`, the request is refused with a resource error.
pub fn choose_truncation<R: Real>(
    beta2: R,
    n_input: usize,
    m_out: usize,
    tol: R,
    ceiling: usize,
) -> Result<usize> {
    if !(beta2 >= R::zero()) {
        return Err(Error::domain("beta^2 must be nonnegative and finite"));
    }
    if !(tol > R::zero()) {
        return Err(Error::domain("truncation tolerance must be positive"));
    }
    let floor = n_input + m_out + 1;
    let q = beta2 / (R::one() + beta2);
    let n_max = if q == R::zero() {
        floor
    } else {
        const SCAN_LIMIT: usize = 5_000;
        let mut j0 = None;
        for j in 0..SCAN_LIMIT {
            if negative_binomial_tail_bound(q, n_input, j) < tol {
                j0 = Some(j);
                break;
            }
        }
        let j0 = j0.ok_or(Error::Resource {
            required: SCAN_LIMIT,
            ceiling,
        })?;
        (2 * (n_input + j0)).max(floor)
    };
    if n_max > ceiling {
        return Err(Error::Resource {
            required: n_max,
            ceiling,
        });
    }
    Ok(n_max)
}
