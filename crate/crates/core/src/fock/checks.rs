//! Self-consistency checks tying the truncated-basis evolution back to the
//! mode-operator (Heisenberg) picture.

use num_complex::Complex;

use crate::bogoliubov::{couplings_from_params, BlackHoleParams};
use crate::error::Result;
use crate::fock::hamiltonian::BosonicHamiltonian;
use crate::fock::propagator::evolve_inverse;
use crate::fock::space::{FockSpace, Mode, ModeKind};
use crate::fock::vector::FockVector;
use crate::scalar::{r, LinalgReal, Real};

/// Deterministic low-occupation trial states with complex structure, kept
/// far from the cutoff so truncation cannot pollute the check.
fn trial_states<R: Real>(space: &FockSpace) -> Result<Vec<FockVector<R>>> {
    let k = space.modes().len();
    let occ = |pattern: &[usize]| -> Vec<usize> { pattern[..k].to_vec() };
    let mixes: [&[(f64, f64, [usize; 3])]; 2] = [
        &[
            (1.0, 0.0, [0, 0, 0]),
            (0.5, 0.0, [1, 0, 0]),
            (0.0, 0.3, [0, 0, 1]),
            (0.2, 0.0, [0, 1, 0]),
            (0.1, 0.1, [1, 1, 1]),
        ],
        &[
            (0.8, 0.0, [0, 0, 0]),
            (0.0, -0.4, [1, 1, 0]),
            (0.25, 0.0, [0, 1, 1]),
            (0.35, 0.0, [0, 0, 1]),
            (0.0, 0.15, [1, 0, 0]),
        ],
    ];
    let mut states = Vec::new();
    for mix in mixes {
        let mut v = FockVector::zero(space.clone());
        for &(re, im, pat) in mix {
            // Skip components that need a mode the space does not have.
            if pat[k..].iter().any(|&o| o != 0) {
                continue;
            }
            let basis = FockVector::basis_state(space.clone(), &occ(&pat))?;
            v.add_scaled(Complex::new(r::<R>(re), r::<R>(im)), &basis)?;
        }
        let n = v.norm();
        v.scale(Complex::new(R::one() / n, R::zero()));
        states.push(v);
    }
    Ok(states)
}

/// Worst-case defect of the Heisenberg relation
/// `e^{-iH} a e^{+iH} = alpha a - beta b^ - gamma c`
/// over a fixed family of trial states, where `a` is the exterior mode,
/// `b` its interior partner and `c` the signal mode (the `gamma` term is
/// skipped for spaces without a signal mode).
///
/// With `U = e^{-iH}` the left side sandwiched in a state `|psi>` is
/// `<psi| U a U^ |psi> = <U^ psi| a |U^ psi>`, so each trial state is run
/// through the inverse propagator before taking the expectation.
pub fn heisenberg_defect_for<R: LinalgReal>(
    h: &BosonicHamiltonian<R>,
    alpha: R,
    beta: R,
    gamma: R,
) -> Result<R> {
    let space = h.space();
    let sector = space.modes()[space
        .kind_position(ModeKind::Exterior)
        .ok_or_else(|| crate::error::Error::domain("space has no exterior mode"))?]
    .sector;
    let a_mode = Mode::new(ModeKind::Exterior, sector);
    let b_mode = Mode::new(ModeKind::Interior, sector.conjugate());
    let c_mode = Mode::new(ModeKind::Signal, sector);
    let has_signal = space.kind_position(ModeKind::Signal).is_some();
    let mut worst = R::zero();
    for psi in trial_states::<R>(space)? {
        let evolved = evolve_inverse(h, &psi)?;
        let lhs = evolved.expect_annihilation(a_mode)?;
        let expect_a = psi.expect_annihilation(a_mode)?;
        let expect_b_dag = psi.expect_annihilation(b_mode)?.conj();
        let mut rhs = expect_a * Complex::new(alpha, R::zero())
            - expect_b_dag * Complex::new(beta, R::zero());
        if has_signal {
            let expect_c = psi.expect_annihilation(c_mode)?;
            rhs = rhs - expect_c * Complex::new(gamma, R::zero());
        }
        let defect = num_traits::Float::sqrt((lhs - rhs).norm_sqr());
        if defect > worst {
            worst = defect;
        }
    }
    Ok(worst)
}

/// Heisenberg-relation defect for the late-time channel at the given
/// parameters, `e^{-iH} a e^{+iH} = alpha a - beta b^ - gamma c` with
/// `alpha = sqrt(Gamma0)`, `beta = sqrt(Gamma0) e^{-x/2}`,
/// `gamma = sqrt(gamma^2)`.
pub fn late_heisenberg_defect<R: LinalgReal>(
    params: &BlackHoleParams<R>,
    n_max: usize,
) -> Result<R> {
    let space = FockSpace::triple(crate::fock::space::Sector::Plus, n_max)?;
    let cc = couplings_from_params(params)?;
    let h = BosonicHamiltonian::late(&space, crate::fock::space::Sector::Plus, &cc)?;
    heisenberg_defect_for(
        &h,
        num_traits::Float::sqrt(params.alpha2),
        num_traits::Float::sqrt(params.beta2),
        num_traits::Float::sqrt(params.gamma2),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bogoliubov::{early_time_coeffs, late_time_coeffs};
    use crate::fock::space::Sector;

    #[test]
    fn early_squeeze_satisfies_its_heisenberg_relation() {
        // e^{-iH} a e^{+iH} = cosh(g) a - sinh(g) b^ for the pure squeeze.
        // The cutoff must sit well past the squeezed tail (tanh g ~ 0.47
        // here) for the expectation values to be converged at 1e-9.
        let x = 1.5f64;
        let p = early_time_coeffs(x).unwrap();
        let space = FockSpace::pair(Sector::Plus, 28).unwrap();
        let h = BosonicHamiltonian::early(&space, Sector::Plus, p.squeeze_gain).unwrap();
        let defect = heisenberg_defect_for(
            &h,
            p.alpha2.sqrt(),
            p.beta2.sqrt(),
            0.0,
        )
        .unwrap();
        assert!(defect < 1e-9, "defect {defect:0.3e}");
    }

    #[test]
    fn late_channel_satisfies_its_heisenberg_relation() {
        let params = late_time_coeffs(0.95f64, 4.0).unwrap();
        let defect = late_heisenberg_defect(&params, 12).unwrap();
        assert!(defect < 1e-9, "defect {defect:0.3e}");
    }

    #[test]
    fn wrong_signal_sign_breaks_the_relation() {
        // Flipping the sign of the exchange coupling must produce a defect
        // of order gamma itself.
        let params = late_time_coeffs(0.6f64, 2.0).unwrap();
        let space = FockSpace::triple(Sector::Plus, 12).unwrap();
        let mut cc = couplings_from_params(&params).unwrap();
        cc.g_prime = -cc.g_prime;
        let h = BosonicHamiltonian::late(&space, Sector::Plus, &cc).unwrap();
        let defect = heisenberg_defect_for(
            &h,
            params.alpha2.sqrt(),
            params.beta2.sqrt(),
            params.gamma2.sqrt(),
        )
        .unwrap();
        assert!(defect > 1e-2, "defect {defect:0.3e} unexpectedly small");
    }
}
