//! `state` subcommand: region-I occupation laws, analytic next to simulated.
//!
//! `p(m|1)` is the distribution of the post-selection count for a single
//! incoming particle; `p(m|0)` is the spectator thermal law. The simulated
//! columns come from the truncated-Fock marginals of the evolved channel.

use horizon_core::analytic::late::{
    late_time_antiparticle_distribution, late_time_particle_distribution,
};
use horizon_core::bogoliubov::late_time_coeffs;
use horizon_core::cloning::simulate::{simulate_region_states, CloningChannel, SimOptions};
use horizon_core::cloning::LogicalQubit;
use horizon_core::dist::NumberDistribution;

use crate::args::{MethodArg, StateArgs};
use crate::error::CliError;

pub fn cmd_state(args: StateArgs) -> Result<i32, CliError> {
    if !(0.0..=1.0).contains(&args.gamma0) || !args.gamma0.is_finite() {
        return Err(CliError::Config(format!(
            "gamma0 must lie in [0, 1], got {}",
            args.gamma0
        )));
    }
    if !(args.omega_over_t > 0.0) || !args.omega_over_t.is_finite() {
        return Err(CliError::Config(format!(
            "omega/T must be positive and finite, got {}",
            args.omega_over_t
        )));
    }
    let params = late_time_coeffs(args.gamma0, args.omega_over_t)?;
    let analytic_p = late_time_particle_distribution(&params, args.m_max, None)?;
    let analytic_a = late_time_antiparticle_distribution(&params, args.m_max, None)?;

    let want_sim = matches!(args.method, MethodArg::Simulate | MethodArg::Both);
    let sim = if want_sim {
        let channel = CloningChannel::Late(params);
        let opts = SimOptions {
            tol: args.tol,
            n_max_ceiling: args.nmax,
            n_max_override: None,
        };
        let state =
            simulate_region_states(&channel, &LogicalQubit::particle(), 1, args.m_max, &opts)?;
        let p = state.region1().particle_marginal()?;
        let a = state.region1().antiparticle_marginal()?;
        Some((p, a, state.n_max(), state.tail_mass()))
    } else {
        None
    };

    println!(
        "# region-I occupation laws at gamma0 = {}, omega/T = {}",
        args.gamma0, args.omega_over_t
    );
    println!(
        "# alpha^2 = {:.8e}  beta^2 = {:.8e}  gamma^2 = {:.8e}  1/xi = {:.8e}",
        params.alpha2,
        params.beta2,
        params.gamma2,
        params.inv_xi()
    );
    match &sim {
        Some((.., n_max, tail)) => {
            println!("# simulated at n_max = {n_max}, tail_mass = {tail:.8e}");
            println!(
                "{:>4}  {:>15}  {:>15}  {:>15}  {:>15}",
                "m", "p(m|1)", "p(m|1)_sim", "p(m|0)", "p(m|0)_sim"
            );
        }
        None => {
            println!("{:>4}  {:>15}  {:>15}", "m", "p(m|1)", "p(m|0)");
        }
    }
    let sim_prob = |d: &NumberDistribution<f64>, m: usize| {
        if m < d.len() {
            d.prob(m)
        } else {
            0.0
        }
    };
    let mut worst = 0.0f64;
    for m in 0..=args.m_max {
        match &sim {
            Some((p, a, ..)) => {
                let (sp, sa) = (sim_prob(p, m), sim_prob(a, m));
                worst = worst
                    .max((analytic_p.prob(m) - sp).abs())
                    .max((analytic_a.prob(m) - sa).abs());
                println!(
                    "{:>4}  {:>15.8e}  {:>15.8e}  {:>15.8e}  {:>15.8e}",
                    m,
                    analytic_p.prob(m),
                    sp,
                    analytic_a.prob(m),
                    sa
                );
            }
            None => {
                println!(
                    "{:>4}  {:>15.8e}  {:>15.8e}",
                    m,
                    analytic_p.prob(m),
                    analytic_a.prob(m)
                );
            }
        }
    }
    println!(
        "# analytic tails beyond m_max: p(|1) = {:.8e}, p(|0) = {:.8e}",
        analytic_p.tail_mass(),
        analytic_a.tail_mass()
    );
    if sim.is_some() {
        println!("# max |analytic - simulated| over printed cells = {worst:.8e}");
    }
    Ok(0)
}
