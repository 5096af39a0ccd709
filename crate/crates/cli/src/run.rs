//! Command dispatch and grid evaluation.
//!
//! Work is grouped by `(gamma0, omega_over_t, N)`: one Fock-space evolution
//! per group, with every requested `M` post-selected from the same evolved
//! state. Groups evaluate in parallel; rows always come out in lexicographic
//! `(gamma0, omega_over_t, N, M)` order because the grid is built that way
//! and the parallel collect preserves it.

use std::path::PathBuf;
use std::time::Instant;

use rayon::prelude::*;

use horizon_core::analytic::early::{
    anticlone_fidelity, early_time_postselect_probability, optimal_fidelity,
};
use horizon_core::analytic::late::late_time_fidelity_1m;
use horizon_core::bogoliubov::{early_time_coeffs, late_time_coeffs};
use horizon_core::cloning::simulate::{
    clone_outcome_from_state, simulate_region_states, CloningChannel, SimOptions,
};
use horizon_core::cloning::LogicalQubit;

use crate::args::{Cli, Command, MethodArg, PointArgs, PresetArgs, ScenarioArg, SweepArgs};
use crate::config::SweepConfig;
use crate::error::CliError;
use crate::presets;
use crate::row::{emit, ResultRow};

pub fn method_label(method: MethodArg) -> &'static str {
    match method {
        MethodArg::Analytic => "analytic",
        MethodArg::Simulate => "simulate",
        MethodArg::Both => "both",
    }
}

/// Returns the process exit code on success; hard errors go through
/// [`CliError`] instead.
pub fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Fidelity(args) => cmd_fidelity(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Figure2(args) => cmd_figure2(args),
        Command::Figure3(args) => cmd_figure3(args),
        Command::State(args) => crate::state_cmd::cmd_state(args),
        Command::Validate(args) => crate::validate::cmd_validate(args),
    }
}

/// One evolution's worth of work: a parameter point and `N`, plus the list
/// of `M` values to post-select (ascending).
#[derive(Debug, Clone)]
pub struct Group {
    pub scenario: ScenarioArg,
    pub gamma0: Option<f64>,
    pub omega_over_t: f64,
    pub n: usize,
    pub m_values: Vec<usize>,
    pub method: MethodArg,
    pub tol: f64,
    pub n_max_ceiling: usize,
}

fn check_group(g: &Group) -> Result<(), CliError> {
    let bad = |msg: String| Err(CliError::Config(msg));
    match g.scenario {
        ScenarioArg::Late => match g.gamma0 {
            None => return bad("the late scenario needs --gamma0".into()),
            Some(g0) if !(0.0..=1.0).contains(&g0) || !g0.is_finite() => {
                return bad(format!("gamma0 must lie in [0, 1], got {g0}"))
            }
            _ => {}
        },
        ScenarioArg::Early => {
            if g.gamma0.is_some() {
                return bad("the early scenario has no gamma0 (pure pair creation)".into());
            }
        }
    }
    if !(g.omega_over_t > 0.0) || !g.omega_over_t.is_finite() {
        return bad(format!(
            "omega/T must be positive and finite, got {}",
            g.omega_over_t
        ));
    }
    if g.n == 0 {
        return bad("N must be at least 1".into());
    }
    if g.m_values.is_empty() {
        return bad("no M values requested".into());
    }
    if g.m_values.contains(&0) {
        return bad("M must be at least 1".into());
    }
    if g.scenario == ScenarioArg::Early {
        if let Some(&m) = g.m_values.iter().find(|&&m| m < g.n) {
            return bad(format!(
                "the early scenario post-selects at least the input count: M = {m} < N = {}",
                g.n
            ));
        }
    }
    if g.scenario == ScenarioArg::Late
        && g.n > 1
        && matches!(g.method, MethodArg::Analytic | MethodArg::Both)
    {
        return bad(format!(
            "no closed-form late-time fidelity for N = {} > 1; use --method simulate",
            g.n
        ));
    }
    if !(g.tol > 0.0) {
        return bad(format!("tol must be positive, got {}", g.tol));
    }
    if g.n_max_ceiling == 0 {
        return bad("nmax ceiling must be at least 1".into());
    }
    Ok(())
}

/// Evaluate one group into rows, sharing the evolution across its `M` list.
/// `wall_ms` is the group's elapsed time split evenly over its rows.
pub fn eval_group(g: &Group) -> Result<Vec<ResultRow>, CliError> {
    check_group(g)?;
    let start = Instant::now();
    let want_analytic = matches!(g.method, MethodArg::Analytic | MethodArg::Both);
    let want_sim = matches!(g.method, MethodArg::Simulate | MethodArg::Both);
    let mut rows: Vec<ResultRow> = g
        .m_values
        .iter()
        .map(|&m| ResultRow {
            gamma0: g.gamma0,
            omega_over_t: g.omega_over_t,
            n: g.n,
            m,
            f_analytic: None,
            f_sim: None,
            f_anticlone: None,
            p_postselect: None,
            n_max: None,
            tail_mass: None,
            method: method_label(g.method),
            wall_ms: 0,
        })
        .collect();

    if want_analytic {
        for row in &mut rows {
            match g.scenario {
                ScenarioArg::Early => {
                    row.f_analytic = Some(optimal_fidelity(g.n, row.m)?);
                    if row.m > g.n {
                        row.f_anticlone = Some(anticlone_fidelity(g.n)?);
                    }
                    row.p_postselect =
                        Some(early_time_postselect_probability(g.omega_over_t, g.n, row.m)?);
                }
                ScenarioArg::Late => {
                    let params = late_time_coeffs(g.gamma0.unwrap(), g.omega_over_t)?;
                    let report = late_time_fidelity_1m(&params, row.m)?;
                    row.f_analytic = Some(report.fidelity);
                    row.p_postselect = report.postselect_probability;
                }
            }
        }
    }

    if want_sim {
        let channel = match g.scenario {
            ScenarioArg::Early => {
                CloningChannel::EarlyParticle(early_time_coeffs(g.omega_over_t)?)
            }
            ScenarioArg::Late => {
                CloningChannel::Late(late_time_coeffs(g.gamma0.unwrap(), g.omega_over_t)?)
            }
        };
        let opts = SimOptions {
            tol: g.tol,
            n_max_ceiling: g.n_max_ceiling,
            n_max_override: None,
        };
        let m_max = *g.m_values.iter().max().unwrap();
        let state =
            simulate_region_states(&channel, &LogicalQubit::particle(), g.n, m_max, &opts)?;
        for row in &mut rows {
            let outcome = clone_outcome_from_state(&state, row.m)?;
            row.f_sim = Some(outcome.report.fidelity);
            if let Some(f) = outcome.report.anticlone_fidelity {
                row.f_anticlone = Some(f);
            }
            // The simulated probability carries the truncation error the
            // diagnostics columns describe; prefer it when both ran.
            if let Some(p) = outcome.report.postselect_probability {
                row.p_postselect = Some(p);
            }
            row.n_max = outcome.report.n_max;
            row.tail_mass = Some(outcome.report.tail_mass);
        }
    }

    let per_row = start.elapsed().as_millis() as u64 / rows.len() as u64;
    for row in &mut rows {
        row.wall_ms = per_row;
    }
    Ok(rows)
}

/// A full sweep grid; expanded to groups in lexicographic order.
#[derive(Debug, Clone)]
pub struct GridSpec {
    pub scenario: ScenarioArg,
    /// Ignored (may be empty) for the early scenario.
    pub gamma0_values: Vec<f64>,
    pub omega_over_t_values: Vec<f64>,
    pub n_values: Vec<usize>,
    pub m_values: Vec<usize>,
    pub method: MethodArg,
    pub tol: f64,
    pub n_max_ceiling: usize,
}

pub fn build_groups(spec: &GridSpec) -> Vec<Group> {
    let mut gamma0s: Vec<Option<f64>> = match spec.scenario {
        ScenarioArg::Late => spec.gamma0_values.iter().copied().map(Some).collect(),
        ScenarioArg::Early => vec![None],
    };
    gamma0s.sort_by(|a, b| {
        a.unwrap_or(f64::NEG_INFINITY)
            .total_cmp(&b.unwrap_or(f64::NEG_INFINITY))
    });
    let mut xs = spec.omega_over_t_values.clone();
    xs.sort_by(f64::total_cmp);
    let mut ns = spec.n_values.clone();
    ns.sort_unstable();
    let mut ms = spec.m_values.clone();
    ms.sort_unstable();
    let mut groups = Vec::with_capacity(gamma0s.len() * xs.len() * ns.len());
    for &gamma0 in &gamma0s {
        for &omega_over_t in &xs {
            for &n in &ns {
                groups.push(Group {
                    scenario: spec.scenario,
                    gamma0,
                    omega_over_t,
                    n,
                    m_values: ms.clone(),
                    method: spec.method,
                    tol: spec.tol,
                    n_max_ceiling: spec.n_max_ceiling,
                });
            }
        }
    }
    groups
}

/// Evaluate every group on a dedicated pool. All rows are collected before
/// anything is written, so a failure anywhere yields no output at all.
pub fn run_groups(groups: &[Group], threads: Option<usize>) -> Result<Vec<ResultRow>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let per_group: Vec<Vec<ResultRow>> =
        pool.install(|| groups.par_iter().map(eval_group).collect::<Result<_, _>>())?;
    Ok(per_group.into_iter().flatten().collect())
}

fn cmd_fidelity(args: PointArgs) -> Result<i32, CliError> {
    let group = Group {
        scenario: args.scenario,
        gamma0: args.gamma0,
        omega_over_t: args.omega_over_t,
        n: args.n,
        m_values: vec![args.m],
        method: args.method,
        tol: args.tol,
        n_max_ceiling: args.nmax,
    };
    let rows = eval_group(&group)?;
    emit(&rows, args.out.as_deref(), args.format)?;
    if args.method == MethodArg::Both {
        if let (Some(a), Some(s)) = (rows[0].f_analytic, rows[0].f_sim) {
            println!("# |F_analytic - F_sim| = {:.8e}", (a - s).abs());
        }
    }
    Ok(0)
}

fn cmd_sweep(args: SweepArgs) -> Result<i32, CliError> {
    let config = SweepConfig::load(&args.config)?;
    let spec = GridSpec {
        scenario: config.scenario,
        gamma0_values: config.gamma0_values.clone(),
        omega_over_t_values: config.omega_over_t_values.clone(),
        n_values: config.n_values.clone(),
        m_values: config.m_values.clone(),
        method: config.method,
        tol: config.tol,
        n_max_ceiling: config.n_max_ceiling,
    };
    let rows = run_groups(&build_groups(&spec), args.threads)?;
    let out: Option<PathBuf> = args.out.or(config.out);
    emit(&rows, out.as_deref(), config.format)?;
    Ok(0)
}

fn cmd_figure2(args: PresetArgs) -> Result<i32, CliError> {
    let spec = GridSpec {
        scenario: ScenarioArg::Late,
        gamma0_values: presets::FIGURE2_GAMMA0.to_vec(),
        omega_over_t_values: vec![presets::FIGURE2_OMEGA_OVER_T],
        n_values: vec![1],
        m_values: presets::PRESET_M.collect(),
        method: args.method,
        tol: args.tol,
        n_max_ceiling: args.nmax,
    };
    let rows = run_groups(&build_groups(&spec), args.threads)?;
    emit(&rows, args.out.as_deref(), args.format)?;
    Ok(0)
}

fn cmd_figure3(args: PresetArgs) -> Result<i32, CliError> {
    let spec = GridSpec {
        scenario: ScenarioArg::Late,
        gamma0_values: vec![presets::FIGURE3_GAMMA0],
        omega_over_t_values: presets::FIGURE3_OMEGA_OVER_T.to_vec(),
        n_values: vec![1],
        m_values: presets::PRESET_M.collect(),
        method: args.method,
        tol: args.tol,
        n_max_ceiling: args.nmax,
    };
    let rows = run_groups(&build_groups(&spec), args.threads)?;
    emit(&rows, args.out.as_deref(), args.format)?;
    Ok(0)
}
