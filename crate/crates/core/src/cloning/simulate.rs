//! End-to-end brute-force simulation of the cloning channel.
//!
//! The pipeline: pick a cutoff from the thermal tail bound, build the
//! per-sector spaces and Hamiltonians, expand the logical input
//! `(sigma |1> + tau |0>)^{(x) N}` into its `N + 1` count branches, evolve
//! each branch factor exactly, reduce to the region-I density matrix,
//! post-select `M` outgoing quanta, and map the count block to the
//! single-clone qubit. Anticlone numbers come from the region-II state
//! conditioned on the same outcome.

use num_complex::Complex;

use crate::bogoliubov::{couplings_from_params, BlackHoleParams, EarlyTimeParams};
use crate::cloning::dicke::dicke_single_clone;
use crate::cloning::qubit::{LogicalQubit, QubitDensityMatrix};
use crate::error::{Error, Result};
use crate::fock::branches::{BranchSpec, SectorBranches};
use crate::fock::hamiltonian::BosonicHamiltonian;
use crate::fock::reduce::{region1_reduced_state, region2_conditional_state, RegionDensity};
use crate::fock::space::{FockSpace, Mode, ModeKind, Sector};
use crate::fock::truncation::{
    choose_truncation, negative_binomial_tail_bound, DEFAULT_N_MAX_CEILING,
};
use crate::report::{CloneReport, Method};
use crate::scalar::{r, LinalgReal, Real};

/// Which physical scenario feeds the cloner.
#[derive(Debug, Clone, PartialEq)]
pub enum CloningChannel<R: Real> {
    /// Early times, input quanta riding the outgoing (exterior) modes.
    EarlyParticle(EarlyTimeParams<R>),
    /// Early times, input quanta on the interior modes (behind the horizon).
    EarlyAntiparticle(EarlyTimeParams<R>),
    /// Late times, input quanta arriving on the signal modes and scattering
    /// at the horizon.
    Late(BlackHoleParams<R>),
}

impl<R: Real> CloningChannel<R> {
    /// Spontaneous per-mode pair occupancy, which controls the thermal tail
    /// and hence the required cutoff.
    pub fn beta2(&self) -> R {
        match self {
            CloningChannel::EarlyParticle(p) | CloningChannel::EarlyAntiparticle(p) => p.beta2,
            CloningChannel::Late(p) => p.beta2,
        }
    }

    /// Where the logical `|1>` (particle) quanta sit before evolution.
    fn input_kind(&self) -> ModeKind {
        match self {
            CloningChannel::EarlyParticle(_) => ModeKind::Exterior,
            CloningChannel::EarlyAntiparticle(_) => ModeKind::Interior,
            CloningChannel::Late(_) => ModeKind::Signal,
        }
    }
}

/// Knobs of the brute-force run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimOptions<R: Real> {
    /// Target bound on the truncated thermal tail.
    pub tol: R,
    /// Refuse cutoffs above this.
    pub n_max_ceiling: usize,
    /// Bypass the automatic cutoff choice entirely.
    pub n_max_override: Option<usize>,
}

impl<R: Real> Default for SimOptions<R> {
    fn default() -> Self {
        SimOptions {
            tol: r::<R>(1e-8),
            n_max_ceiling: DEFAULT_N_MAX_CEILING,
            n_max_override: None,
        }
    }
}

/// The evolved channel state for one input and `N`, before any
/// post-selection; all `M` outcomes are read from this single object.
#[derive(Debug)]
pub struct EvolvedChannelState<R: Real> {
    input: LogicalQubit<R>,
    n: usize,
    branches: SectorBranches<R>,
    region1: RegionDensity<R>,
    n_max: usize,
}

impl<R: Real> EvolvedChannelState<R> {
    pub fn input(&self) -> &LogicalQubit<R> {
        &self.input
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Evolved branch decomposition (for region-II reductions).
    pub fn branches(&self) -> &SectorBranches<R> {
        &self.branches
    }

    /// Region-I reduced density matrix, not yet post-selected.
    pub fn region1(&self) -> &RegionDensity<R> {
        &self.region1
    }

    pub fn tail_mass(&self) -> R {
        self.region1.tail_mass()
    }
}

/// Full record of one simulated `N -> M` outcome.
#[derive(Debug)]
pub struct SimOutcome<R: Real> {
    pub report: CloneReport<R>,
    pub clone_qubit: QubitDensityMatrix<R>,
    /// Count-averaged region-II qubit; `None` when region II is empty.
    pub anticlone_qubit: Option<QubitDensityMatrix<R>>,
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    let mut acc = 1.0f64;
    for i in 1..=k {
        acc = acc * ((n + 1 - i) as f64) / (i as f64);
    }
    acc
}

/// Expand `(sigma |1> + tau |0>)^{(x) N}` over particle-count branches in
/// the given sector spaces, placing `j` particles in the `|1>` carrier mode
/// and `N - j` antiparticles in its conjugate.
fn input_branches<R: Real>(
    channel: &CloningChannel<R>,
    input: &LogicalQubit<R>,
    n: usize,
    space_plus: &FockSpace,
    space_minus: &FockSpace,
) -> Result<SectorBranches<R>> {
    let kind = channel.input_kind();
    let particle_mode = Mode::new(kind, Sector::Plus);
    let antiparticle_mode = Mode::new(kind, Sector::Minus);
    // The Interior/Plus mode lives in the minus-sector factor and vice
    // versa; Exterior and Signal modes live in their own sector's factor.
    let locate = |mode: Mode| -> Result<(bool, usize)> {
        if let Some(pos) = space_plus.mode_position(mode) {
            Ok((true, pos))
        } else if let Some(pos) = space_minus.mode_position(mode) {
            Ok((false, pos))
        } else {
            Err(Error::domain(format!("mode {mode:?} not present")))
        }
    };
    let (p_in_plus, p_pos) = locate(particle_mode)?;
    let (a_in_plus, a_pos) = locate(antiparticle_mode)?;
    let mut specs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let coeff = input.sigma().powu(j as u32)
            * input.tau().powu((n - j) as u32)
            * Complex::new(
                num_traits::Float::sqrt(r::<R>(binomial_f64(n, j))),
                R::zero(),
            );
        if coeff.norm_sqr() == R::zero() {
            continue;
        }
        let mut occ_plus = vec![0usize; space_plus.modes().len()];
        let mut occ_minus = vec![0usize; space_minus.modes().len()];
        if p_in_plus {
            occ_plus[p_pos] += j;
        } else {
            occ_minus[p_pos] += j;
        }
        if a_in_plus {
            occ_plus[a_pos] += n - j;
        } else {
            occ_minus[a_pos] += n - j;
        }
        specs.push(BranchSpec {
            coeff,
            occ_plus,
            occ_minus,
        });
    }
    SectorBranches::from_basis_branches(space_plus, space_minus, &specs)
}

/// Evolve the channel for one input and `N`, sized so that post-selection up
/// to `m_max` quanta is resolved. This is the expensive step; reuse the
/// result across `M` values via [`clone_outcome_from_state`].
pub fn simulate_region_states<R: LinalgReal>(
    channel: &CloningChannel<R>,
    input: &LogicalQubit<R>,
    n: usize,
    m_max: usize,
    opts: &SimOptions<R>,
) -> Result<EvolvedChannelState<R>> {
    let beta2 = channel.beta2();
    let n_max = match opts.n_max_override {
        Some(n_max) => n_max,
        None => choose_truncation(beta2, n, m_max, opts.tol, opts.n_max_ceiling)?,
    };
    let (space_plus, space_minus, h_plus, h_minus) = match channel {
        CloningChannel::EarlyParticle(p) | CloningChannel::EarlyAntiparticle(p) => {
            let sp = FockSpace::pair(Sector::Plus, n_max)?;
            let sm = FockSpace::pair(Sector::Minus, n_max)?;
            let hp = BosonicHamiltonian::early(&sp, Sector::Plus, p.squeeze_gain)?;
            let hm = BosonicHamiltonian::early(&sm, Sector::Minus, p.squeeze_gain)?;
            (sp, sm, hp, hm)
        }
        CloningChannel::Late(p) => {
            let cc = couplings_from_params(p)?;
            let sp = FockSpace::triple(Sector::Plus, n_max)?;
            let sm = FockSpace::triple(Sector::Minus, n_max)?;
            let hp = BosonicHamiltonian::late(&sp, Sector::Plus, &cc)?;
            let hm = BosonicHamiltonian::late(&sm, Sector::Minus, &cc)?;
            (sp, sm, hp, hm)
        }
    };
    let branches = input_branches(channel, input, n, &space_plus, &space_minus)?;
    let evolved = branches.evolve(&h_plus, &h_minus)?;
    let mut region1 = region1_reduced_state(&evolved)?;
    let q = beta2 / (R::one() + beta2);
    region1.raise_tail_mass(negative_binomial_tail_bound(q, n, n_max));
    Ok(EvolvedChannelState {
        input: *input,
        n,
        branches: evolved,
        region1,
        n_max,
    })
}

/// Post-select `M` region-I quanta on an evolved state and reduce both
/// regions to their single-copy qubits.
pub fn clone_outcome_from_state<R: LinalgReal>(
    state: &EvolvedChannelState<R>,
    m: usize,
) -> Result<SimOutcome<R>> {
    let (block, prob) = state.region1.postselect_total(m)?;
    let clone_qubit = dicke_single_clone(&block)?;
    let fidelity = clone_qubit.fidelity(&state.input);
    let (region2, _) = region2_conditional_state(&state.branches, m)?;
    let anticlone_qubit = count_averaged_qubit(&region2)?;
    let anticlone_fidelity = anticlone_qubit
        .as_ref()
        .map(|q| q.fidelity(&state.input.orthogonal()));
    let report = CloneReport {
        n: state.n,
        m,
        fidelity,
        anticlone_fidelity,
        postselect_probability: Some(prob),
        method: Method::Simulated,
        n_max: Some(state.n_max),
        basis_dim: Some(state.branches.space_plus().dim()),
        tail_mass: state.tail_mass(),
    };
    Ok(SimOutcome {
        report,
        clone_qubit,
        anticlone_qubit,
    })
}

/// Average the single-copy reduction of a region state over its total-count
/// blocks (weighted by their probabilities, skipping the empty block).
/// Returns `None` if all mass sits on zero quanta.
fn count_averaged_qubit<R: Real>(region: &RegionDensity<R>) -> Result<Option<QubitDensityMatrix<R>>> {
    let counts = region.total_count_distribution()?;
    let floor = {
        let t = crate::scalar::strict_tol::<R>();
        t * t
    };
    let zero = Complex::new(R::zero(), R::zero());
    let (mut one_one, mut one_zero, mut zero_one, mut zero_zero) = (zero, zero, zero, zero);
    let mut weight = R::zero();
    for t in 1..counts.len() {
        let p_t = counts.prob(t);
        if p_t <= floor {
            continue;
        }
        let (block, p_block) = region.postselect_total(t)?;
        let q = dicke_single_clone(&block)?;
        let w = Complex::new(p_block, R::zero());
        one_one = one_one + q.one_one() * w;
        one_zero = one_zero + q.one_zero() * w;
        zero_one = zero_one + q.zero_one() * w;
        zero_zero = zero_zero + q.zero_zero() * w;
        weight = weight + p_block;
    }
    if weight <= floor {
        return Ok(None);
    }
    let inv = Complex::new(R::one() / weight, R::zero());
    Ok(Some(QubitDensityMatrix::from_parts(
        one_one * inv,
        one_zero * inv,
        zero_one * inv,
        zero_zero * inv,
    )))
}

/// One-shot `N -> M` simulation with full outcome detail.
pub fn simulate_clone_outcome<R: LinalgReal>(
    channel: &CloningChannel<R>,
    input: &LogicalQubit<R>,
    n: usize,
    m: usize,
    opts: &SimOptions<R>,
) -> Result<SimOutcome<R>> {
    let state = simulate_region_states(channel, input, n, m, opts)?;
    clone_outcome_from_state(&state, m)
}

/// One-shot `N -> M` simulation, reporting fidelities and diagnostics only.
pub fn simulate_clone_fidelity<R: LinalgReal>(
    channel: &CloningChannel<R>,
    input: &LogicalQubit<R>,
    n: usize,
    m: usize,
    opts: &SimOptions<R>,
) -> Result<CloneReport<R>> {
    Ok(simulate_clone_outcome(channel, input, n, m, opts)?.report)
}

/// Fidelity reports for a whole range of `M` values from a single evolution.
pub fn n_to_m_fidelity_curve<R: LinalgReal>(
    channel: &CloningChannel<R>,
    input: &LogicalQubit<R>,
    n: usize,
    m_values: &[usize],
    opts: &SimOptions<R>,
) -> Result<Vec<CloneReport<R>>> {
    let m_max = m_values.iter().copied().max().unwrap_or(0);
    let state = simulate_region_states(channel, input, n, m_max, opts)?;
    m_values
        .iter()
        .map(|&m| Ok(clone_outcome_from_state(&state, m)?.report))
        .collect()
}

/// The canonical input family used to probe universality.
pub fn canonical_inputs<R: Real>() -> [LogicalQubit<R>; 4] {
    [
        LogicalQubit::particle(),
        LogicalQubit::antiparticle(),
        LogicalQubit::superposition_plus(),
        LogicalQubit::superposition_plus_i(),
    ]
}

/// Spread (max minus min) of the simulated clone fidelity over the four
/// canonical inputs, plus the individual fidelities in canonical order.
pub fn universality_spread<R: LinalgReal>(
    channel: &CloningChannel<R>,
    n: usize,
    m: usize,
    opts: &SimOptions<R>,
) -> Result<(R, [R; 4])> {
    let mut fids = [R::zero(); 4];
    for (slot, input) in fids.iter_mut().zip(canonical_inputs::<R>()) {
        *slot = simulate_clone_fidelity(channel, &input, n, m, opts)?.fidelity;
    }
    let mut lo = fids[0];
    let mut hi = fids[0];
    for &f in &fids[1..] {
        if f < lo {
            lo = f;
        }
        if f > hi {
            hi = f;
        }
    }
    Ok((hi - lo, fids))
}
