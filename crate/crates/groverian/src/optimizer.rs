//! Maximization of the squared overlap between a pure state and the product
//! states of a partition, by randomized coordinate ascent with closed-form
//! single-coordinate updates.
//!
//! The overlap is `f = <phi_1| (x) .. (x) <phi_m | psi>`. Exposing the
//! leftmost coordinate pair `(t_0, g_0)` of one party and fixing everything
//! else, the *conjugated* overlap is linear in the pair:
//!
//! ```text
//! conj(f)(t_0, g_0) = c_0 sin t_0 + e^{i g_0} d_0 cos t_0
//! ```
//!
//! whose squared magnitude is maximized at the value `|c_0|^2 + |d_0|^2`,
//! attained by
//!
//! ```text
//! sin t_0 = |c_0| / sqrt(|c_0|^2 + |d_0|^2)
//! cos t_0 = |d_0| / sqrt(|c_0|^2 + |d_0|^2)
//! g_0     = arg c_0 - arg d_0
//! ```
//!
//! (Cauchy-Schwarz gives the bound; the assignment above aligns the two
//! terms in phase and saturates it.) Since `|conj(f)| = |f|`, each update
//! also maximizes the overlap magnitude itself, so the ascent on `|f|^2` is
//! monotone. One ascent repeats: pick a party and a basis state, rotate the
//! party's parametrization so that state is leftmost, read off `(c_0, d_0)`,
//! and reset the leftmost pair. Independent random restarts guard against
//! the local maxima of the non-convex landscape.
//!
//! A whole-party update is also provided: replacing one party's state with
//! the normalized partial contraction of the state against all other parties
//! is the single best move for that party, one step of a higher-order power
//! iteration. It accelerates convergence and cross-checks the
//! single-coordinate scheme.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::product::{PartyParams, ProductParams};
use crate::state::PureState;

/// Coefficients of the conjugated overlap viewed as a function of one
/// party's leftmost coordinate pair: `c_0` multiplies `sin t_0`, `d_0`
/// multiplies `e^{i g_0} cos t_0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearCoefficients {
    pub c0: Complex64,
    pub d0: Complex64,
}

impl LinearCoefficients {
    /// Evaluates `c_0 sin t_0 + e^{i g_0} d_0 cos t_0`.
    pub fn reconstruct(&self, theta0: f64, gamma0: f64) -> Complex64 {
        self.c0 * theta0.sin() + Complex64::from_polar(1.0, gamma0) * self.d0 * theta0.cos()
    }
}

/// How one ascent sweep updates the parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateMode {
    /// Uniformly random single-coordinate updates (the reference scheme).
    Coordinate,
    /// Cyclic whole-party updates (higher-order power iteration).
    Party,
    /// One cyclic party pass followed by a coordinate pass per sweep.
    Hybrid,
}

impl std::str::FromStr for UpdateMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coordinate" => Ok(Self::Coordinate),
            "party" => Ok(Self::Party),
            "hybrid" => Ok(Self::Hybrid),
            _ => Err(Error::InvalidConfig(format!(
                "unknown update mode \"{s}\" (expected coordinate, party or hybrid)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Independent ascents from random initial product states.
    pub restarts: usize,
    /// Hard cap on sweeps per restart.
    pub max_sweeps: usize,
    /// Relative improvement of `|f|^2` over one sweep below which the
    /// restart is declared converged.
    pub tol: f64,
    pub seed: u64,
    pub update_mode: UpdateMode,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 20,
            max_sweeps: 10_000,
            tol: 1e-12,
            seed: 0,
            update_mode: UpdateMode::Coordinate,
        }
    }
}

impl OptimizerConfig {
    fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be at least 1".into()));
        }
        if self.max_sweeps == 0 {
            return Err(Error::InvalidConfig("max_sweeps must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig("tol must be positive".into()));
        }
        Ok(())
    }
}

/// Result of one closed-form coordinate update.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoordinateUpdate {
    pub theta0: f64,
    pub gamma0: f64,
    /// `|c_0|^2 + |d_0|^2`, the overlap magnitude squared after the update.
    pub new_abs_f_sq: f64,
    /// Set when `c_0 = d_0 = 0`: the overlap vanishes identically in this
    /// coordinate, the angles are meaningless and the caller should skip
    /// the assignment and resample.
    pub degenerate: bool,
}

/// Outcome of [`optimize`].
#[derive(Debug, Clone)]
pub struct OptResult {
    /// Best `|f|^2` over all restarts.
    pub pmax: f64,
    /// The product parameters achieving `pmax`.
    pub argmax: ProductParams,
    /// Sweeps used by the restart that achieved `pmax`.
    pub sweeps_used: usize,
    /// Final `|f|^2` of every restart, in restart order.
    pub restart_values: Vec<f64>,
    /// True when at least one restart converged before `max_sweeps`.
    pub converged: bool,
}

/// Per-party lookup from global basis index to local basis index.
struct ContractionPlan {
    locals: Vec<Vec<u16>>,
}

impl ContractionPlan {
    fn new(partition: &Partition) -> Self {
        let size = 1usize << partition.n();
        let locals = (0..partition.m())
            .map(|k| {
                (0..size)
                    .map(|i| partition.local_index(k, i) as u16)
                    .collect()
            })
            .collect();
        Self { locals }
    }
}

fn check_size(state: &PureState, partition: &Partition) -> Result<()> {
    if state.n() != partition.n() {
        return Err(Error::SizeMismatch {
            state_qubits: state.n(),
            partition_qubits: partition.n(),
        });
    }
    Ok(())
}

fn contract(plan: &ContractionPlan, psi: &[Complex64], party_amps: &[Vec<Complex64>]) -> Complex64 {
    let mut acc = Complex64::ZERO;
    for (i, &psi_i) in psi.iter().enumerate() {
        let mut prod = psi_i;
        for (k, amps) in party_amps.iter().enumerate() {
            prod *= amps[plan.locals[k][i] as usize].conj();
        }
        acc += prod;
    }
    acc
}

/// Contracts every party except `target`, leaving a ket over the target
/// party's basis: `w[p] = sum_{i : local(i) = p} psi_i prod_{k != target}
/// conj(phi_k)`. The full overlap is then `sum_p conj(phi_target[p]) w[p]`.
fn partial_contraction(
    plan: &ContractionPlan,
    psi: &[Complex64],
    party_amps: &[Vec<Complex64>],
    target: usize,
) -> Vec<Complex64> {
    let mut w = vec![Complex64::ZERO; party_amps[target].len()];
    for (i, &psi_i) in psi.iter().enumerate() {
        let mut prod = psi_i;
        for (k, amps) in party_amps.iter().enumerate() {
            if k != target {
                prod *= amps[plan.locals[k][i] as usize].conj();
            }
        }
        w[plan.locals[target][i] as usize] += prod;
    }
    w
}

/// Reads `(c_0, d_0)` for the leftmost coordinate of `party` from the
/// partial contraction `w`: `d_0` is the conjugated overlap at
/// `t_0 = 0, g_0 = 0` (the party sits in its leftmost basis state) and
/// `c_0` at `t_0 = pi/2` (the party sits in the rest-state spanned by the
/// remaining nesting slots).
fn coefficients_from_contraction(party: &PartyParams, w: &[Complex64]) -> LinearCoefficients {
    let order = party.order();
    let d0 = w[order[0]].conj();
    let mut probe = party.clone();
    probe.set_leftmost(std::f64::consts::FRAC_PI_2, 0.0);
    let rest = probe.to_amplitudes();
    let mut at_pi_2 = Complex64::ZERO;
    for &b in order.iter().skip(1) {
        at_pi_2 += rest[b].conj() * w[b];
    }
    LinearCoefficients {
        c0: at_pi_2.conj(),
        d0,
    }
}

/// The overlap `f = <phi_1| (x) .. (x) <phi_m | psi>`: the contraction of
/// the conjugated per-party amplitude vectors against the state.
pub fn overlap(state: &PureState, params: &ProductParams) -> Result<Complex64> {
    check_size(state, params.partition())?;
    let plan = ContractionPlan::new(params.partition());
    let amps: Vec<Vec<Complex64>> = params.parties().iter().map(|p| p.to_amplitudes()).collect();
    Ok(contract(&plan, state.amplitudes(), &amps))
}

/// Extracts the linear coefficients of the conjugated overlap in the
/// leftmost coordinate pair of `party`, all other parameters fixed. Rotate
/// the party first if a different basis state should be exposed.
pub fn extract_coefficients(
    state: &PureState,
    params: &ProductParams,
    party: usize,
) -> Result<LinearCoefficients> {
    check_size(state, params.partition())?;
    if party >= params.parties().len() {
        return Err(Error::IndexOutOfRange {
            index: party,
            dim: params.parties().len(),
        });
    }
    let plan = ContractionPlan::new(params.partition());
    let amps: Vec<Vec<Complex64>> = params.parties().iter().map(|p| p.to_amplitudes()).collect();
    let w = partial_contraction(&plan, state.amplitudes(), &amps, party);
    Ok(coefficients_from_contraction(params.party(party), &w))
}

/// Closed-form single-coordinate update: returns the angles maximizing the
/// overlap magnitude in the exposed pair and the attained `|f|^2 =
/// |c_0|^2 + |d_0|^2`.
pub fn coordinate_update(coeffs: &LinearCoefficients) -> CoordinateUpdate {
    let c_sq = coeffs.c0.norm_sqr();
    let d_sq = coeffs.d0.norm_sqr();
    let new_abs_f_sq = c_sq + d_sq;
    if new_abs_f_sq == 0.0 {
        return CoordinateUpdate {
            theta0: 0.0,
            gamma0: 0.0,
            new_abs_f_sq: 0.0,
            degenerate: true,
        };
    }
    CoordinateUpdate {
        theta0: c_sq.sqrt().atan2(d_sq.sqrt()),
        gamma0: coeffs.c0.arg() - coeffs.d0.arg(),
        new_abs_f_sq,
        degenerate: false,
    }
}

/// Outcome of a whole-party update.
#[derive(Debug, Clone)]
pub struct PartyUpdate {
    pub params: ProductParams,
    pub new_abs_f_sq: f64,
    /// Set when the partial contraction vanished; the party was left
    /// unchanged.
    pub degenerate: bool,
}

/// Replaces `party`'s state with the normalized partial contraction of the
/// state against all other parties' conjugated states — the optimal update
/// for that party with everything else fixed. `|f|` after the update equals
/// the norm of the partial contraction, so `|f|^2` never decreases.
pub fn party_update(state: &PureState, params: &ProductParams, party: usize) -> Result<PartyUpdate> {
    check_size(state, params.partition())?;
    if party >= params.parties().len() {
        return Err(Error::IndexOutOfRange {
            index: party,
            dim: params.parties().len(),
        });
    }
    let plan = ContractionPlan::new(params.partition());
    let amps: Vec<Vec<Complex64>> = params.parties().iter().map(|p| p.to_amplitudes()).collect();
    let w = partial_contraction(&plan, state.amplitudes(), &amps, party);
    let norm_sq: f64 = w.iter().map(|c| c.norm_sqr()).sum();
    if norm_sq == 0.0 {
        return Ok(PartyUpdate {
            params: params.clone(),
            new_abs_f_sq: 0.0,
            degenerate: true,
        });
    }
    let scale = 1.0 / norm_sq.sqrt();
    let v: Vec<Complex64> = w.iter().map(|c| c * scale).collect();
    let new_party = PartyParams::from_amplitudes(&v, params.party(party).order())?;
    let mut out = params.clone();
    *out.party_mut(party) = new_party;
    Ok(PartyUpdate {
        params: out,
        new_abs_f_sq: norm_sq,
        degenerate: false,
    })
}

struct Ascent<'a> {
    psi: &'a [Complex64],
    plan: &'a ContractionPlan,
    params: ProductParams,
    party_amps: Vec<Vec<Complex64>>,
    f_sq: f64,
}

impl<'a> Ascent<'a> {
    fn new(psi: &'a [Complex64], plan: &'a ContractionPlan, params: ProductParams) -> Self {
        let party_amps: Vec<Vec<Complex64>> =
            params.parties().iter().map(|p| p.to_amplitudes()).collect();
        let f_sq = contract(plan, psi, &party_amps).norm_sqr();
        Self {
            psi,
            plan,
            params,
            party_amps,
            f_sq,
        }
    }

    fn coordinate_step<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let m = self.party_amps.len();
        let party = rng.random_range(0..m);
        let dim = self.params.party(party).dim();
        let p = rng.random_range(0..dim);
        let rotated = self
            .params
            .party(party)
            .rotate_leftmost(p)
            .expect("basis index drawn within the party dimension");
        // Rotation leaves the amplitude vector unchanged, so the cached
        // party amplitudes stay valid for the contraction below.
        *self.params.party_mut(party) = rotated;
        let w = partial_contraction(self.plan, self.psi, &self.party_amps, party);
        let coeffs = coefficients_from_contraction(self.params.party(party), &w);
        let upd = coordinate_update(&coeffs);
        if upd.degenerate {
            return;
        }
        let pp = self.params.party_mut(party);
        pp.set_leftmost(upd.theta0, upd.gamma0);
        self.party_amps[party] = pp.to_amplitudes();
        self.f_sq = upd.new_abs_f_sq;
    }

    fn party_pass(&mut self) {
        for k in 0..self.party_amps.len() {
            let w = partial_contraction(self.plan, self.psi, &self.party_amps, k);
            let norm_sq: f64 = w.iter().map(|c| c.norm_sqr()).sum();
            if norm_sq == 0.0 {
                continue;
            }
            let scale = 1.0 / norm_sq.sqrt();
            let v: Vec<Complex64> = w.iter().map(|c| c * scale).collect();
            let new_party = PartyParams::from_amplitudes(&v, self.params.party(k).order())
                .expect("partial contraction has non-zero norm");
            self.party_amps[k] = new_party.to_amplitudes();
            *self.params.party_mut(k) = new_party;
            self.f_sq = norm_sq;
        }
    }
}

struct RestartOutcome {
    value: f64,
    params: ProductParams,
    sweeps_used: usize,
    converged: bool,
}

/// Maximizes `|f|^2` over product states of the partition.
///
/// Runs `config.restarts` independent ascents from per-party states drawn
/// uniformly from the unit sphere. A sweep is `sum_k dim_k` coordinate
/// updates (coordinate mode), one cyclic party pass (party mode), or both
/// (hybrid); a restart stops once the relative improvement of `|f|^2` over a
/// sweep drops below `config.tol` or `config.max_sweeps` is hit. The result
/// is reproducible for a given seed; restarts draw from independent streams
/// and may run in parallel.
pub fn optimize(
    state: &PureState,
    partition: &Partition,
    config: &OptimizerConfig,
) -> Result<OptResult> {
    config.validate()?;
    check_size(state, partition)?;
    let plan = ContractionPlan::new(partition);
    let sweep_len: usize = (0..partition.m()).map(|k| partition.party_dim(k)).sum();

    let run_one = |restart: usize| -> RestartOutcome {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(restart as u64 + 1);
        let params = ProductParams::random(partition, &mut rng);
        let mut ascent = Ascent::new(state.amplitudes(), &plan, params);
        let mut sweeps_used = 0;
        let mut converged = false;
        for sweep in 1..=config.max_sweeps {
            let prev = ascent.f_sq;
            match config.update_mode {
                UpdateMode::Coordinate => {
                    for _ in 0..sweep_len {
                        ascent.coordinate_step(&mut rng);
                    }
                }
                UpdateMode::Party => ascent.party_pass(),
                UpdateMode::Hybrid => {
                    ascent.party_pass();
                    for _ in 0..sweep_len {
                        ascent.coordinate_step(&mut rng);
                    }
                }
            }
            sweeps_used = sweep;
            let rel = (ascent.f_sq - prev) / prev.max(f64::MIN_POSITIVE);
            if rel < config.tol {
                converged = true;
                break;
            }
        }
        RestartOutcome {
            value: ascent.f_sq,
            params: ascent.params,
            sweeps_used,
            converged,
        }
    };

    let mut outcomes: Vec<RestartOutcome> = if config.restarts == 1 {
        vec![run_one(0)]
    } else {
        (0..config.restarts).into_par_iter().map(run_one).collect()
    };

    let restart_values: Vec<f64> = outcomes.iter().map(|o| o.value).collect();
    let converged = outcomes.iter().any(|o| o.converged);
    let mut best = 0;
    for i in 1..outcomes.len() {
        if outcomes[i].value > outcomes[best].value {
            best = i;
        }
    }
    let chosen = outcomes.swap_remove(best);
    Ok(OptResult {
        pmax: chosen.value,
        argmax: chosen.params,
        sweeps_used: chosen.sweeps_used,
        restart_values,
        converged,
    })
}
