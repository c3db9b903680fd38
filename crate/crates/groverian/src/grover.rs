//! Exact dense simulation of Grover iterations.
//!
//! One iteration flips the sign of the marked amplitude, then inverts every
//! amplitude about the mean. The dynamics stay in the plane spanned by the
//! marked state and the equal superposition; starting from an arbitrary
//! state `|psi>` and running the optimal number of iterations, the success
//! probability is `|<eta|psi>|^2` up to a remainder of order `1/N`. This
//! module measures that remainder.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{make_random_state, MarkedElement, PureState};

/// `floor(pi/4 sqrt(2^n))`, the iteration count that rotates the equal
/// superposition onto the marked state.
pub fn optimal_iterations(n: usize) -> usize {
    (std::f64::consts::FRAC_PI_4 * ((1usize << n) as f64).sqrt()).floor() as usize
}

/// `|<eta|psi>|^2`, the squared overlap with the equal superposition.
pub fn eta_overlap_sq(state: &PureState) -> f64 {
    let sum: Complex64 = state.amplitudes().iter().sum();
    sum.norm_sqr() / state.dim() as f64
}

fn apply_iteration(amps: &mut [Complex64], marked: usize) {
    amps[marked] = -amps[marked];
    let mean: Complex64 = amps.iter().sum::<Complex64>() / amps.len() as f64;
    for a in amps.iter_mut() {
        *a = 2.0 * mean - *a;
    }
}

/// A single Grover iteration (phase flip of the marked amplitude, then
/// inversion about the mean).
pub fn grover_iteration(state: &PureState, marked: MarkedElement) -> Result<PureState> {
    if marked.index >= state.dim() {
        return Err(Error::IndexOutOfRange {
            index: marked.index,
            dim: state.dim(),
        });
    }
    let mut amps = state.amplitudes().to_vec();
    apply_iteration(&mut amps, marked.index);
    PureState::new(state.n(), amps)
}

/// One full Grover run.
#[derive(Debug, Clone)]
pub struct GroverRun {
    pub n: usize,
    pub marked: MarkedElement,
    pub iterations: usize,
    pub initial: PureState,
    /// `|amplitude of the marked index in the final state|^2`.
    pub success_probability: f64,
}

/// Applies `iterations` Grover iterations to `initial` and records the
/// probability of measuring the marked index.
pub fn grover_run(
    initial: &PureState,
    marked: MarkedElement,
    iterations: usize,
) -> Result<GroverRun> {
    if marked.index >= initial.dim() {
        return Err(Error::IndexOutOfRange {
            index: marked.index,
            dim: initial.dim(),
        });
    }
    let mut amps = initial.amplitudes().to_vec();
    for _ in 0..iterations {
        apply_iteration(&mut amps, marked.index);
    }
    Ok(GroverRun {
        n: initial.n(),
        marked,
        iterations,
        initial: initial.clone(),
        success_probability: amps[marked.index].norm_sqr(),
    })
}

/// Deviations between measured success probabilities and the overlap law.
#[derive(Debug, Clone)]
pub struct OverlapLawReport {
    pub n: usize,
    pub trials: usize,
    /// `|P_s - |<eta|psi>|^2|` per trial.
    pub deviations: Vec<f64>,
    pub max_deviation: f64,
    /// Smallest `c` with `max_deviation <= c / 2^n`.
    pub fitted_c: f64,
}

/// Runs the search at the optimal iteration count for `trials` states —
/// the given one first, then seeded random states of the same size — and
/// compares each success probability against `|<eta|psi>|^2`.
pub fn validate_overlap_law(
    psi: &PureState,
    marked: MarkedElement,
    trials: usize,
    seed: u64,
) -> Result<OverlapLawReport> {
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    let n = psi.n();
    let iterations = optimal_iterations(n);
    let mut deviations = Vec::with_capacity(trials);
    for trial in 0..trials {
        let state = if trial == 0 {
            psi.clone()
        } else {
            make_random_state(n, seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))?
        };
        let run = grover_run(&state, marked, iterations)?;
        deviations.push((run.success_probability - eta_overlap_sq(&state)).abs());
    }
    let max_deviation = deviations.iter().cloned().fold(0.0, f64::max);
    Ok(OverlapLawReport {
        n,
        trials,
        deviations,
        max_deviation,
        fitted_c: max_deviation * (1usize << n) as f64,
    })
}
