//! The measure layer: assembles the maximal product overlap into
//! `G = sqrt(1 - P_max)`, sweeps all partitions of a given party count for
//! `G_m`, and builds the monotone profile `G_1 <= G_2 <= .. <= G_n`.
//!
//! `P_max` is computed by the cheapest valid route: trivially 1 for a single
//! party, the spectral reduction for two parties, closed forms for states
//! tagged as GHZ or W by their constructors when the partition family is
//! recognized, and the coordinate-ascent optimizer otherwise. Tag matching
//! is deliberate: states read from files or transformed numerically always
//! take the optimizer (or spectral) route, so nothing is ever recognized by
//! sniffing amplitude patterns.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::optimizer::{optimize, OptResult, OptimizerConfig};
use crate::oracles::{bipartite_pmax, ghz_pmax, w_pmax, WPartitionKind};
use crate::partition::{enumerate_partitions, stirling2, Partition};
use crate::state::{PureState, StateFamily};

/// Default cap on `S(n, m)` accepted by the `G_m` partition sweeps.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 100_000;

/// Tolerance used when checking the `G_m <= G_{m+1}` profile ordering.
pub const MONOTONE_TOL: f64 = 1e-6;

/// Which route produced a `P_max` value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Analytic,
    Spectral,
    Optimizer,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Analytic => write!(f, "analytic"),
            Method::Spectral => write!(f, "spectral"),
            Method::Optimizer => write!(f, "optimizer"),
        }
    }
}

/// `P_max` and `G` for one state and one partition.
#[derive(Debug, Clone)]
pub struct MeasureResult {
    pub pmax: f64,
    pub g: f64,
    pub partition: Partition,
    pub method: Method,
    /// Optimizer trace when `method == Optimizer`.
    pub trace: Option<OptResult>,
}

impl MeasureResult {
    fn new(pmax: f64, partition: Partition, method: Method, trace: Option<OptResult>) -> Self {
        // Guard the square root against 1 + epsilon round-off.
        let clamped = pmax.clamp(0.0, 1.0);
        Self {
            pmax: clamped,
            g: (1.0 - clamped).sqrt(),
            partition,
            method,
            trace,
        }
    }

    /// False only when the optimizer ran and hit `max_sweeps` on every
    /// restart.
    pub fn converged(&self) -> bool {
        self.trace.as_ref().map_or(true, |t| t.converged)
    }
}

fn w_partition_kind(partition: &Partition) -> Option<WPartitionKind> {
    let n = partition.n();
    let m = partition.m();
    if m == n {
        return Some(WPartitionKind::FullSplit);
    }
    if m == 2 {
        return Some(WPartitionKind::KVsRest(partition.blocks()[0].len()));
    }
    let singles = partition.blocks().iter().filter(|b| b.len() == 1).count();
    if singles == m - 1 {
        return Some(WPartitionKind::OneQubitParties(m));
    }
    None
}

/// The measure `G = sqrt(1 - P_max)` of `state` for `partition`.
pub fn groverian(
    state: &PureState,
    partition: &Partition,
    config: &OptimizerConfig,
) -> Result<MeasureResult> {
    if state.n() != partition.n() {
        return Err(Error::SizeMismatch {
            state_qubits: state.n(),
            partition_qubits: partition.n(),
        });
    }
    let m = partition.m();
    if m == 1 {
        return Ok(MeasureResult::new(
            1.0,
            partition.clone(),
            Method::Analytic,
            None,
        ));
    }
    if m == 2 {
        let pmax = bipartite_pmax(state, partition)?;
        return Ok(MeasureResult::new(
            pmax,
            partition.clone(),
            Method::Spectral,
            None,
        ));
    }
    match state.family() {
        Some(StateFamily::Ghz { a0, a1 }) => {
            // Partition-independent for every m >= 2.
            let pmax = ghz_pmax(*a0, *a1)?;
            return Ok(MeasureResult::new(
                pmax,
                partition.clone(),
                Method::Analytic,
                None,
            ));
        }
        Some(StateFamily::W) => {
            if let Some(kind) = w_partition_kind(partition) {
                if let Some(pmax) = w_pmax(state.n(), kind)? {
                    return Ok(MeasureResult::new(
                        pmax,
                        partition.clone(),
                        Method::Analytic,
                        None,
                    ));
                }
            }
        }
        None => {}
    }
    let trace = optimize(state, partition, config)?;
    Ok(MeasureResult::new(
        trace.pmax,
        partition.clone(),
        Method::Optimizer,
        Some(trace),
    ))
}

/// One entry of a `G_m` sweep: the maximizing partition among all
/// partitions into `m` parties.
#[derive(Debug, Clone)]
pub struct GmEntry {
    pub m: usize,
    pub pmax: f64,
    pub g: f64,
    pub partition: Partition,
    pub method: Method,
}

/// `G_m`: the maximum of `G` over every partition of the state's qubits
/// into `m` parties, with the default enumeration budget.
pub fn g_m(state: &PureState, m: usize, config: &OptimizerConfig) -> Result<GmEntry> {
    g_m_budgeted(state, m, config, DEFAULT_ENUMERATION_BUDGET).map(|(entry, _)| entry)
}

/// [`g_m`] with an explicit cap on the number of partitions enumerated.
/// Also reports whether every optimizer evaluation in the sweep converged.
pub fn g_m_budgeted(
    state: &PureState,
    m: usize,
    config: &OptimizerConfig,
    budget: u64,
) -> Result<(GmEntry, bool)> {
    let n = state.n();
    if m == 0 || m > n {
        return Err(Error::PartyCountOutOfRange { m, n });
    }
    let required = stirling2(n, m);
    if required > budget {
        return Err(Error::EnumerationBudgetExceeded { required, budget });
    }
    let partitions = enumerate_partitions(n, m)?;
    let results: Vec<MeasureResult> = partitions
        .par_iter()
        .map(|p| groverian(state, p, config))
        .collect::<Result<_>>()?;
    let all_converged = results.iter().all(|r| r.converged());
    // Strict comparison keeps the first partition in canonical order on ties.
    let mut best = 0usize;
    for i in 1..results.len() {
        if results[i].g > results[best].g {
            best = i;
        }
    }
    let winner = &results[best];
    Ok((
        GmEntry {
            m,
            pmax: winner.pmax,
            g: winner.g,
            partition: winner.partition.clone(),
            method: winner.method,
        },
        all_converged,
    ))
}

/// The `G_m` profile over every party count `m = 1..n`.
#[derive(Debug, Clone)]
pub struct GmProfile {
    pub n: usize,
    /// One entry per `m`, ascending.
    pub entries: Vec<GmEntry>,
    /// Ordering violations beyond [`MONOTONE_TOL`]; empty on converged runs.
    pub warnings: Vec<String>,
    /// False when some optimizer evaluation hit `max_sweeps` on every
    /// restart.
    pub all_converged: bool,
}

impl GmProfile {
    pub fn is_monotone(&self) -> bool {
        self.warnings.is_empty()
    }
}

/// Sweeps `g_m` for every `m`, checking the expected ordering
/// `G_m <= G_{m+1}`. A violation beyond [`MONOTONE_TOL`] is recorded as a
/// warning; it indicates insufficient restarts, not a property of the
/// measure.
pub fn gm_profile(state: &PureState, config: &OptimizerConfig) -> Result<GmProfile> {
    gm_profile_budgeted(state, config, DEFAULT_ENUMERATION_BUDGET)
}

/// [`gm_profile`] with an explicit enumeration budget per party count.
pub fn gm_profile_budgeted(
    state: &PureState,
    config: &OptimizerConfig,
    budget: u64,
) -> Result<GmProfile> {
    let n = state.n();
    let mut entries = Vec::with_capacity(n);
    let mut all_converged = true;
    for m in 1..=n {
        let (entry, converged) = g_m_budgeted(state, m, config, budget)?;
        all_converged &= converged;
        entries.push(entry);
    }
    let mut warnings = Vec::new();
    for pair in entries.windows(2) {
        if pair[0].g > pair[1].g + MONOTONE_TOL {
            warnings.push(format!(
                "G_{} = {} exceeds G_{} = {}; increase restarts",
                pair[0].m, pair[0].g, pair[1].m, pair[1].g
            ));
        }
    }
    Ok(GmProfile {
        n,
        entries,
        warnings,
        all_converged,
    })
}

/// One cell of the W-family success-probability table.
#[derive(Debug, Clone)]
pub struct TableCell {
    pub m: usize,
    pub n: usize,
    pub pmax: f64,
    pub g: f64,
    pub method: Method,
    pub converged: bool,
}

/// `P_max` of the `n`-qubit W state for the partition with `m - 1`
/// single-qubit parties plus the rest, for all `1 <= m <= n <= n_max`.
pub fn w_table(n_max: usize, config: &OptimizerConfig) -> Result<Vec<TableCell>> {
    if !(2..=7).contains(&n_max) {
        return Err(Error::Domain(format!(
            "the W table is defined for n_max in 2..=7, got {n_max}"
        )));
    }
    let mut cells = Vec::new();
    for n in 1..=n_max {
        let state = crate::state::make_w(n)?;
        for m in 1..=n {
            let partition = Partition::single_qubit_plus_rest(n, m)?;
            let result = groverian(&state, &partition, config)?;
            cells.push(TableCell {
                m,
                n,
                pmax: result.pmax,
                g: result.g,
                method: result.method,
                converged: result.converged(),
            });
        }
    }
    Ok(cells)
}
