//! Independent ground truth for the optimizer.
//!
//! Three routes that never touch the coordinate-ascent machinery:
//!
//! * the bipartite spectral reduction — for two parties the maximal product
//!   overlap equals the largest eigenvalue of either reduced density matrix,
//!   computed here as the largest squared singular value of the amplitude
//!   vector reshaped into a matrix;
//! * a brute-force grid search over the angle parameters of tiny systems;
//! * closed forms for the generalized GHZ and W families.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::product::nested_amplitudes;
use crate::state::{PureState, NORM_TOL};

/// Largest grid dimension count accepted by [`grid_search_pmax`], measured
/// as the total parameter count `sum_k (2 dim_k - 1)` of the partition.
pub const GRID_PARAMETER_BUDGET: usize = 12;

/// Maximal product overlap of a two-party partition: the largest squared
/// singular value of the state reshaped into a `2^k x 2^(n-k)` matrix
/// (row index from the first block's qubits, column index from the second,
/// both in the global bit order).
pub fn bipartite_pmax(state: &PureState, partition: &Partition) -> Result<f64> {
    if partition.n() != state.n() {
        return Err(Error::SizeMismatch {
            state_qubits: state.n(),
            partition_qubits: partition.n(),
        });
    }
    if partition.m() != 2 {
        return Err(Error::InvalidPartition(format!(
            "spectral reduction needs exactly 2 blocks, got {}",
            partition.m()
        )));
    }
    let n = state.n();
    let row_block = &partition.blocks()[0];
    let col_block = &partition.blocks()[1];
    let rows = 1usize << row_block.len();
    let cols = 1usize << col_block.len();
    let psi = state.amplitudes();
    let matrix = DMatrix::from_fn(rows, cols, |r, c| {
        let mut g = 0usize;
        for (j, &q) in row_block.iter().enumerate() {
            g |= ((r >> (row_block.len() - 1 - j)) & 1) << (n - 1 - q);
        }
        for (j, &q) in col_block.iter().enumerate() {
            g |= ((c >> (col_block.len() - 1 - j)) & 1) << (n - 1 - q);
        }
        psi[g]
    });
    let sigma = matrix
        .singular_values()
        .iter()
        .cloned()
        .fold(0.0f64, f64::max);
    Ok(sigma * sigma)
}

struct GridAxis {
    lo: f64,
    hi: f64,
    /// Phase axes wrap around 2 pi and exclude the endpoint; angle axes are
    /// clamped to [0, pi/2] and include it.
    periodic: bool,
}

impl GridAxis {
    fn point(&self, idx: usize, steps: usize) -> f64 {
        if self.periodic {
            self.lo + (self.hi - self.lo) * idx as f64 / steps as f64
        } else {
            self.lo + (self.hi - self.lo) * idx as f64 / (steps - 1) as f64
        }
    }
}

/// Brute-force lower bound on the maximal product overlap.
///
/// Grids the nesting angles and relative phases of every party but the last
/// (each party's overall phase is irrelevant to `|f|^2` and is fixed to
/// zero); for each grid point the last party is solved exactly as the norm
/// of the partial contraction. After the global pass, three local refinement
/// passes shrink the grid around the best point. The result never exceeds
/// the true maximum and converges to it as `steps` grows.
pub fn grid_search_pmax(state: &PureState, partition: &Partition, steps: usize) -> Result<f64> {
    if partition.n() != state.n() {
        return Err(Error::SizeMismatch {
            state_qubits: state.n(),
            partition_qubits: partition.n(),
        });
    }
    if steps < 8 {
        return Err(Error::InvalidConfig(
            "grid search needs at least 8 steps per dimension".into(),
        ));
    }
    let param_count: usize = (0..partition.m())
        .map(|k| 2 * partition.party_dim(k) - 1)
        .sum();
    if param_count > GRID_PARAMETER_BUDGET {
        return Err(Error::ParameterBudgetExceeded {
            required: param_count,
            budget: GRID_PARAMETER_BUDGET,
        });
    }

    let n = state.n();
    let size = 1usize << n;
    let m = partition.m();
    let psi = state.amplitudes();
    let locals: Vec<Vec<usize>> = (0..m)
        .map(|k| (0..size).map(|i| partition.local_index(k, i)).collect())
        .collect();

    // Axes: for each gridded party, dim-1 nesting angles then dim-1
    // relative phases (gamma_1..), in party order.
    let gridded = m - 1;
    let mut axes: Vec<GridAxis> = Vec::new();
    let mut party_dims: Vec<usize> = Vec::new();
    for k in 0..gridded {
        let dim = partition.party_dim(k);
        party_dims.push(dim);
        for _ in 0..dim - 1 {
            axes.push(GridAxis {
                lo: 0.0,
                hi: std::f64::consts::FRAC_PI_2,
                periodic: false,
            });
        }
        for _ in 0..dim - 1 {
            axes.push(GridAxis {
                lo: 0.0,
                hi: std::f64::consts::TAU,
                periodic: true,
            });
        }
    }
    let last_dim = partition.party_dim(m - 1);

    let evaluate = |coords: &[f64]| -> f64 {
        // Build the gridded party amplitude vectors.
        let mut party_amps: Vec<Vec<Complex64>> = Vec::with_capacity(gridded);
        let mut offset = 0usize;
        for &dim in &party_dims {
            let thetas = &coords[offset..offset + dim - 1];
            let mut gammas = vec![0.0f64; dim];
            gammas[1..].copy_from_slice(&coords[offset + dim - 1..offset + 2 * (dim - 1)]);
            party_amps.push(nested_amplitudes(thetas, &gammas));
            offset += 2 * (dim - 1);
        }
        // Last party solved exactly: |f|^2 <= ||w||^2 with equality at
        // phi_last = w / ||w||.
        let mut w = vec![Complex64::ZERO; last_dim];
        for i in 0..size {
            let mut prod = psi[i];
            for (k, amps) in party_amps.iter().enumerate() {
                prod *= amps[locals[k][i]].conj();
            }
            w[locals[m - 1][i]] += prod;
        }
        w.iter().map(|c| c.norm_sqr()).sum()
    };

    if axes.is_empty() {
        // Single gridded-free configuration (m == 1): exact value.
        return Ok(evaluate(&[]));
    }

    let mut best_val = f64::NEG_INFINITY;
    let mut best_coords = vec![0.0f64; axes.len()];
    let refinements = 3usize;
    for pass in 0..=refinements {
        let mut idx = vec![0usize; axes.len()];
        let mut coords = vec![0.0f64; axes.len()];
        loop {
            for (d, axis) in axes.iter().enumerate() {
                coords[d] = axis.point(idx[d], steps);
            }
            let val = evaluate(&coords);
            if val > best_val {
                best_val = val;
                best_coords.copy_from_slice(&coords);
            }
            // Odometer increment.
            let mut d = 0;
            loop {
                idx[d] += 1;
                if idx[d] < steps {
                    break;
                }
                idx[d] = 0;
                d += 1;
                if d == axes.len() {
                    break;
                }
            }
            if d == axes.len() {
                break;
            }
        }
        if pass < refinements {
            // Shrink every axis to +-1.5 cells around the best point.
            for (d, axis) in axes.iter_mut().enumerate() {
                let span = axis.hi - axis.lo;
                let cell = span / steps as f64;
                let half = 1.5 * cell;
                let center = best_coords[d];
                if axis.periodic {
                    axis.lo = center - half;
                    axis.hi = center + half;
                    axis.periodic = false;
                } else {
                    axis.lo = (center - half).max(0.0);
                    axis.hi = (center + half).min(std::f64::consts::FRAC_PI_2);
                }
            }
        }
    }
    Ok(best_val)
}

/// Maximal product overlap of the generalized GHZ state
/// `a0 |0..0> + a1 |1..1>`: `max(|a0|^2, |a1|^2)` for every qubit count and
/// every partition.
pub fn ghz_pmax(a0: Complex64, a1: Complex64) -> Result<f64> {
    let norm_sq = a0.norm_sqr() + a1.norm_sqr();
    if (norm_sq - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm_sq });
    }
    Ok(a0.norm_sqr().max(a1.norm_sqr()))
}

/// Partition families of the W state with closed-form results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WPartitionKind {
    /// Every party holds one qubit.
    FullSplit,
    /// Two parties, one holding `k` qubits.
    KVsRest(usize),
    /// `m - 1` single-qubit parties plus one party with the rest.
    OneQubitParties(usize),
}

/// Closed-form maximal product overlap of the `n`-qubit W state, when one is
/// known:
///
/// * full split: `(1 - 1/n)^(n-1)`;
/// * `k` vs `n-k`: `max(k/n, 1 - k/n)` (W is permutation symmetric, so only
///   the block sizes matter);
/// * `m-1` single qubits plus rest: known exact fractions exist for `m <= 2`,
///   `m = n`, `(m = 3, n <= 7)` and `(m = 4, n in {6, 7})`. The four cases
///   `(m=4, n=5)`, `(m=5, n=6)`, `(m=5, n=7)` and `(m=6, n=7)` have no known
///   closed form and yield `None`; use the optimizer for those.
pub fn w_pmax(n: usize, kind: WPartitionKind) -> Result<Option<f64>> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "W closed forms need at least 2 qubits, got {n}"
        )));
    }
    let nf = n as f64;
    match kind {
        WPartitionKind::FullSplit => Ok(Some((1.0 - 1.0 / nf).powi(n as i32 - 1))),
        WPartitionKind::KVsRest(k) => {
            if k == 0 || k >= n {
                return Err(Error::Domain(format!(
                    "block size {k} out of range for a bipartition of {n} qubits"
                )));
            }
            let frac = k as f64 / nf;
            Ok(Some(frac.max(1.0 - frac)))
        }
        WPartitionKind::OneQubitParties(m) => {
            if m == 0 || m > n {
                return Err(Error::PartyCountOutOfRange { m, n });
            }
            Ok(match m {
                1 => Some(1.0),
                2 => Some((nf - 1.0) / nf),
                _ if m == n => Some((1.0 - 1.0 / nf).powi(n as i32 - 1)),
                3 if n <= 7 => Some((nf - 2.0) / nf),
                4 if n == 6 || n == 7 => Some((nf - 3.0) / nf),
                _ => None,
            })
        }
    }
}
