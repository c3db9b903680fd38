//! Pure n-qubit states in the dense amplitude representation.
//!
//! A register of `n` qubits holds a unit vector of `2^n` complex amplitudes
//! over the computational basis. Qubit 0 is the most significant bit of the
//! basis index, so `|x_1, x_2, .., x_n>` read left to right is the binary
//! expansion of the index.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Dense simulation cap; memory and runtime grow as `2^n`.
pub const MAX_QUBITS: usize = 14;

/// Absolute tolerance on `|sum |a_i|^2 - 1|` accepted at construction.
pub const NORM_TOL: f64 = 1e-12;

/// State families recognized analytically by the measure layer. A tag is
/// attached only by the constructors in this module; states read back from
/// files or produced by transformations never carry one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateFamily {
    /// `a0 |0..0> + a1 |1..1>`
    Ghz { a0: Complex64, a1: Complex64 },
    /// Equal superposition of all one-hot basis states.
    W,
}

/// A basis-state index flagged by the search oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarkedElement {
    pub index: usize,
}

/// A normalized pure state of `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    amplitudes: Vec<Complex64>,
    family: Option<StateFamily>,
}

fn check_qubit_count(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::QubitCountOutOfRange { n, max: MAX_QUBITS });
    }
    Ok(())
}

impl PureState {
    /// Wraps an amplitude vector, requiring unit norm within [`NORM_TOL`].
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::with_family(n, amplitudes, None)
    }

    fn with_family(
        n: usize,
        amplitudes: Vec<Complex64>,
        family: Option<StateFamily>,
    ) -> Result<Self> {
        check_qubit_count(n)?;
        let dim = 1usize << n;
        if amplitudes.len() != dim {
            return Err(Error::AmplitudeLengthMismatch {
                expected: dim,
                got: amplitudes.len(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self {
            n,
            amplitudes,
            family,
        })
    }

    /// Rescales an arbitrary non-zero vector to unit norm.
    pub fn normalized(n: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubit_count(n)?;
        let dim = 1usize << n;
        if amplitudes.len() != dim {
            return Err(Error::AmplitudeLengthMismatch {
                expected: dim,
                got: amplitudes.len(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq == 0.0 {
            return Err(Error::ZeroVector);
        }
        let scale = 1.0 / norm_sq.sqrt();
        for a in &mut amplitudes {
            *a *= scale;
        }
        Ok(Self {
            n,
            amplitudes,
            family: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn family(&self) -> Option<&StateFamily> {
        self.family.as_ref()
    }

    /// `<self|other>`
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                state_qubits: other.n,
                partition_qubits: self.n,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// The computational basis state `|index>`.
pub fn basis_state(n: usize, index: usize) -> Result<PureState> {
    check_qubit_count(n)?;
    let dim = 1usize << n;
    if index >= dim {
        return Err(Error::IndexOutOfRange { index, dim });
    }
    let mut amps = vec![Complex64::ZERO; dim];
    amps[index] = Complex64::ONE;
    PureState::new(n, amps)
}

/// The generalized GHZ state `a0 |0..0> + a1 |1..1>`.
pub fn make_ghz(n: usize, a0: Complex64, a1: Complex64) -> Result<PureState> {
    check_qubit_count(n)?;
    let norm_sq = a0.norm_sqr() + a1.norm_sqr();
    if (norm_sq - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm_sq });
    }
    let dim = 1usize << n;
    let mut amps = vec![Complex64::ZERO; dim];
    amps[0] = a0;
    amps[dim - 1] = a1;
    PureState::with_family(n, amps, Some(StateFamily::Ghz { a0, a1 }))
}

/// The W state: amplitude `1/sqrt(n)` on every basis state with exactly one
/// qubit set, i.e. on the indices `2^i`.
pub fn make_w(n: usize) -> Result<PureState> {
    check_qubit_count(n)?;
    let dim = 1usize << n;
    let mut amps = vec![Complex64::ZERO; dim];
    let a = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    for i in 0..n {
        amps[1 << i] = a;
    }
    PureState::with_family(n, amps, Some(StateFamily::W))
}

/// The equal superposition over all `2^n` basis states.
pub fn make_eta(n: usize) -> Result<PureState> {
    check_qubit_count(n)?;
    let dim = 1usize << n;
    let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
    PureState::new(n, vec![a; dim])
}

/// A reproducible pseudo-random state, uniform on the unit sphere: every
/// amplitude is drawn from the standard complex normal distribution and the
/// vector is normalized.
pub fn make_random_state(n: usize, seed: u64) -> Result<PureState> {
    check_qubit_count(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = 1usize << n;
    let amps: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    PureState::normalized(n, amps)
}

/// Applies a unitary acting on the qubits of one party, leaving all other
/// qubits untouched. `u` is a row-major `d x d` matrix over the party's
/// local basis, `d = 2^(block size)`. The input must be unitary for the
/// result to stay normalized.
pub fn apply_local_unitary(
    state: &PureState,
    partition: &Partition,
    party: usize,
    u: &[Complex64],
) -> Result<PureState> {
    if partition.n() != state.n() {
        return Err(Error::SizeMismatch {
            state_qubits: state.n(),
            partition_qubits: partition.n(),
        });
    }
    if party >= partition.m() {
        return Err(Error::IndexOutOfRange {
            index: party,
            dim: partition.m(),
        });
    }
    let d = partition.party_dim(party);
    if u.len() != d * d {
        return Err(Error::AmplitudeLengthMismatch {
            expected: d * d,
            got: u.len(),
        });
    }
    let n = state.n();
    let block = &partition.blocks()[party];
    let s = block.len();
    // Mask clearing the party's bits from a global index.
    let mut mask = usize::MAX;
    for &q in block {
        mask &= !(1usize << (n - 1 - q));
    }
    let scatter = |local: usize| -> usize {
        let mut g = 0usize;
        for (j, &q) in block.iter().enumerate() {
            g |= ((local >> (s - 1 - j)) & 1) << (n - 1 - q);
        }
        g
    };
    let psi = state.amplitudes();
    let mut out = vec![Complex64::ZERO; psi.len()];
    for (i, slot) in out.iter_mut().enumerate() {
        let row = partition.local_index(party, i);
        let base = i & mask;
        let mut acc = Complex64::ZERO;
        for (col, u_rc) in u[row * d..(row + 1) * d].iter().enumerate() {
            acc += u_rc * psi[base | scatter(col)];
        }
        *slot = acc;
    }
    PureState::new(n, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn ghz_three_qubits_equal_weights() {
        let a = Complex64::new(SQRT_HALF, 0.0);
        let s = make_ghz(3, a, a).unwrap();
        assert_abs_diff_eq!(s.amplitudes()[0].re, SQRT_HALF, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitudes()[7].re, SQRT_HALF, epsilon = 1e-15);
        for i in 1..7 {
            assert_eq!(s.amplitudes()[i], Complex64::ZERO);
        }
        assert!(matches!(s.family(), Some(StateFamily::Ghz { .. })));
    }

    #[test]
    fn ghz_degenerate_and_weighted() {
        let s = make_ghz(1, Complex64::ONE, Complex64::ZERO).unwrap();
        assert_eq!(s.amplitudes()[0], Complex64::ONE);
        assert_eq!(s.amplitudes()[1], Complex64::ZERO);

        let s = make_ghz(4, Complex64::new(0.6, 0.0), Complex64::new(0.8, 0.0)).unwrap();
        assert_abs_diff_eq!(s.amplitudes()[0].re, 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitudes()[15].re, 0.8, epsilon = 1e-15);
    }

    #[test]
    fn ghz_rejects_unnormalized_pair() {
        let e = make_ghz(2, Complex64::ONE, Complex64::ONE);
        assert!(matches!(e, Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn w_state_one_hot_support() {
        let s = make_w(2).unwrap();
        assert_abs_diff_eq!(s.amplitudes()[1].re, SQRT_HALF, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amplitudes()[2].re, SQRT_HALF, epsilon = 1e-15);
        assert_eq!(s.amplitudes()[0], Complex64::ZERO);
        assert_eq!(s.amplitudes()[3], Complex64::ZERO);

        let s = make_w(1).unwrap();
        assert_eq!(s.amplitudes()[1], Complex64::ONE);

        let s = make_w(3).unwrap();
        let a = 1.0 / 3f64.sqrt();
        for i in [1usize, 2, 4] {
            assert_abs_diff_eq!(s.amplitudes()[i].re, a, epsilon = 1e-15);
        }
        assert!(make_w(0).is_err());
    }

    #[test]
    fn eta_is_uniform() {
        for n in 1..=3 {
            let s = make_eta(n).unwrap();
            let expect = 1.0 / ((1usize << n) as f64).sqrt();
            for a in s.amplitudes() {
                assert_abs_diff_eq!(a.re, expect, epsilon = 1e-15);
                assert_eq!(a.im, 0.0);
            }
        }
    }

    #[test]
    fn constructors_produce_unit_norm() {
        let states = [
            make_eta(3).unwrap(),
            make_w(4).unwrap(),
            make_ghz(3, Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).unwrap(),
            make_random_state(4, 11).unwrap(),
        ];
        for s in &states {
            let norm_sq: f64 = s.amplitudes().iter().map(|a| a.norm_sqr()).sum();
            assert_abs_diff_eq!(norm_sq, 1.0, epsilon = NORM_TOL);
        }
    }

    #[test]
    fn random_state_is_deterministic() {
        let a = make_random_state(2, 42).unwrap();
        let b = make_random_state(2, 42).unwrap();
        assert_eq!(a.amplitudes(), b.amplitudes());
        let c = make_random_state(2, 43).unwrap();
        assert_ne!(a.amplitudes(), c.amplitudes());
    }

    #[test]
    fn random_state_sphere_uniformity() {
        // On the uniform sphere in C^4, E|amp_0|^2 = 1/4.
        let trials = 10_000u64;
        let mean: f64 = (0..trials)
            .map(|seed| make_random_state(2, seed).unwrap().amplitudes()[0].norm_sqr())
            .sum::<f64>()
            / trials as f64;
        assert!((mean - 0.25).abs() < 0.02, "mean |amp_0|^2 = {mean}");
    }

    #[test]
    fn qubit_count_limits() {
        assert!(make_eta(0).is_err());
        assert!(make_eta(MAX_QUBITS + 1).is_err());
    }

    #[test]
    fn local_unitary_preserves_norm_and_acts_locally() {
        let s = make_random_state(3, 5).unwrap();
        let p: Partition = "0|1,2".parse().unwrap();
        // Hadamard on the single-qubit party.
        let h = Complex64::new(SQRT_HALF, 0.0);
        let u = [h, h, h, -h];
        let t = apply_local_unitary(&s, &p, 0, &u).unwrap();
        let norm_sq: f64 = t.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        assert_abs_diff_eq!(norm_sq, 1.0, epsilon = 1e-12);
        // Identity on the two-qubit party is a no-op.
        let mut id = vec![Complex64::ZERO; 16];
        for k in 0..4 {
            id[k * 4 + k] = Complex64::ONE;
        }
        let t = apply_local_unitary(&s, &p, 1, &id).unwrap();
        for (a, b) in t.amplitudes().iter().zip(s.amplitudes()) {
            assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn basis_state_bounds() {
        let s = basis_state(2, 3).unwrap();
        assert_eq!(s.amplitudes()[3], Complex64::ONE);
        assert!(basis_state(2, 4).is_err());
    }
}
