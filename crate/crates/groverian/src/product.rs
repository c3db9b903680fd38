//! Nested hyperspherical parametrization of per-party pure states.
//!
//! A party of Hilbert dimension `d` is written, in its current nesting order
//! `(b_0, b_1, .., b_{d-1})`, as
//!
//! ```text
//! |phi> = e^{i g_0} cos t_0 |b_0>
//!       + sin t_0 [ e^{i g_1} cos t_1 |b_1> + sin t_1 ( ... ) ]
//! ```
//!
//! so the coefficient of `|b_k>` is `e^{i g_k} cos t_k prod_{j<k} sin t_j`,
//! and the last coefficient carries no cosine. The squared magnitudes
//! telescope to 1 for every angle assignment, so the state is unit-norm by
//! construction. Angles recovered from amplitudes are kept in `[0, pi/2]`;
//! the phases carry all sign information.
//!
//! The nesting order is a permutation of the party's basis indices. Rotating
//! it changes which coordinate pair `(t_0, g_0)` is exposed for closed-form
//! optimization while leaving the represented state untouched.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::state::PureState;

/// Hyperspherical angles, phases and nesting order for one party.
#[derive(Debug, Clone, PartialEq)]
pub struct PartyParams {
    dim: usize,
    thetas: Vec<f64>,
    gammas: Vec<f64>,
    order: Vec<usize>,
}

/// Coefficients in nesting order for the given angles and phases;
/// `gammas.len()` fixes the dimension, `thetas` must be one shorter.
pub(crate) fn nested_amplitudes(thetas: &[f64], gammas: &[f64]) -> Vec<Complex64> {
    let dim = gammas.len();
    let mut out = Vec::with_capacity(dim);
    let mut prefix = 1.0f64;
    for k in 0..dim {
        let mag = if k + 1 < dim {
            prefix * thetas[k].cos()
        } else {
            prefix
        };
        out.push(Complex64::from_polar(mag, gammas[k]));
        if k + 1 < dim {
            prefix *= thetas[k].sin();
        }
    }
    out
}

impl PartyParams {
    pub fn new(thetas: Vec<f64>, gammas: Vec<f64>, order: Vec<usize>) -> Result<Self> {
        let dim = gammas.len();
        if dim == 0 {
            return Err(Error::InvalidConfig("party dimension must be positive".into()));
        }
        if thetas.len() + 1 != dim {
            return Err(Error::InvalidConfig(format!(
                "expected {} angles for dimension {dim}, got {}",
                dim - 1,
                thetas.len()
            )));
        }
        if order.len() != dim || !is_permutation(&order) {
            return Err(Error::InvalidConfig(
                "order must be a permutation of the party basis indices".into(),
            ));
        }
        Ok(Self {
            dim,
            thetas,
            gammas,
            order,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    /// Nesting order: position `k` holds the party basis index whose
    /// coefficient carries `cos t_k`.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// The party's amplitude vector, indexed by party basis index.
    /// Unit-norm for every angle assignment.
    pub fn to_amplitudes(&self) -> Vec<Complex64> {
        let nest = nested_amplitudes(&self.thetas, &self.gammas);
        let mut out = vec![Complex64::ZERO; self.dim];
        for (k, &b) in self.order.iter().enumerate() {
            out[b] = nest[k];
        }
        out
    }

    /// Recovers angles and phases reproducing `v` (up to overall scale) in
    /// the given nesting order. Angles land in `[0, pi/2]`; when a prefix of
    /// sines vanishes the remaining angles are set to 0.
    pub fn from_amplitudes(v: &[Complex64], order: &[usize]) -> Result<Self> {
        let dim = v.len();
        if dim == 0 {
            return Err(Error::ZeroVector);
        }
        if order.len() != dim || !is_permutation(order) {
            return Err(Error::InvalidConfig(
                "order must be a permutation of the party basis indices".into(),
            ));
        }
        let nest: Vec<Complex64> = order.iter().map(|&b| v[b]).collect();
        // tail[k] = sum_{j >= k} |a_j|^2
        let mut tail = vec![0.0f64; dim + 1];
        for k in (0..dim).rev() {
            tail[k] = tail[k + 1] + nest[k].norm_sqr();
        }
        if tail[0] == 0.0 {
            return Err(Error::ZeroVector);
        }
        let thetas: Vec<f64> = (0..dim - 1)
            .map(|k| tail[k + 1].sqrt().atan2(nest[k].norm()))
            .collect();
        let gammas: Vec<f64> = nest
            .iter()
            .map(|a| if a.norm_sqr() == 0.0 { 0.0 } else { a.arg() })
            .collect();
        Ok(Self {
            dim,
            thetas,
            gammas,
            order: order.to_vec(),
        })
    }

    /// Reparametrizes so `basis_index` becomes the leftmost nesting slot.
    /// The represented state is unchanged; only angles and order move.
    pub fn rotate_leftmost(&self, basis_index: usize) -> Result<Self> {
        let pos = self
            .order
            .iter()
            .position(|&b| b == basis_index)
            .ok_or(Error::IndexOutOfRange {
                index: basis_index,
                dim: self.dim,
            })?;
        let mut order = self.order.clone();
        order.rotate_left(pos);
        let amps = self.to_amplitudes();
        Self::from_amplitudes(&amps, &order)
    }

    /// Overwrites the leftmost coordinate pair `(t_0, g_0)`.
    pub fn set_leftmost(&mut self, theta0: f64, gamma0: f64) {
        if let Some(t) = self.thetas.first_mut() {
            *t = theta0;
        }
        self.gammas[0] = gamma0;
    }

    /// A party state uniform on the unit sphere of dimension `dim`.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        loop {
            let v: Vec<Complex64> = (0..dim)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            let order: Vec<usize> = (0..dim).collect();
            match Self::from_amplitudes(&v, &order) {
                Ok(p) => return p,
                Err(_) => continue, // zero draw; effectively unreachable
            }
        }
    }
}

fn is_permutation(order: &[usize]) -> bool {
    let mut seen = vec![false; order.len()];
    for &b in order {
        if b >= order.len() || seen[b] {
            return false;
        }
        seen[b] = true;
    }
    true
}

/// A product state over a partition: one [`PartyParams`] per block.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductParams {
    partition: Partition,
    parties: Vec<PartyParams>,
}

impl ProductParams {
    pub fn new(partition: Partition, parties: Vec<PartyParams>) -> Result<Self> {
        if parties.len() != partition.m() {
            return Err(Error::InvalidConfig(format!(
                "expected {} parties, got {}",
                partition.m(),
                parties.len()
            )));
        }
        for (k, party) in parties.iter().enumerate() {
            if party.dim() != partition.party_dim(k) {
                return Err(Error::InvalidConfig(format!(
                    "party {k} has dimension {}, block needs {}",
                    party.dim(),
                    partition.party_dim(k)
                )));
            }
        }
        Ok(Self { partition, parties })
    }

    /// Independent uniform-sphere states for every party.
    pub fn random<R: Rng + ?Sized>(partition: &Partition, rng: &mut R) -> Self {
        let parties = (0..partition.m())
            .map(|k| PartyParams::random(partition.party_dim(k), rng))
            .collect();
        Self {
            partition: partition.clone(),
            parties,
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn parties(&self) -> &[PartyParams] {
        &self.parties
    }

    pub fn party(&self, k: usize) -> &PartyParams {
        &self.parties[k]
    }

    pub fn party_mut(&mut self, k: usize) -> &mut PartyParams {
        &mut self.parties[k]
    }

    /// Expands the tensor product into a full `2^n` state vector.
    pub fn product_state(&self) -> PureState {
        let n = self.partition.n();
        let size = 1usize << n;
        let amps: Vec<Vec<Complex64>> = self.parties.iter().map(|p| p.to_amplitudes()).collect();
        let full: Vec<Complex64> = (0..size)
            .map(|i| {
                let mut prod = Complex64::ONE;
                for (k, a) in amps.iter().enumerate() {
                    prod *= a[self.partition.local_index(k, i)];
                }
                prod
            })
            .collect();
        PureState::new(n, full).expect("product of unit-norm factors is unit-norm")
    }
}
