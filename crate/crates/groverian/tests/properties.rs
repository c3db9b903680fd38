//! Property tests for the parametrization, the single-coordinate update and
//! the contraction against independent oracles.

use groverian::optimizer::{
    coordinate_update, extract_coefficients, optimize, overlap, LinearCoefficients,
    OptimizerConfig,
};
use groverian::partition::Partition;
use groverian::product::{PartyParams, ProductParams};
use groverian::state::make_random_state;
use groverian::PureState;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn unit_vector(dim: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim)
        .prop_filter_map("norm too small", |pairs| {
            let v: Vec<Complex64> = pairs
                .into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect();
            let norm_sq: f64 = v.iter().map(|c| c.norm_sqr()).sum();
            if norm_sq < 1e-6 {
                return None;
            }
            let scale = 1.0 / norm_sq.sqrt();
            Some(v.into_iter().map(|c| c * scale).collect())
        })
}

fn shuffled_order(dim: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..dim).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    order
}

fn max_component_err(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(350))]

    // from_amplitudes . to_amplitudes reproduces any unit vector, in any
    // nesting order.
    #[test]
    fn party_params_round_trip(
        dim_pick in 0usize..3,
        seed in any::<u64>(),
        v in unit_vector(8),
    ) {
        let dim = [2usize, 4, 8][dim_pick];
        let v = {
            // Reuse the dim-8 draw: truncate and renormalize.
            let mut w: Vec<Complex64> = v.into_iter().take(dim).collect();
            let norm_sq: f64 = w.iter().map(|c| c.norm_sqr()).sum();
            prop_assume!(norm_sq > 1e-6);
            let s = 1.0 / norm_sq.sqrt();
            for c in &mut w { *c *= s; }
            w
        };
        let order = shuffled_order(dim, seed);
        let params = PartyParams::from_amplitudes(&v, &order).unwrap();
        prop_assert!(max_component_err(&params.to_amplitudes(), &v) < 1e-10);
    }

    // The nested form is unit-norm for arbitrary (unrestricted) angles.
    #[test]
    fn to_amplitudes_always_unit_norm(
        thetas in prop::collection::vec(-10.0f64..10.0, 3),
        gammas in prop::collection::vec(-10.0f64..10.0, 4),
    ) {
        let params = PartyParams::new(thetas, gammas, vec![0, 1, 2, 3]).unwrap();
        let norm_sq: f64 = params.to_amplitudes().iter().map(|c| c.norm_sqr()).sum();
        prop_assert!((norm_sq - 1.0).abs() < 1e-12);
    }

    // Rotating any basis index to the leftmost slot never moves the state.
    #[test]
    fn rotate_leftmost_state_invariant(v in unit_vector(8), seed in any::<u64>()) {
        let order = shuffled_order(8, seed);
        let params = PartyParams::from_amplitudes(&v, &order).unwrap();
        let reference = params.to_amplitudes();
        for target in 0..8 {
            let rotated = params.rotate_leftmost(target).unwrap();
            prop_assert_eq!(rotated.order()[0], target);
            prop_assert!(max_component_err(&rotated.to_amplitudes(), &reference) < 1e-10);
        }
    }

    // The closed-form update attains |c0|^2 + |d0|^2 and dominates the
    // linear form at every sampled angle pair.
    #[test]
    fn coordinate_update_is_the_maximum(
        c_re in -1.0f64..1.0, c_im in -1.0f64..1.0,
        d_re in -1.0f64..1.0, d_im in -1.0f64..1.0,
        sample_seed in any::<u64>(),
    ) {
        let coeffs = LinearCoefficients {
            c0: Complex64::new(c_re, c_im),
            d0: Complex64::new(d_re, d_im),
        };
        let target = coeffs.c0.norm_sqr() + coeffs.d0.norm_sqr();
        prop_assume!(target > 0.0);
        let upd = coordinate_update(&coeffs);
        prop_assert!(!upd.degenerate);
        prop_assert!((upd.new_abs_f_sq - target).abs() < 1e-12);
        let achieved = coeffs.reconstruct(upd.theta0, upd.gamma0).norm_sqr();
        prop_assert!((achieved - target).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
        for _ in 0..100 {
            let t: f64 = rng.random_range(-3.2..3.2);
            let g: f64 = rng.random_range(-3.2..3.2);
            let other = coeffs.reconstruct(t, g).norm_sqr();
            prop_assert!(other <= achieved + 1e-12);
        }
    }

    // The contraction agrees with a direct sum over basis states computed
    // from first principles (bit extraction done independently here).
    #[test]
    fn overlap_matches_naive_sum(state_seed in any::<u64>(), params_seed in any::<u64>()) {
        let n = 3usize;
        let state = make_random_state(n, state_seed).unwrap();
        let partitions = ["0|1|2", "0,1|2", "0,2|1", "0|1,2", "0,1,2"];
        let partition: Partition =
            partitions[(params_seed % 5) as usize].parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(params_seed);
        let params = ProductParams::random(&partition, &mut rng);
        let fast = overlap(&state, &params).unwrap();

        let party_amps: Vec<Vec<Complex64>> =
            params.parties().iter().map(|p| p.to_amplitudes()).collect();
        let mut naive = Complex64::new(0.0, 0.0);
        for i in 0..(1usize << n) {
            let bits: Vec<usize> = (0..n).map(|q| (i >> (n - 1 - q)) & 1).collect();
            let mut phi = Complex64::new(1.0, 0.0);
            for (k, block) in partition.blocks().iter().enumerate() {
                let mut local = 0usize;
                for &q in block {
                    local = local * 2 + bits[q];
                }
                phi *= party_amps[k][local];
            }
            naive += phi.conj() * state.amplitudes()[i];
        }
        prop_assert!((fast - naive).norm() < 1e-12);
    }

    // Coefficients extracted for any party reconstruct the conjugated
    // overlap at arbitrary angle pairs.
    #[test]
    fn coefficients_reconstruct_everywhere(
        state_seed in any::<u64>(),
        params_seed in any::<u64>(),
        t in 0.0f64..1.5,
        g in -3.0f64..3.0,
    ) {
        let state = make_random_state(3, state_seed).unwrap();
        let partition: Partition = "0|1,2".parse().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(params_seed);
        let params = ProductParams::random(&partition, &mut rng);
        for party in 0..2 {
            let coeffs = extract_coefficients(&state, &params, party).unwrap();
            let mut probe = params.clone();
            probe.party_mut(party).set_leftmost(t, g);
            let f = overlap(&state, &probe).unwrap();
            prop_assert!((coeffs.reconstruct(t, g) - f.conj()).norm() < 1e-10);
        }
    }
}

proptest! {
    // Heavier cases: keep the count small.
    #![proptest_config(ProptestConfig::with_cases(12))]

    // pmax stays in range and every restart value is a valid overlap.
    #[test]
    fn optimize_range_property(seed in any::<u64>()) {
        let n = 3usize;
        let state = make_random_state(n, seed).unwrap();
        let partition: Partition = "0|1,2".parse().unwrap();
        let config = OptimizerConfig { restarts: 4, max_sweeps: 200, ..Default::default() };
        let result = optimize(&state, &partition, &config).unwrap();
        prop_assert!(result.pmax >= 0.0);
        prop_assert!(result.pmax <= 1.0 + 1e-9);
        for &v in &result.restart_values {
            prop_assert!(v <= result.pmax);
        }
        // The argmax parameters actually achieve the reported overlap.
        let f = overlap(&state, &result.argmax).unwrap();
        prop_assert!((f.norm_sqr() - result.pmax).abs() < 1e-9);
    }
}

// Normalization invariant holds for every constructor output.
#[test]
fn constructed_states_are_normalized() {
    use groverian::state::{make_eta, make_ghz, make_w};
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut states: Vec<PureState> = vec![
        make_eta(5).unwrap(),
        make_w(6).unwrap(),
        make_ghz(4, h, h).unwrap(),
    ];
    for seed in 0..20 {
        states.push(make_random_state(4, seed).unwrap());
    }
    for s in &states {
        let norm_sq: f64 = s.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        assert!((norm_sq - 1.0).abs() <= 1e-12);
    }
}
