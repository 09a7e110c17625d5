#![allow(dead_code)]

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use unimus::quantum::{haar_unitary, Complex, ObservablePair, PureState, C64};
use unimus::ProbDist;

/// Full-support distribution of length n, entries bounded away from zero.
pub fn full_support(n: usize) -> impl Strategy<Value = ProbDist> {
    prop::collection::vec(0.01f64..1.0, n).prop_map(normalize)
}

pub fn full_support_any(lo: usize, hi: usize) -> impl Strategy<Value = ProbDist> {
    (lo..=hi).prop_flat_map(full_support)
}

/// Distribution that may contain exact zeros.
pub fn with_zeros(n: usize) -> impl Strategy<Value = ProbDist> {
    prop::collection::vec(prop_oneof![3 => 0.01f64..1.0, 1 => Just(0.0)], n)
        .prop_filter("needs some mass", |v| v.iter().sum::<f64>() > 0.0)
        .prop_map(normalize)
}

pub fn normalize(v: Vec<f64>) -> ProbDist {
    let s: f64 = v.iter().sum();
    ProbDist::from_clamped(v.into_iter().map(|x| x / s).collect()).expect("valid distribution")
}

pub fn random_pair(d: usize, seed: u64) -> ObservablePair {
    ObservablePair::from_unitary(haar_unitary(d, seed).unwrap()).unwrap()
}

pub fn random_state(d: usize, rng: &mut ChaCha8Rng) -> PureState {
    let v: Vec<C64> = (0..d)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex::new(re, im)
        })
        .collect();
    PureState::normalized(v).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_dist(n: usize, rng: &mut ChaCha8Rng) -> ProbDist {
    use rand::Rng;
    normalize((0..n).map(|_| rng.random_range(0.01..1.0)).collect())
}
