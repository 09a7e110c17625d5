mod common;

use proptest::prelude::*;
use unimus::order::{catalysis_witness, majorizes, sum_two_smallest, tensor, trumping_verdict};
use unimus::{AlphaGrid, ProbDist, Relation};

fn pd(v: &[f64]) -> ProbDist {
    ProbDist::new(v.to_vec()).unwrap()
}

/// Catalysts of dimension 2 and 3 on a simplex grid of step 0.02.
fn catalyst_grid() -> Vec<ProbDist> {
    let mut out = Vec::new();
    for i in 1..50 {
        let x = i as f64 * 0.02;
        out.push(pd(&[x, 1.0 - x]));
    }
    for i in 1..50 {
        for j in 1..(50 - i) {
            let (x, y) = (i as f64 * 0.02, j as f64 * 0.02);
            out.push(common::normalize(vec![x, y, 1.0 - x - y]));
        }
    }
    out
}

fn find_catalyst<'a>(p: &ProbDist, q: &ProbDist, grid: &'a [ProbDist]) -> Option<&'a ProbDist> {
    grid.iter()
        .find(|r| majorizes(&tensor(p, r), &tensor(q, r)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn majorization_is_reflexive(p in common::with_zeros(5)) {
        prop_assert!(majorizes(&p, &p));
    }

    #[test]
    fn majorization_is_transitive(n in 2usize..=6, seed in any::<u64>()) {
        // Random triples rarely form chains, so build q and r by mixing towards uniform.
        let mut rng = common::rng(seed);
        let p = common::random_dist(n, &mut rng);
        use rand::Rng;
        let (s, t) = (rng.random_range(0.0..1.0), rng.random_range(0.0..1.0));
        let mix = |d: &ProbDist, w: f64| common::normalize(d.probs().iter().map(|x| w * x + (1.0 - w) / n as f64).collect());
        let q = mix(&p, s);
        let r = mix(&q, t);
        prop_assert!(majorizes(&p, &q) && majorizes(&q, &r));
        prop_assert!(majorizes(&p, &r));
        let x = common::random_dist(n, &mut rng);
        let y = common::random_dist(n, &mut rng);
        let z = common::random_dist(n, &mut rng);
        if majorizes(&x, &y) && majorizes(&y, &z) {
            prop_assert!(majorizes(&x, &z));
        }
    }

    #[test]
    fn majorization_never_contradicts_trumping(p in common::full_support(4), q in common::full_support(4)) {
        let grid = AlphaGrid::default_grid();
        if majorizes(&p, &q) {
            prop_assert_ne!(trumping_verdict(&p, &q, &grid).relation, Relation::StrictlyMoreUncertain);
        }
        if majorizes(&q, &p) {
            prop_assert_ne!(trumping_verdict(&p, &q, &grid).relation, Relation::StrictlyLessUncertain);
        }
    }
}

#[test]
fn catalysis_example_holds() {
    let (p, q, r) = (
        pd(&[0.5, 0.25, 0.25, 0.0]),
        pd(&[0.4, 0.4, 0.1, 0.1]),
        pd(&[0.6, 0.4]),
    );
    assert!(catalysis_witness(&p, &q, &r));
    assert!(!majorizes(&q, &p));
    // The tensored pair says p is less uncertain; sum_two_smallest says the reverse.
    assert!(sum_two_smallest(&p).unwrap() > sum_two_smallest(&q).unwrap());
    assert_eq!(
        trumping_verdict(&p, &q, &AlphaGrid::default_grid()).relation,
        Relation::StrictlyLessUncertain
    );
}

#[test]
fn brute_force_catalysts_agree_with_trumping() {
    let catalysts = catalyst_grid();
    let grid = AlphaGrid::default_grid();
    let mut rng = common::rng(2024);
    let (mut trumping_only, mut catalysed) = (0, 0);
    for _ in 0..3000 {
        let p = common::random_dist(4, &mut rng);
        // A nearby q gives a useful share of majorization-incomparable but trumping-ordered pairs.
        use rand::Rng;
        let q = common::normalize(
            p.probs()
                .iter()
                .map(|x| x * rng.random_range(0.7..1.3))
                .collect(),
        );
        if majorizes(&p, &q) || majorizes(&q, &p) {
            continue;
        }
        let verdict = trumping_verdict(&p, &q, &grid).relation;
        if let Some(_r) = find_catalyst(&p, &q, &catalysts) {
            catalysed += 1;
            assert_eq!(verdict, Relation::StrictlyLessUncertain, "{p:?} {q:?}");
        }
        if verdict == Relation::StrictlyLessUncertain {
            trumping_only += 1;
        }
    }
    assert!(
        catalysed > 0,
        "no catalysed instance among {trumping_only} trumping pairs"
    );
    eprintln!(
        "catalyst found for {catalysed} of {trumping_only} trumping-ordered incomparable pairs"
    );
}
