//! End-to-end acceptance checks. Each test prints one [PASS]/[FAIL] line.
//!
//! Set `UNIMUS_FULL_SCALE=1` to run the ensemble check with 1000 pairs per
//! dimension instead of 100.

mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, FRAC_PI_8};
use std::time::{Duration, Instant};

use rand::Rng;
use unimus::entropy::{collision_entropy, renyi_entropy, shannon, von_neumann};
use unimus::mus::{
    ensemble_overlap, max_overlap, nogo_witness_highd, nogo_witness_mub, pmax_smax, psi_infinity,
    qubit_mus_theta, qutrit_profile, zeta_default_alphas, zeta_sign_check, DEFAULT_RESTARTS,
};
use unimus::order::{catalysis_witness, majorizes, sum_two_smallest, tensor};
use unimus::quantum::{pure_to_density, qubit_pair, rotation_pair_qutrit};
use unimus::thermo::{
    epsilon_thermal, f2_ordering_threshold, free_energy, sample_gibbs_preserving, thermo_majorizes,
    EnergyDiagonalState, ThermoContext,
};
use unimus::uncertainty::{classical_noise, flip_threshold, pseudo_pure, NoiseLevel};
use unimus::{AlphaGrid, ProbDist, RenyiOrder};

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    start: Instant,
    failures: Vec<String>,
    checks: usize,
}

impl Criterion {
    fn new(id: u32, title: &'static str, limit_secs: u64) -> Self {
        Self {
            id,
            title,
            limit: Duration::from_secs(limit_secs),
            start: Instant::now(),
            failures: Vec::new(),
            checks: 0,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self) {
        let elapsed = self.start.elapsed();
        let in_time = elapsed <= self.limit;
        let pass = self.failures.is_empty() && in_time;
        println!(
            "[{}] criterion {:>2}: {} ({} checks, {:.2} s, limit {} s)",
            if pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.checks,
            elapsed.as_secs_f64(),
            self.limit.as_secs()
        );
        for f in self.failures.iter().take(10) {
            println!("       - {f}");
        }
        if !in_time {
            println!("       - runtime exceeded");
        }
        assert!(pass, "criterion {} failed", self.id);
    }
}

fn pd(v: &[f64]) -> ProbDist {
    ProbDist::new(v.to_vec()).unwrap()
}

fn noise(e: f64) -> NoiseLevel {
    NoiseLevel::new(e).unwrap()
}

const P4: [f64; 4] = [0.77, 0.10, 0.10, 0.03];
const Q4: [f64; 4] = [0.63, 0.35, 0.01, 0.01];

#[test]
fn criterion_01_noise_flips_shannon_order() {
    let mut c = Criterion::new(1, "noise flips the Shannon ordering", 1);
    let (p, q) = (pd(&P4), pd(&Q4));
    c.check(shannon(&p) > shannon(&q), || {
        "H1(p) > H1(q) at eps = 0".into()
    });
    let e = noise(0.05);
    let (hp, hq) = (
        shannon(&classical_noise(&p, e)),
        shannon(&classical_noise(&q, e)),
    );
    c.check(hp < hq, || format!("H1 at eps = 0.05: {hp} vs {hq}"));
    let t = flip_threshold(&p, &q, RenyiOrder::SHANNON).unwrap();
    c.check(matches!(t, Some(t) if t > 0.0 && t <= 0.05), || {
        format!("threshold {t:?}")
    });
    println!(
        "       flip threshold (alpha = 1): {:.9}",
        t.unwrap_or(f64::NAN)
    );
    c.finish();
}

#[test]
fn criterion_02_no_uniform_threshold() {
    let mut c = Criterion::new(2, "tracked order 4/(1-eps) stays reversed", 1);
    let (p, q) = (pd(&[0.37, 0.32, 0.24, 0.07]), pd(&[0.36, 0.35, 0.19, 0.10]));
    c.check(collision_entropy(&p) < collision_entropy(&q), || {
        "H2(p) < H2(q)".into()
    });
    for e in [0.0, 0.2, 0.5, 0.8, 0.95] {
        let a = RenyiOrder::Finite(4.0 / (1.0 - e));
        let gap = renyi_entropy(&classical_noise(&p, noise(e)), a)
            - renyi_entropy(&classical_noise(&q, noise(e)), a);
        c.check(gap >= 1e-12, || format!("eps {e}: gap {gap}"));
    }
    c.finish();
}

#[test]
fn criterion_03_catalysis() {
    let mut c = Criterion::new(3, "catalysis and the sum of two smallest entries", 1);
    let (p, q, r) = (
        pd(&[0.5, 0.25, 0.25, 0.0]),
        pd(&[0.4, 0.4, 0.1, 0.1]),
        pd(&[0.6, 0.4]),
    );
    c.check(catalysis_witness(&p, &q, &r), || "catalysis witness".into());
    let tensored = majorizes(&tensor(&p, &r), &tensor(&q, &r));
    let (sp, sq) = (sum_two_smallest(&p).unwrap(), sum_two_smallest(&q).unwrap());
    // Tensored majorization ranks p as less uncertain; the measure ranks it as more.
    c.check(tensored && sp > sq, || {
        format!("tensored {tensored}, sums {sp} vs {sq}")
    });
    c.finish();
}

#[test]
fn criterion_04_noise_invariant_orders() {
    let mut c = Criterion::new(4, "H2 and H+-inf orderings are noise invariant", 10);
    let mut rng = common::rng(4);
    for k in 0..1000 {
        let n = 2 + k % 5;
        let (p, q) = (
            common::random_dist(n, &mut rng),
            common::random_dist(n, &mut rng),
        );
        for a in [
            RenyiOrder::COLLISION,
            RenyiOrder::PosInfinity,
            RenyiOrder::NegInfinity,
        ] {
            let s0 = (renyi_entropy(&p, a) - renyi_entropy(&q, a)).signum();
            for j in 0..50 {
                let e = noise(j as f64 / 50.0);
                let s = (renyi_entropy(&classical_noise(&p, e), a)
                    - renyi_entropy(&classical_noise(&q, e), a))
                .signum();
                c.check(s == s0, || {
                    format!("pair {k}, order {a}, eps {}", e.epsilon())
                });
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_05_landau_pollak() {
    let mut c = Criterion::new(5, "Landau-Pollak bound, attained by psi-infinity", 30);
    let mut rng = common::rng(5);
    for k in 0..20 {
        let d = 2 + k % 3;
        let pair = common::random_pair(d, 5000 + k as u64);
        let cmax = max_overlap(&pair).unwrap().c;
        let bound = (1.0 + cmax).powi(2) / 4.0;
        let (p_inf, _) = pmax_smax(&psi_infinity(&pair).unwrap(), &pair).unwrap();
        c.check((p_inf - bound).abs() <= 1e-9, || {
            format!("pair {k}: psi-inf gives {p_inf}, bound {bound}")
        });
        for _ in 0..1000 {
            let (p, _) = pmax_smax(&common::random_state(d, &mut rng), &pair).unwrap();
            c.check(p <= bound + 1e-9, || {
                format!("pair {k}: p_max {p} above {bound}")
            });
        }
    }
    c.finish();
}

#[test]
fn criterion_06_qubit_universal_mus() {
    let mut c = Criterion::new(6, "qubit MUS positions and the zeta sign pattern", 30);
    let gamma = FRAC_PI_4;
    for a in AlphaGrid::default_grid().iter() {
        let t = qubit_mus_theta(gamma, noise(0.5), a).unwrap().theta_min;
        c.check((t - FRAC_PI_8).abs() <= 1e-6, || {
            format!("eps 0.5, alpha {a}: theta* = {t}")
        });
    }
    let t1 = qubit_mus_theta(gamma, NoiseLevel::NONE, RenyiOrder::SHANNON)
        .unwrap()
        .theta_min;
    c.check(t1.abs() <= 1e-6 || (t1 - gamma).abs() <= 1e-6, || {
        format!("eps 0, alpha 1: theta* = {t1}, expected 0 or gamma")
    });
    let ti = qubit_mus_theta(gamma, NoiseLevel::NONE, RenyiOrder::PosInfinity)
        .unwrap()
        .theta_min;
    c.check((ti - FRAC_PI_8).abs() <= 1e-6, || {
        format!("eps 0, alpha inf: theta* = {ti}")
    });
    let report = zeta_sign_check(&zeta_default_alphas(), 1e-3).unwrap();
    c.check(report.violations.is_empty(), || {
        format!("{} zeta sign violations", report.violations.len())
    });
    c.finish();
}

#[test]
fn criterion_07_mub_no_go() {
    let mut c = Criterion::new(7, "qubit MUB: eigenstates beat psi-infinity for H1", 1);
    let mub = qubit_pair(FRAC_PI_2).unwrap();
    for e in [0.0, 0.25, 0.5, 0.9] {
        let w = nogo_witness_mub(noise(e)).unwrap();
        let s = von_neumann(&pseudo_pure(&mub.a().eigenvector(0), noise(e)).unwrap());
        let want = 2f64.ln() + s;
        c.check((w.h1_eigen - want).abs() <= 1e-9, || {
            format!("eps {e}: {} vs {want}", w.h1_eigen)
        });
        c.check(w.h1_psi_inf - w.h1_eigen > 1e-6, || {
            format!("eps {e}: {} vs {}", w.h1_eigen, w.h1_psi_inf)
        });
    }
    c.finish();
}

#[test]
fn criterion_08_qutrit_no_go() {
    let mut c = Criterion::new(8, "qutrit: xi beats psi-infinity for H-inf", 1);
    let pair = rotation_pair_qutrit(FRAC_PI_6).unwrap();
    for e in [0.1, 0.25, 0.5] {
        let w = nogo_witness_highd(&pair, noise(e)).unwrap();
        let want = 2.0 * (e / 3.0).ln();
        c.check((w.hminf_xi - want).abs() <= 1e-9, || {
            format!("eps {e}: {} vs {want}", w.hminf_xi)
        });
        c.check(w.hminf_psi_inf - w.hminf_xi > 1e-6, || {
            format!("eps {e}: gap {}", w.hminf_psi_inf - w.hminf_xi)
        });
    }
    c.finish();
}

#[test]
fn criterion_09_ensemble_overlaps() {
    let full = std::env::var("UNIMUS_FULL_SCALE").is_ok_and(|v| v == "1");
    let pairs = if full { 1000 } else { 100 };
    let mut c = Criterion::new(
        9,
        "Haar ensembles: H2 optimum vs psi-infinity",
        if full { 6000 } else { 600 },
    );
    for (d, target) in [(3, 0.9996), (4, 0.9904), (5, 0.9842)] {
        let s = ensemble_overlap(d, pairs, DEFAULT_RESTARTS, 42).unwrap();
        println!(
            "       d = {d}: mean overlap {:.5} (target {target}), min {:.5}, {} pairs",
            s.mean_overlap, s.min_overlap, s.n_pairs
        );
        c.check((s.mean_overlap - target).abs() <= 0.02, || {
            format!("d {d}: mean {}", s.mean_overlap)
        });
        let max = s.overlaps.iter().copied().fold(0.0, f64::max);
        c.check(max < 1.0, || format!("d {d}: some pair has overlap {max}"));
    }
    c.finish();
}

#[test]
fn criterion_10_qutrit_profile() {
    let mut c = Criterion::new(
        10,
        "qutrit profile: psi-infinity is near optimal under noise",
        300,
    );
    let alphas: Vec<RenyiOrder> = (0..=20)
        .map(|k| RenyiOrder::Finite(k as f64 / 10.0))
        .collect();
    let rows = qutrit_profile(noise(0.25), &alphas, DEFAULT_RESTARTS, 10).unwrap();
    let (worst, at) = rows
        .iter()
        .map(|r| (r.h_candidate - r.h_optimal, r.alpha))
        .fold((f64::NEG_INFINITY, RenyiOrder::SHANNON), |m, x| {
            if x.0 > m.0 {
                x
            } else {
                m
            }
        });
    println!("       eps = 0.25: largest H_candidate - H_optimal = {worst:.3e} at alpha = {at}");
    c.check(worst <= 1e-3, || {
        format!("discrepancy {worst} at alpha {at}")
    });
    let row = &qutrit_profile(
        NoiseLevel::NONE,
        &[RenyiOrder::Finite(0.1)],
        DEFAULT_RESTARTS,
        10,
    )
    .unwrap()[0];
    c.check(row.h_eigen < row.h_candidate, || {
        format!("eps 0, alpha 0.1: {} vs {}", row.h_eigen, row.h_candidate)
    });
    c.finish();
}

#[test]
fn criterion_11_thermodynamics() {
    let mut c = Criterion::new(
        11,
        "free energies: fixed point, monotonicity, uniform reduction",
        30,
    );
    let mut rng = common::rng(11);
    let grid = AlphaGrid::default_grid();
    for _ in 0..100 {
        let n = rng.random_range(2..=6);
        let ctx = ThermoContext::new(
            (0..n).map(|_| rng.random_range(0.0..3.0)).collect(),
            rng.random_range(0.2..2.0),
        )
        .unwrap();
        let g = EnergyDiagonalState::gibbs(&ctx);
        let f: Vec<f64> = grid
            .iter()
            .map(|a| free_energy(&g, &ctx, a).unwrap())
            .collect();
        let spread = f.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            - f.iter().copied().fold(f64::INFINITY, f64::min);
        c.check(spread <= 1e-10, || {
            format!("Gibbs free energies spread {spread}")
        });
    }
    for trial in 0..1000 {
        let n = rng.random_range(2..=5);
        let ctx = ThermoContext::new(
            (0..n).map(|_| rng.random_range(0.0..3.0)).collect(),
            rng.random_range(0.2..2.0),
        )
        .unwrap();
        let p = EnergyDiagonalState::new(common::random_dist(n, &mut rng), &ctx).unwrap();
        let m = sample_gibbs_preserving(&ctx, &mut rng).unwrap();
        c.check(m.gibbs_defect(&ctx) <= 1e-12, || {
            format!("trial {trial}: map moves gibbs")
        });
        let out = m.apply(&p);
        for a in grid.nonnegative() {
            let (before, after) = (
                free_energy(&p, &ctx, a).unwrap(),
                free_energy(&out, &ctx, a).unwrap(),
            );
            c.check(after <= before + 1e-9, || {
                format!("trial {trial}, order {a}: {before} -> {after}")
            });
        }
    }
    for k in 0..1000 {
        let n = 2 + k % 5;
        let u = ThermoContext::uniform(n).unwrap();
        let (p, q) = (
            common::random_dist(n, &mut rng),
            common::random_dist(n, &mut rng),
        );
        let (sp, sq) = (
            EnergyDiagonalState::new(p.clone(), &u).unwrap(),
            EnergyDiagonalState::new(q.clone(), &u).unwrap(),
        );
        c.check(
            thermo_majorizes(&sp, &sq, &u).unwrap() == majorizes(&p, &q),
            || format!("instance {k}: majorization"),
        );
        let e = noise(rng.random_range(0.0..1.0));
        c.check(
            epsilon_thermal(&sp, &u, e).unwrap().pops() == &classical_noise(&p, e),
            || format!("instance {k}: thermal mixing"),
        );
    }
    let u = ThermoContext::uniform(4).unwrap();
    let (sp, sq) = (
        EnergyDiagonalState::new(pd(&P4), &u).unwrap(),
        EnergyDiagonalState::new(pd(&Q4), &u).unwrap(),
    );
    let t_thermo = f2_ordering_threshold(&sp, &sq, &u, RenyiOrder::SHANNON).unwrap();
    let t_flip = flip_threshold(&pd(&P4), &pd(&Q4), RenyiOrder::SHANNON).unwrap();
    c.check(
        matches!((t_thermo, t_flip), (Some(a), Some(b)) if (a - b).abs() <= 1e-8),
        || format!("thresholds {t_thermo:?} vs {t_flip:?}"),
    );
    c.finish();
}

#[test]
fn criterion_12_entropy_kernel() {
    let mut c = Criterion::new(
        12,
        "Renyi kernel: additivity, monotonicity, Schur-concavity, limits",
        10,
    );
    let mut rng = common::rng(12);
    let grid = AlphaGrid::default_grid();
    for k in 0..1000 {
        let n = 2 + k % 7;
        let p = common::random_dist(n, &mut rng);
        let q = common::random_dist(2 + k % 3, &mut rng);
        let pq = tensor(&p, &q);
        for a in grid.iter() {
            let gap = renyi_entropy(&pq, a) - renyi_entropy(&p, a) - renyi_entropy(&q, a);
            c.check(gap.abs() <= 1e-9, || {
                format!("additivity, sample {k}, order {a}: {gap}")
            });
        }
        let h: Vec<(RenyiOrder, f64)> = grid.iter().map(|a| (a, renyi_entropy(&p, a))).collect();
        for w in h.windows(2) {
            let (a0, a1) = (w[0].0.value(), w[1].0.value());
            if a0 > 0.0 {
                c.check(w[1].1 <= w[0].1 + 1e-12, || {
                    format!("monotonicity, sample {k}, {} -> {}", w[0].0, w[1].0)
                });
            } else if a1 < 0.0 {
                c.check(w[1].1 >= w[0].1 - 1e-12, || {
                    format!("monotonicity, sample {k}, {} -> {}", w[0].0, w[1].0)
                });
            }
        }
        let t: f64 = rng.random_range(0.0..1.0);
        let mixed = common::normalize(
            p.probs()
                .iter()
                .map(|x| t * x + (1.0 - t) / n as f64)
                .collect(),
        );
        if majorizes(&p, &mixed) {
            for a in grid.nonnegative() {
                c.check(
                    renyi_entropy(&p, a) <= renyi_entropy(&mixed, a) + 1e-12,
                    || format!("Schur-concavity, sample {k}, order {a}"),
                );
            }
        }
        for a in [1.0 - 1e-6, 1.0 + 1e-6] {
            let gap = (renyi_entropy(&p, RenyiOrder::Finite(a)) - shannon(&p)).abs();
            c.check(gap <= 1e-4, || format!("limit at {a}, sample {k}: {gap}"));
        }
        let closed = -p.probs().iter().map(|x| x * x).sum::<f64>().ln();
        for a in [2.0 - 1e-6, 2.0 + 1e-6] {
            let gap = (renyi_entropy(&p, RenyiOrder::Finite(a)) - closed).abs();
            c.check(gap <= 1e-4, || format!("limit at {a}, sample {k}: {gap}"));
        }
    }
    c.finish();
}

#[test]
fn reference_states_are_consistent() {
    // Guards the fixtures above: psi-infinity of the MUB pair is a valid density.
    let mub = qubit_pair(FRAC_PI_2).unwrap();
    assert!(pure_to_density(&psi_infinity(&mub).unwrap()).is_ok());
}
