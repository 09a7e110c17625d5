//! Outcome statistics of observable pairs, uniform noise (classical and
//! quantum), the H2-based ordering criteria, and noise thresholds after which
//! a Renyi ordering settles on the H2 ordering.

use crate::entropy::{collision_entropy, renyi_entropy, ProbDist, RenyiOrder};
use crate::error::{precondition, validation, Error, Result};
use crate::order::tensor;
use crate::quantum::{
    pure_to_density, ComplexMatrix, DensityMatrix, Observable, ObservablePair, PureState,
};
use crate::tolerances::{ENTROPY_MARGIN, THRESHOLD_BISECTION, THRESHOLD_GRID};

/// Weight of the uniform component, epsilon in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct NoiseLevel(f64);

impl NoiseLevel {
    pub const NONE: NoiseLevel = NoiseLevel(0.0);

    pub fn new(epsilon: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(validation(format!("noise level {epsilon} outside [0, 1]")));
        }
        Ok(Self(epsilon))
    }

    pub fn epsilon(self) -> f64 {
        self.0
    }

    /// r = 1 - epsilon, the surviving weight (Bloch radius for noisy pure qubits).
    pub fn r(self) -> f64 {
        1.0 - self.0
    }
}

/// Joint statistics p^A (x) p^B, keeping the factors that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct JointStat {
    a: ProbDist,
    b: ProbDist,
    dist: ProbDist,
}

impl JointStat {
    pub fn from_marginals(a: ProbDist, b: ProbDist) -> Self {
        let dist = tensor(&a, &b);
        Self { a, b, dist }
    }

    /// Flattened product, index i*d + j holds p^A_i p^B_j.
    pub fn dist(&self) -> &ProbDist {
        &self.dist
    }

    pub fn marginal_a(&self) -> &ProbDist {
        &self.a
    }

    pub fn marginal_b(&self) -> &ProbDist {
        &self.b
    }
}

/// p_i = <a_i|rho|a_i>, clamped at 1e-12 and renormalized.
pub fn outcome_dist(rho: &DensityMatrix, obs: &Observable) -> Result<ProbDist> {
    if rho.dim() != obs.dim() {
        return Err(validation(format!(
            "state dimension {} does not match observable dimension {}",
            rho.dim(),
            obs.dim()
        )));
    }
    let basis = obs.basis();
    let probs = (0..obs.dim())
        .map(|i| rho.expectation(&basis.column(i).into_owned()))
        .collect();
    ProbDist::from_clamped(probs)
}

/// |<a_i|psi>|^2 for a pure state.
pub fn outcome_dist_pure(psi: &PureState, obs: &Observable) -> Result<ProbDist> {
    if psi.dim() != obs.dim() {
        return Err(validation(format!(
            "state dimension {} does not match observable dimension {}",
            psi.dim(),
            obs.dim()
        )));
    }
    let amps = obs.basis().adjoint() * psi.amplitudes();
    ProbDist::from_clamped(amps.iter().map(|z| z.norm_sqr()).collect())
}

pub fn joint_stat(rho: &DensityMatrix, pair: &ObservablePair) -> Result<JointStat> {
    Ok(JointStat::from_marginals(
        outcome_dist(rho, pair.a())?,
        outcome_dist(rho, pair.b())?,
    ))
}

/// Joint statistics of the pseudo-pure state eps I/d + (1-eps)|psi><psi|,
/// computed from amplitudes without forming the density matrix.
pub fn pseudo_pure_joint(
    psi: &PureState,
    pair: &ObservablePair,
    eps: NoiseLevel,
) -> Result<JointStat> {
    let a = classical_noise(&outcome_dist_pure(psi, pair.a())?, eps);
    let b = classical_noise(&outcome_dist_pure(psi, pair.b())?, eps);
    Ok(JointStat::from_marginals(a, b))
}

/// eps * uniform + (1 - eps) * p.
pub fn classical_noise(p: &ProbDist, eps: NoiseLevel) -> ProbDist {
    let e = eps.epsilon();
    let u = e * (1.0 / p.len() as f64);
    ProbDist::from_vec_unchecked(p.probs().iter().map(|&x| u + (1.0 - e) * x).collect())
}

/// eps I/d + (1 - eps) rho.
pub fn noisy_state(rho: &DensityMatrix, eps: NoiseLevel) -> DensityMatrix {
    let d = rho.dim();
    let e = eps.epsilon();
    let m = ComplexMatrix::identity(d, d).scale(e / d as f64) + rho.matrix().scale(1.0 - e);
    DensityMatrix::from_matrix_unchecked(m)
}

/// eps I/d + (1 - eps)|psi><psi|.
pub fn pseudo_pure(psi: &PureState, eps: NoiseLevel) -> Result<DensityMatrix> {
    Ok(noisy_state(&pure_to_density(psi)?, eps))
}

/// H_a(p^eps) - H_a(q^eps) as an extended real; inf - inf is an error.
pub fn ordering_gap(p: &ProbDist, q: &ProbDist, eps: NoiseLevel, alpha: RenyiOrder) -> Result<f64> {
    extended_difference(
        renyi_entropy(&classical_noise(p, eps), alpha),
        renyi_entropy(&classical_noise(q, eps), alpha),
    )
}

pub(crate) fn extended_difference(x: f64, y: f64) -> Result<f64> {
    if x.is_infinite() && x == y {
        return Err(Error::Undefined(format!(
            "difference of two equal infinities ({x})"
        )));
    }
    Ok(x - y)
}

/// Least epsilon after which `holds` is true on the whole verification grid.
///
/// The grid is k/1000 for k in 0..1000. When the predicate still fails at
/// 0.999 the search continues at r = 10^-4 .. 10^-12. Returns `None` when no
/// tested point close to 1 satisfies the predicate.
pub(crate) fn least_stable_epsilon(holds: impl Fn(f64) -> bool) -> Option<f64> {
    let n = THRESHOLD_GRID;
    let grid: Vec<f64> = (0..n).map(|k| k as f64 / n as f64).collect();
    let last_fail = grid.iter().rposition(|&e| !holds(e));
    let (mut lo, mut hi) = match last_fail {
        None => return Some(0.0),
        Some(k) if k + 1 < n => (grid[k], grid[k + 1]),
        Some(_) => {
            let mut lo = grid[n - 1];
            let hi = (4..=12).map(|j| 1.0 - 10f64.powi(-j)).find(|&e| {
                let ok = holds(e);
                if !ok {
                    lo = e;
                }
                ok
            })?;
            (lo, hi)
        }
    };
    while hi - lo > THRESHOLD_BISECTION {
        let mid = 0.5 * (lo + hi);
        if holds(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Noise level after which H_a(p^eps) < H_a(q^eps) holds.
///
/// Requires H2(p) != H2(q) (margin 1e-10) and a finite order; infinite orders
/// never change their ordering under uniform noise. Returns `Ok(None)` when the
/// H2 ordering points the other way (no threshold exists), and `Ok(Some(0.0))`
/// when the ordering already holds on the whole grid.
pub fn flip_threshold(p: &ProbDist, q: &ProbDist, alpha: RenyiOrder) -> Result<Option<f64>> {
    if p.len() != q.len() {
        return Err(validation("distributions must have equal length"));
    }
    if !alpha.is_finite() {
        return Err(Error::Unsupported(
            "threshold undefined for infinite orders: their ordering is invariant under noise"
                .into(),
        ));
    }
    let (h2p, h2q) = (collision_entropy(p), collision_entropy(q));
    if (h2p - h2q).abs() <= ENTROPY_MARGIN {
        return Err(precondition(format!(
            "H2 tie: H2(p) = {h2p}, H2(q) = {h2q}"
        )));
    }
    if h2p > h2q {
        return Ok(None);
    }
    Ok(least_stable_epsilon(|e| {
        let eps = NoiseLevel(e);
        renyi_entropy(&classical_noise(p, eps), alpha)
            < renyi_entropy(&classical_noise(q, eps), alpha)
    }))
}

/// sum_i (p^A_i)^2 + sum_j (p^B_j)^2 = exp(-H2(p^A)) + exp(-H2(p^B)).
pub fn h2_criterion(rho: &DensityMatrix, pair: &ObservablePair) -> Result<f64> {
    Ok(outcome_dist(rho, pair.a())?.collision() + outcome_dist(rho, pair.b())?.collision())
}

/// `h2_criterion` for a pure state, straight from amplitudes.
pub fn h2_criterion_pure(psi: &PureState, pair: &ObservablePair) -> Result<f64> {
    Ok(outcome_dist_pure(psi, pair.a())?.collision()
        + outcome_dist_pure(psi, pair.b())?.collision())
}

/// H_a(joint(rho^eps)) - H_a(joint(sigma^eps)).
pub fn delta_h(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    pair: &ObservablePair,
    eps: NoiseLevel,
    alpha: RenyiOrder,
) -> Result<f64> {
    let hr = renyi_entropy(joint_stat(&noisy_state(rho, eps), pair)?.dist(), alpha);
    let hs = renyi_entropy(joint_stat(&noisy_state(sigma, eps), pair)?.dist(), alpha);
    extended_difference(hr, hs)
}
