//! Minimum-uncertainty states: the psi-infinity construction and its bounds,
//! planar qubit sweeps, the zeta stationarity function, pure-state optimization
//! of the H2 criterion, Haar ensembles, and numerical no-go witnesses.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_8};

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::entropy::{renyi_entropy, support_entropy, AlphaGrid, ProbDist, RenyiOrder};
use crate::error::{precondition, validation, Error, Result};
use crate::optimize::{derive_seed, NelderMead};
use crate::quantum::{haar_unitary, rotation_pair_qutrit, Complex, ObservablePair, PureState, C64};
use crate::tolerances::STRUCTURAL;
use crate::uncertainty::{outcome_dist_pure, pseudo_pure_joint, JointStat, NoiseLevel};

/// Default number of random restarts for pure-state optimization.
pub const DEFAULT_RESTARTS: usize = 32;

/// Values within this distance of the best optimum count as ties; the earliest start wins.
const OPTIMUM_TIE: f64 = 1e-12;

/// Minimizer of a Renyi entropy within the planar qubit family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MusCurvePoint {
    pub alpha: RenyiOrder,
    /// Bloch radius 1 - epsilon.
    pub purity: f64,
    pub theta_min: f64,
    pub entropy_value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSummary {
    pub dimension: usize,
    pub n_pairs: usize,
    pub mean_overlap: f64,
    pub min_overlap: f64,
    pub seed: u64,
    /// |<psi_opt|psi_inf>| per pair, in pair order.
    pub overlaps: Vec<f64>,
}

/// Largest |V_ij| and where it sits. Indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxOverlap {
    pub c: f64,
    pub i: usize,
    pub j: usize,
    pub phi: f64,
}

fn largest_overlap(pair: &ObservablePair) -> MaxOverlap {
    let v = pair.overlap();
    let mut best = MaxOverlap {
        c: -1.0,
        i: 0,
        j: 0,
        phi: 0.0,
    };
    for i in 0..v.nrows() {
        for j in 0..v.ncols() {
            let z = v[(i, j)];
            if z.norm() > best.c {
                best = MaxOverlap {
                    c: z.norm(),
                    i,
                    j,
                    phi: z.arg(),
                };
            }
        }
    }
    best
}

/// c = max |<a_i|b_j>|, first maximizer in row-major order.
pub fn max_overlap(pair: &ObservablePair) -> Result<MaxOverlap> {
    let m = largest_overlap(pair);
    if m.c >= 1.0 - STRUCTURAL {
        return Err(Error::SharedEigenstate { overlap: m.c });
    }
    Ok(m)
}

/// Every (i, j) with |V_ij| within `tol` of the maximum, in row-major order.
pub fn all_max_overlaps(pair: &ObservablePair, tol: f64) -> Result<Vec<MaxOverlap>> {
    let best = max_overlap(pair)?;
    let v = pair.overlap();
    let mut out = Vec::new();
    for i in 0..v.nrows() {
        for j in 0..v.ncols() {
            let z = v[(i, j)];
            if z.norm() >= best.c - tol {
                out.push(MaxOverlap {
                    c: z.norm(),
                    i,
                    j,
                    phi: z.arg(),
                });
            }
        }
    }
    Ok(out)
}

/// (|a_i> + e^{-i phi}|b_j>) / sqrt(2(1 + c)) at the maximal overlap.
pub fn psi_infinity(pair: &ObservablePair) -> Result<PureState> {
    let m = max_overlap(pair)?;
    Ok(psi_infinity_at(pair, &m))
}

fn psi_infinity_at(pair: &ObservablePair, m: &MaxOverlap) -> PureState {
    let a = pair.a().basis().column(m.i).into_owned();
    let b = pair.b().basis().column(m.j).into_owned();
    let v = (a + b * C64::from_polar(1.0, -m.phi)).unscale((2.0 * (1.0 + m.c)).sqrt());
    PureState::from_vector_unchecked(v)
}

/// (max_kl p^A_k p^B_l, max_kl p^A_k + p^B_l).
pub fn pmax_smax(psi: &PureState, pair: &ObservablePair) -> Result<(f64, f64)> {
    let a = outcome_dist_pure(psi, pair.a())?.max();
    let b = outcome_dist_pure(psi, pair.b())?.max();
    Ok((a * b, a + b))
}

/// Landau-Pollak bound (1 + c)^2 / 4.
pub fn landau_pollak_bound(pair: &ObservablePair) -> Result<f64> {
    let c = max_overlap(pair)?.c;
    Ok((1.0 + c) * (1.0 + c) / 4.0)
}

/// -2 ln max |<a_i|b_j>|.
pub fn maassen_uffink_bound(pair: &ObservablePair) -> f64 {
    -2.0 * largest_overlap(pair).c.ln()
}

fn check_qubit_family(gamma: f64, eps: NoiseLevel) -> Result<()> {
    if !(gamma > 0.0 && gamma < FRAC_PI_2) {
        return Err(validation(format!(
            "qubit angle gamma = {gamma} outside (0, pi/2)"
        )));
    }
    if eps.epsilon() >= 1.0 {
        return Err(validation(
            "noise level must be below 1 for the planar family",
        ));
    }
    Ok(())
}

/// Joint statistics of the planar state at angle theta from the A axis:
/// p^A_1 = (1 + r cos theta)/2, p^B_1 = (1 + r cos(gamma - theta))/2.
pub fn qubit_joint(gamma: f64, eps: NoiseLevel, theta: f64) -> JointStat {
    let r = eps.r();
    // (1 - r cos t)/2 written without cancellation near t = 0.
    let low = |t: f64| 0.5 * (1.0 - r) + r * (0.5 * t).sin().powi(2);
    let (qa, qb) = (low(theta), low(gamma - theta));
    JointStat::from_marginals(
        ProbDist::from_vec_unchecked(vec![1.0 - qa, qa]),
        ProbDist::from_vec_unchecked(vec![1.0 - qb, qb]),
    )
}

const THETA_GRID: usize = 10_000;
const THETA_TOL: f64 = 1e-10;

/// Minimizes H_alpha of the planar family over theta in [0, gamma].
pub fn qubit_mus_theta(gamma: f64, eps: NoiseLevel, alpha: RenyiOrder) -> Result<MusCurvePoint> {
    check_qubit_family(gamma, eps)?;
    let h = |theta: f64| renyi_entropy(qubit_joint(gamma, eps, theta).dist(), alpha);
    let step = gamma / THETA_GRID as f64;
    let mut k_best = 0;
    let mut v_best = h(0.0);
    for k in 1..=THETA_GRID {
        let v = h(k as f64 * step);
        if v < v_best {
            k_best = k;
            v_best = v;
        }
    }
    let point = |theta_min: f64, entropy_value: f64| MusCurvePoint {
        alpha,
        purity: eps.r(),
        theta_min,
        entropy_value,
    };
    if !v_best.is_finite() {
        return Ok(point(k_best as f64 * step, v_best));
    }
    let lo = k_best.saturating_sub(1) as f64 * step;
    let hi = (k_best + 1).min(THETA_GRID) as f64 * step;
    let theta = golden_section(&h, lo, hi, THETA_TOL);
    let v = h(theta);
    if v < v_best {
        Ok(point(theta, v))
    } else {
        Ok(point(k_best as f64 * step, v_best))
    }
}

fn golden_section(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    0.5 * (a + b)
}

/// MUS positions for every grid order at Bloch radii 1, 1 - 1/n, ..., 1/n.
pub fn qubit_sweep(
    gamma: f64,
    grid: &AlphaGrid,
    purity_steps: usize,
) -> Result<Vec<MusCurvePoint>> {
    if purity_steps == 0 {
        return Err(validation("purity_steps must be positive"));
    }
    let mut out = Vec::with_capacity(purity_steps * grid.len());
    for n in 0..purity_steps {
        let eps = NoiseLevel::new(n as f64 / purity_steps as f64)?;
        for alpha in grid.iter() {
            out.push(qubit_mus_theta(gamma, eps, alpha)?);
        }
    }
    Ok(out)
}

/// Stationarity function of H_alpha along the planar family at gamma = pi/4,
/// eps = 1/2, with theta measured from the bisector.
pub fn qubit_zeta(alpha: f64, theta: f64) -> Result<f64> {
    if alpha == 0.0 || alpha == 1.0 || !alpha.is_finite() {
        return Err(Error::Unsupported(format!(
            "zeta is not defined for alpha = {alpha}"
        )));
    }
    if !(-1e-15..=FRAC_PI_8 + 1e-15).contains(&theta) {
        return Err(validation(format!("theta = {theta} outside [0, pi/8]")));
    }
    let t = |s1: f64, s2: f64| (2.0 + s1 * (FRAC_PI_8 + s2 * theta).cos()).powf(alpha - 1.0);
    let (tmm, tmp, tpm, tpp) = (t(-1.0, -1.0), t(-1.0, 1.0), t(1.0, -1.0), t(1.0, 1.0));
    let (c8, s8) = (FRAC_PI_8.cos(), FRAC_PI_8.sin());
    let (st, ct) = theta.sin_cos();
    let a = (2.0 * c8 - ct) * tmm * tmp - (2.0 * c8 + ct) * tpm * tpp;
    let b = (2.0 * s8 + st) * tpm * tmp - (2.0 * s8 - st) * tmm * tpp;
    Ok(a * st + b * ct)
}

/// Point where the zeta sign pattern fails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaViolation {
    pub alpha: f64,
    pub theta: f64,
    pub zeta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZetaReport {
    pub points_checked: usize,
    pub violations: Vec<ZetaViolation>,
}

/// alpha in [-30, 30] at step 1/4, without 0 and 1.
pub fn zeta_default_alphas() -> Vec<f64> {
    (-120..=120)
        .map(|k| k as f64 / 4.0)
        .filter(|&a| a != 0.0 && a != 1.0)
        .collect()
}

/// Checks zeta on theta = step, 2 step, ..., pi/8: negative for alpha >= 2,
/// positive for alpha <= -3, and free of zeros and sign changes otherwise.
pub fn zeta_sign_check(alphas: &[f64], theta_step: f64) -> Result<ZetaReport> {
    if !(theta_step > 0.0 && theta_step <= FRAC_PI_8) {
        return Err(validation("theta step must lie in (0, pi/8]"));
    }
    let n = (FRAC_PI_8 / theta_step).floor() as usize;
    let mut thetas: Vec<f64> = (1..=n).map(|k| k as f64 * theta_step).collect();
    if FRAC_PI_8 - thetas.last().copied().unwrap_or(0.0) > 1e-15 {
        thetas.push(FRAC_PI_8);
    }
    let mut report = ZetaReport {
        points_checked: 0,
        violations: Vec::new(),
    };
    for &alpha in alphas {
        let mut reference: Option<f64> = None;
        for &theta in &thetas {
            let z = qubit_zeta(alpha, theta)?;
            report.points_checked += 1;
            let ok = if alpha >= 2.0 {
                z < 0.0
            } else if alpha <= -3.0 {
                z > 0.0
            } else {
                let s = *reference.get_or_insert(z.signum());
                z != 0.0 && z.signum() == s
            };
            if !ok {
                report.violations.push(ZetaViolation {
                    alpha,
                    theta,
                    zeta: z,
                });
            }
        }
    }
    Ok(report)
}

/// Maps 2d - 2 angles to a unit vector: hyperspherical magnitudes followed by
/// relative phases, with the first amplitude real.
pub(crate) fn angles_to_amplitudes(dim: usize, x: &[f64], out: &mut [C64]) {
    let mut tail = 1.0;
    for k in 0..dim - 1 {
        let (s, c) = x[k].sin_cos();
        let mag = tail * c;
        out[k] = if k == 0 {
            Complex::new(mag, 0.0)
        } else {
            C64::from_polar(mag, x[dim - 2 + k])
        };
        tail *= s;
    }
    out[dim - 1] = if dim == 1 {
        Complex::new(tail, 0.0)
    } else {
        C64::from_polar(tail, x[2 * dim - 3])
    };
}

pub(crate) fn amplitudes_to_angles(psi: &PureState) -> Vec<f64> {
    let z = psi.amplitudes();
    let d = z.len();
    let phase0 = z[0].arg();
    let mags: Vec<f64> = z.iter().map(|w| w.norm()).collect();
    let mut x = vec![0.0; 2 * d - 2];
    let mut tail_sq: f64 = mags.iter().map(|m| m * m).sum();
    for k in 0..d - 1 {
        tail_sq -= mags[k] * mags[k];
        x[k] = tail_sq.max(0.0).sqrt().atan2(mags[k]);
    }
    for k in 1..d {
        x[d - 2 + k] = z[k].arg() - phase0;
    }
    x
}

fn state_from_angles(dim: usize, x: &[f64]) -> PureState {
    let mut amps = vec![Complex::new(0.0, 0.0); dim];
    angles_to_amplitudes(dim, x, &mut amps);
    PureState::from_vector_unchecked(DVector::from_vec(amps))
}

fn random_pure_state(dim: usize, seed: u64) -> PureState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v: Vec<C64> = (0..dim)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex::new(re, im)
        })
        .collect();
    let v = DVector::from_vec(v);
    let n = v.norm();
    PureState::from_vector_unchecked(v.unscale(n))
}

/// Multi-start Nelder-Mead minimization of `objective` over pure states of
/// dimension `dim`, starting from `structured` states and `restarts` random
/// ones. Near-ties go to the earliest start.
pub(crate) fn minimize_over_pure_states<F>(
    dim: usize,
    objective: F,
    structured: &[PureState],
    restarts: usize,
    seed: u64,
) -> (PureState, f64)
where
    F: Fn(&[C64]) -> f64 + Sync,
{
    let mut starts: Vec<PureState> = structured.to_vec();
    starts.extend((0..restarts).map(|k| random_pure_state(dim, derive_seed(seed, k as u64))));
    let nm = NelderMead::default();
    let results: Vec<(Vec<f64>, f64)> = starts
        .par_iter()
        .map(|psi| {
            let x0 = amplitudes_to_angles(psi);
            let f = |x: &[f64]| {
                let mut amps = [Complex::new(0.0, 0.0); MAX_OPT_DIM];
                angles_to_amplitudes(dim, x, &mut amps[..dim]);
                objective(&amps[..dim])
            };
            let v0 = f(&x0);
            if v0 == f64::NEG_INFINITY {
                return (x0, v0);
            }
            let m = nm.minimize(f, &x0);
            (m.x, m.value)
        })
        .collect();
    let best = results.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let chosen = results
        .iter()
        .find(|r| r.1 <= best + OPTIMUM_TIE || r.1 == best)
        .unwrap_or(&results[0]);
    (state_from_angles(dim, &chosen.0), chosen.1)
}

fn starting_states(pair: &ObservablePair) -> Result<Vec<PureState>> {
    let d = pair.dim();
    let mut starts = vec![psi_infinity(pair)?];
    starts.extend((0..d).map(|i| pair.a().eigenvector(i)));
    starts.extend((0..d).map(|i| pair.b().eigenvector(i)));
    Ok(starts)
}

const MAX_OPT_DIM: usize = 16;

/// sum_i |<a_i|psi>|^4 + sum_j |<b_j|psi>|^4 from raw amplitudes.
fn h2_objective(pair: &ObservablePair) -> impl Fn(&[C64]) -> f64 + Sync {
    let a_adj = pair.a().basis().adjoint();
    let b_adj = pair.b().basis().adjoint();
    let d = pair.dim();
    move |psi: &[C64]| {
        let mut s = 0.0;
        for m in [&a_adj, &b_adj] {
            for i in 0..d {
                let mut z = Complex::new(0.0, 0.0);
                for k in 0..d {
                    z += m[(i, k)] * psi[k];
                }
                let p = z.norm_sqr();
                s += p * p;
            }
        }
        s
    }
}

fn check_opt_dim(d: usize) -> Result<()> {
    if d > MAX_OPT_DIM {
        return Err(validation(format!(
            "optimization supports dimension <= {MAX_OPT_DIM} (got {d})"
        )));
    }
    Ok(())
}

/// Pure state maximizing the H2 criterion, with its value.
pub fn optimize_h2_pure(
    pair: &ObservablePair,
    restarts: usize,
    seed: u64,
) -> Result<(PureState, f64)> {
    if restarts == 0 {
        return Err(validation("restarts must be at least 1"));
    }
    check_opt_dim(pair.dim())?;
    let f = h2_objective(pair);
    let (psi, v) = minimize_over_pure_states(
        pair.dim(),
        |z| -f(z),
        &starting_states(pair)?,
        restarts,
        seed,
    );
    Ok((psi, -v))
}

/// |<psi_opt|psi_inf>| for `n_pairs` Haar-random pairs of dimension `d`.
pub fn ensemble_overlap(
    d: usize,
    n_pairs: usize,
    restarts: usize,
    seed: u64,
) -> Result<EnsembleSummary> {
    if !(3..=8).contains(&d) {
        return Err(validation(format!(
            "ensemble dimension must lie in 3..=8 (got {d})"
        )));
    }
    if n_pairs == 0 {
        return Err(validation("n_pairs must be at least 1"));
    }
    let overlaps: Vec<f64> = (0..n_pairs)
        .into_par_iter()
        .map(|k| pair_overlap(d, restarts, seed, k as u64))
        .collect::<Result<_>>()?;
    let mean_overlap = overlaps.iter().sum::<f64>() / n_pairs as f64;
    let min_overlap = overlaps.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(EnsembleSummary {
        dimension: d,
        n_pairs,
        mean_overlap,
        min_overlap,
        seed,
        overlaps,
    })
}

fn pair_overlap(d: usize, restarts: usize, seed: u64, index: u64) -> Result<f64> {
    let stream = derive_seed(seed, index);
    let pair = ObservablePair::from_unitary(haar_unitary(d, stream)?)?;
    let psi_inf = psi_infinity(&pair)?;
    let (opt, _) = optimize_h2_pure(&pair, restarts, derive_seed(stream, u64::MAX))?;
    Ok(opt.fidelity_amplitude(&psi_inf))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NogoMub {
    pub h1_eigen: f64,
    pub h1_psi_inf: f64,
}

/// Shannon entropy of the joint statistics for the A eigenstate and for
/// psi-infinity, both as eps-pseudo-pure states of the qubit MUB pair.
pub fn nogo_witness_mub(eps: NoiseLevel) -> Result<NogoMub> {
    if eps.epsilon() >= 1.0 {
        return Err(validation("noise level must be below 1"));
    }
    let pair = crate::quantum::qubit_pair(FRAC_PI_2)?;
    let h1 = |psi: &PureState| -> Result<f64> {
        Ok(renyi_entropy(
            pseudo_pure_joint(psi, &pair, eps)?.dist(),
            RenyiOrder::SHANNON,
        ))
    };
    Ok(NogoMub {
        h1_eigen: h1(&pair.a().eigenvector(0))?,
        h1_psi_inf: h1(&psi_infinity(&pair)?)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NogoHighD {
    pub hminf_psi_inf: f64,
    pub hminf_xi: f64,
}

fn check_full_overlap(pair: &ObservablePair) -> Result<()> {
    let v = pair.overlap();
    if let Some(z) = v.iter().find(|z| z.norm() <= STRUCTURAL) {
        return Err(precondition(format!(
            "overlap matrix has a vanishing entry (|V_ij| = {})",
            z.norm()
        )));
    }
    Ok(())
}

/// H_-inf of the joint statistics for psi-infinity and for a state xi in
/// span{a_1, a_2} orthogonal to b_1, both eps-pseudo-pure.
pub fn nogo_witness_highd(pair: &ObservablePair, eps: NoiseLevel) -> Result<NogoHighD> {
    if pair.dim() < 3 {
        return Err(precondition("dimension must be at least 3"));
    }
    let e = eps.epsilon();
    if !(e > 0.0 && e < 1.0) {
        return Err(precondition("noise level must lie in (0, 1)"));
    }
    check_full_overlap(pair)?;
    let a = pair.a().basis();
    let b1 = pair.b().basis().column(0);
    let (a1, a2) = (a.column(0).into_owned(), a.column(1).into_owned());
    let xi = &a1 * b1.dotc(&a2) - &a2 * b1.dotc(&a1);
    let xi = PureState::normalized(xi.iter().copied().collect())?;
    let hminf = |psi: &PureState| -> Result<f64> {
        Ok(renyi_entropy(
            pseudo_pure_joint(psi, pair, eps)?.dist(),
            RenyiOrder::NegInfinity,
        ))
    };
    Ok(NogoHighD {
        hminf_psi_inf: hminf(&psi_infinity(pair)?)?,
        hminf_xi: hminf(&xi)?,
    })
}

/// Orders tried when no positive grid order separates the two states.
fn small_orders() -> impl Iterator<Item = RenyiOrder> {
    (1..=8).map(|k| RenyiOrder::Finite(10f64.powi(-k)))
}

/// Support and order-reversal content of the no-universal-MUS argument for
/// pure states: psi-infinity has full joint support, the a_1 eigenstate at most
/// d outcomes, so a small order prefers the eigenstate while H_inf prefers
/// psi-infinity.
pub fn pure_state_nogo_witness(pair: &ObservablePair, grid: &AlphaGrid) -> Result<bool> {
    check_full_overlap(pair)?;
    let d = pair.dim();
    let none = NoiseLevel::NONE;
    let j_inf = pseudo_pure_joint(&psi_infinity(pair)?, pair, none)?;
    let j_eig = pseudo_pure_joint(&pair.a().eigenvector(0), pair, none)?;
    let full = (support_entropy(j_inf.dist()) - ((d * d) as f64).ln()).abs() < 1e-12;
    let small = support_entropy(j_eig.dist()) <= (d as f64).ln() + 1e-12;
    let h = |j: &JointStat, a| renyi_entropy(j.dist(), a);
    let inf_prefers = h(&j_inf, RenyiOrder::PosInfinity) < h(&j_eig, RenyiOrder::PosInfinity);
    let positive = grid.iter().filter(|a| a.is_finite() && a.value() > 0.0);
    let reversal = positive
        .chain(small_orders())
        .any(|a| h(&j_eig, a) < h(&j_inf, a));
    Ok(full && small && inf_prefers && reversal)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QutritProfileRow {
    pub alpha: RenyiOrder,
    pub h_candidate: f64,
    pub h_eigen: f64,
    pub h_optimal: f64,
}

/// Joint Renyi entropies for the qutrit pair rotated by pi/6 about (1,1,1):
/// psi-infinity, the a_1 eigenstate and the numerically optimal pure
/// component, all eps-pseudo-pure. Each order is optimized independently.
pub fn qutrit_profile(
    eps: NoiseLevel,
    alphas: &[RenyiOrder],
    restarts: usize,
    seed: u64,
) -> Result<Vec<QutritProfileRow>> {
    let pair = rotation_pair_qutrit(std::f64::consts::FRAC_PI_6)?;
    let psi_inf = psi_infinity(&pair)?;
    let eigen = pair.a().eigenvector(0);
    let starts = starting_states(&pair)?;
    let h_of = |psi: &PureState, a| -> Result<f64> {
        Ok(renyi_entropy(pseudo_pure_joint(psi, &pair, eps)?.dist(), a))
    };
    alphas
        .iter()
        .enumerate()
        .map(|(k, &alpha)| {
            let objective = noisy_joint_objective(&pair, eps, alpha);
            let (_, h_optimal) = minimize_over_pure_states(
                3,
                objective,
                &starts,
                restarts,
                derive_seed(seed, k as u64),
            );
            Ok(QutritProfileRow {
                alpha,
                h_candidate: h_of(&psi_inf, alpha)?,
                h_eigen: h_of(&eigen, alpha)?,
                h_optimal,
            })
        })
        .collect()
}

fn noisy_joint_objective(
    pair: &ObservablePair,
    eps: NoiseLevel,
    alpha: RenyiOrder,
) -> impl Fn(&[C64]) -> f64 + Sync {
    let a_adj = pair.a().basis().adjoint();
    let b_adj = pair.b().basis().adjoint();
    let d = pair.dim();
    let e = eps.epsilon();
    move |psi: &[C64]| {
        let marginal = |m: &nalgebra::DMatrix<C64>| -> Vec<f64> {
            (0..d)
                .map(|i| {
                    let mut z = Complex::new(0.0, 0.0);
                    for k in 0..d {
                        z += m[(i, k)] * psi[k];
                    }
                    e / d as f64 + (1.0 - e) * z.norm_sqr()
                })
                .collect()
        };
        let joint = JointStat::from_marginals(
            ProbDist::from_vec_unchecked(marginal(&a_adj)),
            ProbDist::from_vec_unchecked(marginal(&b_adj)),
        );
        renyi_entropy(joint.dist(), alpha)
    }
}
