//! Thermodynamic counterpart for energy-diagonal states: Gibbs contexts,
//! alpha-free energies, partial thermalization, thermo-majorization and the
//! ordering thresholds near equilibrium.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use rand::Rng;

use crate::entropy::{renyi_divergence, ProbDist, RenyiOrder};
use crate::error::{precondition, validation, Error, Result};
use crate::tolerances::{ENTROPY_MARGIN, MAJORIZATION};
use crate::uncertainty::{least_stable_epsilon, NoiseLevel};

/// Energy levels at inverse temperature beta, with the Gibbs distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermoContext {
    energies: Vec<f64>,
    beta: f64,
    gibbs: ProbDist,
    log_z: f64,
}

impl ThermoContext {
    pub fn new(energies: Vec<f64>, beta: f64) -> Result<Self> {
        if energies.is_empty() {
            return Err(validation("at least one energy level is required"));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(validation(format!(
                "beta must be finite and positive (got {beta})"
            )));
        }
        if energies.iter().any(|e| !e.is_finite()) {
            return Err(validation("energies must be finite"));
        }
        let d = energies.len();
        let e_min = energies.iter().copied().fold(f64::INFINITY, f64::min);
        let e_max = energies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if e_min == e_max {
            let gibbs = ProbDist::from_vec_unchecked(vec![1.0 / d as f64; d]);
            let log_z = (d as f64).ln() - beta * e_min;
            return Ok(Self {
                energies,
                beta,
                gibbs,
                log_z,
            });
        }
        let shifted: f64 = energies.iter().map(|e| (-beta * (e - e_min)).exp()).sum();
        let log_z = shifted.ln() - beta * e_min;
        let gibbs: Vec<f64> = energies.iter().map(|e| (-beta * e - log_z).exp()).collect();
        if gibbs.iter().any(|&g| g <= 0.0) {
            return Err(validation(
                "Gibbs distribution underflows; reduce beta or the energy spread",
            ));
        }
        let total: f64 = gibbs.iter().sum();
        let gibbs = ProbDist::from_vec_unchecked(gibbs.into_iter().map(|g| g / total).collect());
        Ok(Self {
            energies,
            beta,
            gibbs,
            log_z,
        })
    }

    /// Degenerate levels: gibbs is exactly uniform.
    pub fn uniform(d: usize) -> Result<Self> {
        Self::new(vec![0.0; d], 1.0)
    }

    /// Non-interacting composite: energies add, partition functions multiply.
    pub fn product(&self, other: &ThermoContext) -> Result<Self> {
        if self.beta != other.beta {
            return Err(validation("product contexts need a common beta"));
        }
        let energies = self
            .energies
            .iter()
            .flat_map(|&a| other.energies.iter().map(move |&b| a + b))
            .collect();
        Self::new(energies, self.beta)
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// kT = 1 / beta.
    pub fn temperature(&self) -> f64 {
        1.0 / self.beta
    }

    pub fn gibbs(&self) -> &ProbDist {
        &self.gibbs
    }

    pub fn log_z(&self) -> f64 {
        self.log_z
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    /// Equilibrium free energy -kT ln Z.
    pub fn equilibrium_free_energy(&self) -> f64 {
        -self.log_z / self.beta
    }
}

/// Populations of the energy eigenstates.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyDiagonalState {
    pops: ProbDist,
}

impl EnergyDiagonalState {
    pub fn new(pops: ProbDist, ctx: &ThermoContext) -> Result<Self> {
        if pops.len() != ctx.dim() {
            return Err(validation(format!(
                "state has {} levels, context has {}",
                pops.len(),
                ctx.dim()
            )));
        }
        Ok(Self { pops })
    }

    pub fn gibbs(ctx: &ThermoContext) -> Self {
        Self {
            pops: ctx.gibbs.clone(),
        }
    }

    pub fn pops(&self) -> &ProbDist {
        &self.pops
    }
}

fn check_len(p: &EnergyDiagonalState, ctx: &ThermoContext) -> Result<()> {
    if p.pops.len() != ctx.dim() {
        return Err(validation("state and context dimensions differ"));
    }
    Ok(())
}

/// F_a(p) = -kT ln Z + kT S_a(p || gibbs).
pub fn free_energy(p: &EnergyDiagonalState, ctx: &ThermoContext, alpha: RenyiOrder) -> Result<f64> {
    check_len(p, ctx)?;
    let s = renyi_divergence(&p.pops, &ctx.gibbs, alpha)?;
    Ok(ctx.equilibrium_free_energy() + s / ctx.beta)
}

/// eps * gibbs + (1 - eps) * p.
pub fn epsilon_thermal(
    p: &EnergyDiagonalState,
    ctx: &ThermoContext,
    eps: NoiseLevel,
) -> Result<EnergyDiagonalState> {
    check_len(p, ctx)?;
    let e = eps.epsilon();
    let pops = ctx
        .gibbs
        .probs()
        .iter()
        .zip(p.pops.probs())
        .map(|(&g, &x)| e * g + (1.0 - e) * x)
        .collect();
    Ok(EnergyDiagonalState {
        pops: ProbDist::from_vec_unchecked(pops),
    })
}

/// Breakpoints (cumulative gibbs, cumulative p) with levels sorted by
/// p_i / gibbs_i descending, starting at (0, 0).
pub fn thermo_lorenz_curve(
    p: &EnergyDiagonalState,
    ctx: &ThermoContext,
) -> Result<Vec<(f64, f64)>> {
    check_len(p, ctx)?;
    let (pp, g) = (p.pops.probs(), ctx.gibbs.probs());
    let mut idx: Vec<usize> = (0..pp.len()).collect();
    idx.sort_by(|&i, &j| {
        (pp[j] / g[j])
            .total_cmp(&(pp[i] / g[i]))
            .then(pp[j].total_cmp(&pp[i]))
            .then(i.cmp(&j))
    });
    let mut curve = Vec::with_capacity(pp.len() + 1);
    let (mut x, mut y) = (0.0, 0.0);
    curve.push((x, y));
    for i in idx {
        x += g[i];
        y += pp[i];
        curve.push((x, y));
    }
    Ok(curve)
}

fn curve_at(curve: &[(f64, f64)], x: f64) -> f64 {
    for w in curve.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if x == x1 {
            return y1;
        }
        if x < x1 {
            return if x1 > x0 {
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            } else {
                y1
            };
        }
    }
    curve.last().map_or(0.0, |c| c.1)
}

/// p's thermo-Lorenz curve lies on or above q's (tolerance 1e-12) at every
/// breakpoint of either curve.
pub fn thermo_majorizes(
    p: &EnergyDiagonalState,
    q: &EnergyDiagonalState,
    ctx: &ThermoContext,
) -> Result<bool> {
    let (cp, cq) = (thermo_lorenz_curve(p, ctx)?, thermo_lorenz_curve(q, ctx)?);
    Ok(cp
        .iter()
        .chain(&cq)
        .all(|&(x, _)| curve_at(&cp, x) >= curve_at(&cq, x) - MAJORIZATION))
}

fn f_gap(
    p: &EnergyDiagonalState,
    q: &EnergyDiagonalState,
    ctx: &ThermoContext,
    alpha: RenyiOrder,
) -> Result<f64> {
    let (fp, fq) = (free_energy(p, ctx, alpha)?, free_energy(q, ctx, alpha)?);
    if fp.is_infinite() && fp == fq {
        return Ok(0.0);
    }
    Ok(fp - fq)
}

/// Least eps after which the F_alpha ordering of the eps-thermal states
/// agrees with the F_2 ordering for every larger sampled eps.
///
/// The F_2 ordering is the same at every eps. `Ok(None)` means no agreement
/// was found up to eps = 1 - 1e-12.
pub fn f2_ordering_threshold(
    p: &EnergyDiagonalState,
    q: &EnergyDiagonalState,
    ctx: &ThermoContext,
    alpha: RenyiOrder,
) -> Result<Option<f64>> {
    if !alpha.is_finite() {
        return Err(Error::Unsupported(
            "threshold requires a finite order".into(),
        ));
    }
    let g2 = f_gap(p, q, ctx, RenyiOrder::COLLISION)?;
    if g2.abs() <= ENTROPY_MARGIN {
        return Err(precondition(format!("F2 tie (difference {g2})")));
    }
    let sign = g2.signum();
    Ok(least_stable_epsilon(|e| {
        let eps = NoiseLevel::new(e).unwrap_or(NoiseLevel::NONE);
        let gap = epsilon_thermal(p, ctx, eps)
            .and_then(|pe| f_gap(&pe, &epsilon_thermal(q, ctx, eps)?, ctx, alpha));
        matches!(gap, Ok(g) if g * sign > 0.0)
    }))
}

/// First sampled time after which F_1(p(t)) > F_1(q(t)) at every later
/// sample, where x(t) is the eps(t)-thermal state of x0.
///
/// Requires F_2(p0) > F_2(q0), F_1(p0) < F_1(q0), increasing times and a
/// non-decreasing schedule with values in [0, 1].
pub fn f1_reversal_time(
    p0: &EnergyDiagonalState,
    q0: &EnergyDiagonalState,
    ctx: &ThermoContext,
    times: &[f64],
    schedule: impl Fn(f64) -> f64,
) -> Result<Option<f64>> {
    if f_gap(p0, q0, ctx, RenyiOrder::COLLISION)? <= ENTROPY_MARGIN {
        return Err(validation("F2(p0) > F2(q0) is required"));
    }
    if f_gap(p0, q0, ctx, RenyiOrder::SHANNON)? >= -ENTROPY_MARGIN {
        return Err(validation("F1(p0) < F1(q0) is required"));
    }
    if times.is_empty()
        || times
            .windows(2)
            .any(|w| w[1].partial_cmp(&w[0]) != Some(Ordering::Greater))
    {
        return Err(validation(
            "sample times must be non-empty and strictly increasing",
        ));
    }
    let eps: Vec<f64> = times.iter().map(|&t| schedule(t)).collect();
    if eps.iter().any(|e| !(0.0..=1.0).contains(e)) || eps.windows(2).any(|w| w[1] < w[0]) {
        return Err(validation(
            "schedule must be non-decreasing with values in [0, 1]",
        ));
    }
    let mut reversed = Vec::with_capacity(eps.len());
    for &e in &eps {
        let n = NoiseLevel::new(e)?;
        let g = f_gap(
            &epsilon_thermal(p0, ctx, n)?,
            &epsilon_thermal(q0, ctx, n)?,
            ctx,
            RenyiOrder::SHANNON,
        )?;
        reversed.push(g > 0.0);
    }
    if !reversed.last().copied().unwrap_or(false) {
        return Ok(None);
    }
    let first = reversed.iter().rposition(|&r| !r).map_or(0, |k| k + 1);
    Ok(Some(times[first]))
}

/// Column-stochastic matrix acting on populations.
#[derive(Debug, Clone, PartialEq)]
pub struct StochasticMap {
    m: DMatrix<f64>,
}

impl StochasticMap {
    pub fn identity(d: usize) -> Self {
        Self {
            m: DMatrix::identity(d, d),
        }
    }

    /// Sends every state to the Gibbs state.
    pub fn thermalize(ctx: &ThermoContext) -> Self {
        let d = ctx.dim();
        let g = ctx.gibbs.probs();
        Self {
            m: DMatrix::from_fn(d, d, |i, _| g[i]),
        }
    }

    /// Partial swap of levels i and j that preserves gibbs: moves a fraction
    /// t of the largest Gibbs-balanced flow between them.
    pub fn two_level(ctx: &ThermoContext, i: usize, j: usize, t: f64) -> Result<Self> {
        let d = ctx.dim();
        if i >= d || j >= d || i == j || !(0.0..=1.0).contains(&t) {
            return Err(validation(
                "two-level map needs distinct levels and t in [0, 1]",
            ));
        }
        let g = ctx.gibbs.probs();
        let (a, b) = if g[j] < g[i] {
            (t * g[j] / g[i], t)
        } else {
            (t, t * g[i] / g[j])
        };
        let mut m = DMatrix::identity(d, d);
        m[(i, i)] = 1.0 - a;
        m[(j, i)] = a;
        m[(j, j)] = 1.0 - b;
        m[(i, j)] = b;
        Ok(Self { m })
    }

    pub fn then(&self, next: &StochasticMap) -> Self {
        Self {
            m: &next.m * &self.m,
        }
    }

    pub fn mix(&self, other: &StochasticMap, w: f64) -> Self {
        Self {
            m: self.m.scale(1.0 - w) + other.m.scale(w),
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn apply(&self, p: &EnergyDiagonalState) -> EnergyDiagonalState {
        let v = &self.m * nalgebra::DVector::from_column_slice(p.pops.probs());
        EnergyDiagonalState {
            pops: ProbDist::from_vec_unchecked(v.iter().copied().collect()),
        }
    }

    /// Largest deviation |(M gibbs)_i - gibbs_i|.
    pub fn gibbs_defect(&self, ctx: &ThermoContext) -> f64 {
        let g = EnergyDiagonalState::gibbs(ctx);
        self.apply(&g)
            .pops
            .probs()
            .iter()
            .zip(ctx.gibbs.probs())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Random Gibbs-preserving map: a convex mixture of two random chains of
/// two-level maps, partially mixed with full thermalization.
pub fn sample_gibbs_preserving<R: Rng + ?Sized>(
    ctx: &ThermoContext,
    rng: &mut R,
) -> Result<StochasticMap> {
    let d = ctx.dim();
    if d < 2 {
        return Ok(StochasticMap::identity(d));
    }
    let chain = |rng: &mut R| -> Result<StochasticMap> {
        let mut m = StochasticMap::identity(d);
        for _ in 0..rng.random_range(1..=2 * d) {
            let i = rng.random_range(0..d);
            let j = (i + rng.random_range(1..d)) % d;
            m = m.then(&StochasticMap::two_level(ctx, i, j, rng.random::<f64>())?);
        }
        Ok(m)
    };
    let (a, b) = (chain(rng)?, chain(rng)?);
    let w = rng.random::<f64>();
    let t = 0.3 * rng.random::<f64>();
    Ok(a.mix(&b, w).mix(&StochasticMap::thermalize(ctx), t))
}
