//! Renyi entropies over the whole real line of orders, von Neumann entropy and
//! classical Renyi divergences.
//!
//! Conventions (all values in nats):
//!
//! | order | `renyi_entropy` |
//! |-------|-----------------|
//! | finite a not in {0, 1} | sgn(a)/(1-a) ln sum p_i^a |
//! | 0 | Burg entropy (1/d) sum ln p_i, *not* the a -> 0 limit |
//! | 1 | Shannon entropy |
//! | +inf | -ln max p_i |
//! | -inf | ln min p_i |
//!
//! The a -> 0+ limit, ln |supp p|, is available as [`support_entropy`].
//! Distributions with zero entries give `-inf` for every order <= 0.

use std::fmt;
use std::str::FromStr;

use crate::error::{validation, Error, Result};
use crate::quantum::DensityMatrix;
use crate::tolerances::{CLAMP, NEAR_ONE, STRUCTURAL, SUPPORT};

/// A finite probability vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDist {
    probs: Vec<f64>,
}

impl ProbDist {
    /// Entries must be non-negative and sum to 1 within 1e-10.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(validation("distribution must have at least one entry"));
        }
        if let Some(bad) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(validation(format!(
                "probability {bad} is negative or non-finite"
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > STRUCTURAL {
            return Err(validation(format!("probabilities sum to {total}, not 1")));
        }
        Ok(Self { probs })
    }

    /// Clamps entries in [-1e-12, 0) to zero and renormalizes. Larger negative
    /// entries and sums far from 1 are still rejected.
    pub fn from_clamped(mut probs: Vec<f64>) -> Result<Self> {
        for p in probs.iter_mut() {
            if !p.is_finite() || *p < -CLAMP {
                return Err(validation(format!(
                    "probability {p} is negative beyond clamping tolerance"
                )));
            }
            *p = p.clamp(0.0, 1.0);
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > STRUCTURAL {
            return Err(validation(format!("probabilities sum to {total}, not 1")));
        }
        probs.iter_mut().for_each(|p| *p /= total);
        Ok(Self { probs })
    }

    pub(crate) fn from_vec_unchecked(probs: Vec<f64>) -> Self {
        Self { probs }
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(validation("uniform distribution needs n >= 1"));
        }
        Ok(Self {
            probs: vec![1.0 / n as f64; n],
        })
    }

    /// All mass on `index`.
    pub fn sharp(n: usize, index: usize) -> Result<Self> {
        if index >= n {
            return Err(validation(format!(
                "index {index} out of range for length {n}"
            )));
        }
        let mut probs = vec![0.0; n];
        probs[index] = 1.0;
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Entries rearranged in decreasing order.
    pub fn sorted_desc(&self) -> Vec<f64> {
        let mut v = self.probs.clone();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    /// Number of entries above 1e-12.
    pub fn support_size(&self) -> usize {
        self.probs.iter().filter(|&&p| p > SUPPORT).count()
    }

    pub fn max(&self) -> f64 {
        self.probs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.probs.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// sum_i p_i^2, the collision probability.
    pub fn collision(&self) -> f64 {
        self.probs.iter().map(|p| p * p).sum()
    }
}

impl AsRef<[f64]> for ProbDist {
    fn as_ref(&self) -> &[f64] {
        &self.probs
    }
}

/// An order of the Renyi family: any finite real, or +-inf. Finite 0 is the Burg order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RenyiOrder {
    Finite(f64),
    PosInfinity,
    NegInfinity,
}

impl RenyiOrder {
    pub const BURG: RenyiOrder = RenyiOrder::Finite(0.0);
    pub const SHANNON: RenyiOrder = RenyiOrder::Finite(1.0);
    pub const COLLISION: RenyiOrder = RenyiOrder::Finite(2.0);

    /// Maps `f64::INFINITY` / `f64::NEG_INFINITY` to the infinite orders; rejects NaN.
    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() {
            Err(validation("Renyi order cannot be NaN"))
        } else if value == f64::INFINITY {
            Ok(RenyiOrder::PosInfinity)
        } else if value == f64::NEG_INFINITY {
            Ok(RenyiOrder::NegInfinity)
        } else {
            Ok(RenyiOrder::Finite(value))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            RenyiOrder::Finite(a) => a,
            RenyiOrder::PosInfinity => f64::INFINITY,
            RenyiOrder::NegInfinity => f64::NEG_INFINITY,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, RenyiOrder::Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            RenyiOrder::Finite(a) => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for RenyiOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RenyiOrder::Finite(a) => write!(f, "{a}"),
            RenyiOrder::PosInfinity => f.write_str("inf"),
            RenyiOrder::NegInfinity => f.write_str("-inf"),
        }
    }
}

impl FromStr for RenyiOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" => Ok(RenyiOrder::PosInfinity),
            "-inf" | "-infinity" => Ok(RenyiOrder::NegInfinity),
            "burg" => Ok(RenyiOrder::BURG),
            other => other
                .parse::<f64>()
                .map_err(|_| validation(format!("cannot parse Renyi order '{s}'")))
                .and_then(RenyiOrder::new),
        }
    }
}

/// Finite, sorted, duplicate-free sample of Renyi orders standing in for "all orders".
///
/// Always contains -inf, 0 (Burg), 1/2, 1, 2 and +inf.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaGrid {
    orders: Vec<RenyiOrder>,
}

impl AlphaGrid {
    pub const MANDATORY: [RenyiOrder; 6] = [
        RenyiOrder::NegInfinity,
        RenyiOrder::Finite(0.0),
        RenyiOrder::Finite(0.5),
        RenyiOrder::Finite(1.0),
        RenyiOrder::Finite(2.0),
        RenyiOrder::PosInfinity,
    ];

    /// Merges `orders` with the mandatory points, then sorts and deduplicates.
    pub fn new(orders: impl IntoIterator<Item = RenyiOrder>) -> Self {
        let mut all: Vec<RenyiOrder> = orders.into_iter().chain(Self::MANDATORY).collect();
        all.sort_by(|a, b| a.value().total_cmp(&b.value()));
        // -0.0 and 0.0 compare equal here, so a signed zero never duplicates Burg.
        all.dedup_by(|a, b| a.value() == b.value());
        Self { orders: all }
    }

    /// {-inf, -10, -5, -3, -2, -1, -0.5, 0, 0.1, 0.25, 0.5, 0.75, 1, 1.5, 2, 3, 5, 10, +inf}.
    pub fn default_grid() -> Self {
        Self::new(
            [
                -10.0, -5.0, -3.0, -2.0, -1.0, -0.5, 0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0,
                10.0,
            ]
            .map(RenyiOrder::Finite),
        )
    }

    /// `"default"` or a comma-separated list of orders (`inf`, `-inf`, `burg` allowed).
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim().eq_ignore_ascii_case("default") {
            return Ok(Self::default_grid());
        }
        let orders = text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<RenyiOrder>>>()?;
        Ok(Self::new(orders))
    }

    pub fn orders(&self) -> &[RenyiOrder] {
        &self.orders
    }

    pub fn iter(&self) -> impl Iterator<Item = RenyiOrder> + '_ {
        self.orders.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    /// Orders with value >= 0, including +inf.
    pub fn nonnegative(&self) -> Vec<RenyiOrder> {
        self.iter().filter(|a| a.value() >= 0.0).collect()
    }

    pub fn finite_orders(&self) -> Vec<f64> {
        self.iter().filter_map(RenyiOrder::finite).collect()
    }
}

impl fmt::Display for AlphaGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

fn sgn(a: f64) -> f64 {
    if a > 0.0 {
        1.0
    } else if a < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// ln sum_i exp(x_i), with -inf entries contributing nothing.
fn log_sum_exp(terms: impl Iterator<Item = f64> + Clone) -> f64 {
    let m = terms.clone().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + terms.map(|x| (x - m).exp()).sum::<f64>().ln()
}

fn shannon_raw(p: &[f64]) -> f64 {
    -p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.ln())
        .sum::<f64>()
}

/// Renyi entropy of order `alpha`, in nats. May return +-inf, never NaN.
pub fn renyi_entropy(p: &ProbDist, alpha: RenyiOrder) -> f64 {
    let probs = p.probs();
    let has_zero = probs.contains(&0.0);
    match alpha {
        RenyiOrder::PosInfinity => -p.max().ln(),
        RenyiOrder::NegInfinity => {
            if has_zero {
                f64::NEG_INFINITY
            } else {
                p.min().ln()
            }
        }
        RenyiOrder::Finite(0.0) => {
            if has_zero {
                f64::NEG_INFINITY
            } else {
                probs.iter().map(|x| x.ln()).sum::<f64>() / probs.len() as f64
            }
        }
        RenyiOrder::Finite(a) if (a - 1.0).abs() < NEAR_ONE => shannon_raw(probs),
        RenyiOrder::Finite(a) => {
            if a < 0.0 && has_zero {
                return f64::NEG_INFINITY;
            }
            let lse = log_sum_exp(probs.iter().filter(|&&x| x > 0.0).map(move |&x| a * x.ln()));
            sgn(a) / (1.0 - a) * lse
        }
    }
}

/// Shannon entropy -sum p ln p.
pub fn shannon(p: &ProbDist) -> f64 {
    shannon_raw(p.probs())
}

/// Collision entropy -ln sum p^2.
pub fn collision_entropy(p: &ProbDist) -> f64 {
    -p.collision().ln()
}

/// ln |supp p|, the a -> 0+ limit of the Renyi family (support threshold 1e-12).
pub fn support_entropy(p: &ProbDist) -> f64 {
    (p.support_size() as f64).ln()
}

/// -tr rho ln rho from the eigenvalues, with 0 ln 0 = 0.
pub fn von_neumann(rho: &DensityMatrix) -> f64 {
    -rho.eigenvalues()
        .into_iter()
        .filter(|&l| l > 0.0)
        .map(|l| l * l.ln())
        .sum::<f64>()
}

/// Renyi divergence S_a(p||q). `q` must have full support.
///
/// | order | value |
/// |-------|-------|
/// | 0 | -ln sum_{p_i > 1e-12} q_i |
/// | 1 | sum p ln(p/q) |
/// | +inf | ln max p_i/q_i |
/// | -inf | S_inf(q||p) |
/// | other | sgn(a)/(a-1) ln sum p^a q^(1-a) |
pub fn renyi_divergence(p: &ProbDist, q: &ProbDist, alpha: RenyiOrder) -> Result<f64> {
    if p.len() != q.len() {
        return Err(validation(format!(
            "length mismatch ({} vs {})",
            p.len(),
            q.len()
        )));
    }
    if q.probs().iter().any(|&x| x <= 0.0) {
        return Err(Error::Unsupported(
            "reference distribution must have full support".into(),
        ));
    }
    let pairs = p.probs().iter().copied().zip(q.probs().iter().copied());
    let value = match alpha {
        RenyiOrder::PosInfinity => pairs.map(|(pi, qi)| pi / qi).fold(0.0, f64::max).ln(),
        RenyiOrder::NegInfinity => {
            if p.probs().contains(&0.0) {
                f64::INFINITY
            } else {
                pairs.map(|(pi, qi)| qi / pi).fold(0.0, f64::max).ln()
            }
        }
        RenyiOrder::Finite(0.0) => -pairs
            .filter(|&(pi, _)| pi > SUPPORT)
            .map(|(_, qi)| qi)
            .sum::<f64>()
            .ln(),
        RenyiOrder::Finite(a) if (a - 1.0).abs() < NEAR_ONE => pairs
            .filter(|&(pi, _)| pi > 0.0)
            .map(|(pi, qi)| pi * (pi / qi).ln())
            .sum::<f64>(),
        RenyiOrder::Finite(a) => {
            if a < 0.0 && p.probs().contains(&0.0) {
                f64::INFINITY
            } else {
                let terms = pairs
                    .filter(|&(pi, _)| pi > 0.0)
                    .map(move |(pi, qi)| a * pi.ln() + (1.0 - a) * qi.ln());
                sgn(a) / (a - 1.0) * log_sum_exp(terms)
            }
        }
    };
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{bloch_to_density, pure_to_density, BlochVector, PureState};
    use std::f64::consts::LN_2;

    fn pd(v: &[f64]) -> ProbDist {
        ProbDist::new(v.to_vec()).unwrap()
    }

    fn binary_entropy(x: f64) -> f64 {
        -(x * x.ln() + (1.0 - x) * (1.0 - x).ln())
    }

    const P4: [f64; 4] = [0.77, 0.10, 0.10, 0.03];
    const Q4: [f64; 4] = [0.63, 0.35, 0.01, 0.01];

    #[test]
    fn uniform_is_signed_ln_d_for_every_order() {
        let u = ProbDist::uniform(5).unwrap();
        for a in AlphaGrid::default_grid().iter() {
            let want = if a.value() > 0.0 {
                5f64.ln()
            } else {
                -(5f64.ln())
            };
            assert!((renyi_entropy(&u, a) - want).abs() < 1e-12, "order {a}");
        }
    }

    #[test]
    fn sharp_distribution() {
        let s = ProbDist::sharp(3, 0).unwrap();
        assert_eq!(renyi_entropy(&s, RenyiOrder::COLLISION), 0.0);
        assert_eq!(renyi_entropy(&s, RenyiOrder::PosInfinity), 0.0);
        assert_eq!(
            renyi_entropy(&s, RenyiOrder::NegInfinity),
            f64::NEG_INFINITY
        );
        assert_eq!(renyi_entropy(&s, RenyiOrder::BURG), f64::NEG_INFINITY);
        assert_eq!(
            renyi_entropy(&s, RenyiOrder::Finite(-2.0)),
            f64::NEG_INFINITY
        );
        assert_eq!(renyi_entropy(&s, RenyiOrder::Finite(0.5)), 0.0);
    }

    #[test]
    fn collision_and_min_entropy_of_reference_p() {
        let p = pd(&P4);
        let sum_sq: f64 = P4.iter().map(|x| x * x).sum();
        assert!((sum_sq - 0.6138).abs() < 1e-15);
        assert!((renyi_entropy(&p, RenyiOrder::COLLISION) + 0.6138f64.ln()).abs() < 1e-14);
        assert!((renyi_entropy(&p, RenyiOrder::COLLISION) - 0.48809).abs() < 1e-5);
        assert!((renyi_entropy(&p, RenyiOrder::PosInfinity) - 0.26136).abs() < 1e-5);
    }

    #[test]
    fn shannon_examples() {
        assert!((shannon(&pd(&[0.5, 0.5])) - LN_2).abs() < 1e-15);
        assert_eq!(shannon(&pd(&[1.0, 0.0])), 0.0);
        let direct: f64 = -Q4.iter().map(|x| x * x.ln()).sum::<f64>();
        assert!((shannon(&pd(&Q4)) - direct).abs() < 1e-15);
        assert!((shannon(&pd(&Q4)) - 0.750623).abs() < 1e-6);
        assert_eq!(
            renyi_entropy(&pd(&Q4), RenyiOrder::SHANNON),
            shannon(&pd(&Q4))
        );
    }

    #[test]
    fn negative_orders_and_sign_convention() {
        let p = pd(&[0.5, 0.3, 0.2]);
        // a = -1: sgn(-1)/(1+1) ln sum p^-1 = -ln(sum 1/p)/2
        let expect = -(2.0 + 1.0 / 0.3 + 5.0f64).ln() / 2.0;
        assert!((renyi_entropy(&p, RenyiOrder::Finite(-1.0)) - expect).abs() < 1e-14);
        assert!((renyi_entropy(&p, RenyiOrder::NegInfinity) - 0.2f64.ln()).abs() < 1e-15);
        let burg = (0.5f64.ln() + 0.3f64.ln() + 0.2f64.ln()) / 3.0;
        assert!((renyi_entropy(&p, RenyiOrder::BURG) - burg).abs() < 1e-15);
    }

    #[test]
    fn large_orders_do_not_underflow() {
        let p = pd(&[0.3, 0.3, 0.4]);
        let h = renyi_entropy(&p, RenyiOrder::Finite(2000.0));
        assert!(h.is_finite());
        assert!((h + 0.4f64.ln()).abs() < 1e-3);
    }

    #[test]
    fn von_neumann_examples() {
        let pure = pure_to_density(&PureState::basis(3, 1).unwrap()).unwrap();
        assert!(von_neumann(&pure).abs() < 1e-12);
        let mixed = DensityMatrix::maximally_mixed(4).unwrap();
        assert!((von_neumann(&mixed) - 4f64.ln()).abs() < 1e-12);
        let half = bloch_to_density(&BlochVector::new([0.0, 0.5, 0.0]).unwrap());
        assert!((von_neumann(&half) - binary_entropy(0.75)).abs() < 1e-12);
        assert!((von_neumann(&half) - 0.56234).abs() < 1e-5);
    }

    #[test]
    fn divergence_examples() {
        let p = pd(&[0.2, 0.5, 0.3]);
        for a in AlphaGrid::default_grid().iter() {
            assert!(
                renyi_divergence(&p, &p, a).unwrap().abs() < 1e-12,
                "order {a}"
            );
        }
        let sharp = pd(&[1.0, 0.0]);
        let half = pd(&[0.5, 0.5]);
        assert!(
            (renyi_divergence(&sharp, &half, RenyiOrder::PosInfinity).unwrap() - LN_2).abs()
                < 1e-15
        );
        let d2 = renyi_divergence(&pd(&[0.7, 0.3]), &half, RenyiOrder::COLLISION).unwrap();
        assert!((d2 - 1.16f64.ln()).abs() < 1e-14);
        assert!((d2 - 0.14842).abs() < 1e-5);
        assert!(matches!(
            renyi_divergence(&half, &sharp, RenyiOrder::SHANNON),
            Err(Error::Unsupported(_))
        ));
        assert_eq!(
            renyi_divergence(&sharp, &half, RenyiOrder::NegInfinity).unwrap(),
            f64::INFINITY
        );
        assert!((renyi_divergence(&sharp, &half, RenyiOrder::BURG).unwrap() - LN_2).abs() < 1e-15);
    }

    #[test]
    fn grid_invariants() {
        let g = AlphaGrid::parse("3, -inf, 0.5, 7, burg").unwrap();
        for m in AlphaGrid::MANDATORY {
            assert!(g.orders().contains(&m));
        }
        assert!(g.orders().windows(2).all(|w| w[0].value() < w[1].value()));
        assert_eq!(AlphaGrid::default_grid().len(), 19);
        assert!(AlphaGrid::parse("1,x").is_err());
        assert_eq!(
            AlphaGrid::parse(&AlphaGrid::default_grid().to_string()).unwrap(),
            AlphaGrid::default_grid()
        );
    }

    #[test]
    fn clamping() {
        let p = ProbDist::from_clamped(vec![1.0 + 5e-13, -5e-13]).unwrap();
        assert_eq!(p.probs()[1], 0.0);
        assert!(ProbDist::from_clamped(vec![1.1, -0.1]).is_err());
        assert!(ProbDist::new(vec![0.5, 0.4]).is_err());
        assert!(ProbDist::new(vec![]).is_err());
    }
}
