//! Preorders on probability vectors.
//!
//! * Majorization (family S): every Schur-concave function agrees.
//! * Trumping (family U): strict ordering of every Renyi entropy, certified on
//!   a finite [`AlphaGrid`]. A trumping verdict is sound for the sampled orders
//!   only; it is not a proof over all real orders.

use std::fmt;

use crate::entropy::{renyi_entropy, AlphaGrid, ProbDist, RenyiOrder};
use crate::error::{validation, Result};
use crate::tolerances::{ENTROPY_MARGIN, MAJORIZATION};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    StrictlyLessUncertain,
    StrictlyMoreUncertain,
    EquivalentUpToPermutation,
    Incomparable,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::StrictlyLessUncertain => "strictly-less-uncertain",
            Relation::StrictlyMoreUncertain => "strictly-more-uncertain",
            Relation::EquivalentUpToPermutation => "equivalent-up-to-permutation",
            Relation::Incomparable => "incomparable",
        })
    }
}

/// Where a comparison is decided: a Renyi order or a partial-sum length k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Witness {
    Alpha(RenyiOrder),
    PartialSum(usize),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Alpha(a) => write!(f, "alpha={a}"),
            Witness::PartialSum(k) => write!(f, "k={k}"),
        }
    }
}

/// Relation of `p` to `q`. A witness is present exactly for strict and incomparable verdicts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderVerdict {
    pub relation: Relation,
    pub witness: Option<Witness>,
}

impl OrderVerdict {
    fn equivalent() -> Self {
        Self {
            relation: Relation::EquivalentUpToPermutation,
            witness: None,
        }
    }
}

fn padded_sorted(p: &ProbDist, len: usize) -> Vec<f64> {
    let mut v = p.sorted_desc();
    v.resize(len, 0.0);
    v
}

/// Smallest k (1-based) with sum_{i<=k} p_i^down < sum_{i<=k} q_i^down - 1e-12.
pub fn majorization_failure(p: &ProbDist, q: &ProbDist) -> Option<usize> {
    let n = p.len().max(q.len());
    let (ps, qs) = (padded_sorted(p, n), padded_sorted(q, n));
    let (mut sp, mut sq) = (0.0, 0.0);
    for k in 0..n {
        sp += ps[k];
        sq += qs[k];
        if sp < sq - MAJORIZATION {
            return Some(k + 1);
        }
    }
    None
}

/// p majorizes q; the shorter vector is zero-padded.
pub fn majorizes(p: &ProbDist, q: &ProbDist) -> bool {
    majorization_failure(p, q).is_none()
}

/// Sorted vectors coincide within 1e-12 after zero padding.
pub fn equivalent_up_to_permutation(p: &ProbDist, q: &ProbDist) -> bool {
    let n = p.len().max(q.len());
    padded_sorted(p, n)
        .iter()
        .zip(padded_sorted(q, n))
        .all(|(a, b)| (a - b).abs() <= MAJORIZATION)
}

/// Product distribution, index i*m + j holds p_i q_j.
pub fn tensor(p: &ProbDist, q: &ProbDist) -> ProbDist {
    let out = p
        .probs()
        .iter()
        .flat_map(|&a| q.probs().iter().map(move |&b| a * b))
        .collect();
    ProbDist::from_vec_unchecked(out)
}

/// `r` enables a conversion that majorization alone forbids.
pub fn catalysis_witness(p: &ProbDist, q: &ProbDist, r: &ProbDist) -> bool {
    !majorizes(p, q) && majorizes(&tensor(p, r), &tensor(q, r))
}

/// Sum of the two smallest entries: Schur-concave but not additive.
pub fn sum_two_smallest(p: &ProbDist) -> Result<f64> {
    if p.len() < 2 {
        return Err(validation("sum_two_smallest needs at least two entries"));
    }
    let s = p.sorted_desc();
    Ok(s[s.len() - 1] + s[s.len() - 2])
}

/// Family-S verdict: majorization in both directions.
pub fn uncertainty_verdict_s(p: &ProbDist, q: &ProbDist) -> OrderVerdict {
    if equivalent_up_to_permutation(p, q) {
        return OrderVerdict::equivalent();
    }
    match (majorization_failure(p, q), majorization_failure(q, p)) {
        (None, None) => OrderVerdict::equivalent(),
        (None, Some(k)) => OrderVerdict {
            relation: Relation::StrictlyLessUncertain,
            witness: Some(Witness::PartialSum(k)),
        },
        (Some(k), None) => OrderVerdict {
            relation: Relation::StrictlyMoreUncertain,
            witness: Some(Witness::PartialSum(k)),
        },
        (Some(k), Some(_)) => OrderVerdict {
            relation: Relation::Incomparable,
            witness: Some(Witness::PartialSum(k)),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cmp {
    Less,
    Greater,
    Tie,
}

/// Compares extended reals with margin 1e-10; equal infinities tie.
fn compare(a: f64, b: f64) -> (Cmp, f64) {
    if a == b {
        return (Cmp::Tie, 0.0);
    }
    let gap = b - a;
    if gap > ENTROPY_MARGIN {
        (Cmp::Less, gap)
    } else if gap < -ENTROPY_MARGIN {
        (Cmp::Greater, -gap)
    } else {
        (Cmp::Tie, gap.abs())
    }
}

/// Family-U verdict from Renyi entropies on `grid`.
///
/// Strict verdicts carry the order with the narrowest gap; incomparable
/// verdicts carry the first order that breaks the would-be strict relation.
pub fn trumping_verdict(p: &ProbDist, q: &ProbDist, grid: &AlphaGrid) -> OrderVerdict {
    if equivalent_up_to_permutation(p, q) {
        return OrderVerdict::equivalent();
    }
    let cmps: Vec<(RenyiOrder, Cmp, f64)> = grid
        .iter()
        .map(|a| {
            let (c, gap) = compare(renyi_entropy(p, a), renyi_entropy(q, a));
            (a, c, gap)
        })
        .collect();
    let narrowest = |want: Cmp| {
        cmps.iter()
            .filter(|(_, c, _)| *c == want)
            .min_by(|x, y| x.2.total_cmp(&y.2))
            .map(|(a, _, _)| Witness::Alpha(*a))
    };
    if cmps.iter().all(|(_, c, _)| *c == Cmp::Less) {
        return OrderVerdict {
            relation: Relation::StrictlyLessUncertain,
            witness: narrowest(Cmp::Less),
        };
    }
    if cmps.iter().all(|(_, c, _)| *c == Cmp::Greater) {
        return OrderVerdict {
            relation: Relation::StrictlyMoreUncertain,
            witness: narrowest(Cmp::Greater),
        };
    }
    let leaning = if cmps.iter().any(|(_, c, _)| *c == Cmp::Less) {
        Cmp::Less
    } else {
        Cmp::Greater
    };
    let breaker = cmps
        .iter()
        .find(|(_, c, _)| *c != leaning)
        .map(|(a, _, _)| Witness::Alpha(*a));
    OrderVerdict {
        relation: Relation::Incomparable,
        witness: breaker,
    }
}
