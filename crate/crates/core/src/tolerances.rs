//! Numerical tolerances shared across modules.

/// Structural invariants: normalization, Hermiticity, unitarity, trace.
pub const STRUCTURAL: f64 = 1e-10;

/// Sums derived from structural objects (row sums of |V|^2, projector sums).
pub const DERIVED_SUM: f64 = 1e-9;

/// Largest negative probability that is clamped to zero after a projection.
pub const CLAMP: f64 = 1e-12;

/// Entries at or below this value do not count towards the support.
pub const SUPPORT: f64 = 1e-12;

/// Partial-sum dominance slack in majorization checks.
pub const MAJORIZATION: f64 = 1e-12;

/// Margin for strict entropy comparisons; smaller gaps count as ties.
pub const ENTROPY_MARGIN: f64 = 1e-10;

/// Within this distance of 1 the Shannon / KL formula replaces the finite-order one.
pub const NEAR_ONE: f64 = 1e-7;

/// Bisection resolution for noise thresholds.
pub const THRESHOLD_BISECTION: f64 = 1e-9;

/// Number of points of the threshold verification grid on [0, 1).
pub const THRESHOLD_GRID: usize = 1000;
