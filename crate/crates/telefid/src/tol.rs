//! Repository-wide numeric tolerances.
//!
//! Two tiers only: `EXACT` for identities that hold in exact arithmetic
//! (Pauli decompositions, completeness sums, closed-form algebra) and
//! `EIGEN` for spectral quantities where the eigensolver's own rounding
//! enters (positivity, idempotence of reconstructed projectors).

/// Identities exact up to f64 rounding.
pub const EXACT: f64 = 1e-12;

/// Eigenvalue positivity and other spectral checks.
pub const EIGEN: f64 = 1e-10;

/// Probabilities below this are treated as a degenerate measurement
/// outcome (the conditional Bloch vector is then undefined by 0/0).
pub const DEGENERATE_PROB: f64 = 1e-14;
