//! Optimal classical (measure-and-prepare) teleportation baseline.
//!
//! Alice measures a POVM with effects `c_i^2 rho_i`, Bob prepares along
//! the best guessing vector. Optimality of the rank-one strategy is taken
//! as given; only the closed-form fidelities are evaluated here.

use crate::bloch::BlochVector;
use crate::distributions::{IsotropicDistribution, MomentExponent};
use crate::error::{Result, TelefidError};
use crate::tol;

/// A classical measuring strategy: directions `s_i` with weights `c_i^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalPovmConfig {
    pub directions: Vec<BlochVector>,
    pub weights: Vec<f64>,
}

impl ClassicalPovmConfig {
    /// Requires `sum c_i^2 = 2` and `sum c_i^2 s_i = 0`.
    pub fn new(directions: Vec<BlochVector>, weights: Vec<f64>) -> Result<Self> {
        if directions.len() != weights.len() || directions.is_empty() {
            return Err(TelefidError::Domain(
                "directions and weights must be non-empty and equal length".into(),
            ));
        }
        let total: f64 = weights.iter().sum();
        if (total - 2.0).abs() > tol::EXACT {
            return Err(TelefidError::Domain(format!(
                "weights sum to {total}, expected 2"
            )));
        }
        let balance: BlochVector = directions
            .iter()
            .zip(&weights)
            .map(|(s, &w)| s * w)
            .sum();
        if balance.norm() > tol::EXACT {
            return Err(TelefidError::Domain(
                "weighted directions must sum to zero".into(),
            ));
        }
        Ok(Self { directions, weights })
    }

    /// Two opposite rank-one effects along `dir`.
    pub fn antipodal(dir: BlochVector) -> Result<Self> {
        Self::new(vec![dir, -dir], vec![1.0, 1.0])
    }
}

fn guess_scale(d: &IsotropicDistribution, s_norm2: f64) -> f64 {
    let i_half = d.i_moment(MomentExponent::Half);
    let i_one = d.i_moment(MomentExponent::One);
    (36.0 * i_half * i_half + (1.0 - 4.0 * i_one).powi(2) * s_norm2).sqrt()
}

/// Best guessing vector `r_i` for measurement direction `s_i`:
/// `r = (1 - 4 I_1) s / sqrt(36 I_1/2^2 + (1 - 4 I_1)^2 s^2)`.
pub fn best_guess_vector(s: &BlochVector, d: &IsotropicDistribution) -> Result<BlochVector> {
    if s.norm() > 1.0 + tol::EXACT {
        return Err(TelefidError::Domain(format!("|s| = {} > 1", s.norm())));
    }
    let denom = guess_scale(d, s.norm_squared());
    if denom == 0.0 {
        // Pure inputs with |s| = 0: degenerate limit, no preferred guess.
        return Ok(BlochVector::zeros());
    }
    let i_one = d.i_moment(MomentExponent::One);
    Ok(s * ((1.0 - 4.0 * i_one) / denom))
}

/// Average fidelity of the best guessing strategy for a given measuring
/// configuration: `1/4 sum c_i^2 (1 + sqrt(36 I_1/2^2 + (1-4I_1)^2 s_i^2) / 3)`.
pub fn classical_fidelity(config: &ClassicalPovmConfig, d: &IsotropicDistribution) -> f64 {
    config
        .directions
        .iter()
        .zip(&config.weights)
        .map(|(s, &w)| 0.25 * w * (1.0 + guess_scale(d, s.norm_squared()) / 3.0))
        .sum()
}

/// Maximal classical fidelity (rank-one measuring strategy):
/// `(1 + sqrt(36 I_1/2^2 + (1 - 4 I_1)^2) / 3) / 2`.
pub fn max_classical_fidelity(d: &IsotropicDistribution) -> f64 {
    0.5 * (1.0 + guess_scale(d, 1.0) / 3.0)
}
