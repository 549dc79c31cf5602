//! Monte-Carlo oracle: estimates the average fidelity of the optimized
//! protocol by sampling inputs from the chosen distribution. The default
//! estimator averages the exact per-input score (Rao-Blackwellized over
//! measurement outcomes); a stochastic mode additionally samples the
//! outcome, matching a run-by-run simulation of the experiment.
//!
//! Samples are keyed by a counter-based generator and reduced in fixed
//! chunks, so results are bit-identical for a given seed regardless of
//! thread count.

use rayon::prelude::*;
use serde::Serialize;

use crate::bloch::{qubit_fidelity, BlochVector, TwoQubitBlochState};
use crate::distributions::IsotropicDistribution;
use crate::engine::PreparedProtocol;
use crate::error::{Result, TelefidError};
use crate::measurements::VonNeumannBasis;
use crate::rng::CounterRng;

use std::f64::consts::TAU;

const CHUNK: u64 = 4096;

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub sample_count: u64,
    pub seed: u64,
    pub distribution: IsotropicDistribution,
    /// When set, sample the measurement outcome per shot instead of
    /// averaging over outcomes exactly.
    pub sample_outcomes: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimReport {
    pub mean_fidelity: f64,
    pub standard_error: f64,
    pub sample_count: u64,
    /// Average outcome probabilities (exact mode) or empirical outcome
    /// frequencies (stochastic mode).
    pub outcome_frequencies: [f64; 4],
}

/// Input Bloch vector for sample `index`: radius by inverse CDF, direction
/// uniform on the sphere (`cos theta = 2u - 1`, `phi = 2 pi u`).
pub fn sample_input(rng: &CounterRng, d: &IsotropicDistribution, index: u64) -> BlochVector {
    let r = d.sample_radius(rng.uniform(index, 0));
    let z = 2.0 * rng.uniform(index, 1) - 1.0;
    let phi = TAU * rng.uniform(index, 2);
    let s = (1.0 - z * z).max(0.0).sqrt();
    BlochVector::new(r * s * phi.cos(), r * s * phi.sin(), r * z)
}

#[derive(Debug, Clone, Copy, Default)]
struct Accumulator {
    sum: f64,
    sum_sq: f64,
    freq: [f64; 4],
}

impl Accumulator {
    fn push(&mut self, value: f64, weights: [f64; 4]) {
        self.sum += value;
        self.sum_sq += value * value;
        for (f, w) in self.freq.iter_mut().zip(weights) {
            *f += w;
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        for (f, g) in self.freq.iter_mut().zip(other.freq) {
            *f += g;
        }
        self
    }
}

/// Run the simulation and report the estimated average fidelity.
pub fn simulate(
    resource: &TwoQubitBlochState,
    basis: &VonNeumannBasis,
    cfg: &SimConfig,
) -> Result<SimReport> {
    if cfg.sample_count == 0 {
        return Err(TelefidError::Domain("sample_count must be positive".into()));
    }
    let protocol = PreparedProtocol::new(resource, basis)?;
    let rng = CounterRng::new(cfg.seed);
    let chunks = cfg.sample_count.div_ceil(CHUNK);

    let acc = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut acc = Accumulator::default();
            let hi = ((chunk + 1) * CHUNK).min(cfg.sample_count);
            for i in chunk * CHUNK..hi {
                let t = sample_input(&rng, &cfg.distribution, i);
                if cfg.sample_outcomes {
                    let outcomes = protocol.conditional(&t);
                    let u = rng.uniform(i, 3);
                    let mut cum = 0.0;
                    let mut pick = 3;
                    for (k, o) in outcomes.iter().enumerate() {
                        cum += o.probability;
                        if u < cum {
                            pick = k;
                            break;
                        }
                    }
                    let corrected = protocol.rotations[pick] * outcomes[pick].bloch;
                    let mut weights = [0.0; 4];
                    weights[pick] = 1.0;
                    acc.push(qubit_fidelity(&t, &corrected).unwrap_or(0.0), weights);
                } else {
                    let outcomes = protocol.conditional(&t);
                    acc.push(protocol.score(&t), outcomes.map(|o| o.probability));
                }
            }
            acc
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Accumulator::default(), Accumulator::merge);

    let n = cfg.sample_count as f64;
    let mean = acc.sum / n;
    let variance = ((acc.sum_sq / n - mean * mean) * n / (n - 1.0).max(1.0)).max(0.0);
    Ok(SimReport {
        mean_fidelity: mean,
        standard_error: (variance / n).sqrt(),
        sample_count: cfg.sample_count,
        outcome_frequencies: acc.freq.map(|f| f / n),
    })
}
