//! Maximal average teleportation fidelity: conditional outcomes, score,
//! rotation maximization, the general quadrature path and every closed
//! form specialization.
//!
//! The average fidelity splits into a term Bob's rotations can shift
//! (maximized per outcome by constrained orthogonal Procrustes) and a
//! purity integral over the input distribution that only feels `|t_C|i|`,
//! which is rotation invariant:
//!
//! ```text
//! F_max = [1 + (pi alpha / 3) max Tr A + purity_integral] / 2
//! ```

use nalgebra::Matrix3;
use rayon::prelude::*;

use crate::bloch::{BlochVector, TwoQubitBlochState};
use crate::classical::max_classical_fidelity;
use crate::distributions::IsotropicDistribution;
use crate::elliptic::{ellip_e, ellip_k};
use crate::error::{Result, TelefidError};
use crate::measurements::{agrawal_basis, AgrawalParams, VonNeumannBasis};
use crate::quad::{sphere_nodes, QuadConfig};
use crate::resources::BellDiagonal;
use crate::rng::CounterRng;
use crate::tol;

use std::f64::consts::PI;

/// One measurement outcome of the protocol for a given input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalOutcome {
    pub probability: f64,
    /// Conditional Bloch vector `t_C|i`; reported as `t_C` when the
    /// outcome is degenerate (probability below `tol::DEGENERATE_PROB`).
    pub bloch: BlochVector,
    /// `p_i t_C|i`, computed from the numerator form and always finite.
    pub weighted_bloch: BlochVector,
    pub degenerate: bool,
}

/// Per-outcome constants of a fixed (resource, basis) pair, with Bob's
/// optimal rotations already solved.
#[derive(Debug, Clone)]
pub struct PreparedProtocol {
    terms: [OutcomeTerm; 4],
    t_c: BlochVector,
    pub rotations: [Matrix3<f64>; 4],
    /// Per-outcome Procrustes maxima of `Tr[C_i (m_i t_C^T + C) R^-1]`.
    pub trace_maxima: [f64; 4],
}

#[derive(Debug, Clone, Copy)]
struct OutcomeTerm {
    /// `p_i = p_const + (t . p_lin) / 4`
    p_const: f64,
    p_lin: BlochVector,
    n: BlochVector,
    /// `C^T m_i`
    a: BlochVector,
    /// `(C_i C)^T`
    b: Matrix3<f64>,
}

impl PreparedProtocol {
    pub fn new(resource: &TwoQubitBlochState, basis: &VonNeumannBasis) -> Result<Self> {
        basis.validate()?;
        if !resource.validate_physical() {
            return Err(TelefidError::NonPhysical(
                "resource state fails the density-matrix check".into(),
            ));
        }
        let mut terms = Vec::with_capacity(4);
        let mut rotations = Vec::with_capacity(4);
        let mut maxima = Vec::with_capacity(4);
        for o in &basis.outcomes {
            terms.push(OutcomeTerm {
                p_const: 0.25 * (1.0 + resource.t_b.dot(&o.m)),
                p_lin: o.n + o.c * resource.t_b,
                n: o.n,
                a: resource.c.transpose() * o.m,
                b: (o.c * resource.c).transpose(),
            });
            let target = o.c * (o.m * resource.t_c.transpose() + resource.c);
            let (value, rotation) = maximize_trace_over_rotation(&target);
            rotations.push(rotation);
            maxima.push(value);
        }
        Ok(Self {
            terms: terms.try_into().unwrap(),
            t_c: resource.t_c,
            rotations: rotations.try_into().unwrap(),
            trace_maxima: maxima.try_into().unwrap(),
        })
    }

    /// The four conditional outcomes for input Bloch vector `t`.
    pub fn conditional(&self, t: &BlochVector) -> [ConditionalOutcome; 4] {
        self.terms.map(|term| {
            let p = term.p_const + 0.25 * t.dot(&term.p_lin);
            let w = (self.t_c * (1.0 + t.dot(&term.n)) + term.a + term.b * t) * 0.25;
            let degenerate = p < tol::DEGENERATE_PROB;
            ConditionalOutcome {
                probability: p,
                bloch: if degenerate { self.t_c } else { w / p },
                weighted_bloch: w,
                degenerate,
            }
        })
    }

    /// Protocol score for input `t` with Bob's optimal rotations applied.
    pub fn score(&self, t: &BlochVector) -> f64 {
        let outcomes = self.conditional(t);
        let mut dot = 0.0;
        let mut purity = 0.0;
        for (o, r) in outcomes.iter().zip(&self.rotations) {
            dot += t.dot(&(r * o.weighted_bloch));
            purity += (o.probability * o.probability - o.weighted_bloch.norm_squared())
                .max(0.0)
                .sqrt();
        }
        0.5 * (1.0 + dot + (1.0 - t.norm_squared()).max(0.0).sqrt() * purity)
    }

    /// `sum_i p_i sqrt(1 - |t_C|i|^2)` evaluated without dividing by `p_i`.
    fn purity_sum(&self, t: &BlochVector) -> f64 {
        self.terms
            .iter()
            .map(|term| {
                let p = term.p_const + 0.25 * t.dot(&term.p_lin);
                let w = (self.t_c * (1.0 + t.dot(&term.n)) + term.a + term.b * t) * 0.25;
                (p * p - w.norm_squared()).max(0.0).sqrt()
            })
            .sum()
    }
}

/// Score of a protocol producing rotated Bloch vectors `t_i` with
/// probabilities `p_i` for input `t`:
/// `Q = [1 + t . sum p_i t_i + sqrt(1 - t^2) sum p_i sqrt(1 - t_i^2)] / 2`.
pub fn score(t: &BlochVector, outcomes: &[(f64, BlochVector)]) -> f64 {
    let dot: f64 = outcomes.iter().map(|(p, ti)| p * t.dot(ti)).sum();
    let purity: f64 = outcomes
        .iter()
        .map(|(p, ti)| p * (1.0 - ti.norm_squared()).max(0.0).sqrt())
        .sum();
    0.5 * (1.0 + dot + (1.0 - t.norm_squared()).max(0.0).sqrt() * purity)
}

/// `max_R Tr[M R^T]` over proper rotations, with the achieving rotation:
/// constrained orthogonal Procrustes via 3x3 SVD with determinant-sign
/// correction. The maximum is `s1 + s2 + sign(det M) s3`.
pub fn maximize_trace_over_rotation(m: &Matrix3<f64>) -> (f64, Matrix3<f64>) {
    let svd = m.svd(true, true);
    let u = svd.u.unwrap();
    let v_t = svd.v_t.unwrap();
    let s = svd.singular_values;
    let sign = (u * v_t).determinant().signum();
    let rotation = u * Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, 1.0, sign)) * v_t;
    (s[0] + s[1] + sign * s[2], rotation)
}

/// Result of the general quadrature path.
#[derive(Debug, Clone)]
pub struct EngineResult {
    pub f_max: f64,
    /// `(pi alpha / 3) max Tr A`: the rotation-maximized overlap term.
    pub fef_term: f64,
    /// `int d^3t f(t) sqrt(1 - t^2) sum_i p_i sqrt(1 - t_C|i^2)`.
    pub purity_term: f64,
    pub rotations: [Matrix3<f64>; 4],
    pub radial_nodes: usize,
    pub sphere_nodes: usize,
}

/// Maximal average fidelity of the protocol `(resource, basis)` for the
/// isotropic input distribution `d`, by per-outcome Procrustes
/// maximization plus radial x spherical product quadrature.
pub fn max_avg_fidelity(
    resource: &TwoQubitBlochState,
    basis: &VonNeumannBasis,
    d: &IsotropicDistribution,
    cfg: &QuadConfig,
) -> Result<EngineResult> {
    let protocol = PreparedProtocol::new(resource, basis)?;
    let alpha = d.alpha_moment();
    let max_tr_a: f64 = protocol.trace_maxima.iter().sum();
    let fef_term = PI * alpha / 3.0 * max_tr_a;

    let radial = d.radial_nodes(cfg.radial);
    let sphere = sphere_nodes(cfg.polar, cfg.azimuthal);
    let shells: Vec<f64> = radial
        .par_iter()
        .map(|&(t, w)| {
            let purity_factor = (1.0 - t * t).max(0.0).sqrt();
            if purity_factor == 0.0 {
                return 0.0;
            }
            let angular: f64 = sphere
                .iter()
                .map(|(x, wx)| wx * protocol.purity_sum(&(x * t)))
                .sum();
            w * purity_factor * angular
        })
        .collect();
    let purity_term: f64 = shells.iter().sum();

    Ok(EngineResult {
        f_max: 0.5 * (1.0 + fef_term + purity_term),
        fef_term,
        purity_term,
        rotations: protocol.rotations,
        radial_nodes: radial.len(),
        sphere_nodes: sphere.len(),
    })
}

/// Standard protocol, Werner resource, uniform-ball inputs:
/// `1/2 + 3p/10 + (3/2) J(p)` with the elliptic closed form
/// `J(p) = [2(p^4 - p^2 + 1) E(p^2) - (p^4 - 3p^2 + 2) K(p^2)] / (15 p^4)`
/// and its limits `J(0) = pi/16`, `J(1) = 2/15`.
pub fn werner_mixed_closed_form(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(TelefidError::Domain(format!("Werner p = {p} outside [0, 1]")));
    }
    let integral = if p == 0.0 {
        PI / 16.0
    } else if p == 1.0 {
        2.0 / 15.0
    } else {
        let m = p * p;
        let p4 = m * m;
        (2.0 * (p4 - m + 1.0) * ellip_e(m) - (p4 - 3.0 * m + 2.0) * ellip_k(m)) / (15.0 * p4)
    };
    Ok(0.5 + 0.3 * p + 1.5 * integral)
}

/// Standard protocol, Werner resource, fixed-purity inputs:
/// `[1 + p x^2 + sqrt((1 - x^2)(1 - p^2 x^2))] / 2`.
pub fn fixed_purity_closed_form(p: f64, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&x) {
        return Err(TelefidError::Domain(format!("(p, x) = ({p}, {x}) outside [0, 1]^2")));
    }
    Ok(0.5 * (1.0 + p * x * x + ((1.0 - x * x) * (1.0 - p * p * x * x)).sqrt()))
}

/// Standard protocol with a Bell-diagonal classical-quantum resource
/// (coefficient `c` on one axis):
/// `[1 + 4 pi alpha |c| / 3 + int f(t) sqrt(1 - t^2) sqrt(1 - (c t_3)^2)] / 2`.
///
/// The result is even in `c` and independent of the chosen axis.
pub fn cq_mixed_fidelity(c: f64, d: &IsotropicDistribution, cfg: &QuadConfig) -> Result<f64> {
    if c.abs() > 1.0 {
        return Err(TelefidError::Domain(format!("|c| = {} > 1", c.abs())));
    }
    let alpha = d.alpha_moment();
    let polar = crate::quad::gauss_legendre(cfg.polar);
    let integral: f64 = d
        .radial_nodes(cfg.radial)
        .iter()
        .map(|&(t, w)| {
            let angular: f64 = polar
                .iter()
                .map(|&(z, wz)| wz * (1.0 - (c * t * z).powi(2)).max(0.0).sqrt())
                .sum();
            w * (1.0 - t * t).max(0.0).sqrt() * 2.0 * PI * angular
        })
        .sum();
    Ok(0.5 * (1.0 + 4.0 * PI * alpha * c.abs() / 3.0 + integral))
}

/// Parametrized measurement with a Bell-diagonal resource: the overlap
/// term reduces to the standard protocol with the effective resource
/// `(c_n c1, c_n c2, c3)`, while the purity integral keeps the actual
/// conditional states of the protocol.
pub fn effective_resource_fidelity(
    s: &BellDiagonal,
    c_n: f64,
    d: &IsotropicDistribution,
    cfg: &QuadConfig,
) -> Result<f64> {
    if !s.is_physical() {
        return Err(TelefidError::NonPhysical(format!("{s:?} outside the tetrahedron")));
    }
    let effective = s.effective_resource(c_n)?;
    let alpha = d.alpha_moment();
    let fef_term =
        8.0 * PI * alpha / 3.0 * (2.0 * effective.fully_entangled_fraction() - 0.5);

    let basis = agrawal_basis(&AgrawalParams::from_correlation(c_n)?);
    let c_mat = s.to_state().c;
    let sphere = sphere_nodes(cfg.polar, cfg.azimuthal);
    let purity_term: f64 = d
        .radial_nodes(cfg.radial)
        .par_iter()
        .map(|&(t, w)| {
            let purity_factor = (1.0 - t * t).max(0.0).sqrt();
            if purity_factor == 0.0 {
                return 0.0;
            }
            let angular: f64 = sphere
                .iter()
                .map(|(x, wx)| {
                    let tv = x * t;
                    let sum: f64 = basis
                        .outcomes
                        .iter()
                        .map(|o| {
                            // p_i = (1 + t_3 n_i) / 4; p_i t_C|i = C (m_i + C_i t) / 4
                            let p = 0.25 * (1.0 + tv[2] * o.n[2]);
                            let wv = c_mat * (o.m + o.c * tv) * 0.25;
                            (p * p - wv.norm_squared()).max(0.0).sqrt()
                        })
                        .sum();
                    wx * sum
                })
                .sum();
            w * purity_factor * angular
        })
        .sum();
    Ok(0.5 * (1.0 + fef_term + purity_term))
}

/// Pure-input maximal fidelity of the parametrized protocol:
/// `(2 F(effective) + 1) / 3`.
pub fn pure_input_fidelity(s: &BellDiagonal, c_n: f64) -> Result<f64> {
    let effective = s.effective_resource(c_n)?;
    Ok((2.0 * effective.fully_entangled_fraction() + 1.0) / 3.0)
}

/// How the useless-state volume is estimated.
#[derive(Debug, Clone, Copy)]
pub enum VolumeEstimator {
    /// Deterministic midpoint grid with `n^3` cells over the bounding cube.
    Grid(usize),
    /// Uniform rejection sampling of the tetrahedron.
    MonteCarlo { samples: u64, seed: u64 },
}

/// Fraction of the Bell-diagonal tetrahedron whose pure-input maximal
/// fidelity does not exceed the classical 2/3 at measurement strength `c_n`.
pub fn useless_volume_fraction(c_n: f64, estimator: VolumeEstimator) -> Result<f64> {
    if !(0.0..=1.0).contains(&c_n) {
        return Err(TelefidError::Domain(format!("c_n = {c_n} outside [0, 1]")));
    }
    let useless = |s: &BellDiagonal| -> bool {
        // F <= 2/3 iff the effective max eigenvalue is <= 1/2.
        s.effective_resource(c_n).unwrap().fully_entangled_fraction() <= 0.5 + tol::EXACT
    };
    match estimator {
        VolumeEstimator::Grid(n) => {
            if n == 0 {
                return Err(TelefidError::Domain("grid resolution must be >= 1".into()));
            }
            let coord = |k: usize| -1.0 + (2.0 * k as f64 + 1.0) / n as f64;
            let counts: Vec<(u64, u64)> = (0..n)
                .into_par_iter()
                .map(|i| {
                    let mut inside = 0;
                    let mut bad = 0;
                    for j in 0..n {
                        for k in 0..n {
                            let s = BellDiagonal::new(coord(i), coord(j), coord(k));
                            if s.eigenvalues().iter().all(|&l| l >= 0.0) {
                                inside += 1;
                                if useless(&s) {
                                    bad += 1;
                                }
                            }
                        }
                    }
                    (inside, bad)
                })
                .collect();
            let inside: u64 = counts.iter().map(|c| c.0).sum();
            let bad: u64 = counts.iter().map(|c| c.1).sum();
            Ok(bad as f64 / inside as f64)
        }
        VolumeEstimator::MonteCarlo { samples, seed } => {
            let rng = CounterRng::new(seed);
            let counts: Vec<(u64, u64)> = (0..samples)
                .into_par_iter()
                .map(|i| {
                    let s = BellDiagonal::new(
                        2.0 * rng.uniform(i, 0) - 1.0,
                        2.0 * rng.uniform(i, 1) - 1.0,
                        2.0 * rng.uniform(i, 2) - 1.0,
                    );
                    if s.eigenvalues().iter().all(|&l| l >= 0.0) {
                        (1, useless(&s) as u64)
                    } else {
                        (0, 0)
                    }
                })
                .collect();
            let inside: u64 = counts.iter().map(|c| c.0).sum();
            let bad: u64 = counts.iter().map(|c| c.1).sum();
            if inside == 0 {
                return Err(TelefidError::Convergence("no samples hit the tetrahedron".into()));
            }
            Ok(bad as f64 / inside as f64)
        }
    }
}

/// Bisect for the Werner parameter where the uniform-ball maximal fidelity
/// meets the classical baseline; the root lies below the separability
/// threshold 1/3.
pub fn werner_classical_crossing() -> f64 {
    let classical = max_classical_fidelity(&IsotropicDistribution::UniformBall);
    let gap = |p: f64| werner_mixed_closed_form(p).unwrap() - classical;
    let (mut lo, mut hi) = (0.0, 1.0 / 3.0);
    debug_assert!(gap(lo) < 0.0 && gap(hi) > 0.0);
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        if gap(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Maximum of the quantum-minus-classical gap over the input purity `x`
/// for a Werner resource: returns `(gap, x)`.
pub fn werner_fixed_purity_max_gap(p: f64) -> Result<(f64, f64)> {
    let gap = |x: f64| -> f64 {
        let d = IsotropicDistribution::fixed_purity(x).unwrap();
        fixed_purity_closed_form(p, x).unwrap() - max_classical_fidelity(&d)
    };
    // Coarse scan, then golden-section refinement around the best cell.
    let n = 400;
    let mut best_i = 1;
    let mut best = f64::MIN;
    for i in 1..=n {
        let g = gap(i as f64 / n as f64);
        if g > best {
            best = g;
            best_i = i;
        }
    }
    let (mut lo, mut hi) = (
        ((best_i - 1) as f64 / n as f64).max(1e-9),
        ((best_i + 1) as f64 / n as f64).min(1.0),
    );
    let phi = (5.0f64.sqrt() - 1.0) / 2.0;
    let (mut x1, mut x2) = (hi - phi * (hi - lo), lo + phi * (hi - lo));
    let (mut g1, mut g2) = (gap(x1), gap(x2));
    while hi - lo > 1e-10 {
        if g1 < g2 {
            lo = x1;
            x1 = x2;
            g1 = g2;
            x2 = lo + phi * (hi - lo);
            g2 = gap(x2);
        } else {
            hi = x2;
            x2 = x1;
            g2 = g1;
            x1 = hi - phi * (hi - lo);
            g1 = gap(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    Ok((gap(x), x))
}
