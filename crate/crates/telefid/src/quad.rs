//! Gauss-Legendre and spherical product quadrature.

use nalgebra::Vector3;
use std::f64::consts::{PI, TAU};

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on
/// the Legendre polynomial with the asymptotic initial guess.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1);
    let mut rule = Vec::with_capacity(n);
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess for the i-th root.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Evaluate P_n and P_n' by the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push((x, w));
        if i != n - 1 - i {
            rule.push((-x, w));
        }
    }
    rule.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    rule
}

/// Gauss-Legendre rule mapped to [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    gauss_legendre(n)
        .into_iter()
        .map(|(x, w)| (mid + half * x, half * w))
        .collect()
}

/// Node counts for the product quadrature over the input-state ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    /// Radial Gauss-Legendre nodes (in the arcsine variable).
    pub radial: usize,
    /// Gauss-Legendre nodes in cos(theta).
    pub polar: usize,
    /// Trapezoid nodes in the azimuth.
    pub azimuthal: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { radial: 64, polar: 32, azimuthal: 64 }
    }
}

/// Unit-sphere product rule: Gauss-Legendre in cos(theta) times the
/// periodic trapezoid in phi. Weights sum to 4 pi.
pub fn sphere_nodes(polar: usize, azimuthal: usize) -> Vec<(Vector3<f64>, f64)> {
    let polar_rule = gauss_legendre(polar);
    let wphi = TAU / azimuthal as f64;
    let mut nodes = Vec::with_capacity(polar * azimuthal);
    for &(z, wz) in &polar_rule {
        let s = (1.0 - z * z).sqrt();
        for j in 0..azimuthal {
            let phi = wphi * j as f64;
            nodes.push((Vector3::new(s * phi.cos(), s * phi.sin(), z), wz * wphi));
        }
    }
    nodes
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn legendre_exactness() {
        // n-point rule is exact for degree 2n - 1.
        let rule = gauss_legendre(5);
        let total: f64 = rule.iter().map(|(_, w)| w).sum();
        assert_abs_diff_eq!(total, 2.0, epsilon = 1e-14);
        let int_x8: f64 = rule.iter().map(|(x, w)| w * x.powi(8)).sum();
        assert_abs_diff_eq!(int_x8, 2.0 / 9.0, epsilon = 1e-14);
    }

    #[test]
    fn mapped_rule() {
        let rule = gauss_legendre_on(16, 0.0, 1.0);
        let val: f64 = rule.iter().map(|(x, w)| w * x * x).sum();
        assert_abs_diff_eq!(val, 1.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn sphere_measure_and_moments() {
        let nodes = sphere_nodes(32, 64);
        let total: f64 = nodes.iter().map(|(_, w)| w).sum();
        assert_abs_diff_eq!(total, 4.0 * PI, epsilon = 1e-10);
        // <x_k x_l> = (4 pi / 3) delta_kl on the sphere.
        for k in 0..3 {
            for l in 0..3 {
                let v: f64 = nodes.iter().map(|(x, w)| w * x[k] * x[l]).sum();
                let expected = if k == l { 4.0 * PI / 3.0 } else { 0.0 };
                assert_abs_diff_eq!(v, expected, epsilon = 1e-10);
            }
        }
    }
}
