//! Complete elliptic integrals K(m) and E(m) by the arithmetic-geometric
//! mean, in the parameter convention `m = k^2`:
//!
//! ```text
//! K(m) = int_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta)
//! E(m) = int_0^{pi/2} dtheta  sqrt(1 - m sin^2 theta)
//! ```

use std::f64::consts::FRAC_PI_2;

const MAX_ITER: usize = 40;

/// Complete elliptic integral of the first kind, `K(m)`, `m` in [0, 1).
pub fn ellip_k(m: f64) -> f64 {
    assert!((0.0..=1.0).contains(&m), "m = {m} outside [0, 1]");
    if m == 1.0 {
        return f64::INFINITY;
    }
    let mut a = 1.0;
    let mut b = (1.0 - m).sqrt();
    for _ in 0..MAX_ITER {
        if (a - b).abs() < 1e-16 * a {
            break;
        }
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
    }
    FRAC_PI_2 / a
}

/// Complete elliptic integral of the second kind, `E(m)`, `m` in [0, 1].
pub fn ellip_e(m: f64) -> f64 {
    assert!((0.0..=1.0).contains(&m), "m = {m} outside [0, 1]");
    if m == 1.0 {
        return 1.0;
    }
    let mut a = 1.0;
    let mut b = (1.0 - m).sqrt();
    let mut c2_sum = 0.5 * m; // 2^{-1} c_0^2 with c_0^2 = m
    let mut pow = 0.5;
    for _ in 0..MAX_ITER {
        if (a - b).abs() < 1e-16 * a {
            break;
        }
        let c = 0.5 * (a - b);
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
        pow *= 2.0;
        c2_sum += pow * c * c;
    }
    FRAC_PI_2 / a * (1.0 - c2_sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn endpoint_values() {
        assert_abs_diff_eq!(ellip_k(0.0), FRAC_PI_2, epsilon = 1e-15);
        assert_abs_diff_eq!(ellip_e(0.0), FRAC_PI_2, epsilon = 1e-15);
        assert_abs_diff_eq!(ellip_e(1.0), 1.0);
        assert!(ellip_k(1.0).is_infinite());
    }

    #[test]
    fn against_quadrature() {
        // Direct Gauss-Legendre evaluation of the defining integrals.
        let rule = crate::quad::gauss_legendre_on(96, 0.0, FRAC_PI_2);
        for m in [0.1, 0.25, 0.5, 0.81, 0.95] {
            let k_ref: f64 = rule
                .iter()
                .map(|(t, w)| w / (1.0 - m * t.sin().powi(2)).sqrt())
                .sum();
            let e_ref: f64 = rule
                .iter()
                .map(|(t, w)| w * (1.0 - m * t.sin().powi(2)).sqrt())
                .sum();
            assert_abs_diff_eq!(ellip_k(m), k_ref, epsilon = 1e-12);
            assert_abs_diff_eq!(ellip_e(m), e_ref, epsilon = 1e-12);
        }
    }

    #[test]
    fn legendre_relation() {
        // E(m) K(1-m) + E(1-m) K(m) - K(m) K(1-m) = pi / 2.
        for m in [0.2, 0.5, 0.7] {
            let lhs = ellip_e(m) * ellip_k(1.0 - m) + ellip_e(1.0 - m) * ellip_k(m)
                - ellip_k(m) * ellip_k(1.0 - m);
            assert_abs_diff_eq!(lhs, FRAC_PI_2, epsilon = 1e-13);
        }
    }
}
