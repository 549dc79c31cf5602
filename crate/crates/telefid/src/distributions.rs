//! Isotropic input-state distributions and their radial services.
//!
//! The delta-supported kinds (`Pure`, `FixedPurity`) are represented
//! symbolically: integrals against them collapse to point evaluation and
//! a single quadrature node. The absolutely continuous kinds use radial
//! Gauss-Legendre nodes in the arcsine variable `t = sin(theta)`, which
//! keeps the ubiquitous `sqrt(1 - t^2)` factors smooth.

use std::f64::consts::PI;

use crate::error::{Result, TelefidError};
use crate::quad::gauss_legendre_on;

/// Radial density kind of `f(t)` on [0, 1], normalized so that
/// `4 pi int t^2 f(t) dt = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IsotropicDistribution {
    /// Pure input states, `|t| = 1`.
    Pure,
    /// Fixed Bloch modulus `x` in (0, 1].
    FixedPurity(f64),
    /// Uniform over the whole Bloch ball, `f = 3 / (4 pi)`.
    UniformBall,
    /// Uniform over the shell `a <= |t| <= b`.
    Shell { a: f64, b: f64 },
}

/// Exponent of the purity moment `I_alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentExponent {
    Half,
    One,
}

impl IsotropicDistribution {
    pub fn fixed_purity(x: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) {
            return Err(TelefidError::Domain(format!("purity x = {x} outside [0, 1]")));
        }
        Ok(Self::FixedPurity(x))
    }

    pub fn shell(a: f64, b: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) || a >= b {
            return Err(TelefidError::Domain(format!(
                "shell bounds ({a}, {b}) must satisfy 0 <= a < b <= 1"
            )));
        }
        Ok(Self::Shell { a, b })
    }

    /// Radial density `f(t)` of the absolutely continuous kinds.
    pub fn density(&self, t: f64) -> f64 {
        match *self {
            Self::Pure | Self::FixedPurity(_) => {
                panic!("delta-supported distribution has no pointwise density")
            }
            Self::UniformBall => 3.0 / (4.0 * PI),
            Self::Shell { a, b } => {
                if (a..=b).contains(&t) {
                    3.0 / (4.0 * PI * (b * b * b - a * a * a))
                } else {
                    0.0
                }
            }
        }
    }

    /// The fourth radial moment `alpha = int t^4 f(t) dt`, in closed form.
    pub fn alpha_moment(&self) -> f64 {
        match *self {
            Self::Pure => 1.0 / (4.0 * PI),
            Self::FixedPurity(x) => x * x / (4.0 * PI),
            Self::UniformBall => 3.0 / (20.0 * PI),
            Self::Shell { a, b } => {
                3.0 * (b.powi(5) - a.powi(5)) / (20.0 * PI * (b.powi(3) - a.powi(3)))
            }
        }
    }

    /// Purity moment `I_alpha = 4 pi int t^2 f(t) ((1 - t^2) / 4)^alpha`.
    /// Point evaluation for the delta kinds, radial quadrature otherwise.
    pub fn i_moment(&self, exponent: MomentExponent) -> f64 {
        let g = |t: f64| match exponent {
            MomentExponent::Half => (0.25 * (1.0 - t * t)).sqrt(),
            MomentExponent::One => 0.25 * (1.0 - t * t),
        };
        match *self {
            Self::Pure => 0.0,
            Self::FixedPurity(x) => g(x),
            Self::UniformBall | Self::Shell { .. } => self
                .radial_nodes(64)
                .iter()
                .map(|&(t, w)| 4.0 * PI * w * g(t))
                .sum(),
        }
    }

    /// Quadrature nodes `(t_j, w_j)` for `int h(t) t^2 f(t) dt`, so that
    /// `4 pi sum w_j = 1`. Delta kinds collapse to a single node.
    pub fn radial_nodes(&self, n: usize) -> Vec<(f64, f64)> {
        match *self {
            Self::Pure => vec![(1.0, 1.0 / (4.0 * PI))],
            Self::FixedPurity(x) => vec![(x, 1.0 / (4.0 * PI))],
            Self::UniformBall | Self::Shell { .. } => {
                let (a, b) = self.support();
                gauss_legendre_on(n, a.asin(), b.asin())
                    .into_iter()
                    .map(|(theta, w)| {
                        let t = theta.sin();
                        (t, w * t * t * theta.cos() * self.density(t))
                    })
                    .collect()
            }
        }
    }

    /// Inverse-CDF radius sample from a uniform variate `u` in [0, 1).
    pub fn sample_radius(&self, u: f64) -> f64 {
        match *self {
            Self::Pure => 1.0,
            Self::FixedPurity(x) => x,
            Self::UniformBall => u.cbrt(),
            Self::Shell { a, b } => {
                let a3 = a * a * a;
                (a3 + u * (b * b * b - a3)).cbrt()
            }
        }
    }

    fn support(&self) -> (f64, f64) {
        match *self {
            Self::Pure => (1.0, 1.0),
            Self::FixedPurity(x) => (x, x),
            Self::UniformBall => (0.0, 1.0),
            Self::Shell { a, b } => (a, b),
        }
    }

    /// Parse the CLI selector: `pure`, `fixed:<x>`, `ball`, `shell:<a>:<b>`.
    pub fn parse(selector: &str) -> Result<Self> {
        let parts: Vec<&str> = selector.split(':').collect();
        let num = |s: &str| -> Result<f64> {
            s.parse()
                .map_err(|_| TelefidError::Domain(format!("bad number `{s}` in `{selector}`")))
        };
        match parts.as_slice() {
            ["pure"] => Ok(Self::Pure),
            ["fixed", x] => Self::fixed_purity(num(x)?),
            ["ball"] => Ok(Self::UniformBall),
            ["shell", a, b] => Self::shell(num(a)?, num(b)?),
            _ => Err(TelefidError::Domain(format!(
                "unknown distribution selector `{selector}`"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use MomentExponent::{Half, One};

    #[test]
    fn alpha_moments() {
        assert_abs_diff_eq!(
            IsotropicDistribution::Pure.alpha_moment(),
            1.0 / (4.0 * PI)
        );
        assert_abs_diff_eq!(
            IsotropicDistribution::UniformBall.alpha_moment(),
            3.0 / (20.0 * PI)
        );
        assert_abs_diff_eq!(
            IsotropicDistribution::fixed_purity(0.7).unwrap().alpha_moment(),
            0.49 / (4.0 * PI)
        );
        // Shell(a -> 0, b = 1) reduces to the uniform ball.
        assert_abs_diff_eq!(
            IsotropicDistribution::shell(1e-9, 1.0).unwrap().alpha_moment(),
            3.0 / (20.0 * PI),
            epsilon = 1e-12
        );
    }

    #[test]
    fn i_moments() {
        let ball = IsotropicDistribution::UniformBall;
        assert_abs_diff_eq!(ball.i_moment(One), 0.1, epsilon = 1e-13);
        assert_abs_diff_eq!(ball.i_moment(Half), 3.0 * PI / 32.0, epsilon = 1e-13);

        let fixed = IsotropicDistribution::fixed_purity(0.6).unwrap();
        assert_abs_diff_eq!(fixed.i_moment(One), (1.0 - 0.36) / 4.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            fixed.i_moment(Half),
            (1.0f64 - 0.36).sqrt() / 2.0,
            epsilon = 1e-15
        );

        assert_eq!(IsotropicDistribution::Pure.i_moment(One), 0.0);
        assert_eq!(IsotropicDistribution::Pure.i_moment(Half), 0.0);
    }

    #[test]
    fn radial_nodes_properties() {
        let fixed = IsotropicDistribution::fixed_purity(0.7).unwrap();
        assert_eq!(fixed.radial_nodes(64), vec![(0.7, 1.0 / (4.0 * PI))]);

        for dist in [
            IsotropicDistribution::UniformBall,
            IsotropicDistribution::shell(0.9, 1.0).unwrap(),
            IsotropicDistribution::shell(0.2, 0.6).unwrap(),
        ] {
            let nodes = dist.radial_nodes(64);
            let total: f64 = nodes.iter().map(|(_, w)| 4.0 * PI * w).sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
            assert!(nodes.iter().all(|&(_, w)| w > 0.0));
            let alpha: f64 = nodes.iter().map(|&(t, w)| w * t * t).sum();
            assert_abs_diff_eq!(alpha, dist.alpha_moment(), epsilon = 1e-10);
        }

        let shell = IsotropicDistribution::shell(0.9, 1.0).unwrap();
        assert!(shell
            .radial_nodes(64)
            .iter()
            .all(|&(t, _)| (0.9..=1.0).contains(&t)));
    }

    #[test]
    fn sampling() {
        let ball = IsotropicDistribution::UniformBall;
        assert_abs_diff_eq!(ball.sample_radius(0.125), 0.5, epsilon = 1e-15);
        let shell = IsotropicDistribution::shell(0.9, 1.0).unwrap();
        assert_abs_diff_eq!(shell.sample_radius(0.0), 0.9, epsilon = 1e-15);
        assert_eq!(IsotropicDistribution::Pure.sample_radius(0.42), 1.0);
        assert_eq!(
            IsotropicDistribution::fixed_purity(0.3).unwrap().sample_radius(0.9),
            0.3
        );
    }

    #[test]
    fn selector_parsing() {
        assert_eq!(
            IsotropicDistribution::parse("pure").unwrap(),
            IsotropicDistribution::Pure
        );
        assert_eq!(
            IsotropicDistribution::parse("fixed:0.5").unwrap(),
            IsotropicDistribution::FixedPurity(0.5)
        );
        assert_eq!(
            IsotropicDistribution::parse("ball").unwrap(),
            IsotropicDistribution::UniformBall
        );
        assert_eq!(
            IsotropicDistribution::parse("shell:0.9:1").unwrap(),
            IsotropicDistribution::Shell { a: 0.9, b: 1.0 }
        );
        assert!(IsotropicDistribution::parse("cube").is_err());
        assert!(IsotropicDistribution::parse("fixed:2").is_err());
    }
}
