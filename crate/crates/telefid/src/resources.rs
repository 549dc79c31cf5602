//! Resource-state constructors and analytics.
//!
//! Bell-diagonal states live in the tetrahedron with vertices
//! `(-1,-1,-1), (-1,1,1), (1,-1,1), (1,1,-1)`; their eigenvalues are the
//! four sign combinations `(1 -+ c1 -+ c2 -+ c3) / 4` and the fully
//! entangled fraction is the largest of them. General states are carried
//! as [`TwoQubitBlochState`] and only reach the FEF through the numeric
//! maximization [`fef_numeric`].

use nalgebra::{Matrix2, Matrix3, Vector3, Vector4};
use num_complex::Complex64;

use crate::bloch::{BlochVector, TwoQubitBlochState};
use crate::error::{Result, TelefidError};
use crate::tol;

/// Bell-diagonal state coefficients `(c1, c2, c3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonal {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl BellDiagonal {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Self {
        Self { c1, c2, c3 }
    }

    /// Eigenvalues in the fixed sign-combination order; they sum to 1
    /// exactly for any coefficients.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let (c1, c2, c3) = (self.c1, self.c2, self.c3);
        [
            0.25 * (1.0 - c1 - c2 - c3),
            0.25 * (1.0 - c1 + c2 + c3),
            0.25 * (1.0 + c1 - c2 + c3),
            0.25 * (1.0 + c1 + c2 - c3),
        ]
    }

    /// Inside the Bell-diagonal tetrahedron (all eigenvalues >= -1e-10).
    pub fn is_physical(&self) -> bool {
        self.eigenvalues().iter().all(|&l| l >= -tol::EIGEN)
    }

    /// Fully entangled fraction: the largest eigenvalue.
    pub fn fully_entangled_fraction(&self) -> f64 {
        self.eigenvalues().into_iter().fold(f64::MIN, f64::max)
    }

    /// Octahedron separability criterion `|c1| + |c2| + |c3| <= 1`.
    pub fn is_separable(&self) -> bool {
        self.c1.abs() + self.c2.abs() + self.c3.abs() <= 1.0 + tol::EXACT
    }

    /// The parametrized-measurement protocol with strength `c_n` reduces
    /// to the standard one with coefficients `(c_n c1, c_n c2, c3)`.
    pub fn effective_resource(&self, c_n: f64) -> Result<BellDiagonal> {
        if !(0.0..=1.0).contains(&c_n) {
            return Err(TelefidError::Domain(format!("c_n = {c_n} outside [0, 1]")));
        }
        let out = BellDiagonal::new(c_n * self.c1, c_n * self.c2, self.c3);
        debug_assert!(!self.is_physical() || out.is_physical());
        Ok(out)
    }

    /// View as a general Bloch-form state: zero marginals, diagonal C.
    pub fn to_state(&self) -> TwoQubitBlochState {
        TwoQubitBlochState::new(
            BlochVector::zeros(),
            BlochVector::zeros(),
            Matrix3::from_diagonal(&Vector3::new(self.c1, self.c2, self.c3)),
        )
    }
}

/// Werner state `p |phi+><phi+| + (1 - p)/4 I`, i.e. `C = diag(p, -p, p)`.
pub fn werner(p: f64) -> Result<BellDiagonal> {
    if !(0.0..=1.0).contains(&p) {
        return Err(TelefidError::Domain(format!("Werner p = {p} outside [0, 1]")));
    }
    Ok(BellDiagonal::new(p, -p, p))
}

/// Bell-diagonal classical-quantum state: coefficient `c` on one axis,
/// zero on the others.
pub fn classical_quantum(axis: usize, c: f64) -> Result<BellDiagonal> {
    if c.abs() > 1.0 {
        return Err(TelefidError::Domain(format!("|c| = {} > 1", c.abs())));
    }
    match axis {
        1 => Ok(BellDiagonal::new(c, 0.0, 0.0)),
        2 => Ok(BellDiagonal::new(0.0, c, 0.0)),
        3 => Ok(BellDiagonal::new(0.0, 0.0, c)),
        _ => Err(TelefidError::Domain(format!("axis {axis} not in 1..=3"))),
    }
}

/// `max_W <phi+| (W x 1) rho (W^dag x 1) |phi+>` over local unitaries W,
/// by coarse grid search over the rotation vector of W followed by
/// Nelder-Mead refinement. Numeric oracle for general states; agrees with
/// the max-eigenvalue formula on Bell-diagonal states to 1e-6.
pub fn fef_numeric(state: &TwoQubitBlochState) -> Result<f64> {
    if !state.validate_physical() {
        return Err(TelefidError::NonPhysical(
            "resource state fails the density-matrix check".into(),
        ));
    }
    let rho = state.to_density_matrix().0;

    // Objective: overlap of rho with (W x 1)|phi+>, W = axis-angle v.
    let overlap = |v: &[f64; 3]| -> f64 {
        let theta = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let (s, co) = if theta < 1e-300 {
            (0.0, 1.0)
        } else {
            ((theta / 2.0).sin() / theta, (theta / 2.0).cos())
        };
        // W^dag = cos(theta/2) I + i sin(theta/2) n.sigma
        let w_dag = Matrix2::new(
            Complex64::new(co, s * v[2]),
            Complex64::new(s * v[1], s * v[0]),
            Complex64::new(-s * v[1], s * v[0]),
            Complex64::new(co, -s * v[2]),
        );
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        // (W^dag x 1)|phi+> with |phi+> = (|00> + |11>) / sqrt(2)
        let u = Vector4::new(
            w_dag[(0, 0)] * inv,
            w_dag[(0, 1)] * inv,
            w_dag[(1, 0)] * inv,
            w_dag[(1, 1)] * inv,
        );
        (u.adjoint() * rho * u)[(0, 0)].re
    };

    // Coarse 12^3 grid over the rotation-vector cube [-pi, pi]^3.
    let mut best = [0.0; 3];
    let mut best_val = overlap(&best);
    let n = 12;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let f = |idx: usize| -> f64 {
                    std::f64::consts::PI * (2.0 * (idx as f64 + 0.5) / n as f64 - 1.0)
                };
                let v = [f(i), f(j), f(k)];
                let val = overlap(&v);
                if val > best_val {
                    best_val = val;
                    best = v;
                }
            }
        }
    }

    nelder_mead_max(overlap, best, 0.3, 400, 1e-12).ok_or_else(|| {
        TelefidError::Convergence("fully-entangled-fraction refinement stalled".into())
    })
}

/// Plain Nelder-Mead maximizer in 3 dimensions. Returns `None` if the
/// simplex fails to contract below `f_tol` within `max_iter` steps.
fn nelder_mead_max<F: Fn(&[f64; 3]) -> f64>(
    f: F,
    start: [f64; 3],
    scale: f64,
    max_iter: usize,
    f_tol: f64,
) -> Option<f64> {
    let g = |x: &[f64; 3]| -f(x);
    let mut simplex: Vec<([f64; 3], f64)> = Vec::with_capacity(4);
    simplex.push((start, g(&start)));
    for d in 0..3 {
        let mut p = start;
        p[d] += scale;
        simplex.push((p, g(&p)));
    }
    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        if (simplex[3].1 - simplex[0].1).abs() < f_tol {
            return Some(-simplex[0].1);
        }
        let mut centroid = [0.0; 3];
        for (p, _) in simplex.iter().take(3) {
            for d in 0..3 {
                centroid[d] += p[d] / 3.0;
            }
        }
        let worst = simplex[3];
        let point = |coef: f64| {
            let mut p = [0.0; 3];
            for d in 0..3 {
                p[d] = centroid[d] + coef * (centroid[d] - worst.0[d]);
            }
            p
        };
        let refl = point(1.0);
        let refl_val = g(&refl);
        if refl_val < simplex[0].1 {
            let exp = point(2.0);
            let exp_val = g(&exp);
            simplex[3] = if exp_val < refl_val { (exp, exp_val) } else { (refl, refl_val) };
        } else if refl_val < simplex[2].1 {
            simplex[3] = (refl, refl_val);
        } else {
            let contr = point(-0.5);
            let contr_val = g(&contr);
            if contr_val < worst.1 {
                simplex[3] = (contr, contr_val);
            } else {
                // Shrink toward the best vertex.
                let best = simplex[0].0;
                for entry in simplex.iter_mut().skip(1) {
                    for d in 0..3 {
                        entry.0[d] = best[d] + 0.5 * (entry.0[d] - best[d]);
                    }
                    entry.1 = g(&entry.0);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub fn random_tetrahedron_point(rng: &mut impl Rng) -> BellDiagonal {
        loop {
            let s = BellDiagonal::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            );
            if s.eigenvalues().iter().all(|&l| l >= 0.0) {
                return s;
            }
        }
    }

    #[test]
    fn werner_values() {
        assert_eq!(werner(0.0).unwrap(), BellDiagonal::new(0.0, 0.0, 0.0));
        assert_eq!(werner(1.0).unwrap(), BellDiagonal::new(1.0, -1.0, 1.0));
        assert!(werner(1.1).is_err());
        let w = werner(1.0 / 3.0).unwrap();
        let mut eig = w.eigenvalues();
        eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert_abs_diff_eq!(eig[0], 0.5, epsilon = 1e-15);
        for e in &eig[1..] {
            assert_abs_diff_eq!(*e, 1.0 / 6.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn classical_quantum_values() {
        assert_eq!(
            classical_quantum(3, 1.0).unwrap(),
            BellDiagonal::new(0.0, 0.0, 1.0)
        );
        assert_eq!(
            classical_quantum(1, 0.0).unwrap(),
            BellDiagonal::new(0.0, 0.0, 0.0)
        );
        let mut eig = classical_quantum(1, 0.5).unwrap().eigenvalues();
        eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert_abs_diff_eq!(eig[0], 0.375, epsilon = 1e-15);
        assert_abs_diff_eq!(eig[1], 0.375, epsilon = 1e-15);
        assert_abs_diff_eq!(eig[2], 0.125, epsilon = 1e-15);
        assert!(classical_quantum(1, 1.5).is_err());
        assert!(classical_quantum(0, 0.5).is_err());
    }

    #[test]
    fn eigenvalue_properties() {
        assert_eq!(
            BellDiagonal::new(0.0, 0.0, 0.0).eigenvalues(),
            [0.25, 0.25, 0.25, 0.25]
        );
        // Werner max eigenvalue is (1 + 3p) / 4.
        for p in [0.1, 0.4, 0.85] {
            let w = werner(p).unwrap();
            assert_abs_diff_eq!(
                w.fully_entangled_fraction(),
                (1.0 + 3.0 * p) / 4.0,
                epsilon = 1e-15
            );
        }
        let pure = BellDiagonal::new(1.0, -1.0, 1.0);
        let mut eig = pure.eigenvalues();
        eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert_eq!(eig, [1.0, 0.0, 0.0, 0.0]);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let s = random_tetrahedron_point(&mut rng);
            let sum: f64 = s.eigenvalues().iter().sum();
            assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-15);
            let fef = s.fully_entangled_fraction();
            assert!((0.25..=1.0 + 1e-15).contains(&fef));
        }
    }

    #[test]
    fn fef_examples() {
        assert_abs_diff_eq!(
            werner(1.0 / 3.0).unwrap().fully_entangled_fraction(),
            0.5,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            BellDiagonal::new(0.0, 0.0, 0.0).fully_entangled_fraction(),
            0.25
        );
        for c3 in [-0.7, 0.3, 1.0] {
            assert_abs_diff_eq!(
                BellDiagonal::new(0.0, 0.0, c3).fully_entangled_fraction(),
                (1.0 + c3.abs()) / 4.0,
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn separability() {
        assert!(werner(1.0 / 3.0).unwrap().is_separable());
        assert!(!werner(0.34).unwrap().is_separable());
        assert!(BellDiagonal::new(0.0, 0.0, 1.0).is_separable());
        assert!(!BellDiagonal::new(1.0, -1.0, 1.0).is_separable());
    }

    #[test]
    fn effective_resource_examples() {
        let w = werner(0.6).unwrap();
        assert_eq!(w.effective_resource(1.0).unwrap(), w);
        let squeezed = werner(0.6).unwrap().effective_resource(0.0).unwrap();
        assert_eq!(squeezed, BellDiagonal::new(0.0, 0.0, 0.6));
        assert_abs_diff_eq!(squeezed.fully_entangled_fraction(), 0.4, epsilon = 1e-15);
        assert_eq!(
            werner(1.0).unwrap().effective_resource(0.5).unwrap(),
            BellDiagonal::new(0.5, -0.5, 1.0)
        );
        assert!(w.effective_resource(1.5).is_err());
    }

    #[test]
    fn effective_resource_fef_monotone_in_cn() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let s = random_tetrahedron_point(&mut rng);
            let mut prev = f64::MIN;
            for i in 0..=10 {
                let c_n = i as f64 / 10.0;
                let f = s
                    .effective_resource(c_n)
                    .unwrap()
                    .fully_entangled_fraction();
                assert!(f >= prev - 1e-12);
                prev = f;
            }
        }
    }

    #[test]
    fn fef_numeric_examples() {
        let bd = BellDiagonal::new(0.5, -0.5, 0.5);
        assert_abs_diff_eq!(
            fef_numeric(&bd.to_state()).unwrap(),
            0.625,
            epsilon = 1e-6
        );
        assert_abs_diff_eq!(
            fef_numeric(&TwoQubitBlochState::maximally_mixed()).unwrap(),
            0.25,
            epsilon = 1e-6
        );
        assert_abs_diff_eq!(
            fef_numeric(&BellDiagonal::new(1.0, -1.0, 1.0).to_state()).unwrap(),
            1.0,
            epsilon = 1e-6
        );
    }

    #[test]
    fn fef_numeric_matches_closed_form_on_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..25 {
            let s = random_tetrahedron_point(&mut rng);
            let numeric = fef_numeric(&s.to_state()).unwrap();
            assert!(
                (numeric - s.fully_entangled_fraction()).abs() < 1e-6,
                "{s:?}: {numeric} vs {}",
                s.fully_entangled_fraction()
            );
        }
    }

    #[test]
    fn fef_numeric_rejects_unphysical() {
        let bad = BellDiagonal::new(1.0, 1.0, 1.0);
        assert!(fef_numeric(&bad.to_state()).is_err());
    }
}
