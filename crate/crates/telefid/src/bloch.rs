//! Bloch/correlation-matrix formalism for one- and two-qubit states.
//!
//! A single qubit is `rho = (1 + t . sigma) / 2` with `|t| <= 1`; a
//! two-qubit state is `(t_B, t_C, C)` with `C^{kl} = <sigma_k x sigma_l>`.
//! The 4x4 matrix view exists only for validation and eigen-spectra; all
//! hot-path arithmetic stays real and 3-dimensional.

use nalgebra::{Matrix2, Matrix3, Matrix4, Vector3};
use num_complex::Complex64;

use crate::error::{Result, TelefidError};
use crate::tol;

/// Bloch vector of a qubit state; `|t| <= 1` for physical states.
pub type BlochVector = Vector3<f64>;

type CMat2 = Matrix2<Complex64>;
type CMat4 = Matrix4<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The Pauli matrices, indexed 1..=3 as (x, y, z); index 0 is the identity.
pub fn pauli(k: usize) -> CMat2 {
    match k {
        0 => CMat2::identity(),
        1 => CMat2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)),
        2 => CMat2::new(c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)),
        3 => CMat2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)),
        _ => panic!("pauli index out of range: {k}"),
    }
}

/// `(1 + n.sigma x 1 + 1 x m.sigma + sum C^{kl} sigma_k x sigma_l) / 4`.
///
/// Shared matrix builder for two-qubit density operators and rank-one
/// measurement projectors, which have the same Pauli decomposition.
pub fn bloch_operator(n: &BlochVector, m: &BlochVector, cm: &Matrix3<f64>) -> CMat4 {
    let mut out = CMat4::identity();
    for k in 1..=3 {
        out += pauli(k).kronecker(&pauli(0)) * c(n[k - 1], 0.0);
        out += pauli(0).kronecker(&pauli(k)) * c(m[k - 1], 0.0);
        for l in 1..=3 {
            out += pauli(k).kronecker(&pauli(l)) * c(cm[(k - 1, l - 1)], 0.0);
        }
    }
    out * c(0.25, 0.0)
}

/// Pauli expectations `(n, m, C)` of an arbitrary 4x4 operator.
pub fn pauli_expectations(op: &CMat4) -> (BlochVector, BlochVector, Matrix3<f64>) {
    let mut n = BlochVector::zeros();
    let mut m = BlochVector::zeros();
    let mut cm = Matrix3::zeros();
    for k in 1..=3 {
        n[k - 1] = (pauli(k).kronecker(&pauli(0)) * op).trace().re;
        m[k - 1] = (pauli(0).kronecker(&pauli(k)) * op).trace().re;
        for l in 1..=3 {
            cm[(k - 1, l - 1)] = (pauli(k).kronecker(&pauli(l)) * op).trace().re;
        }
    }
    (n, m, cm)
}

/// Two-qubit resource state in Bloch form: marginals plus correlations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitBlochState {
    pub t_b: BlochVector,
    pub t_c: BlochVector,
    pub c: Matrix3<f64>,
}

impl TwoQubitBlochState {
    pub fn new(t_b: BlochVector, t_c: BlochVector, c: Matrix3<f64>) -> Self {
        Self { t_b, t_c, c }
    }

    /// The maximally mixed state `1/4`.
    pub fn maximally_mixed() -> Self {
        Self::new(BlochVector::zeros(), BlochVector::zeros(), Matrix3::zeros())
    }

    /// Reconstruct the 4x4 density matrix (inverse Pauli decomposition).
    pub fn to_density_matrix(&self) -> DensityMatrix4 {
        DensityMatrix4(bloch_operator(&self.t_b, &self.t_c, &self.c))
    }

    /// Covariance matrix `T = C - t_B t_C^T`; zero for product states.
    pub fn covariance(&self) -> Matrix3<f64> {
        self.c - self.t_b * self.t_c.transpose()
    }

    /// True iff the reconstructed density matrix is Hermitian, unit-trace
    /// and positive semidefinite within tolerance.
    pub fn validate_physical(&self) -> bool {
        self.to_density_matrix().is_valid()
    }
}

/// 4x4 complex Hermitian matrix; validation surface for Bloch-form states.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix4(pub CMat4);

impl DensityMatrix4 {
    pub fn matrix(&self) -> &CMat4 {
        &self.0
    }

    pub fn is_hermitian(&self) -> bool {
        let diff = self.0 - self.0.adjoint();
        diff.iter().all(|z| z.norm() <= tol::EXACT)
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// Real eigenvalues of the Hermitian matrix, ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let eig = self.0.clone().symmetric_eigen();
        let mut vals = [0.0; 4];
        for (i, v) in eig.eigenvalues.iter().enumerate() {
            vals[i] = *v;
        }
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        vals
    }

    /// Hermitian to 1e-12, trace 1 to 1e-12, eigenvalues >= -1e-10.
    pub fn is_valid(&self) -> bool {
        self.is_hermitian()
            && (self.trace() - c(1.0, 0.0)).norm() <= tol::EXACT
            && self.eigenvalues().iter().all(|&l| l >= -tol::EIGEN)
    }
}

fn check_norm(name: &str, t: &BlochVector) -> Result<()> {
    if t.norm() > 1.0 + tol::EXACT {
        return Err(TelefidError::Domain(format!(
            "Bloch vector {name} has norm {} > 1",
            t.norm()
        )));
    }
    Ok(())
}

/// Uhlmann fidelity of two qubit states in Bloch form:
/// `[1 + t.s + sqrt(1 - t^2) sqrt(1 - s^2)] / 2`.
pub fn qubit_fidelity(t: &BlochVector, s: &BlochVector) -> Result<f64> {
    check_norm("t", t)?;
    check_norm("s", s)?;
    let pt = (1.0 - t.norm_squared()).max(0.0);
    let ps = (1.0 - s.norm_squared()).max(0.0);
    Ok(0.5 * (1.0 + t.dot(s) + (pt * ps).sqrt()))
}
