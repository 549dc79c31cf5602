//! Four-outcome von Neumann bases in Bloch form.
//!
//! Every outcome is stored as `(n_i, m_i, C_i)`, the Pauli expectations of
//! the rank-one projector. Bases are always built by decomposing the
//! explicit state amplitudes, so labels and signs can never drift from the
//! underlying vectors; tabulated matrices are a test fixture only.
//!
//! Outcome ordering is fixed as `(phi+, phi-, psi+, psi-)`.

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};
use num_complex::Complex64;

use crate::bloch::{bloch_operator, pauli_expectations, BlochVector};
use crate::error::{Result, TelefidError};
use crate::tol;

/// One rank-one measurement outcome: marginal Bloch vectors and
/// correlation matrix, with the purity identity `n = C m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectorBloch {
    pub n: BlochVector,
    pub m: BlochVector,
    pub c: Matrix3<f64>,
}

impl ProjectorBloch {
    /// Reconstruct the 4x4 projector from the Bloch data.
    pub fn to_matrix(&self) -> Matrix4<Complex64> {
        bloch_operator(&self.n, &self.m, &self.c)
    }

    /// Rank-one purity identity `n = C m` within tolerance.
    pub fn purity_identity_holds(&self) -> bool {
        (self.n - self.c * self.m).norm() <= tol::EXACT
    }
}

/// A complete four-outcome von Neumann measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VonNeumannBasis {
    pub outcomes: [ProjectorBloch; 4],
}

impl VonNeumannBasis {
    /// Completeness: the four projectors sum to the identity, which in
    /// Bloch form is `sum n_i = sum m_i = 0` and `sum C_i = 0`.
    pub fn is_complete(&self) -> bool {
        let n: BlochVector = self.outcomes.iter().map(|o| o.n).sum();
        let m: BlochVector = self.outcomes.iter().map(|o| o.m).sum();
        let c: Matrix3<f64> = self.outcomes.iter().map(|o| o.c).sum();
        n.norm() <= tol::EXACT && m.norm() <= tol::EXACT && c.norm() <= tol::EXACT
    }

    pub fn validate(&self) -> Result<()> {
        if self.is_complete() {
            Ok(())
        } else {
            Err(TelefidError::IncompleteBasis(
                "outcomes do not sum to the identity".into(),
            ))
        }
    }
}

/// Polar parameters of the monoparametric measurement family:
/// `l = r_l exp(i phi_l)` and `p = r_p exp(i phi_p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgrawalParams {
    pub r_l: f64,
    pub phi_l: f64,
    pub r_p: f64,
    pub phi_p: f64,
}

impl AgrawalParams {
    pub fn new(r_l: f64, phi_l: f64, r_p: f64, phi_p: f64) -> Result<Self> {
        if !(r_l.is_finite() && r_p.is_finite() && phi_l.is_finite() && phi_p.is_finite()) {
            return Err(TelefidError::Domain("non-finite basis parameter".into()));
        }
        if r_l < 0.0 || r_p < 0.0 {
            return Err(TelefidError::Domain("radial parameter must be >= 0".into()));
        }
        Ok(Self { r_l, phi_l, r_p, phi_p })
    }

    /// Equal real parameters `l = p = r_n`, the engine's default path.
    pub fn real(r_n: f64) -> Result<Self> {
        Self::new(r_n, 0.0, r_n, 0.0)
    }

    /// Invert `c_n = 2 r_n / (1 + r_n^2)` on the branch `r_n <= 1`.
    pub fn from_correlation(c_n: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&c_n) {
            return Err(TelefidError::Domain(format!("c_n = {c_n} outside [0, 1]")));
        }
        let r_n = if c_n == 0.0 {
            0.0
        } else {
            (1.0 - (1.0 - c_n * c_n).sqrt()) / c_n
        };
        Self::real(r_n)
    }
}

/// Basis correlation strength `c_n = 2 r_n / (1 + r_n^2)`.
pub fn correlation_factor(r_n: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r_n) {
        return Err(TelefidError::Domain(format!("r_n = {r_n} outside [0, 1]")));
    }
    Ok(2.0 * r_n / (1.0 + r_n * r_n))
}

/// Bloch decomposition of the rank-one projector onto a normalized
/// two-qubit state with amplitudes `(a00, a01, a10, a11)`.
pub fn decompose_projector(amplitudes: &[Complex64; 4]) -> Result<ProjectorBloch> {
    let psi = Vector4::from_row_slice(amplitudes);
    let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if (norm2 - 1.0).abs() > tol::EXACT {
        return Err(TelefidError::Domain(format!(
            "amplitudes not normalized: |psi|^2 = {norm2}"
        )));
    }
    let outer = psi * psi.adjoint();
    let (n, m, c) = pauli_expectations(&outer);
    Ok(ProjectorBloch { n, m, c })
}

fn normalized(raw: [Complex64; 4]) -> [Complex64; 4] {
    let norm: f64 = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    raw.map(|z| z / norm)
}

/// The four projector amplitudes of the parametrized family, in the fixed
/// outcome order `(phi_l+, phi_l-, psi_p+, psi_p-)`:
///
/// ```text
/// |phi_l+> = (|00> + l |11>) / sqrt(1 + |l|^2)
/// |phi_l-> = (l* |00> - |11>) / sqrt(1 + |l|^2)
/// |psi_p+> = (|01> + p |10>) / sqrt(1 + |p|^2)
/// |psi_p-> = (p* |01> - |10>) / sqrt(1 + |p|^2)
/// ```
pub fn agrawal_amplitudes(params: &AgrawalParams) -> [[Complex64; 4]; 4] {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let l = Complex64::from_polar(params.r_l, params.phi_l);
    let p = Complex64::from_polar(params.r_p, params.phi_p);
    [
        normalized([one, zero, zero, l]),
        normalized([l.conj(), zero, zero, -one]),
        normalized([zero, one, p, zero]),
        normalized([zero, p.conj(), -one, zero]),
    ]
}

/// Measurement basis of the parametrized family.
pub fn agrawal_basis(params: &AgrawalParams) -> VonNeumannBasis {
    let amps = agrawal_amplitudes(params);
    let outcomes = amps.map(|a| decompose_projector(&a).expect("amplitudes are normalized"));
    VonNeumannBasis { outcomes }
}

/// The Bell basis: the `r_l = r_p = 1`, zero-phase member of the family.
/// All `n_i = m_i = 0` and the `C_i` are diagonal improper rotations.
pub fn bell_basis() -> VonNeumannBasis {
    agrawal_basis(&AgrawalParams::real(1.0).unwrap())
}

/// The computational basis: the `r_l = r_p = 0` member of the family.
pub fn computational_basis() -> VonNeumannBasis {
    agrawal_basis(&AgrawalParams::real(0.0).unwrap())
}

/// For a real equal-parameter basis, check the factorization
/// `C_i = D_n C'_i` with `D_n = diag(c_n, c_n, 1)` and `C'_i` the matched
/// Bell-basis matrices.
pub fn basis_factorization_check(r_n: f64) -> Result<bool> {
    let c_n = correlation_factor(r_n)?;
    let basis = agrawal_basis(&AgrawalParams::real(r_n)?);
    let bell = bell_basis();
    let d_n = Matrix3::from_diagonal(&Vector3::new(c_n, c_n, 1.0));
    Ok(basis
        .outcomes
        .iter()
        .zip(bell.outcomes.iter())
        .all(|(o, b)| (o.c - d_n * b.c).norm() <= tol::EXACT))
}

/// Entanglement of the basis states `|phi_r+->`, as the Schmidt-coefficient
/// entropy `H2(r^2 / (1 + r^2))` in bits. Zero at `r = 0`, one at `r = 1`,
/// invariant under `r -> 1/r`.
pub fn measurement_entanglement(r: f64) -> Result<f64> {
    if !(r.is_finite() && r >= 0.0) {
        return Err(TelefidError::Domain(format!("r = {r} must be >= 0")));
    }
    let lambda = r * r / (1.0 + r * r);
    let h = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.log2() };
    Ok(h(lambda) + h(1.0 - lambda))
}
