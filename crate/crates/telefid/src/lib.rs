//! Maximal average fidelity of qubit teleportation protocols.
//!
//! The library works in the Bloch/correlation-matrix picture throughout:
//! a two-qubit state is the triple `(t_B, t_C, C)` of marginal Bloch
//! vectors and the 3x3 matrix of Pauli correlations. On top of that sit
//!
//! * von Neumann measurement bases (Bell, computational, and the
//!   monoparametric family interpolating between them),
//! * resource-state constructors and the fully entangled fraction,
//! * the isotropic input-state distributions and their moments,
//! * the optimal classical measure-and-prepare baseline,
//! * the quadrature engine for the maximal average fidelity, and
//! * a Monte-Carlo protocol simulator used as an independent check.
//!
//! Pauli index convention: `(1, 2, 3) = (x, y, z)` with the standard
//! `sigma_y = [[0, -i], [i, 0]]`. All types are immutable values and all
//! operations are pure functions.

pub mod bloch;
pub mod classical;
pub mod distributions;
pub mod elliptic;
pub mod engine;
pub mod error;
pub mod mc;
pub mod measurements;
pub mod quad;
pub mod resources;
pub mod rng;
pub mod tol;

pub use bloch::{BlochVector, DensityMatrix4, TwoQubitBlochState};
pub use distributions::IsotropicDistribution;
pub use error::TelefidError;
pub use measurements::{AgrawalParams, ProjectorBloch, VonNeumannBasis};
pub use resources::BellDiagonal;
