//! Construct, verify and stress-test the KCBS pentagon inequality
//! `Σ ψ(P_i) ≤ 2` for five cyclically exclusive projections.
//!
//! * [`linalg`]: dense complex matrices, a Jacobi Hermitian eigensolver,
//!   projections and their lattice meet/join, density states.
//! * [`exclusivity`]: exclusivity graphs, exhaustive value-assignment
//!   enumeration and the classical (noncontextual) bounds.
//! * [`hvm`]: finite hidden-variable models and their predictions.
//! * [`constructions`]: the explicit pentagon reaching `√5`, the umbrella
//!   family, and the matrix-unit analogue with mixtures and conjugation.
//! * [`tracial`]: numerical checks that the normalized trace never violates
//!   the inequality, step by step through the lattice argument.
//! * [`io`]: versioned JSON documents for graphs, models and scenarios.

pub mod constructions;
pub mod error;
pub mod exclusivity;
pub mod hvm;
pub mod io;
pub mod linalg;
pub mod report;
pub mod tracial;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityState, Projection, Tolerances, UnitVector};

/// The classical bound of the pentagon inequality.
pub const CLASSICAL_BOUND: f64 = 2.0;
