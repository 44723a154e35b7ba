//! Dense complex linear algebra: matrices, the Hermitian eigensolver,
//! projections with their lattice operations, and density states.

mod eigen;
mod matrix;
mod projection;
pub mod random;
mod state;

pub use eigen::{hermitian_eigen, HermitianEigen, MAX_SWEEPS, OFF_DIAGONAL_TOL};
pub(crate) use matrix::MatrixRepr;
pub use matrix::{inner, norm, ComplexMatrix, MAX_DIM};
pub use projection::{
    orthonormalize, projection_join, projection_meet, rank1_projection, Projection, UnitVector,
};
pub use state::{state_value, DensityState, IMAGINARY_RESIDUE_TOL};

/// Numerical thresholds shared by the public operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Predicate tolerance for projections, states and unitaries.
    pub projection: f64,
    /// Eigenvalue / singular-value cutoff for rank decisions.
    pub rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            projection: 1e-10,
            rank: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn with_projection(projection: f64) -> Self {
        Tolerances {
            projection,
            ..Self::default()
        }
    }
}
