use super::eigen::hermitian_eigen;
use super::matrix::ComplexMatrix;
use super::projection::UnitVector;
use super::Tolerances;
use crate::error::{Error, Result};

/// Largest imaginary part of `Tr(ρM)` accepted before it is discarded.
pub const IMAGINARY_RESIDUE_TOL: f64 = 1e-12;

/// Density operator: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    matrix: ComplexMatrix,
}

impl DensityState {
    pub fn new(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let t = tol.projection;
        let asymmetry = matrix.hermitian_defect();
        if asymmetry > t {
            return Err(Error::InvalidState(format!(
                "not Hermitian (max asymmetry {asymmetry:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > t || tr.im.abs() > t {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let min = hermitian_eigen(&matrix, t)?.min_value();
        if min < -t {
            return Err(Error::InvalidState(format!("negative eigenvalue {min}")));
        }
        Ok(DensityState { matrix })
    }

    /// Vector state `|v⟩⟨v|`.
    pub fn pure(v: &UnitVector) -> Self {
        DensityState {
            matrix: ComplexMatrix::outer(v.amplitudes(), v.amplitudes()),
        }
    }

    /// `I / n`, the normalized trace on `n × n` matrices.
    pub fn maximally_mixed(dim: usize) -> Self {
        DensityState {
            matrix: ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `U* ρ U`
    pub(crate) fn conjugated(&self, u: &ComplexMatrix) -> Self {
        DensityState {
            matrix: &(&u.adjoint() * &self.matrix) * u,
        }
    }
}

/// `Tr(ρ M)` for Hermitian `M`.
pub fn state_value(state: &DensityState, m: &ComplexMatrix, tol: &Tolerances) -> Result<f64> {
    state.matrix.check_same_dim(m)?;
    m.check_hermitian(tol.projection)?;
    let n = m.dim();
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += state.matrix[(i, k)] * m[(k, i)];
        }
    }
    if acc.im.abs() > IMAGINARY_RESIDUE_TOL {
        return Err(Error::invalid(format!(
            "Tr(ρM) has imaginary residue {:e}",
            acc.im
        )));
    }
    Ok(acc.re)
}
