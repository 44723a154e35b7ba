use num_complex::Complex64;

use super::eigen::hermitian_eigen;
use super::matrix::{inner, norm, ComplexMatrix, ZERO};
use super::Tolerances;
use crate::error::{Error, Result};

/// Unit vector in `C^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitVector {
    amplitudes: Vec<Complex64>,
}

impl UnitVector {
    pub fn new(amplitudes: Vec<Complex64>, tol: f64) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::invalid("unit vector must have positive dimension"));
        }
        let n = norm(&amplitudes);
        if !n.is_finite() || (n - 1.0).abs() > tol {
            return Err(Error::NotUnit { norm: n });
        }
        Ok(UnitVector { amplitudes })
    }

    pub fn from_real(values: &[f64], tol: f64) -> Result<Self> {
        Self::new(
            values.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            tol,
        )
    }

    /// Scale `v` to unit norm. Fails on the zero vector.
    pub fn normalized(mut v: Vec<Complex64>) -> Result<Self> {
        let n = norm(&v);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::NotUnit { norm: n });
        }
        v.iter_mut().for_each(|z| *z /= n);
        Ok(UnitVector { amplitudes: v })
    }

    /// Standard basis vector `e_k` in `C^dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim);
        let mut v = vec![ZERO; dim];
        v[k] = Complex64::new(1.0, 0.0);
        UnitVector { amplitudes: v }
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn inner(&self, other: &UnitVector) -> Complex64 {
        inner(&self.amplitudes, &other.amplitudes)
    }
}

/// Orthogonal projection: `P² = P = P*` within `tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    matrix: ComplexMatrix,
    rank: usize,
    tol: f64,
}

impl Projection {
    /// Validate `matrix` as a projection and record its rank.
    pub fn new(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let t = tol.projection;
        let asym = matrix.hermitian_defect();
        if asym > t {
            return Err(Error::NotProjection(format!(
                "not self-adjoint (max |P - P*| = {asym:e})"
            )));
        }
        let idem = (&(&matrix * &matrix) - &matrix).max_abs();
        if idem > t {
            return Err(Error::NotProjection(format!(
                "not idempotent (max |P² - P| = {idem:e})"
            )));
        }
        let eig = hermitian_eigen(&matrix, t)?;
        let mut rank = 0;
        for &lambda in &eig.values {
            if (lambda - 1.0).abs() <= t {
                rank += 1;
            } else if lambda.abs() > t {
                return Err(Error::NotProjection(format!(
                    "eigenvalue {lambda} is not within {t:e} of 0 or 1"
                )));
            }
        }
        Ok(Projection {
            matrix,
            rank,
            tol: t,
        })
    }

    pub fn zero(dim: usize) -> Self {
        Projection {
            matrix: ComplexMatrix::zeros(dim),
            rank: 0,
            tol: Tolerances::default().projection,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Projection {
            matrix: ComplexMatrix::identity(dim),
            rank: dim,
            tol: Tolerances::default().projection,
        }
    }

    /// `Σ |b⟩⟨b|` over an orthonormal family. Orthonormality is the caller's contract
    /// and is checked through the projection predicates.
    pub fn from_orthonormal(
        dim: usize,
        basis: &[Vec<Complex64>],
        tol: &Tolerances,
    ) -> Result<Self> {
        let mut m = ComplexMatrix::zeros(dim);
        for b in basis {
            if b.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: b.len(),
                });
            }
            m = &m + &ComplexMatrix::outer(b, b);
        }
        let p = Self::new(m, tol)?;
        if p.rank != basis.len() {
            return Err(Error::NotProjection(format!(
                "basis of {} vectors spans rank {}",
                basis.len(),
                p.rank
            )));
        }
        Ok(p)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }

    /// `I - P`
    pub fn complement(&self) -> Projection {
        Projection {
            matrix: &ComplexMatrix::identity(self.dim()) - &self.matrix,
            rank: self.dim() - self.rank,
            tol: self.tol,
        }
    }

    /// Orthonormal basis of the range, from the eigenvectors with eigenvalue near 1.
    pub fn range_basis(&self) -> Vec<Vec<Complex64>> {
        if self.rank == 0 {
            return Vec::new();
        }
        let eig = hermitian_eigen(&self.matrix, f64::INFINITY).expect("validated projection");
        eig.vectors[self.dim() - self.rank..].to_vec()
    }

    /// Operator order `self ≤ other`: `other - self` positive semidefinite within `tol`.
    pub fn is_below(&self, other: &Projection, tol: f64) -> Result<bool> {
        self.matrix.check_same_dim(&other.matrix)?;
        let diff = &other.matrix - &self.matrix;
        Ok(hermitian_eigen(&diff, f64::INFINITY)?.min_value() >= -tol)
    }

    /// `max |PQ|`: zero iff the ranges are orthogonal.
    pub fn overlap(&self, other: &Projection) -> f64 {
        (&self.matrix * &other.matrix).max_abs()
    }

    pub fn distance(&self, other: &Projection) -> f64 {
        (&self.matrix - &other.matrix).max_abs()
    }
}

/// `|v⟩⟨v|` for a unit vector `v`.
pub fn rank1_projection(v: &UnitVector, tol: &Tolerances) -> Result<Projection> {
    // revalidate; UnitVector can be built with a loose tolerance
    let n = norm(v.amplitudes());
    if (n - 1.0).abs() > tol.projection {
        return Err(Error::NotUnit { norm: n });
    }
    Projection::new(ComplexMatrix::outer(v.amplitudes(), v.amplitudes()), tol)
}

/// Lattice meet `P ∧ Q`: projection onto `range(P) ∩ range(Q)`.
///
/// With orthonormal range bases `B_P`, `B_Q`, the intersection is the image of
/// the null space of the stacked system `B_P x = B_Q y`, read off from the
/// eigenvalues of the Gram matrix of `[B_P | -B_Q]` below `tol.rank`.
pub fn projection_meet(p: &Projection, q: &Projection, tol: &Tolerances) -> Result<Projection> {
    p.matrix.check_same_dim(&q.matrix)?;
    let dim = p.dim();
    if p.rank == 0 || q.rank == 0 {
        return Ok(Projection::zero(dim));
    }
    let bp = p.range_basis();
    let bq = q.range_basis();
    let (r, s) = (bp.len(), bq.len());

    // Gram of [B_P | -B_Q] = [[I, -B_P* B_Q], [-B_Q* B_P, I]]
    let mut gram = ComplexMatrix::identity(r + s);
    for i in 0..r {
        for j in 0..s {
            let c = inner(&bp[i], &bq[j]);
            gram[(i, r + j)] = -c;
            gram[(r + j, i)] = -c.conj();
        }
    }
    let eig = hermitian_eigen(&gram, f64::INFINITY)?;

    let mut span = Vec::new();
    for (lambda, z) in eig.values.iter().zip(&eig.vectors) {
        if *lambda >= tol.rank {
            break;
        }
        // B_P x and B_Q y coincide on the null space; average the two images
        let mut w = vec![ZERO; dim];
        for (i, b) in bp.iter().enumerate() {
            for k in 0..dim {
                w[k] += b[k] * z[i];
            }
        }
        for (j, b) in bq.iter().enumerate() {
            for k in 0..dim {
                w[k] += b[k] * z[r + j];
            }
        }
        span.push(w);
    }
    let basis = orthonormalize(span, tol.rank);
    Projection::from_orthonormal(dim, &basis, tol)
}

/// Lattice join `P ∨ Q = I - ((I - P) ∧ (I - Q))`.
pub fn projection_join(p: &Projection, q: &Projection, tol: &Tolerances) -> Result<Projection> {
    p.matrix.check_same_dim(&q.matrix)?;
    Ok(projection_meet(&p.complement(), &q.complement(), tol)?.complement())
}

/// Modified Gram-Schmidt, applied twice; vectors whose residual norm falls
/// below `drop_tol` are discarded.
pub fn orthonormalize(vectors: Vec<Vec<Complex64>>, drop_tol: f64) -> Vec<Vec<Complex64>> {
    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(vectors.len());
    for mut v in vectors {
        let start = norm(&v);
        if start == 0.0 {
            continue;
        }
        for _ in 0..2 {
            for b in &out {
                let c = inner(b, &v);
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= c * y;
                }
            }
        }
        let n = norm(&v);
        if n > drop_tol * start.max(1.0) {
            v.iter_mut().for_each(|z| *z /= n);
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn span(dim: usize, idx: &[usize]) -> Projection {
        let basis: Vec<_> = idx
            .iter()
            .map(|&k| UnitVector::basis(dim, k).amplitudes().to_vec())
            .collect();
        Projection::from_orthonormal(dim, &basis, &tol()).unwrap()
    }

    #[test]
    fn rank1_examples() {
        let p = rank1_projection(
            &UnitVector::from_real(&[1.0, 0.0, 0.0], 1e-12).unwrap(),
            &tol(),
        )
        .unwrap();
        assert_eq!(p.matrix(), &ComplexMatrix::diagonal(&[1.0, 0.0, 0.0]));
        assert_eq!(p.rank(), 1);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let p = rank1_projection(&UnitVector::from_real(&[h, h], 1e-12).unwrap(), &tol()).unwrap();
        for z in p.matrix().as_slice() {
            assert!((z.re - 0.5).abs() < 1e-15 && z.im == 0.0);
        }
    }

    #[test]
    fn unit_vector_rejects_non_unit() {
        assert!(matches!(
            UnitVector::from_real(&[1.0, 1.0], 1e-10),
            Err(Error::NotUnit { .. })
        ));
        assert!(UnitVector::normalized(vec![ZERO; 3]).is_err());
    }

    #[test]
    fn projection_predicates() {
        let not_idem = ComplexMatrix::diagonal(&[1.0, 0.5]);
        assert!(matches!(
            Projection::new(not_idem, &tol()),
            Err(Error::NotProjection(_))
        ));
        let mut not_sa = ComplexMatrix::zeros(2);
        not_sa[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(
            Projection::new(not_sa, &tol()),
            Err(Error::NotProjection(_))
        ));
    }

    #[test]
    fn meet_examples() {
        let p = span(4, &[0, 1]);
        assert!(projection_meet(&p, &p, &tol()).unwrap().distance(&p) < 1e-12);

        let a = span(3, &[0]);
        let b = span(3, &[1]);
        assert!(projection_meet(&a, &b, &tol()).unwrap().is_zero());

        let q = span(4, &[1, 2]);
        let m = projection_meet(&p, &q, &tol()).unwrap();
        assert_eq!(m.rank(), 1);
        assert!(m.distance(&span(4, &[1])) < 1e-12);
        assert!(m.is_below(&p, 1e-10).unwrap());
        assert!(m.is_below(&q, 1e-10).unwrap());
    }

    #[test]
    fn join_examples() {
        let p = span(4, &[0, 2]);
        let j = projection_join(&p, &Projection::zero(4), &tol()).unwrap();
        assert!(j.distance(&p) < 1e-12);

        let j = projection_join(&p, &p.complement(), &tol()).unwrap();
        assert_eq!(j.rank(), 4);
        assert!(j.distance(&Projection::identity(4)) < 1e-12);

        let j = projection_join(&span(4, &[0]), &span(4, &[1]), &tol()).unwrap();
        assert_eq!(j.rank(), 2);
        assert!(j.distance(&span(4, &[0, 1])) < 1e-12);
    }

    #[test]
    fn dimension_mismatch() {
        let e = projection_meet(&span(3, &[0]), &span(4, &[0]), &tol()).unwrap_err();
        assert_eq!(e, Error::DimensionMismatch { left: 3, right: 4 });
        assert!(projection_join(&span(3, &[0]), &span(2, &[0]), &tol()).is_err());
    }
}
