//! Explicit quantum pentagons.
//!
//! * the five vectors of the 3-dimensional pentagon, whose rank-1
//!   projections reach `√5` on the axis state;
//! * the umbrella family, the same five vectors at an arbitrary polar angle;
//! * a finite matrix-unit analogue: `V_ij = e_ij ⊗ I_m` on `C^{3m}`, the five
//!   projections written as coefficient combinations of the units, the
//!   two-component mixture state, and unitary conjugation that carries a
//!   chosen pure state onto the axis.
//!
//! The finite algebra has no counterpart of a faithful state built from two
//! vectors when `3m > 2`, so only the value bound of the mixture is checked
//! here, not faithfulness. Likewise only one pure state at a time can be
//! aligned by a unitary.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{
    norm, random, rank1_projection, state_value, ComplexMatrix, DensityState, Projection,
    Tolerances, UnitVector, MAX_DIM,
};

/// `cos(π/5)`
pub fn cos_pi_5() -> f64 {
    (PI / 5.0).cos()
}

/// `√cos(π/5)`
pub fn sqrt_cos_pi_5() -> f64 {
    cos_pi_5().sqrt()
}

/// Five projections with `P_i P_{i+1 mod 5} = 0`, optionally with a state.
#[derive(Debug, Clone, PartialEq)]
pub struct PentagonScenario {
    projections: [Projection; 5],
    state: Option<DensityState>,
}

impl PentagonScenario {
    pub fn new(
        projections: [Projection; 5],
        state: Option<DensityState>,
        tol: &Tolerances,
    ) -> Result<Self> {
        let dim = projections[0].dim();
        for p in &projections[1..] {
            p.matrix().check_same_dim(projections[0].matrix())?;
        }
        if let Some(s) = &state {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: s.dim(),
                });
            }
        }
        for i in 0..5 {
            let overlap = projections[i].overlap(&projections[(i + 1) % 5]);
            if overlap > tol.projection {
                return Err(Error::invalid(format!(
                    "P_{i} P_{} = {overlap:e} is not zero",
                    (i + 1) % 5
                )));
            }
        }
        Ok(PentagonScenario { projections, state })
    }

    pub fn dim(&self) -> usize {
        self.projections[0].dim()
    }

    pub fn projections(&self) -> &[Projection; 5] {
        &self.projections
    }

    pub fn state(&self) -> Option<&DensityState> {
        self.state.as_ref()
    }

    pub fn with_state(mut self, state: DensityState) -> Result<Self> {
        if state.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: state.dim(),
            });
        }
        self.state = Some(state);
        Ok(self)
    }

    pub fn ranks(&self) -> [usize; 5] {
        std::array::from_fn(|i| self.projections[i].rank())
    }

    /// `Σ P_i`
    pub fn sum(&self) -> ComplexMatrix {
        self.projections[1..]
            .iter()
            .fold(self.projections[0].matrix().clone(), |acc, p| {
                &acc + p.matrix()
            })
    }

    /// `ψ(Σ P_i)` for the attached state.
    pub fn value(&self, tol: &Tolerances) -> Result<f64> {
        let state = self
            .state
            .as_ref()
            .ok_or_else(|| Error::invalid("scenario has no state"))?;
        state_value(state, &self.sum(), tol)
    }

    pub fn value_in(&self, state: &DensityState, tol: &Tolerances) -> Result<f64> {
        state_value(state, &self.sum(), tol)
    }

    /// Largest cyclic overlap `max_i |P_i P_{i+1}|`.
    pub fn max_cyclic_overlap(&self) -> f64 {
        (0..5)
            .map(|i| self.projections[i].overlap(&self.projections[(i + 1) % 5]))
            .fold(0.0, f64::max)
    }
}

/// The five pentagon vectors and the axis vector `(0, 0, 1)`.
#[derive(Debug, Clone)]
pub struct KcbsVectors {
    pub spokes: [UnitVector; 5],
    pub axis: UnitVector,
}

/// The pentagon vectors: unit vectors at azimuth `4πk/5` whose height is
/// `√cos(π/5)` before normalization, so that neighbours are orthogonal.
pub fn kcbs_vectors() -> KcbsVectors {
    let c = cos_pi_5();
    let h = c.sqrt();
    let norm = 1.0 / (1.0 + c).sqrt();
    let (c4, s4) = ((4.0 * PI / 5.0).cos(), (4.0 * PI / 5.0).sin());
    let (c2, s2) = ((2.0 * PI / 5.0).cos(), (2.0 * PI / 5.0).sin());
    let raw = [
        [1.0, 0.0, h],
        [c4, s4, h],
        [c2, -s2, h],
        [c2, s2, h],
        [c4, -s4, h],
    ];
    let spokes = raw.map(|v| {
        UnitVector::from_real(&[v[0] * norm, v[1] * norm, v[2] * norm], 1e-14)
            .expect("pentagon vectors are unit")
    });
    KcbsVectors {
        spokes,
        axis: UnitVector::basis(3, 2),
    }
}

/// Rank-1 projections onto the pentagon vectors with the axis state attached.
pub fn kcbs_pentagon() -> PentagonScenario {
    let tol = Tolerances::default();
    let v = kcbs_vectors();
    let projections = v
        .spokes
        .each_ref()
        .map(|s| rank1_projection(s, &tol).expect("unit spoke"));
    PentagonScenario::new(projections, Some(DensityState::pure(&v.axis)), &tol)
        .expect("pentagon vectors are cyclically orthogonal")
}

/// Five unit vectors at polar angle `theta` from the z-axis and azimuths `4πk/5`.
#[derive(Debug, Clone)]
pub struct UmbrellaFamily {
    pub theta: f64,
    pub vectors: [UnitVector; 5],
}

impl UmbrellaFamily {
    /// `⟨v_k, v_{k+1}⟩ = sin²θ cos(4π/5) + cos²θ`, the same for every neighbour pair.
    pub fn adjacent_overlap(&self) -> f64 {
        self.vectors[0].inner(&self.vectors[1]).re
    }

    /// `Σ_k |⟨z, v_k⟩|²` for the axis vector `z`.
    pub fn axis_value(&self) -> f64 {
        let z = UnitVector::basis(3, 2);
        self.vectors.iter().map(|v| z.inner(v).norm_sqr()).sum()
    }

    /// The rank-1 projections and axis state; fails unless the angle makes
    /// neighbours orthogonal within `tol`.
    pub fn scenario(&self, tol: &Tolerances) -> Result<PentagonScenario> {
        let projections = self
            .vectors
            .each_ref()
            .map(|v| Projection::new(ComplexMatrix::outer(v.amplitudes(), v.amplitudes()), tol));
        let [a, b, c, d, e] = projections;
        PentagonScenario::new(
            [a?, b?, c?, d?, e?],
            Some(DensityState::pure(&UnitVector::basis(3, 2))),
            tol,
        )
    }
}

/// Angle at which neighbouring umbrella vectors are orthogonal:
/// `tan²θ = 1 / cos(π/5)`.
pub fn umbrella_critical_angle() -> f64 {
    (1.0 / cos_pi_5()).sqrt().atan()
}

pub fn umbrella_family(theta: f64) -> Result<UmbrellaFamily> {
    if !(theta > 0.0 && theta < PI / 2.0) {
        return Err(Error::invalid(format!("theta {theta} outside (0, π/2)")));
    }
    let (st, ct) = theta.sin_cos();
    let vectors = std::array::from_fn(|k| {
        let phi = 4.0 * PI * k as f64 / 5.0;
        UnitVector::from_real(&[st * phi.cos(), st * phi.sin(), ct], 1e-14)
            .expect("unit by construction")
    });
    Ok(UmbrellaFamily { theta, vectors })
}

/// Matrix units `V_ij` (`i, j ∈ 0..3`) acting on `C^{3m}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixUnitSystem {
    multiplicity: usize,
    units: [[ComplexMatrix; 3]; 3],
}

impl MatrixUnitSystem {
    /// Validates `V_ij V_kl = δ_jk V_il`, `V_ij* = V_ji`, `Σ V_ii = I`.
    pub fn from_units(units: [[ComplexMatrix; 3]; 3], tol: &Tolerances) -> Result<Self> {
        let dim = units[0][0].dim();
        if !dim.is_multiple_of(3) {
            return Err(Error::invalid(format!(
                "unit dimension {dim} is not a multiple of 3"
            )));
        }
        let system = MatrixUnitSystem {
            multiplicity: dim / 3,
            units,
        };
        system.validate(tol)?;
        Ok(system)
    }

    /// Largest violation of the matrix-unit relations.
    pub fn defect(&self) -> Result<f64> {
        let dim = self.dim();
        let mut worst = 0.0f64;
        let mut diag_sum = ComplexMatrix::zeros(dim);
        for i in 0..3 {
            for j in 0..3 {
                self.units[i][j].check_same_dim(&diag_sum)?;
                worst = worst.max((&self.units[i][j].adjoint() - &self.units[j][i]).max_abs());
                for k in 0..3 {
                    for l in 0..3 {
                        let prod = &self.units[i][j] * &self.units[k][l];
                        let expected = if j == k {
                            self.units[i][l].clone()
                        } else {
                            ComplexMatrix::zeros(dim)
                        };
                        worst = worst.max((&prod - &expected).max_abs());
                    }
                }
            }
            diag_sum = &diag_sum + &self.units[i][i];
        }
        Ok(worst.max((&diag_sum - &ComplexMatrix::identity(dim)).max_abs()))
    }

    pub fn validate(&self, tol: &Tolerances) -> Result<()> {
        let d = self.defect()?;
        if d > tol.projection {
            return Err(Error::invalid(format!(
                "matrix-unit relations violated by {d:e}"
            )));
        }
        Ok(())
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn dim(&self) -> usize {
        3 * self.multiplicity
    }

    /// `V_ij`, zero-based.
    pub fn unit(&self, i: usize, j: usize) -> &ComplexMatrix {
        &self.units[i][j]
    }

    /// Orthonormal basis of `range(V_33)` (zero-based `V_22`).
    pub fn axis_block_basis(&self) -> Vec<Vec<Complex64>> {
        let m = self.multiplicity;
        (0..m)
            .map(|k| UnitVector::basis(3 * m, 2 * m + k).amplitudes().to_vec())
            .collect()
    }

    /// `U* V_ij U` for every unit.
    pub fn conjugated(&self, u: &ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        check_unitary(u, self.dim(), tol)?;
        let ud = u.adjoint();
        let units = self
            .units
            .each_ref()
            .map(|row| row.each_ref().map(|v| &(&ud * v) * u));
        Self::from_units(units, tol)
    }
}

/// `V_ij = e_ij ⊗ I_m`.
pub fn matrix_units(m: usize) -> Result<MatrixUnitSystem> {
    if m == 0 {
        return Err(Error::invalid("multiplicity must be positive"));
    }
    if 3 * m > MAX_DIM {
        return Err(Error::Capacity {
            what: "matrix-unit dimension",
            got: 3 * m,
            limit: MAX_DIM,
        });
    }
    let id = ComplexMatrix::identity(m);
    let units = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut e = ComplexMatrix::zeros(3);
            e[(i, j)] = Complex64::new(1.0, 0.0);
            e.kron(&id)
        })
    });
    Ok(MatrixUnitSystem {
        multiplicity: m,
        units,
    })
}

/// Coefficient table `c[i][j]` of `R_k = Σ c_ij V_ij`, written out term by
/// term, before the common factor `1 / (1 + cos(π/5))`.
fn typeiii_coefficients(k: usize) -> [[f64; 3]; 3] {
    let c5 = cos_pi_5();
    let r = sqrt_cos_pi_5();
    let (c4, s4) = ((4.0 * PI / 5.0).cos(), (4.0 * PI / 5.0).sin());
    let (c2, s2) = ((2.0 * PI / 5.0).cos(), (2.0 * PI / 5.0).sin());
    match k {
        0 => [[1.0, 0.0, r], [0.0, 0.0, 0.0], [r, 0.0, c5]],
        1 => [
            [c4 * c4, s4 * c4, c4 * r],
            [s4 * c4, s4 * s4, s4 * r],
            [c4 * r, s4 * r, c5],
        ],
        2 => [
            [c2 * c2, -s2 * c2, c2 * r],
            [-s2 * c2, s2 * s2, -s2 * r],
            [c2 * r, -s2 * r, c5],
        ],
        3 => [
            [c2 * c2, s2 * c2, c2 * r],
            [s2 * c2, s2 * s2, s2 * r],
            [c2 * r, s2 * r, c5],
        ],
        4 => [
            [c4 * c4, -s4 * c4, c4 * r],
            [-s4 * c4, s4 * s4, -s4 * r],
            [c4 * r, -s4 * r, c5],
        ],
        _ => unreachable!("pentagon index {k}"),
    }
}

/// The five projections `R_k` as combinations of the matrix units. With a
/// single pure state in `range(V_33)` attached, they reach `√5`.
pub fn typeiii_projections(units: &MatrixUnitSystem, tol: &Tolerances) -> Result<PentagonScenario> {
    units.validate(tol)?;
    let scale = 1.0 / (1.0 + cos_pi_5());
    let dim = units.dim();
    let build = |k: usize| -> Result<Projection> {
        let coeff = typeiii_coefficients(k);
        let mut r = ComplexMatrix::zeros(dim);
        for (i, row) in coeff.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                if x != 0.0 {
                    r = &r + &units.unit(i, j).scale(x);
                }
            }
        }
        Projection::new(r.scale(scale), tol)
    };
    let [a, b, c, d, e] = std::array::from_fn(build);
    PentagonScenario::new([a?, b?, c?, d?, e?], None, tol)
}

/// `ρ = (1 - ε/√5)|Φ⟩⟨Φ| + (ε/√5)|Φ⊥⟩⟨Φ⊥|` for `0 < ε < √5 - 2`.
pub fn mixture_state(
    phi: &UnitVector,
    phi_perp: &UnitVector,
    epsilon: f64,
    tol: &Tolerances,
) -> Result<DensityState> {
    let upper = 5f64.sqrt() - 2.0;
    if !(epsilon > 0.0 && epsilon < upper) {
        return Err(Error::invalid(format!(
            "epsilon {epsilon} outside the open interval (0, √5 - 2 = {upper})"
        )));
    }
    if phi.dim() != phi_perp.dim() {
        return Err(Error::DimensionMismatch {
            left: phi.dim(),
            right: phi_perp.dim(),
        });
    }
    let overlap = phi.inner(phi_perp).norm();
    if overlap > tol.projection {
        return Err(Error::invalid(format!(
            "mixture components are not orthogonal (|⟨Φ, Φ⊥⟩| = {overlap:e})"
        )));
    }
    let w = epsilon / 5f64.sqrt();
    let a = ComplexMatrix::outer(phi.amplitudes(), phi.amplitudes()).scale(1.0 - w);
    let b = ComplexMatrix::outer(phi_perp.amplitudes(), phi_perp.amplitudes()).scale(w);
    DensityState::new(&a + &b, tol)
}

fn check_unitary(u: &ComplexMatrix, dim: usize, tol: &Tolerances) -> Result<()> {
    if u.dim() != dim {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: u.dim(),
        });
    }
    let deviation = u.unitary_defect();
    if deviation > tol.projection {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(())
}

/// `P_i = U* R_i U`, and `ρ ↦ U* ρ U` for an attached state.
pub fn conjugate_scenario(
    s: &PentagonScenario,
    u: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<PentagonScenario> {
    check_unitary(u, s.dim(), tol)?;
    let ud = u.adjoint();
    let [a, b, c, d, e] = s
        .projections
        .each_ref()
        .map(|p| Projection::new(&(&ud * p.matrix()) * u, tol));
    let state = s.state.as_ref().map(|r| r.conjugated(u));
    PentagonScenario::new([a?, b?, c?, d?, e?], state, tol)
}

/// A unitary `U` with `U·from = to`: a phase times a Householder reflection.
pub fn aligning_unitary(from: &UnitVector, to: &UnitVector) -> Result<ComplexMatrix> {
    if from.dim() != to.dim() {
        return Err(Error::DimensionMismatch {
            left: from.dim(),
            right: to.dim(),
        });
    }
    let dim = from.dim();
    let overlap = from.inner(to);
    // rotate `from` so that its overlap with `to` is real and non-negative
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let x: Vec<Complex64> = from.amplitudes().iter().map(|z| z * phase).collect();
    let u: Vec<Complex64> = x.iter().zip(to.amplitudes()).map(|(a, b)| a - b).collect();
    let un = norm(&u);
    let mut h = ComplexMatrix::identity(dim);
    if un > 1e-15 {
        let reflector = ComplexMatrix::outer(&u, &u).scale(2.0 / (un * un));
        h = &h - &reflector;
    }
    Ok(ComplexMatrix::from_fn(dim, |i, j| h[(i, j)] * phase))
}

/// Seeded random pure state in `C^dim`.
pub fn random_pure_state(dim: usize, seed: u64) -> UnitVector {
    let mut rng = random::rng(seed);
    UnitVector::normalized(random::gaussian_vector(dim, &mut rng))
        .expect("Gaussian draw is nonzero")
}

/// Single-state alignment: conjugate `s` by a unitary carrying `phi` onto
/// `target`, and attach the pure state `phi`. The value of `phi` on the
/// conjugated projections equals the value of `target` on the originals.
pub fn align_scenario(
    s: &PentagonScenario,
    phi: &UnitVector,
    target: &UnitVector,
    tol: &Tolerances,
) -> Result<PentagonScenario> {
    let u = aligning_unitary(phi, target)?;
    let mut out = conjugate_scenario(s, &u, tol)?;
    out.state = Some(DensityState::pure(phi));
    Ok(out)
}
