//! Numerical checks that the normalized trace `τ_n = Tr(·)/n` never violates
//! the pentagon inequality.
//!
//! [`verify_proof_chain`] evaluates every step of the lattice argument on a
//! concrete scenario, so a failure pinpoints the step rather than only the
//! conclusion:
//!
//! 1. `1 - τ(P0 ∧ P3) ≥ τ(P1) + τ(P2)`
//! 2. `τ(P0) = τ(P0 ∧ P3) + τ(P0 ∧ (P0 ∧ P3)^⊥)`
//! 3. `τ(P0 ∧ (P0 ∧ P3)^⊥) + τ(P3) ≤ τ(P0 ∨ P3)`
//! 4. `Σ τ(P_i) ≤ 1 + τ(P0 ∨ P3) + τ(P4) ≤ 2`
//!
//! Step 3 rests on trace modularity `τ(P) + τ(Q) = τ(P ∨ Q) + τ(P ∧ Q)`,
//! checked on its own by [`verify_trace_modularity`].

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng as _;
use serde::Serialize;

use crate::constructions::PentagonScenario;
use crate::error::{Error, Result};
use crate::linalg::random::{self, derive_seed, random_subspace, standard_basis};
use crate::linalg::{
    hermitian_eigen, projection_join, projection_meet, ComplexMatrix, DensityState, Projection,
    Tolerances,
};
use crate::report::CheckRecord;
use crate::CLASSICAL_BOUND;

/// Tolerance for `τ(Σ P_i) ≤ 2`.
pub const THEOREM_TOL: f64 = 1e-9;
/// Tolerance for each lattice/trace identity.
pub const LATTICE_TOL: f64 = 1e-8;
/// Tolerance on the top eigenvalue of `Σ P_i` in dimension 2.
pub const DIM2_EIGEN_TOL: f64 = 1e-10;
/// Sampler attempts before a rank pattern is declared infeasible.
pub const SAMPLER_ATTEMPTS: usize = 100;

/// The normalized trace on `n × n` matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TracialState {
    dim: usize,
}

impl TracialState {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        Ok(TracialState { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Tr(A) / n` (real part).
    pub fn value(&self, a: &ComplexMatrix) -> f64 {
        debug_assert_eq!(a.dim(), self.dim);
        a.trace().re / self.dim as f64
    }

    pub fn of(&self, p: &Projection) -> f64 {
        self.value(p.matrix())
    }

    pub fn as_density(&self) -> DensityState {
        DensityState::maximally_mixed(self.dim)
    }
}

/// Random pentagon with prescribed ranks; see [`random_pentagon_with_attempts`].
pub fn random_pentagon(
    dim: usize,
    ranks: [usize; 5],
    seed: u64,
    tol: &Tolerances,
) -> Result<PentagonScenario> {
    random_pentagon_with_attempts(dim, ranks, seed, tol, SAMPLER_ATTEMPTS)
}

/// Samples `P0` uniformly, then each `P_{i+1}` inside `(P_i)^⊥` for
/// `i = 0..3`, and `P4` inside `(P3 ∨ P0)^⊥`. Non-adjacent pairs are left
/// generic. Deterministic in `seed`; the retry stream continues the same RNG.
pub fn random_pentagon_with_attempts(
    dim: usize,
    ranks: [usize; 5],
    seed: u64,
    tol: &Tolerances,
    attempts: usize,
) -> Result<PentagonScenario> {
    if dim == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    for (i, &r) in ranks.iter().enumerate() {
        if r > dim {
            return Err(Error::Infeasible(format!(
                "rank(P_{i}) = {r} exceeds dimension {dim}"
            )));
        }
    }
    for i in 0..4 {
        if ranks[i] + ranks[i + 1] > dim {
            return Err(Error::Infeasible(format!(
                "rank(P_{i}) + rank(P_{}) = {} exceeds dimension {dim}",
                i + 1,
                ranks[i] + ranks[i + 1]
            )));
        }
    }
    if ranks[4] + ranks[0].max(ranks[3]) > dim {
        return Err(Error::Infeasible(format!(
            "rank(P_4) = {} exceeds dim - rank(P_3 ∨ P_0) <= {}",
            ranks[4],
            dim - ranks[0].max(ranks[3])
        )));
    }

    let mut rng = random::rng(seed);
    let mut room = 0;
    for _ in 0..attempts.max(1) {
        let mut ps: Vec<Projection> = Vec::with_capacity(5);
        ps.push(sample_in(
            &standard_basis(dim),
            dim,
            ranks[0],
            &mut rng,
            tol,
        )?);
        for i in 1..4 {
            let ambient = ps[i - 1].complement().range_basis();
            ps.push(sample_in(&ambient, dim, ranks[i], &mut rng, tol)?);
        }
        let forbidden = projection_join(&ps[3], &ps[0], tol)?;
        room = dim - forbidden.rank();
        if ranks[4] > room {
            continue;
        }
        let ambient = forbidden.complement().range_basis();
        ps.push(sample_in(&ambient, dim, ranks[4], &mut rng, tol)?);
        let [a, b, c, d, e]: [Projection; 5] = ps.try_into().expect("five projections");
        return PentagonScenario::new([a, b, c, d, e], None, tol);
    }
    Err(Error::Infeasible(format!(
        "rank(P_4) = {} exceeds dim - rank(P_3 ∨ P_0) = {room} after {attempts} attempts",
        ranks[4]
    )))
}

fn sample_in(
    ambient: &[Vec<Complex64>],
    dim: usize,
    rank: usize,
    rng: &mut random::Rng,
    tol: &Tolerances,
) -> Result<Projection> {
    if rank == 0 {
        return Ok(Projection::zero(dim));
    }
    let basis = random_subspace(ambient, rank, rng).ok_or_else(|| {
        Error::Infeasible(format!(
            "rank {rank} exceeds available dimension {}",
            ambient.len()
        ))
    })?;
    Projection::from_orthonormal(dim, &basis, tol)
}

/// A feasible random pentagon in `dim` with random ranks, for campaigns.
/// Rank patterns are redrawn until one admits a sample.
pub fn sample_campaign_pentagon(
    dim: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<PentagonScenario> {
    let mut rng = random::rng(seed);
    for attempt in 0..10_000u64 {
        let ranks: [usize; 5] = std::array::from_fn(|_| rng.random_range(0..=dim));
        match random_pentagon_with_attempts(dim, ranks, derive_seed(seed, attempt), tol, 1) {
            Ok(s) => return Ok(s),
            Err(Error::Infeasible(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Infeasible(format!(
        "no feasible rank pattern found in dim {dim}"
    )))
}

/// Two independent random projections on `C^dim` with ranks uniform in
/// `0..=dim`, for trace-modularity campaigns.
pub fn random_projection_pair(
    dim: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<(Projection, Projection)> {
    if dim == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    let mut rng = random::rng(seed);
    let basis = standard_basis(dim);
    let mut draw = || {
        let rank = rng.random_range(0..=dim);
        sample_in(&basis, dim, rank, &mut rng, tol)
    };
    Ok((draw()?, draw()?))
}

/// `τ(Σ P_i) ≤ 2` for the normalized trace of the scenario's dimension.
pub fn verify_theorem1(s: &PentagonScenario) -> CheckRecord {
    let tau = TracialState { dim: s.dim() };
    CheckRecord::at_most(
        "theorem1",
        tau.value(&s.sum()),
        CLASSICAL_BOUND,
        THEOREM_TOL,
    )
}

/// `τ(P) + τ(Q) = τ(P ∨ Q) + τ(P ∧ Q)`
pub fn verify_trace_modularity(
    p: &Projection,
    q: &Projection,
    tol: &Tolerances,
) -> Result<CheckRecord> {
    let tau = TracialState::new(p.dim())?;
    let meet = projection_meet(p, q, tol)?;
    let join = projection_join(p, q, tol)?;
    Ok(CheckRecord::equal(
        "trace_modularity",
        tau.of(p) + tau.of(q),
        tau.of(&join) + tau.of(&meet),
        LATTICE_TOL,
    ))
}

/// Per-step records of the lattice argument on one scenario.
#[derive(Debug, Clone, Serialize)]
pub struct ProofChainReport {
    pub steps: Vec<CheckRecord>,
}

impl ProofChainReport {
    pub fn holds(&self) -> bool {
        self.steps.iter().all(CheckRecord::holds)
    }

    pub fn step(&self, name: &str) -> Option<&CheckRecord> {
        self.steps.iter().find(|r| r.check == name)
    }
}

pub fn verify_proof_chain(s: &PentagonScenario, tol: &Tolerances) -> Result<ProofChainReport> {
    let tau = TracialState::new(s.dim())?;
    let [p0, p1, p2, p3, p4] = s.projections();
    let meet03 = projection_meet(p0, p3, tol)?;
    let join03 = projection_join(p0, p3, tol)?;
    let remainder = projection_meet(p0, &meet03.complement(), tol)?;

    let t = |p: &Projection| tau.of(p);
    let mut steps = Vec::with_capacity(5);
    steps.push(CheckRecord::at_least(
        "step1_exclusion",
        1.0 - t(&meet03),
        t(p1) + t(p2),
        LATTICE_TOL,
    ));
    steps.push(CheckRecord::equal(
        "step2_orthogonal_split",
        t(p0),
        t(&meet03) + t(&remainder),
        LATTICE_TOL,
    ));
    steps.push(CheckRecord::at_most(
        "step3_modularity",
        t(&remainder) + t(p3),
        t(&join03),
        LATTICE_TOL,
    ));
    let total = tau.value(&s.sum());
    let chain = 1.0 + t(&join03) + t(p4);
    steps.push(CheckRecord::at_most(
        "step4_chain",
        total,
        chain,
        LATTICE_TOL,
    ));
    steps.push(CheckRecord::at_most(
        "step4_bound",
        chain,
        CLASSICAL_BOUND,
        LATTICE_TOL,
    ));
    Ok(ProofChainReport { steps })
}

/// Summary of the dimension-2 sampling campaign.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dim2Report {
    pub trials: usize,
    pub seed: u64,
    pub feasible: usize,
    pub max_rank_sum: usize,
    /// Every feasible family had some `P_j = 0`.
    pub all_have_zero: bool,
    pub max_eigenvalue: f64,
    pub max_grid_value: f64,
    /// Feasible families whose sum has top eigenvalue 2 (within tolerance).
    pub saturated: usize,
}

impl Dim2Report {
    pub fn holds(&self) -> bool {
        self.all_have_zero
            && self.max_rank_sum <= 4
            && self.max_eigenvalue <= CLASSICAL_BOUND + DIM2_EIGEN_TOL
            && self.max_grid_value <= CLASSICAL_BOUND + DIM2_EIGEN_TOL
    }
}

/// 200 pure qubit states: 10 polar by 20 azimuthal angles.
pub fn bloch_grid() -> Vec<[Complex64; 2]> {
    let mut out = Vec::with_capacity(200);
    for k in 0..10 {
        let theta = PI * (k as f64 + 0.5) / 10.0;
        for l in 0..20 {
            let phi = 2.0 * PI * l as f64 / 20.0;
            out.push([
                Complex64::new((theta / 2.0).cos(), 0.0),
                Complex64::from_polar((theta / 2.0).sin(), phi),
            ]);
        }
    }
    out
}

/// Random rank patterns in `{0,1,2}^5` on `C^2`; every family that can be
/// sampled is checked for a zero member and for `Σ P_i ≤ 2` both spectrally
/// and on the Bloch grid.
pub fn verify_dim2_no_violation(trials: usize, seed: u64) -> Result<Dim2Report> {
    if trials == 0 {
        return Err(Error::invalid("trials must be at least 1"));
    }
    let tol = Tolerances::default();
    let grid = bloch_grid();
    let mut rng = random::rng(seed);
    let mut report = Dim2Report {
        trials,
        seed,
        feasible: 0,
        max_rank_sum: 0,
        all_have_zero: true,
        max_eigenvalue: f64::NEG_INFINITY,
        max_grid_value: f64::NEG_INFINITY,
        saturated: 0,
    };
    for t in 0..trials {
        let ranks: [usize; 5] = std::array::from_fn(|_| rng.random_range(0..=2));
        let s = match random_pentagon_with_attempts(2, ranks, derive_seed(seed, t as u64), &tol, 1)
        {
            Ok(s) => s,
            Err(Error::Infeasible(_)) => continue,
            Err(e) => return Err(e),
        };
        report.feasible += 1;
        let ranks = s.ranks();
        report.max_rank_sum = report.max_rank_sum.max(ranks.iter().sum());
        report.all_have_zero &= ranks.contains(&0);
        let sum = s.sum();
        let top = hermitian_eigen(&sum, tol.projection)?.max_value();
        report.max_eigenvalue = report.max_eigenvalue.max(top);
        if (top - CLASSICAL_BOUND).abs() <= DIM2_EIGEN_TOL {
            report.saturated += 1;
        }
        for v in &grid {
            report.max_grid_value = report.max_grid_value.max(sum.quadratic_form(v).re);
        }
    }
    Ok(report)
}
