//! Finite hidden-variable models.
//!
//! The hidden-variable space is the list of valid value assignments of a
//! graph; a model is a probability vector over it. Every statistic a model
//! predicts is a convex combination of assignment totals, which is why no
//! model can exceed the graph's noncontextual bound.

use rand_distr::{Distribution, Exp1};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exclusivity::{
    enumerate_assignments_01, ExclusivityGraph, ValueAssignment01, ValueAssignmentPM,
    MAX_ENUMERATION_VERTICES,
};
use crate::linalg::random;

/// Tolerance on `Σ μ = 1`.
pub const MEASURE_TOL: f64 = 1e-12;

fn check_measure(mu: &[f64]) -> Result<()> {
    if mu.is_empty() {
        return Err(Error::invalid("measure has no atoms"));
    }
    if let Some(w) = mu.iter().find(|w| !w.is_finite() || **w < 0.0) {
        return Err(Error::invalid(format!(
            "measure weight {w} is negative or not finite"
        )));
    }
    let total: f64 = mu.iter().sum();
    if (total - 1.0).abs() > MEASURE_TOL {
        return Err(Error::invalid(format!("measure sums to {total}, not 1")));
    }
    Ok(())
}

/// A probability measure over valid 0/1 assignments of a graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "crate::io::ModelRepr", into = "crate::io::ModelRepr")]
pub struct HiddenVariableModel {
    graph: ExclusivityGraph,
    lambdas: Vec<ValueAssignment01>,
    mu: Vec<f64>,
}

/// Predicted event probabilities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelPrediction {
    pub vertex_probs: Vec<f64>,
    pub total: f64,
}

impl HiddenVariableModel {
    pub fn new(
        graph: ExclusivityGraph,
        lambdas: Vec<ValueAssignment01>,
        mu: Vec<f64>,
    ) -> Result<Self> {
        if lambdas.len() != mu.len() {
            return Err(Error::invalid(format!(
                "{} assignments but {} weights",
                lambdas.len(),
                mu.len()
            )));
        }
        check_measure(&mu)?;
        // re-validate each assignment against this graph
        for l in &lambdas {
            ValueAssignment01::new(&graph, l.mask())?;
        }
        Ok(HiddenVariableModel { graph, lambdas, mu })
    }

    /// Build from raw bitmasks.
    pub fn from_masks(graph: ExclusivityGraph, masks: &[u32], mu: Vec<f64>) -> Result<Self> {
        let lambdas = masks
            .iter()
            .map(|&m| ValueAssignment01::new(&graph, m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(graph, lambdas, mu)
    }

    /// Uniform measure over the given masks.
    pub fn uniform(graph: ExclusivityGraph, masks: &[u32]) -> Result<Self> {
        let w = 1.0 / masks.len().max(1) as f64;
        Self::from_masks(graph, masks, vec![w; masks.len()])
    }

    pub fn graph(&self) -> &ExclusivityGraph {
        &self.graph
    }

    pub fn lambdas(&self) -> &[ValueAssignment01] {
        &self.lambdas
    }

    pub fn weights(&self) -> &[f64] {
        &self.mu
    }

    /// `(1 - w)·self + w·other` over the union of both hidden-variable lists.
    pub fn mix(&self, other: &HiddenVariableModel, w: f64) -> Result<Self> {
        if self.graph != other.graph {
            return Err(Error::invalid("cannot mix models on different graphs"));
        }
        if !(0.0..=1.0).contains(&w) {
            return Err(Error::invalid(format!("mixing weight {w} outside [0, 1]")));
        }
        let lambdas = self.lambdas.iter().chain(&other.lambdas).copied().collect();
        let mu = self
            .mu
            .iter()
            .map(|m| m * (1.0 - w))
            .chain(other.mu.iter().map(|m| m * w))
            .collect();
        Ok(HiddenVariableModel {
            graph: self.graph.clone(),
            lambdas,
            mu,
        })
    }

    pub fn predict(&self) -> ModelPrediction {
        hvm_predict(self)
    }
}

/// `ψ(P_i) = Σ_λ v(P_i | λ) μ(λ)` for every vertex, and their sum.
pub fn hvm_predict(model: &HiddenVariableModel) -> ModelPrediction {
    let n = model.graph.n_vertices();
    let mut vertex_probs = vec![0.0; n];
    for (l, w) in model.lambdas.iter().zip(&model.mu) {
        for (i, p) in vertex_probs.iter_mut().enumerate() {
            if l.value(i) == 1 {
                *p += w;
            }
        }
    }
    let total = vertex_probs.iter().sum();
    ModelPrediction {
        vertex_probs,
        total,
    }
}

/// Random model over every valid assignment of `graph`; weights are
/// normalized exponential draws, i.e. a uniform point of the simplex.
pub fn hvm_random(graph: &ExclusivityGraph, seed: u64) -> Result<HiddenVariableModel> {
    let lambdas = enumerate_assignments_01(graph)?;
    let mut rng = random::rng(seed);
    let mu = simplex_sample(lambdas.len(), &mut rng);
    Ok(HiddenVariableModel {
        graph: graph.clone(),
        lambdas,
        mu,
    })
}

fn simplex_sample(k: usize, rng: &mut random::Rng) -> Vec<f64> {
    let draws: Vec<f64> = (0..k).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|x| x / total).collect()
}

/// Probability measure over ±1 assignments of the cycle `C_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignMeasure {
    n: usize,
    atoms: Vec<ValueAssignmentPM>,
    mu: Vec<f64>,
}

impl SignMeasure {
    pub fn new(n: usize, atoms: Vec<ValueAssignmentPM>, mu: Vec<f64>) -> Result<Self> {
        if !(3..=MAX_ENUMERATION_VERTICES).contains(&n) {
            return Err(Error::invalid(format!(
                "cycle length {n} outside 3..={MAX_ENUMERATION_VERTICES}"
            )));
        }
        if atoms.len() != mu.len() {
            return Err(Error::invalid(format!(
                "{} sign vectors but {} weights",
                atoms.len(),
                mu.len()
            )));
        }
        if let Some(a) = atoms.iter().find(|a| a.len() != n) {
            return Err(Error::invalid(format!(
                "sign vector of length {} on a cycle of length {n}",
                a.len()
            )));
        }
        check_measure(&mu)?;
        Ok(SignMeasure { n, atoms, mu })
    }

    pub fn point(signs: ValueAssignmentPM) -> Result<Self> {
        Self::new(signs.len(), vec![signs], vec![1.0])
    }

    /// Uniform over all `2^n` sign vectors.
    pub fn uniform(n: usize) -> Result<Self> {
        let count = 1u32 << n.min(MAX_ENUMERATION_VERTICES);
        let atoms = (0..count)
            .map(|m| ValueAssignmentPM::from_mask(n, m))
            .collect();
        Self::new(n, atoms, vec![1.0 / f64::from(count); count as usize])
    }

    /// Uniform simplex sample over all `2^n` sign vectors.
    pub fn random(n: usize, seed: u64) -> Result<Self> {
        if !(3..=MAX_ENUMERATION_VERTICES).contains(&n) {
            return Err(Error::invalid(format!(
                "cycle length {n} outside 3..={MAX_ENUMERATION_VERTICES}"
            )));
        }
        let count = 1u32 << n;
        let atoms = (0..count)
            .map(|m| ValueAssignmentPM::from_mask(n, m))
            .collect();
        let mu = simplex_sample(count as usize, &mut random::rng(seed));
        Ok(SignMeasure { n, atoms, mu })
    }

    pub fn cycle_len(&self) -> usize {
        self.n
    }
}

/// `Σ_i Σ_λ s_i(λ) s_{i+1}(λ) μ(λ)` on the cycle `C_n`.
pub fn pm_model_value(cycle_n: usize, measure: &SignMeasure) -> Result<f64> {
    if cycle_n != measure.n {
        return Err(Error::invalid(format!(
            "measure is over C_{}, requested C_{cycle_n}",
            measure.n
        )));
    }
    Ok(measure
        .atoms
        .iter()
        .zip(&measure.mu)
        .map(|(a, w)| a.cycle_sum() as f64 * w)
        .sum())
}
