//! Exclusivity graphs and exhaustive classical analysis.
//!
//! A value assignment gives every event a 0/1 value with no two exclusive
//! events both 1, so the assignments of a graph are exactly the indicator
//! vectors of its independent sets and the noncontextual bound is the
//! independence number. The ±1 form assigns a sign to each observable of a
//! cycle and bounds `Σ s_i s_{i+1}` from below.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Projection};

/// Largest vertex count for exhaustive `2^n` enumeration.
pub const MAX_ENUMERATION_VERTICES: usize = 24;

/// Undirected simple graph whose edges join mutually exclusive events.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "crate::io::GraphRepr", into = "crate::io::GraphRepr")]
pub struct ExclusivityGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<u64>,
}

impl ExclusivityGraph {
    /// Duplicate edges and either orientation of the same pair collapse to one edge.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("graph needs at least one vertex"));
        }
        if n > 64 {
            return Err(Error::Capacity {
                what: "vertex count",
                got: n,
                limit: 64,
            });
        }
        let mut set = BTreeSet::new();
        let mut adjacency = vec![0u64; n];
        for (a, b) in edges {
            if a == b {
                return Err(Error::invalid(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::invalid(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            set.insert((a.min(b), a.max(b)));
            adjacency[a] |= 1 << b;
            adjacency[b] |= 1 << a;
        }
        Ok(ExclusivityGraph {
            n,
            edges: set,
            adjacency,
        })
    }

    /// Cycle `C_n`: edges `(i, i+1 mod n)`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!("cycle needs n >= 3, got {n}")));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn are_exclusive(&self, a: usize, b: usize) -> bool {
        self.adjacency[a] >> b & 1 == 1
    }

    /// True when no edge has both endpoints set in `mask`.
    pub fn is_independent(&self, mask: u64) -> bool {
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            if self.adjacency[v] & mask != 0 {
                return false;
            }
            rest &= rest - 1;
        }
        true
    }

    fn check_capacity(&self) -> Result<()> {
        if self.n > MAX_ENUMERATION_VERTICES {
            return Err(Error::Capacity {
                what: "vertex count",
                got: self.n,
                limit: MAX_ENUMERATION_VERTICES,
            });
        }
        Ok(())
    }
}

/// 0/1 value assignment on the vertices of a graph, stored as a bitmask
/// (bit `i` is the value of vertex `i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueAssignment01 {
    mask: u32,
    n: u8,
}

impl ValueAssignment01 {
    /// Validates against the graph's exclusivity constraint.
    pub fn new(graph: &ExclusivityGraph, mask: u32) -> Result<Self> {
        graph.check_capacity()?;
        let n = graph.n_vertices();
        if u64::from(mask) >> n != 0 {
            return Err(Error::invalid(format!(
                "assignment mask {mask:#b} has bits beyond {n} vertices"
            )));
        }
        if !graph.is_independent(u64::from(mask)) {
            return Err(Error::invalid(format!(
                "assignment mask {mask:#b} sets two exclusive events to 1"
            )));
        }
        Ok(ValueAssignment01 { mask, n: n as u8 })
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn value(&self, vertex: usize) -> u8 {
        (self.mask >> vertex & 1) as u8
    }

    pub fn values(&self) -> Vec<u8> {
        (0..self.n as usize).map(|i| self.value(i)).collect()
    }

    /// `Σ_i v(P_i)`
    pub fn total(&self) -> u32 {
        self.mask.count_ones()
    }
}

/// ±1 value assignment on the observables of a cycle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ValueAssignmentPM {
    values: Vec<i8>,
}

impl ValueAssignmentPM {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|&&s| s != 1 && s != -1) {
            return Err(Error::invalid(format!("sign value {bad} is not ±1")));
        }
        Ok(ValueAssignmentPM { values })
    }

    /// Bit `i` of `mask` set means `s_i = -1`.
    pub fn from_mask(n: usize, mask: u32) -> Self {
        ValueAssignmentPM {
            values: (0..n)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect(),
        }
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `Σ_i s_i s_{i+1 mod n}`
    pub fn cycle_sum(&self) -> i64 {
        let n = self.values.len();
        (0..n)
            .map(|i| i64::from(self.values[i]) * i64::from(self.values[(i + 1) % n]))
            .sum()
    }
}

/// All valid 0/1 assignments of `graph`, ascending by bitmask.
pub fn enumerate_assignments_01(graph: &ExclusivityGraph) -> Result<Vec<ValueAssignment01>> {
    graph.check_capacity()?;
    let n = graph.n_vertices();
    let mut out = Vec::new();
    let mut mask: u64 = 0;
    let end = 1u64 << n;
    while mask < end {
        if graph.is_independent(mask) {
            out.push(ValueAssignment01 {
                mask: mask as u32,
                n: n as u8,
            });
            mask += 1;
        } else {
            mask = next_candidate(graph, mask);
        }
    }
    Ok(out)
}

/// Smallest mask above `mask` that can be independent. Scanning from the top
/// bit, the first vertex `v` adjacent to an already-seen higher vertex fixes a
/// conflict among bits `v..`; every mask sharing those bits is skipped.
fn next_candidate(graph: &ExclusivityGraph, mask: u64) -> u64 {
    let mut seen = 0u64;
    let mut rest = mask;
    while rest != 0 {
        let v = 63 - rest.leading_zeros();
        if graph.adjacency[v as usize] & seen != 0 {
            let block = 1u64 << v;
            return (mask | (block - 1)) + 1;
        }
        seen |= 1 << v;
        rest ^= 1 << v;
    }
    mask + 1
}

/// Largest `Σ v(P_i)` over valid assignments: the independence number.
pub fn noncontextual_bound(graph: &ExclusivityGraph) -> Result<u32> {
    Ok(enumerate_assignments_01(graph)?
        .iter()
        .map(ValueAssignment01::total)
        .max()
        .unwrap_or(0))
}

/// `min Σ_i s_i s_{i+1 mod n}` over all `2^n` sign vectors of `C_n`.
pub fn pm_cycle_min(n: usize) -> Result<i64> {
    if !(3..=MAX_ENUMERATION_VERTICES).contains(&n) {
        return Err(Error::invalid(format!(
            "cycle length {n} outside 3..={MAX_ENUMERATION_VERTICES}"
        )));
    }
    let mut best = i64::MAX;
    for mask in 0u32..(1 << n) {
        // s_i s_{i+1} = -1 exactly when bits i and i+1 differ
        let rotated = (mask >> 1) | ((mask & 1) << (n - 1));
        let disagreements = i64::from((mask ^ rotated).count_ones());
        best = best.min(n as i64 - 2 * disagreements);
    }
    Ok(best)
}

/// `A_i = 2 P_i - I`, the ±1-valued observables of five projections.
pub fn sign_observables(projections: &[Projection]) -> Vec<ComplexMatrix> {
    projections
        .iter()
        .map(|p| &p.matrix().scale(2.0) - &ComplexMatrix::identity(p.dim()))
        .collect()
}

/// Residuals of the operator identity linking the two inequality forms:
/// `Σ A_i A_{i+1} = n I - 4 Σ P_i` and `[A_i, A_{i+1}] = 0`, for cyclically
/// orthogonal projections. Returns `(identity residual, max commutator)`.
pub fn bridge_residuals(projections: &[Projection]) -> Result<(f64, f64)> {
    let n = projections.len();
    if n < 3 {
        return Err(Error::invalid("need at least three projections"));
    }
    let dim = projections[0].dim();
    for p in projections {
        p.matrix().check_same_dim(projections[0].matrix())?;
    }
    let a = sign_observables(projections);
    let mut lhs = ComplexMatrix::zeros(dim);
    let mut rhs = ComplexMatrix::identity(dim).scale(n as f64);
    let mut commutator = 0.0f64;
    for i in 0..n {
        let j = (i + 1) % n;
        let ab = &a[i] * &a[j];
        let ba = &a[j] * &a[i];
        commutator = commutator.max((&ab - &ba).max_abs());
        lhs = &lhs + &ab;
        rhs = &rhs - &projections[i].matrix().scale(4.0);
    }
    Ok(((&lhs - &rhs).max_abs(), commutator))
}
