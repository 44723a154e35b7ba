use contextia::constructions::kcbs_pentagon;
use contextia::exclusivity::{
    bridge_residuals, enumerate_assignments_01, noncontextual_bound, pm_cycle_min, ExclusivityGraph,
};
use contextia::tracial::sample_campaign_pentagon;
use contextia::{ComplexMatrix, Projection, Tolerances};
use proptest::prelude::*;

/// Masks passing a direct edge-by-edge filter, ascending.
fn filter_oracle(n: usize, edges: &[(usize, usize)]) -> Vec<u32> {
    (0u32..1 << n)
        .filter(|m| {
            edges
                .iter()
                .all(|&(a, b)| (m >> a) & 1 == 0 || (m >> b) & 1 == 0)
        })
        .collect()
}

fn graph_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=12).prop_flat_map(|n| {
        let edge = (0..n, 1..n.max(2)).prop_map(move |(a, k)| (a, (a + k) % n));
        let count = if n == 1 { 0..=0 } else { 0..=2 * n };
        (Just(n), prop::collection::vec(edge, count))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn enumeration_matches_filter((n, edges) in graph_strategy()) {
        let g = ExclusivityGraph::new(n, edges.iter().copied()).unwrap();
        let got: Vec<u32> = enumerate_assignments_01(&g).unwrap().iter().map(|a| a.mask()).collect();
        let want = filter_oracle(n, &edges);
        prop_assert_eq!(&got, &want);
        let best = want.iter().map(|m| m.count_ones()).max().unwrap();
        prop_assert_eq!(noncontextual_bound(&g).unwrap(), best);
    }
}

#[test]
fn cycle_examples() {
    for n in [3, 5, 7] {
        assert_eq!(ExclusivityGraph::cycle(n).unwrap().n_edges(), n);
    }
    assert!(ExclusivityGraph::cycle(2).is_err());

    let single = ExclusivityGraph::new(1, []).unwrap();
    assert_eq!(enumerate_assignments_01(&single).unwrap().len(), 2);
    let c3 = ExclusivityGraph::cycle(3).unwrap();
    assert_eq!(enumerate_assignments_01(&c3).unwrap().len(), 4);
    let c5 = ExclusivityGraph::cycle(5).unwrap();
    assert_eq!(enumerate_assignments_01(&c5).unwrap().len(), 11);
    assert_eq!(noncontextual_bound(&c5).unwrap(), 2);
    assert_eq!(
        noncontextual_bound(&ExclusivityGraph::complete(5).unwrap()).unwrap(),
        1
    );
    assert_eq!(
        noncontextual_bound(&ExclusivityGraph::cycle(7).unwrap()).unwrap(),
        3
    );

    let big = ExclusivityGraph::new(25, []).unwrap();
    assert!(enumerate_assignments_01(&big).unwrap_err().is_capacity());
}

#[test]
fn pm_minimum_against_brute_force() {
    for n in 3..=12usize {
        let brute = (0u32..1 << n)
            .map(|m| {
                let s = |i: usize| if (m >> (i % n)) & 1 == 1 { -1i64 } else { 1 };
                (0..n).map(|i| s(i) * s(i + 1)).sum::<i64>()
            })
            .min()
            .unwrap();
        assert_eq!(pm_cycle_min(n).unwrap(), brute, "n = {n}");
    }
    assert_eq!(pm_cycle_min(5).unwrap(), -3);
    assert_eq!(pm_cycle_min(4).unwrap(), -4);
    assert_eq!(pm_cycle_min(3).unwrap(), -1);
    assert!(pm_cycle_min(2).is_err());
    assert!(pm_cycle_min(25).is_err());
}

/// `Σ (2P_i - I)(2P_{i+1} - I)` and `5I - 4ΣP_i`, built term by term.
fn bridge_oracle(ps: &[Projection]) -> f64 {
    let dim = ps[0].dim();
    let id = ComplexMatrix::identity(dim);
    let a: Vec<ComplexMatrix> = ps.iter().map(|p| &p.matrix().scale(2.0) - &id).collect();
    let mut lhs = ComplexMatrix::zeros(dim);
    let mut sum = ComplexMatrix::zeros(dim);
    for i in 0..5 {
        lhs = &lhs + &(&a[i] * &a[(i + 1) % 5]);
        sum = &sum + ps[i].matrix();
    }
    let rhs = &id.scale(5.0) - &sum.scale(4.0);
    (&lhs - &rhs).max_abs()
}

#[test]
fn bridge_identity_on_pentagons() {
    let tol = Tolerances::default();
    let mut scenarios = vec![kcbs_pentagon()];
    for dim in 3..=6 {
        for seed in 0..25 {
            scenarios.push(sample_campaign_pentagon(dim, seed, &tol).unwrap());
        }
    }
    for s in &scenarios {
        let (identity, commutator) = bridge_residuals(s.projections()).unwrap();
        assert!(identity <= 1e-10, "identity residual {identity}");
        assert!(commutator <= 1e-10, "commutator {commutator}");
        assert!(bridge_oracle(s.projections()) <= 1e-10);
    }
}

#[test]
fn json_graph_round_trip() {
    let g = ExclusivityGraph::cycle(5).unwrap();
    let s = serde_json::to_string(&g).unwrap();
    assert_eq!(
        s,
        r#"{"schema":"v1","n":5,"edges":[[0,1],[0,4],[1,2],[2,3],[3,4]]}"#
    );
    let back: ExclusivityGraph = serde_json::from_str(&s).unwrap();
    assert_eq!(back, g);
    assert!(serde_json::from_str::<ExclusivityGraph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
    assert!(serde_json::from_str::<ExclusivityGraph>(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
}
