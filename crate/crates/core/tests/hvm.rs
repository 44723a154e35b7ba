use contextia::exclusivity::{
    enumerate_assignments_01, noncontextual_bound, ExclusivityGraph, ValueAssignmentPM,
};
use contextia::hvm::{hvm_predict, hvm_random, pm_model_value, HiddenVariableModel, SignMeasure};
use proptest::prelude::*;

fn c5() -> ExclusivityGraph {
    ExclusivityGraph::cycle(5).unwrap()
}

#[test]
fn random_models_never_exceed_two() {
    let g = c5();
    let mut worst = f64::NEG_INFINITY;
    for seed in 0..10_000u64 {
        let p = hvm_random(&g, seed).unwrap().predict();
        let sum: f64 = p.vertex_probs.iter().sum();
        assert!((sum - p.total).abs() <= 1e-12);
        assert!(p
            .vertex_probs
            .iter()
            .all(|q| (0.0..=1.0 + 1e-12).contains(q)));
        worst = worst.max(p.total);
    }
    assert!(worst <= 2.0 + 1e-12, "max total {worst}");
}

#[test]
fn random_sign_measures_stay_above_minus_three() {
    let mut worst = f64::INFINITY;
    for seed in 0..10_000u64 {
        let m = SignMeasure::random(5, seed).unwrap();
        worst = worst.min(pm_model_value(5, &m).unwrap());
    }
    assert!(worst >= -3.0 - 1e-12, "min value {worst}");
}

#[test]
fn bounds_are_attained() {
    let pairs = [0b00101, 0b01010, 0b10100, 0b01001, 0b10010];
    let t = HiddenVariableModel::uniform(c5(), &pairs)
        .unwrap()
        .predict()
        .total;
    assert!((t - 2.0).abs() < 1e-15);
    let alt = SignMeasure::point(ValueAssignmentPM::new(vec![1, -1, 1, -1, 1]).unwrap()).unwrap();
    assert_eq!(pm_model_value(5, &alt).unwrap(), -3.0);
}

/// Weighted sum over assignments computed from the raw masks.
fn predict_oracle(n: usize, masks: &[u32], mu: &[f64]) -> Vec<f64> {
    (0..n)
        .map(|i| {
            masks
                .iter()
                .zip(mu)
                .filter(|(m, _)| (*m >> i) & 1 == 1)
                .map(|(_, w)| w)
                .sum()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mixing_is_linear(a in any::<u64>(), b in any::<u64>(), w in 0.0f64..=1.0) {
        let ma = hvm_random(&c5(), a).unwrap();
        let mb = hvm_random(&c5(), b).unwrap();
        let mixed = hvm_predict(&ma.mix(&mb, w).unwrap());
        let (pa, pb) = (ma.predict(), mb.predict());
        for i in 0..5 {
            let lin = (1.0 - w) * pa.vertex_probs[i] + w * pb.vertex_probs[i];
            prop_assert!((mixed.vertex_probs[i] - lin).abs() <= 1e-12);
        }
        prop_assert!((mixed.total - ((1.0 - w) * pa.total + w * pb.total)).abs() <= 1e-12);
    }

    #[test]
    fn prediction_matches_oracle_and_graph_bound(n in 3usize..=10, seed in any::<u64>()) {
        let g = ExclusivityGraph::cycle(n).unwrap();
        let m = hvm_random(&g, seed).unwrap();
        let masks: Vec<u32> = m.lambdas().iter().map(|l| l.mask()).collect();
        let want = predict_oracle(n, &masks, m.weights());
        let got = m.predict();
        for (x, y) in got.vertex_probs.iter().zip(&want) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
        prop_assert!(got.total <= f64::from(noncontextual_bound(&g).unwrap()) + 1e-12);
        prop_assert_eq!(m.lambdas().len(), enumerate_assignments_01(&g).unwrap().len());
    }
}

#[test]
fn model_json_round_trip_is_exact() {
    for seed in 0..50 {
        let m = hvm_random(&c5(), seed).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        let back: HiddenVariableModel = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
    let bad = r#"{"graph":{"n":5,"edges":[[0,1]]},"assignments":[3],"weights":[1.0]}"#;
    assert!(serde_json::from_str::<HiddenVariableModel>(bad).is_err());
}
