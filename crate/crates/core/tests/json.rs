use std::fs;
use std::path::PathBuf;

use contextia::constructions::{kcbs_pentagon, matrix_units, typeiii_projections};
use contextia::io::{
    parse_graph, parse_matrix, parse_model, parse_scenario, scenario_to_json, DecodeError,
};
use contextia::tracial::sample_campaign_pentagon;
use contextia::{ComplexMatrix, Tolerances};
use num_complex::Complex64;
use proptest::prelude::*;

fn corpus(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "empty corpus for {target}");
    out
}

#[test]
fn corpus_seeds_decode_as_labelled() {
    let tol = Tolerances::default();
    for (name, text) in corpus("parse_matrix") {
        let r = parse_matrix(&text);
        match name.as_str() {
            "identity2.json" | "hermitian3.json" => assert!(r.is_ok(), "{name}"),
            "too_big.json" => assert!(r.unwrap_err().is_capacity()),
            "truncated.json" => assert!(matches!(r, Err(DecodeError::Syntax(_)))),
            _ => assert!(r.is_err(), "{name}"),
        }
    }
    for (name, text) in corpus("parse_graph") {
        let r = parse_graph(&text);
        match name.as_str() {
            "pentagon.json" | "k5.json" | "no_schema.json" => assert!(r.is_ok(), "{name}"),
            _ => assert!(matches!(r, Err(DecodeError::Invalid(_))), "{name}"),
        }
    }
    for (name, text) in corpus("parse_model") {
        let r = parse_model(&text);
        match name.as_str() {
            "maximal_pairs.json" => assert!((r.unwrap().predict().total - 2.0).abs() < 1e-15),
            "empty_assignment.json" => assert_eq!(r.unwrap().predict().total, 0.0),
            _ => assert!(r.is_err(), "{name}"),
        }
    }
    for (name, text) in corpus("parse_scenario") {
        let r = parse_scenario(&text, &tol);
        match name.as_str() {
            "pentagon.json" => {
                let doc = r.unwrap();
                assert_eq!(doc.id.as_deref(), Some("pentagon"));
                assert!((doc.scenario.value(&tol).unwrap() - 5f64.sqrt()).abs() < 1e-12);
            }
            "no_state.json" | "zeros_dim2.json" => assert!(r.is_ok(), "{name}"),
            _ => assert!(matches!(r, Err(DecodeError::Invalid(_))), "{name}"),
        }
    }
}

fn matrix_strategy() -> impl Strategy<Value = ComplexMatrix> {
    (1usize..=6).prop_flat_map(|d| {
        prop::collection::vec((any::<f64>(), any::<f64>()), d * d).prop_map(move |v| {
            let data = v
                .into_iter()
                .map(|(a, b)| {
                    let fin = |x: f64| if x.is_finite() { x } else { 0.0 };
                    Complex64::new(fin(a), fin(b))
                })
                .collect();
            ComplexMatrix::from_row_major(d, data).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn matrix_round_trip_is_bit_exact(m in matrix_strategy()) {
        let text = serde_json::to_string(&m).unwrap();
        let back = parse_matrix(&text).unwrap();
        for (a, b) in m.as_slice().iter().zip(back.as_slice()) {
            prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
            prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn arbitrary_text_never_panics(s in "\\PC{0,200}") {
        let _ = parse_matrix(&s);
        let _ = parse_graph(&s);
        let _ = parse_model(&s);
        let _ = parse_scenario(&s, &Tolerances::default());
    }
}

#[test]
fn scenario_round_trip_is_byte_stable() {
    let tol = Tolerances::default();
    let mut scenarios = vec![
        kcbs_pentagon(),
        typeiii_projections(&matrix_units(4).unwrap(), &tol).unwrap(),
    ];
    for seed in 0..20 {
        scenarios.push(sample_campaign_pentagon(3 + (seed as usize % 4), seed, &tol).unwrap());
    }
    for s in &scenarios {
        let text = scenario_to_json(s, Some("x"));
        let doc = parse_scenario(&text, &tol).unwrap();
        assert_eq!(scenario_to_json(&doc.scenario, doc.id.as_deref()), text);
        for (a, b) in doc.scenario.projections().iter().zip(s.projections()) {
            assert_eq!(a.matrix(), b.matrix());
            assert_eq!(a.rank(), b.rank());
        }
    }
}

#[test]
fn non_finite_entries_are_rejected() {
    // JSON has no NaN literal; overflow to infinity must not slip through
    let r = parse_matrix(r#"{"dim":1,"re":[[1e400]],"im":[[0]]}"#);
    assert!(r.is_err());
}
