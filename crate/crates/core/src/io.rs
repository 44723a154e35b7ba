//! Versioned JSON documents and decoders.
//!
//! Every top-level document may carry `"schema": "v1"`. Readers accept a
//! missing field; writers always emit it.

use serde::{Deserialize, Serialize};

use crate::constructions::PentagonScenario;
use crate::error::{Error, Result};
use crate::exclusivity::{ExclusivityGraph, ValueAssignment01};
use crate::hvm::HiddenVariableModel;
use crate::linalg::{ComplexMatrix, DensityState, MatrixRepr, Projection, Tolerances, MAX_DIM};

pub const SCHEMA_VERSION: &str = "v1";

pub fn schema_v1() -> String {
    SCHEMA_VERSION.to_string()
}

pub fn check_schema(schema: &str) -> Result<()> {
    if schema == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "unsupported schema {schema:?}, expected {SCHEMA_VERSION:?}"
        )))
    }
}

/// Decoder failure: malformed JSON versus a well-formed but invalid document.
#[derive(Debug, thiserror::Error)]
pub enum DecodeError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] Error),
}

impl DecodeError {
    pub fn is_capacity(&self) -> bool {
        matches!(self, DecodeError::Invalid(e) if e.is_capacity())
    }
}

pub type DecodeResult<T> = std::result::Result<T, DecodeError>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct GraphRepr {
    #[serde(default = "schema_v1")]
    schema: String,
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphRepr> for ExclusivityGraph {
    type Error = Error;

    fn try_from(repr: GraphRepr) -> Result<Self> {
        check_schema(&repr.schema)?;
        ExclusivityGraph::new(repr.n, repr.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

impl From<ExclusivityGraph> for GraphRepr {
    fn from(g: ExclusivityGraph) -> Self {
        GraphRepr {
            schema: schema_v1(),
            n: g.n_vertices(),
            edges: g.edges().map(|(a, b)| [a, b]).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct ModelRepr {
    #[serde(default = "schema_v1")]
    schema: String,
    graph: GraphRepr,
    assignments: Vec<u32>,
    weights: Vec<f64>,
}

impl TryFrom<ModelRepr> for HiddenVariableModel {
    type Error = Error;

    fn try_from(repr: ModelRepr) -> Result<Self> {
        check_schema(&repr.schema)?;
        let graph = ExclusivityGraph::try_from(repr.graph)?;
        HiddenVariableModel::from_masks(graph, &repr.assignments, repr.weights)
    }
}

impl From<HiddenVariableModel> for ModelRepr {
    fn from(m: HiddenVariableModel) -> Self {
        ModelRepr {
            schema: schema_v1(),
            graph: m.graph().clone().into(),
            assignments: m.lambdas().iter().map(ValueAssignment01::mask).collect(),
            weights: m.weights().to_vec(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioRepr {
    #[serde(default = "schema_v1")]
    schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    dim: usize,
    projections: Vec<MatrixRepr>,
    #[serde(default)]
    state: Option<MatrixRepr>,
}

/// A decoded scenario file.
#[derive(Debug, Clone)]
pub struct ScenarioDocument {
    pub id: Option<String>,
    pub scenario: PentagonScenario,
}

pub fn parse_matrix(text: &str) -> DecodeResult<ComplexMatrix> {
    let repr: MatrixRepr = serde_json::from_str(text)?;
    Ok(ComplexMatrix::try_from(repr)?)
}

pub fn parse_graph(text: &str) -> DecodeResult<ExclusivityGraph> {
    let repr: GraphRepr = serde_json::from_str(text)?;
    Ok(ExclusivityGraph::try_from(repr)?)
}

pub fn parse_model(text: &str) -> DecodeResult<HiddenVariableModel> {
    let repr: ModelRepr = serde_json::from_str(text)?;
    Ok(HiddenVariableModel::try_from(repr)?)
}

/// Decode a scenario: five projections and an optional density matrix, all
/// of dimension `dim`. Projections are validated at `tol.projection`.
pub fn parse_scenario(text: &str, tol: &Tolerances) -> DecodeResult<ScenarioDocument> {
    let repr: ScenarioRepr = serde_json::from_str(text)?;
    Ok(scenario_from_repr(repr, tol)?)
}

fn scenario_from_repr(repr: ScenarioRepr, tol: &Tolerances) -> Result<ScenarioDocument> {
    check_schema(&repr.schema)?;
    if repr.dim > MAX_DIM {
        return Err(Error::Capacity {
            what: "scenario dimension",
            got: repr.dim,
            limit: MAX_DIM,
        });
    }
    if repr.projections.len() != 5 {
        return Err(Error::invalid(format!(
            "scenario needs 5 projections, found {}",
            repr.projections.len()
        )));
    }
    let check_dim = |m: &ComplexMatrix| -> Result<()> {
        if m.dim() != repr.dim {
            return Err(Error::DimensionMismatch {
                left: repr.dim,
                right: m.dim(),
            });
        }
        Ok(())
    };
    let mut projections = Vec::with_capacity(5);
    for p in repr.projections {
        let m = ComplexMatrix::try_from(p)?;
        check_dim(&m)?;
        projections.push(Projection::new(m, tol)?);
    }
    let state = match repr.state {
        Some(s) => {
            let m = ComplexMatrix::try_from(s)?;
            check_dim(&m)?;
            Some(DensityState::new(m, tol)?)
        }
        None => None,
    };
    let projections: [Projection; 5] = projections
        .try_into()
        .map_err(|_| Error::invalid("scenario needs 5 projections"))?;
    Ok(ScenarioDocument {
        id: repr.id,
        scenario: PentagonScenario::new(projections, state, tol)?,
    })
}

/// Encode a scenario in the same form `parse_scenario` reads.
pub fn scenario_to_json(scenario: &PentagonScenario, id: Option<&str>) -> String {
    let repr = ScenarioRepr {
        schema: schema_v1(),
        id: id.map(str::to_string),
        dim: scenario.dim(),
        projections: scenario
            .projections()
            .iter()
            .map(|p| p.matrix().clone().into())
            .collect(),
        state: scenario.state().map(|s| s.matrix().clone().into()),
    };
    serde_json::to_string(&repr).expect("scenario serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{kcbs_pentagon, matrix_units, typeiii_projections};

    #[test]
    fn schema_is_optional_but_checked() {
        let g = parse_graph(r#"{"n":3,"edges":[[0,1]]}"#).unwrap();
        assert_eq!(g.n_edges(), 1);
        let e = parse_graph(r#"{"schema":"v2","n":3,"edges":[]}"#).unwrap_err();
        assert!(matches!(e, DecodeError::Invalid(_)));
        let e = parse_graph("{").unwrap_err();
        assert!(matches!(e, DecodeError::Syntax(_)));
        let e = parse_graph(r#"{"n":3,"edges":[],"extra":1}"#).unwrap_err();
        assert!(matches!(e, DecodeError::Syntax(_)));
    }

    #[test]
    fn matrix_capacity_is_reported() {
        let e = parse_matrix(r#"{"dim":101,"re":[],"im":[]}"#).unwrap_err();
        assert!(e.is_capacity());
        let e = parse_matrix(r#"{"dim":2,"re":[[1]],"im":[[0]]}"#).unwrap_err();
        assert!(!e.is_capacity());
    }

    #[test]
    fn scenario_round_trip() {
        let s = kcbs_pentagon();
        let text = scenario_to_json(&s, Some("kcbs"));
        let doc = parse_scenario(&text, &Tolerances::default()).unwrap();
        assert_eq!(doc.id.as_deref(), Some("kcbs"));
        assert_eq!(scenario_to_json(&doc.scenario, Some("kcbs")), text);
        let v = doc.scenario.value(&Tolerances::default()).unwrap();
        assert!((v - 5f64.sqrt()).abs() < 1e-12);

        let units = matrix_units(2).unwrap();
        let t = typeiii_projections(&units, &Tolerances::default()).unwrap();
        let text = scenario_to_json(&t, None);
        assert!(!text.contains("\"id\""));
        let doc = parse_scenario(&text, &Tolerances::default()).unwrap();
        assert!(doc.scenario.state().is_none());
        assert_eq!(doc.scenario.dim(), 6);
    }

    #[test]
    fn scenario_rejects_non_projection() {
        let s = kcbs_pentagon();
        let mut v: serde_json::Value = serde_json::from_str(&scenario_to_json(&s, None)).unwrap();
        v["projections"][2]["re"][0][0] = serde_json::json!(0.7);
        let e = parse_scenario(&v.to_string(), &Tolerances::default()).unwrap_err();
        assert!(matches!(e, DecodeError::Invalid(_)));
        v["projections"].as_array_mut().unwrap().pop();
        assert!(parse_scenario(&v.to_string(), &Tolerances::default()).is_err());
    }
}
