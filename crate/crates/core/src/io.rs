//! JSON formats. Every weight and value is an expression string in the
//! `ratfunc` grammar, printed canonically.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::aztec::{AztecError, PeriodMatrix, ReductionTrace};
use crate::cellular::{CellularCompletion, CellularError};
use crate::field::Field;
use crate::graph::{GraphError, VertexId, WeightedGraph};
use crate::orbit::{OrbitKind, OrbitReport};
use crate::ratfunc::{parse, RatFuncError, RationalFunction};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad expression {text:?}: {source}")]
    Expr { text: String, source: RatFuncError },
    #[error("period is {got_k}x{got_l} but declares {k}x{l}")]
    Dimensions { k: usize, l: usize, got_k: usize, got_l: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Aztec(#[from] AztecError),
    #[error(transparent)]
    Cellular(#[from] CellularError),
}

fn expr(text: &str) -> Result<RationalFunction, IoError> {
    parse(text).map_err(|source| IoError::Expr { text: text.to_string(), source })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: VertexId,
    pub v: VertexId,
    pub w: String,
}

/// `{"vertices":[..], "edges":[{"u","v","w"}]}`, optionally with the
/// completion fields `cells` and `members`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<[VertexId; 4]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<VertexId>>,
}

impl GraphJson {
    pub fn from_graph<F: Field>(g: &WeightedGraph<F>) -> Self {
        GraphJson {
            vertices: g.vertices().collect(),
            edges: g.edges().iter().map(|e| EdgeJson { u: e.u, v: e.v, w: e.w.to_rf().to_string() }).collect(),
            cells: None,
            members: None,
        }
    }

    pub fn from_completion<F: Field>(c: &CellularCompletion<F>) -> Self {
        GraphJson {
            cells: Some(c.cells().to_vec()),
            members: Some(c.members().iter().copied().collect()),
            ..Self::from_graph(c.host())
        }
    }

    pub fn to_graph(&self) -> Result<WeightedGraph<RationalFunction>, IoError> {
        let mut g = WeightedGraph::new();
        for &v in &self.vertices {
            g.add_vertex(v);
        }
        for e in &self.edges {
            g.add_edge(e.u, e.v, expr(&e.w)?)?;
        }
        Ok(g)
    }

    /// The completion described by `cells` and `members` (both default to
    /// empty when absent, which the validation then rejects as appropriate).
    pub fn to_completion(&self) -> Result<CellularCompletion<RationalFunction>, IoError> {
        let members: BTreeSet<VertexId> = self.members.iter().flatten().copied().collect();
        Ok(CellularCompletion::new(self.to_graph()?, self.cells.clone().unwrap_or_default(), members)?)
    }
}

pub fn graph_from_json(text: &str) -> Result<WeightedGraph<RationalFunction>, IoError> {
    serde_json::from_str::<GraphJson>(text)?.to_graph()
}

pub fn graph_to_json<F: Field>(g: &WeightedGraph<F>) -> String {
    serde_json::to_string(&GraphJson::from_graph(g)).expect("serializable")
}

/// `{"k":int,"l":int,"entries":[["expr",..],..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodJson {
    pub k: usize,
    pub l: usize,
    pub entries: Vec<Vec<String>>,
}

impl PeriodJson {
    pub fn from_period<F: Field>(p: &PeriodMatrix<F>) -> Self {
        PeriodJson {
            k: p.k(),
            l: p.l(),
            entries: p.rows().iter().map(|r| r.iter().map(|e| e.to_rf().to_string()).collect()).collect(),
        }
    }

    pub fn to_period(&self) -> Result<PeriodMatrix<RationalFunction>, IoError> {
        let got_k = self.entries.len();
        let got_l = self.entries.first().map_or(0, Vec::len);
        if got_k != self.k || self.entries.iter().any(|r| r.len() != self.l) {
            return Err(IoError::Dimensions { k: self.k, l: self.l, got_k, got_l });
        }
        let rows = self.entries.iter().map(|r| r.iter().map(|t| expr(t)).collect()).collect::<Result<_, _>>()?;
        Ok(PeriodMatrix::new(rows)?)
    }
}

pub fn period_from_json(text: &str) -> Result<PeriodMatrix<RationalFunction>, IoError> {
    serde_json::from_str::<PeriodJson>(text)?.to_period()
}

pub fn period_to_json<F: Field>(p: &PeriodMatrix<F>) -> String {
    serde_json::to_string(&PeriodJson::from_period(p)).expect("serializable")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub order: usize,
    pub factor: String,
}

/// `{"steps":[{"order","factor"}],"value":"expr"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub steps: Vec<StepJson>,
    pub value: String,
}

impl TraceJson {
    pub fn new<F: Field>(trace: &ReductionTrace<F>, value: &F) -> Self {
        TraceJson {
            steps: trace
                .steps
                .iter()
                .map(|s| StepJson { order: s.order, factor: s.factor.to_rf().to_string() })
                .collect(),
            value: value.to_rf().to_string(),
        }
    }
}

/// `{"kind", "k", "scalar" | "sigma", "per_step_factors"}`; `k` is null
/// when no period was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub kind: String,
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<String>,
    pub per_step_factors: Vec<String>,
}

impl From<&OrbitReport> for OrbitJson {
    fn from(r: &OrbitReport) -> Self {
        let (scalar, sigma) = match &r.kind {
            OrbitKind::Proportional { scalar } => (Some(scalar.to_string()), None),
            OrbitKind::QShift { sigma } => (None, Some(sigma.to_string())),
            OrbitKind::None => (None, None),
        };
        OrbitJson {
            kind: r.kind.tag().to_string(),
            k: r.period_length,
            scalar,
            sigma,
            per_step_factors: r.per_step_factors.iter().map(|f| f.to_string()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aztec::{evaluate, AztecInstance};
    use crate::graph::oracle_mgf;
    use crate::orbit::detect_proportional;

    #[test]
    fn graph_round_trip() {
        let text = r#"{"vertices":[0,1,2,3],"edges":[{"u":0,"v":1,"w":"x"},{"u":1,"v":2,"w":"y"},{"u":2,"v":3,"w":"z"},{"u":3,"v":0,"w":"w"}]}"#;
        let g = graph_from_json(text).unwrap();
        assert_eq!(oracle_mgf(&g).unwrap(), parse("x*z+y*w").unwrap());
        assert_eq!(graph_from_json(&graph_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn bad_inputs_are_reported() {
        assert!(matches!(graph_from_json("{"), Err(IoError::Json(_))));
        let bad = r#"{"vertices":[0,1],"edges":[{"u":0,"v":1,"w":"2x"}]}"#;
        assert!(matches!(graph_from_json(bad), Err(IoError::Expr { .. })));
        let short = r#"{"k":2,"l":2,"entries":[["1","1"]]}"#;
        assert!(matches!(period_from_json(short), Err(IoError::Dimensions { .. })));
    }

    #[test]
    fn period_round_trip_and_trace() {
        let p = period_from_json(r#"{"k":2,"l":2,"entries":[["a","1"],["1","1/2"]]}"#).unwrap();
        assert_eq!(period_from_json(&period_to_json(&p)).unwrap(), p);
        let (v, t) = evaluate(&AztecInstance::new(2, p)).unwrap();
        let json = serde_json::to_value(TraceJson::new(&t, &v)).unwrap();
        assert_eq!(json["steps"].as_array().unwrap().len(), 2);
        assert_eq!(json["steps"][0]["order"], 2);
        assert_eq!(json["value"], v.to_string());
    }

    #[test]
    fn completion_round_trip() {
        let text = r#"{"vertices":[0,1,2,3],"edges":[{"u":0,"v":1,"w":"1"},{"u":1,"v":2,"w":"2"},{"u":2,"v":3,"w":"3"},{"u":3,"v":0,"w":"4"}],"cells":[[0,1,2,3]],"members":[0,1,2,3]}"#;
        let gj: GraphJson = serde_json::from_str(text).unwrap();
        let c = gj.to_completion().unwrap();
        assert_eq!(GraphJson::from_completion(&c), gj);
        assert_eq!(c.complement().unwrap().factor, parse("3+8").unwrap());
    }

    #[test]
    fn orbit_json_shape() {
        let p = PeriodMatrix::<RationalFunction>::constant(2, 2, RationalFunction::one()).unwrap();
        let r = detect_proportional(&p, 3).unwrap();
        let json = serde_json::to_value(OrbitJson::from(&r)).unwrap();
        assert_eq!(json, serde_json::json!({"kind":"proportional","k":1,"scalar":"(1)/(2)","per_step_factors":["2"]}));
        let none = OrbitReport { kind: OrbitKind::None, period_length: None, per_step_factors: vec![] };
        let json = serde_json::to_value(OrbitJson::from(&none)).unwrap();
        assert_eq!(json["k"], serde_json::Value::Null);
    }
}
