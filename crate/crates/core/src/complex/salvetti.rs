use serde::{Deserialize, Serialize};

use super::{validate_complex, ComplexError, QuotientComplex, RawComplex, RawEdge};

/// A simple graph on generator names, e.g.
/// `{"generators": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefiningGraph {
    pub generators: Vec<String>,
    #[serde(default)]
    pub edges: Vec<(String, String)>,
}

impl DefiningGraph {
    pub fn from_json(text: &str) -> Result<Self, ComplexError> {
        serde_json::from_str(text).map_err(|e| ComplexError::from_json(&e))
    }
}

/// The Salvetti complex of the right-angled Artin group with the given
/// defining graph: one vertex, a loop per generator and a square
/// `(x, y, x^-1, y^-1)` per graph edge.
pub fn build_salvetti(graph: &DefiningGraph) -> Result<QuotientComplex, ComplexError> {
    for (x, y) in &graph.edges {
        for g in [x, y] {
            if !graph.generators.contains(g) {
                return Err(ComplexError::UnknownGenerator(g.clone()));
            }
        }
        if x == y {
            return Err(ComplexError::LoopInDefiningGraph(x.clone()));
        }
    }
    let raw = RawComplex {
        name: Some(format!("salvetti({})", graph.generators.join(","))),
        vertices: vec!["o".into()],
        edges: graph
            .generators
            .iter()
            .map(|g| RawEdge {
                id: g.clone(),
                from: "o".into(),
                to: "o".into(),
                reverse: None,
            })
            .collect(),
        squares: graph
            .edges
            .iter()
            .map(|(x, y)| vec![x.clone(), y.clone(), format!("-{x}"), format!("-{y}")])
            .collect(),
        basepoint: "o".into(),
    };
    validate_complex(&raw)
}
