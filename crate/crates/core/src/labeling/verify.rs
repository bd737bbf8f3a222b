use std::collections::{BTreeMap, HashMap};

use serde::Deserialize;

use super::LabelingError;
use crate::complex::{parallel_classes, EdgeId, QuotientComplex, VertexId};

/// An arbitrary labeling to be checked: symbol names, a symbol index per
/// oriented edge and a symbol involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateLabeling {
    pub symbols: Vec<String>,
    pub label: Vec<usize>,
    pub inv: Vec<usize>,
}

#[derive(Deserialize)]
struct RawCandidate {
    #[serde(default)]
    symbols: Vec<String>,
    labels: BTreeMap<String, String>,
    inverse: BTreeMap<String, String>,
}

impl CandidateLabeling {
    /// Parses `{"symbols": [...], "labels": {edge: symbol}, "inverse": {symbol: symbol}}`.
    /// Without `symbols`, the order is first appearance along the edge order.
    pub fn from_json(complex: &QuotientComplex, text: &str) -> Result<Self, LabelingError> {
        let raw: RawCandidate =
            serde_json::from_str(text).map_err(|e| LabelingError::Parse(e.to_string()))?;
        let mut symbols = raw.symbols;
        let mut label = Vec::with_capacity(complex.edge_count());
        for edge in complex.edges() {
            let name = raw
                .labels
                .get(&edge.id)
                .ok_or_else(|| LabelingError::Parse(format!("edge `{}` has no label", edge.id)))?;
            let idx = match symbols.iter().position(|s| s == name) {
                Some(i) => i,
                None => {
                    symbols.push(name.clone());
                    symbols.len() - 1
                }
            };
            label.push(idx);
        }
        let mut inv = Vec::with_capacity(symbols.len());
        for s in &symbols {
            let t = raw
                .inverse
                .get(s)
                .ok_or_else(|| LabelingError::Parse(format!("symbol `{s}` has no inverse")))?;
            let j = symbols
                .iter()
                .position(|x| x == t)
                .ok_or_else(|| LabelingError::UnknownSymbol(t.clone()))?;
            inv.push(j);
        }
        Ok(CandidateLabeling {
            symbols,
            label,
            inv,
        })
    }
}

/// Labels every oriented parallel class by its least edge. This is the
/// canonical labeling when the complex is special and a candidate otherwise.
pub fn class_labeling(complex: &QuotientComplex) -> CandidateLabeling {
    let pc = parallel_classes(complex);
    let symbols = pc
        .oriented_classes
        .iter()
        .map(|class| complex.edge(class[0]).id.clone())
        .collect();
    let label: Vec<usize> = (0..complex.edge_count()).map(|e| pc.oriented_class(e)).collect();
    let inv = pc
        .oriented_classes
        .iter()
        .map(|class| label[complex.reverse(class[0])])
        .collect();
    CandidateLabeling {
        symbols,
        label,
        inv,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelingViolation {
    /// Property (1): two outgoing edges at a vertex share a label.
    NotInjective {
        vertex: VertexId,
        edges: (EdgeId, EdgeId),
    },
    /// Property (2): parallel edges with different labels.
    NotConstantOnClass { edges: (EdgeId, EdgeId) },
    /// Property (3): equal label pairs, one spanning a square and one not.
    SquareInconsistent {
        spanning: (EdgeId, EdgeId),
        non_spanning: (EdgeId, EdgeId),
    },
    /// Property (4): the symbol involution is broken or incompatible with
    /// edge reversal.
    Involution {
        symbol: usize,
        edge: Option<EdgeId>,
        reason: &'static str,
    },
}

impl LabelingViolation {
    /// The violated property, numbered 1 to 4.
    pub fn property(&self) -> u8 {
        match self {
            LabelingViolation::NotInjective { .. } => 1,
            LabelingViolation::NotConstantOnClass { .. } => 2,
            LabelingViolation::SquareInconsistent { .. } => 3,
            LabelingViolation::Involution { .. } => 4,
        }
    }

    pub fn describe(&self, c: &QuotientComplex, l: &CandidateLabeling) -> String {
        let id = |e: EdgeId| c.edge(e).id.as_str();
        let sym = |e: EdgeId| l.symbols[l.label[e]].as_str();
        match *self {
            LabelingViolation::NotInjective { vertex, edges: (e, f) } => format!(
                "property (1): edges {} and {} at vertex {} share label {}",
                id(e),
                id(f),
                c.vertex_name(vertex),
                sym(e)
            ),
            LabelingViolation::NotConstantOnClass { edges: (e, f) } => format!(
                "property (2): parallel edges {} and {} carry labels {} and {}",
                id(e),
                id(f),
                sym(e),
                sym(f)
            ),
            LabelingViolation::SquareInconsistent {
                spanning: (e, f),
                non_spanning: (x, y),
            } => format!(
                "property (3): ({}, {}) spans a square but ({}, {}) with labels ({}, {}) does not",
                id(e),
                id(f),
                id(x),
                id(y),
                sym(e),
                sym(f)
            ),
            LabelingViolation::Involution {
                symbol,
                edge,
                reason,
            } => match edge {
                Some(e) => format!("property (4): edge {}: {reason}", id(e)),
                None => format!("property (4): symbol {}: {reason}", l.symbols[symbol]),
            },
        }
    }
}

/// The first violation of each failed property, in property order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabelingReport {
    pub violations: Vec<LabelingViolation>,
}

impl LabelingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&LabelingViolation> {
        self.violations.first()
    }

    pub fn fails(&self, property: u8) -> bool {
        self.violations.iter().any(|v| v.property() == property)
    }
}

pub fn verify_labeling(c: &QuotientComplex, l: &CandidateLabeling) -> LabelingReport {
    assert_eq!(l.label.len(), c.edge_count(), "labeling must be total");
    let mut violations = Vec::new();

    // (1)
    'outer: for v in 0..c.vertex_count() {
        let out = c.outgoing(v);
        for i in 0..out.len() {
            for j in (i + 1)..out.len() {
                if l.label[out[i]] == l.label[out[j]] {
                    violations.push(LabelingViolation::NotInjective {
                        vertex: v,
                        edges: (out[i], out[j]),
                    });
                    break 'outer;
                }
            }
        }
    }

    // (2)
    let pc = parallel_classes(c);
    if let Some(edges) = pc.oriented_classes.iter().find_map(|class| {
        class
            .iter()
            .find(|&&e| l.label[e] != l.label[class[0]])
            .map(|&e| (class[0], e))
    }) {
        violations.push(LabelingViolation::NotConstantOnClass { edges });
    }

    // (3): every vertex pair and label pair, in canonical order.
    let mut seen: HashMap<(usize, usize), (EdgeId, EdgeId, bool)> = HashMap::new();
    'outer3: for v in 0..c.vertex_count() {
        let out = c.outgoing(v);
        for i in 0..out.len() {
            for j in (i + 1)..out.len() {
                let (e, f) = (out[i], out[j]);
                let (x, y) = (l.label[e], l.label[f]);
                let key = (x.min(y), x.max(y));
                let spans = c.spans_square(e, f);
                match seen.get(&key) {
                    Some(&(e0, f0, s0)) if s0 != spans => {
                        let (spanning, non_spanning) =
                            if s0 { ((e0, f0), (e, f)) } else { ((e, f), (e0, f0)) };
                        violations.push(LabelingViolation::SquareInconsistent {
                            spanning,
                            non_spanning,
                        });
                        break 'outer3;
                    }
                    Some(_) => {}
                    None => {
                        seen.insert(key, (e, f, spans));
                    }
                }
            }
        }
    }

    // (4)
    let n = l.symbols.len();
    let bad = (0..n)
        .find_map(|s| {
            let t = l.inv[s];
            if t >= n || l.inv[t] != s {
                Some((s, None, "inversion is not an involution"))
            } else if t == s {
                Some((s, None, "inversion has a fixed point"))
            } else {
                None
            }
        })
        .or_else(|| {
            (0..c.edge_count()).find_map(|e| {
                (l.label[c.reverse(e)] != l.inv[l.label[e]]).then_some((
                    l.label[e],
                    Some(e),
                    "label of the reverse edge is not the inverse label",
                ))
            })
        });
    if let Some((symbol, edge, reason)) = bad {
        violations.push(LabelingViolation::Involution {
            symbol,
            edge,
            reason,
        });
    }

    LabelingReport { violations }
}
