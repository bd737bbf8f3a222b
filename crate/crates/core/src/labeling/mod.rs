//! Cubical edge-labelings: the canonical labeling of a special complex by its
//! oriented parallel classes, and a checker for arbitrary candidate labelings.

mod alphabet;
mod verify;

use std::fmt::Write as _;

use thiserror::Error;

use crate::complex::{
    check_special, EdgeId, QuotientComplex, SpecialnessReport, VertexId,
};

pub use alphabet::{Alphabet, Sym, SymSet, MAX_SYMBOLS};
pub use verify::{
    class_labeling, verify_labeling, CandidateLabeling, LabelingReport, LabelingViolation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelingError {
    #[error("complex is not special")]
    NotSpecial(Box<SpecialnessReport>),
    #[error("labeling violates property ({})", .0.first().map(|v| v.property()).unwrap_or(0))]
    Invalid(Box<LabelingReport>),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("alphabet has {0} symbols; at most 64 are supported")]
    TooManySymbols(usize),
    #[error("invalid alphabet at `{symbol}`: {reason}")]
    InvalidAlphabet { symbol: String, reason: String },
    #[error("bad symbol order: {0}")]
    BadOrder(String),
    #[error("labeling parse error: {0}")]
    Parse(String),
}

/// A verified cubical edge-labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    alphabet: Alphabet,
    label: Vec<Sym>,
    per_vertex: Vec<SymSet>,
    /// `edge_at[p][s]`: the outgoing edge at `p` labelled `s`.
    edge_at: Vec<Vec<Option<EdgeId>>>,
}

/// The canonical labeling: one symbol per oriented parallel class, named by
/// the class's least edge.
pub fn construct_labeling(complex: &QuotientComplex) -> Result<Labeling, LabelingError> {
    let report = check_special(complex);
    if !report.is_special {
        return Err(LabelingError::NotSpecial(Box::new(report)));
    }
    Labeling::from_candidate(complex, &class_labeling(complex))
}

impl Labeling {
    /// Builds a labeling from a candidate that passes all four properties.
    /// Commutation is read off the squares.
    pub fn from_candidate(
        complex: &QuotientComplex,
        candidate: &CandidateLabeling,
    ) -> Result<Labeling, LabelingError> {
        let report = verify_labeling(complex, candidate);
        if !report.passed() {
            return Err(LabelingError::Invalid(Box::new(report)));
        }
        let n = candidate.symbols.len();
        if n > MAX_SYMBOLS {
            return Err(LabelingError::TooManySymbols(n));
        }
        let label: Vec<Sym> = candidate.label.iter().map(|&s| Sym(s as u8)).collect();
        let mut commute = vec![SymSet::EMPTY; n];
        for corner in complex.corners() {
            let (e, f) = corner.edges;
            commute[label[e].index()].insert(label[f]);
            commute[label[f].index()].insert(label[e]);
        }
        let alphabet = Alphabet::new(
            candidate.symbols.clone(),
            candidate.inv.iter().map(|&s| Sym(s as u8)).collect(),
            commute,
        )?;
        Ok(Self::assemble(complex, alphabet, label))
    }

    fn assemble(complex: &QuotientComplex, alphabet: Alphabet, label: Vec<Sym>) -> Labeling {
        let mut per_vertex = vec![SymSet::EMPTY; complex.vertex_count()];
        let mut edge_at = vec![vec![None; alphabet.len()]; complex.vertex_count()];
        for (e, edge) in complex.edges().iter().enumerate() {
            per_vertex[edge.start].insert(label[e]);
            edge_at[edge.start][label[e].index()] = Some(e);
        }
        Labeling {
            alphabet,
            label,
            per_vertex,
            edge_at,
        }
    }

    /// The same labeling with symbols re-indexed so that `order` becomes the
    /// canonical letter order.
    pub fn reordered(
        &self,
        complex: &QuotientComplex,
        order: &[String],
    ) -> Result<Labeling, LabelingError> {
        let (alphabet, map) = self.alphabet.reordered(order)?;
        let label = self.label.iter().map(|s| map[s.index()]).collect();
        Ok(Self::assemble(complex, alphabet, label))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn label(&self, e: EdgeId) -> Sym {
        self.label[e]
    }

    /// Outgoing labels at `p`.
    pub fn outgoing(&self, p: VertexId) -> SymSet {
        self.per_vertex[p]
    }

    pub fn edge_at(&self, p: VertexId, s: Sym) -> Option<EdgeId> {
        self.edge_at[p][s.index()]
    }

    pub fn to_candidate(&self) -> CandidateLabeling {
        CandidateLabeling {
            symbols: self.alphabet.names().to_vec(),
            label: self.label.iter().map(|s| s.index()).collect(),
            inv: self.alphabet.symbols().map(|s| self.alphabet.inv(s).index()).collect(),
        }
    }

    /// Edge table, one `edge -> symbol` line per oriented edge.
    pub fn table(&self, complex: &QuotientComplex) -> String {
        let mut out = String::new();
        for (e, edge) in complex.edges().iter().enumerate() {
            let _ = writeln!(out, "{} -> {}", edge.id, self.alphabet.name(self.label[e]));
        }
        out
    }
}
