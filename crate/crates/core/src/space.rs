//! A labelled complex: the quotient together with its cubical labeling, with
//! word parsing and cached balls of the universal cover.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::complex::{QuotientComplex, VertexId, INVERSE_SUFFIX};
use crate::labeling::{construct_labeling, Alphabet, Labeling, LabelingError, Sym, SymSet};
use crate::words::{enumerate_ball, Ball, Word, WordError};

pub struct Space {
    complex: QuotientComplex,
    labeling: Labeling,
    balls: Mutex<HashMap<usize, Arc<Ball>>>,
}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Space")
            .field("complex", &self.complex.name())
            .field("symbols", &self.labeling.alphabet().names())
            .finish()
    }
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.complex == other.complex && self.labeling == other.labeling
    }
}

impl Space {
    /// Labels a special complex canonically.
    pub fn new(complex: QuotientComplex) -> Result<Arc<Space>, LabelingError> {
        let labeling = construct_labeling(&complex)?;
        Ok(Self::with_labeling(complex, labeling))
    }

    pub fn with_labeling(complex: QuotientComplex, labeling: Labeling) -> Arc<Space> {
        Arc::new(Space {
            complex,
            labeling,
            balls: Mutex::new(HashMap::new()),
        })
    }

    /// Same complex with the canonical letter order replaced by `order`.
    pub fn reordered(&self, order: &[String]) -> Result<Arc<Space>, LabelingError> {
        let labeling = self.labeling.reordered(&self.complex, order)?;
        Ok(Self::with_labeling(self.complex.clone(), labeling))
    }

    pub fn complex(&self) -> &QuotientComplex {
        &self.complex
    }

    pub fn labeling(&self) -> &Labeling {
        &self.labeling
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.labeling.alphabet()
    }

    pub fn basepoint(&self) -> VertexId {
        self.complex.basepoint()
    }

    /// Outgoing labels at a quotient vertex.
    pub fn sigma(&self, p: VertexId) -> SymSet {
        self.labeling.outgoing(p)
    }

    /// The quotient vertex reached from `p` along the edge labelled `s`.
    pub fn step(&self, p: VertexId, s: Sym) -> Option<VertexId> {
        self.labeling
            .edge_at(p, s)
            .map(|e| self.complex.edge(e).end)
    }

    /// Walks `letters` from `p`.
    pub fn walk_from(&self, p: VertexId, letters: &[Sym]) -> Option<VertexId> {
        letters.iter().try_fold(p, |at, &s| self.step(at, s))
    }

    /// Resolves a token: a symbol name, an edge id (read as its label), or
    /// either followed by the inverse suffix.
    pub fn parse_symbol(&self, token: &str) -> Result<Sym, WordError> {
        if let Some(s) = self.alphabet().sym(token) {
            return Ok(s);
        }
        if let Some(e) = self.complex.edge_id(token) {
            return Ok(self.labeling.label(e));
        }
        if let Some(base) = token.strip_suffix(INVERSE_SUFFIX) {
            if let Ok(s) = self.parse_symbol(base) {
                return Ok(self.alphabet().inv(s));
            }
        }
        Err(WordError::UnknownSymbol(token.to_string()))
    }

    /// Parses whitespace-separated symbols; `ε` and the empty string are the
    /// empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        text.split_whitespace()
            .filter(|t| *t != "ε")
            .map(|t| self.parse_symbol(t))
            .collect::<Result<Vec<_>, _>>()
            .map(Word::from)
    }

    pub fn format_word(&self, w: &[Sym]) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        let names: Vec<&str> = w.iter().map(|&s| self.alphabet().name(s)).collect();
        names.join(" ")
    }

    /// The ball `B_n(o)`, computed once per radius.
    pub fn ball(&self, n: usize) -> Arc<Ball> {
        let mut cache = self.balls.lock().unwrap_or_else(|p| p.into_inner());
        cache
            .entry(n)
            .or_insert_with(|| Arc::new(enumerate_ball(self, n)))
            .clone()
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::complex::fixtures;

    pub fn t2() -> Arc<Space> {
        Space::new(fixtures::torus()).unwrap()
    }

    pub fn w2() -> Arc<Space> {
        Space::new(fixtures::wedge()).unwrap()
    }

    /// Two vertices joined by `x: p -> q` and `y: q -> p`.
    pub fn circle2() -> Arc<Space> {
        Space::new(
            QuotientComplex::from_json(
                r#"{"name":"C2","vertices":["p","q"],
                    "edges":[{"id":"x","from":"p","to":"q"},{"id":"y","from":"q","to":"p"}],
                    "basepoint":"p"}"#,
            )
            .unwrap(),
        )
        .unwrap()
    }

    /// A single edge `x: p -> q`.
    pub fn segment() -> Arc<Space> {
        Space::new(
            QuotientComplex::from_json(
                r#"{"vertices":["p","q"],"edges":[{"id":"x","from":"p","to":"q"}],"basepoint":"p"}"#,
            )
            .unwrap(),
        )
        .unwrap()
    }

    pub fn word(space: &Space, text: &str) -> Word {
        space.parse_word(text).unwrap()
    }

    /// Salvetti complex on `g0..g{n-1}`; bit `k` of `mask` selects the
    /// `k`-th pair in lexicographic order as a graph edge.
    pub fn salvetti(n: usize, mask: u32) -> Arc<Space> {
        use crate::complex::{build_salvetti, DefiningGraph};
        let generators: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        let edges = pairs
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, (i, j))| (generators[i].clone(), generators[j].clone()))
            .collect();
        Space::new(build_salvetti(&DefiningGraph { generators, edges }).unwrap()).unwrap()
    }

    /// The edge path from the basepoint that takes the `c % deg`-th outgoing
    /// label for each choice `c`.
    pub fn path_from_choices(space: &Space, choices: &[u8]) -> Word {
        let mut p = space.basepoint();
        let mut w = Word::empty();
        for &c in choices {
            let out: Vec<_> = space.sigma(p).iter().collect();
            let s = out[c as usize % out.len()];
            w.push(s);
            p = space.step(p, s).unwrap();
        }
        w
    }
}
