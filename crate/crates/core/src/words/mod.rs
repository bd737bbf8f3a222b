//! Words over the label alphabet and vertices of the universal cover.
//!
//! A vertex of the cover is identified with the normal form of any reduced
//! word reaching it from the basepoint.

mod ball;
mod moves;
mod red;
mod reduce;

use std::cmp::Ordering;
use std::ops::Deref;

use thiserror::Error;

use crate::complex::VertexId;
use crate::labeling::{Alphabet, Sym};
use crate::space::Space;

pub use ball::{enumerate_ball, Ball};
pub use moves::{apply_move, move_neighbours, moves_oracle, MoveSpec, MovesVerdict, DEFAULT_STATE_CAP};
pub use red::{classify_type, red_sets, red_set_of, RedSets, VertexType};
pub use reduce::{
    append_reduced, find_innermost_cancellation, is_reduced, normal_form, reduce, words_commute,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("word `{0}` is not an edge path from the basepoint")]
    NotInLanguage(String),
    #[error("word `{0}` is not reduced")]
    NotReduced(String),
    #[error("the vertex word must be nonempty")]
    EmptyV,
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("search exceeded its budget after {explored} words")]
    BudgetExhausted { explored: usize },
}

/// A finite sequence of labels.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Sym>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Sym] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Sym> {
        self.0
    }

    pub fn push(&mut self, s: Sym) {
        self.0.push(s);
    }

    pub fn concat(&self, other: &[Sym]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn with(&self, s: Sym) -> Word {
        self.concat(&[s])
    }

    /// Letterwise inverse of the reversal.
    pub fn inverse(&self, alpha: &Alphabet) -> Word {
        Word(self.0.iter().rev().map(|&s| alpha.inv(s)).collect())
    }
}

impl Deref for Word {
    type Target = [Sym];
    fn deref(&self) -> &[Sym] {
        &self.0
    }
}

impl std::borrow::Borrow<[Sym]> for Word {
    fn borrow(&self) -> &[Sym] {
        &self.0
    }
}

impl From<Vec<Sym>> for Word {
    fn from(v: Vec<Sym>) -> Self {
        Word(v)
    }
}

impl From<&[Sym]> for Word {
    fn from(v: &[Sym]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Sym> for Word {
    fn from_iter<I: IntoIterator<Item = Sym>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Length first, then lexicographic.
pub fn shortlex(a: &[Sym], b: &[Sym]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// A vertex of the universal cover.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct XVertex {
    pub normal_form: Word,
    pub quotient_vertex: VertexId,
}

impl XVertex {
    pub fn root(space: &Space) -> Self {
        XVertex {
            normal_form: Word::empty(),
            quotient_vertex: space.basepoint(),
        }
    }

    /// Distance from the basepoint.
    pub fn distance(&self) -> usize {
        self.normal_form.len()
    }

    /// The neighbour across the edge labelled `s`, if `s` is outgoing here.
    pub fn step(&self, space: &Space, s: Sym) -> Option<XVertex> {
        let p = space.step(self.quotient_vertex, s)?;
        let reduced = append_reduced(space.alphabet(), &self.normal_form, s);
        Some(XVertex {
            normal_form: normal_form(space.alphabet(), &reduced)
                .expect("appending to a reduced word stays reduced"),
            quotient_vertex: p,
        })
    }
}

impl PartialOrd for XVertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for XVertex {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex(&self.normal_form, &other.normal_form)
    }
}

/// True iff `w` labels an edge path from the basepoint.
pub fn accepts_edge(space: &Space, w: &[Sym]) -> bool {
    space.walk_from(space.basepoint(), w).is_some()
}

pub fn endpoint(space: &Space, w: &[Sym]) -> Result<XVertex, WordError> {
    let p = space
        .walk_from(space.basepoint(), w)
        .ok_or_else(|| WordError::NotInLanguage(space.format_word(w)))?;
    let alpha = space.alphabet();
    let nf = normal_form(alpha, &reduce(alpha, w)).expect("reduce yields a reduced word");
    Ok(XVertex {
        normal_form: nf,
        quotient_vertex: p,
    })
}

pub fn same_endpoint(space: &Space, v: &[Sym], w: &[Sym]) -> Result<bool, WordError> {
    Ok(endpoint(space, v)? == endpoint(space, w)?)
}
