use super::{find_innermost_cancellation, is_reduced, reduce, words_commute, WordError};
use crate::labeling::{Alphabet, Sym, SymSet};
use crate::space::Space;

/// Labels at the endpoint of a reduced word that step back towards the
/// basepoint, their commuting span, and the remaining outgoing labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RedSets {
    pub red: SymSet,
    pub span: SymSet,
    pub reduced_out: SymSet,
}

/// `red(ε) = ∅`, `red(vs) = {inv s} ∪ {t ∈ red(v) : [s, t] = 1}`.
pub fn red_set_of(alpha: &Alphabet, v: &[Sym]) -> SymSet {
    v.iter().fold(SymSet::EMPTY, |red, &s| {
        red.intersection(alpha.commuting(s)).with(alpha.inv(s))
    })
}

pub fn red_sets(space: &Space, v: &[Sym]) -> Result<RedSets, WordError> {
    let alpha = space.alphabet();
    if !is_reduced(alpha, v) {
        return Err(WordError::NotReduced(space.format_word(v)));
    }
    let p = space
        .walk_from(space.basepoint(), v)
        .ok_or_else(|| WordError::NotInLanguage(space.format_word(v)))?;
    let out = space.sigma(p);
    let red = red_set_of(alpha, v);
    let span = out
        .iter()
        .filter(|&t| red.iter().any(|s| alpha.commutes(s, t)))
        .collect::<SymSet>()
        .union(red);
    Ok(RedSets {
        red,
        span,
        reduced_out: out.difference(red),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexType {
    Type1,
    Type2,
    Type3,
}

/// The type of the endpoint of `w` relative to the basepoint and the
/// endpoint of the reduced nonempty word `v`.
pub fn classify_type(space: &Space, v: &[Sym], w: &[Sym]) -> Result<VertexType, WordError> {
    let alpha = space.alphabet();
    if v.is_empty() {
        return Err(WordError::EmptyV);
    }
    let red = red_sets(space, v)?.red;
    if space.walk_from(space.basepoint(), w).is_none() {
        return Err(WordError::NotInLanguage(space.format_word(w)));
    }
    let back: Vec<Sym> = v.iter().rev().map(|&s| alpha.inv(s)).collect();
    let path = reduce(alpha, &[back, reduce(alpha, w).into_letters()].concat());
    let joined = [v, path.letters()].concat();
    Ok(if find_innermost_cancellation(alpha, &joined).is_some() {
        VertexType::Type1
    } else if red.iter().any(|s| words_commute(alpha, &path, &[s])) {
        VertexType::Type2
    } else {
        VertexType::Type3
    })
}
