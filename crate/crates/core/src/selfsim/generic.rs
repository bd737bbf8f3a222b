use std::collections::HashMap;

use thiserror::Error;

use super::PathAutomaton;
use crate::labeling::{Sym, SymSet};
use crate::words::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenericPortraitError {
    #[error("word of length {len} is beyond depth {depth}")]
    OutOfDepth { len: usize, depth: usize },
    #[error("no local map for letter {letter} after prefix {prefix:?}")]
    UndefinedLocalMap { prefix: Vec<u8>, letter: u8 },
}

/// Word-indexed family of injective local maps, defined on every accepted
/// source word of length at most `depth`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericPortrait {
    maps: HashMap<Word, Vec<Option<Sym>>>,
    depth: usize,
}

impl GenericPortrait {
    pub fn new(depth: usize) -> Self {
        GenericPortrait {
            maps: HashMap::new(),
            depth,
        }
    }

    /// Tabulates `f(v, s)` for every accepted `v` with `|v| ≤ depth` and
    /// every `s ∈ Σ_v`.
    pub fn from_fn<P>(
        source: &PathAutomaton<P>,
        depth: usize,
        f: impl Fn(&[Sym], Sym) -> Sym,
    ) -> Self {
        let mut p = GenericPortrait::new(depth);
        for layer in source.enumerate_words(depth) {
            for v in layer {
                for s in source.sigma_v(&v).iter() {
                    p.set(&v, s, f(&v, s));
                }
            }
        }
        p
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn set(&mut self, v: &[Sym], s: Sym, image: Sym) {
        let row = self.maps.entry(Word::from(v)).or_default();
        if row.len() <= s.index() {
            row.resize(s.index() + 1, None);
        }
        row[s.index()] = Some(image);
    }

    pub fn local(&self, v: &[Sym], s: Sym) -> Option<Sym> {
        self.maps.get(v)?.get(s.index()).copied().flatten()
    }

    /// `σ(s1…sn) = σ_ε(s1) σ_{s1}(s2) … σ_{s1…s(n-1)}(sn)`.
    pub fn apply(&self, v: &[Sym]) -> Result<Word, GenericPortraitError> {
        if v.len() > self.depth + 1 {
            return Err(GenericPortraitError::OutOfDepth {
                len: v.len(),
                depth: self.depth,
            });
        }
        (0..v.len())
            .map(|k| {
                self.local(&v[..k], v[k])
                    .ok_or_else(|| GenericPortraitError::UndefinedLocalMap {
                        prefix: v[..k].iter().map(|s| s.0).collect(),
                        letter: v[k].0,
                    })
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeMapKind {
    Isomorphism,
    Morphism,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeMapReport {
    pub kind: TreeMapKind,
    /// First source word where the stronger property fails.
    pub witness: Option<(Word, &'static str)>,
}

/// Checks `σ_v(Σ_v) ⊆ Σ'_{σ(v)}` (morphism) and equality (isomorphism) at
/// every accepted source word of length at most `depth`.
pub fn validate_generic_portrait<P, Q>(
    portrait: &GenericPortrait,
    source: &PathAutomaton<P>,
    target: &PathAutomaton<Q>,
    depth: usize,
) -> TreeMapReport {
    let mut first_strict: Option<(Word, &'static str)> = None;
    for layer in source.enumerate_words(depth.min(portrait.depth())) {
        for v in layer {
            let image = match portrait.apply(&v) {
                Ok(w) => w,
                Err(_) => {
                    return TreeMapReport {
                        kind: TreeMapKind::Neither,
                        witness: Some((v, "local map undefined")),
                    }
                }
            };
            let allowed = target.sigma_v(&image);
            let mut seen = SymSet::EMPTY;
            for s in source.sigma_v(&v).iter() {
                let t = match portrait.local(&v, s) {
                    Some(t) if !seen.contains(t) => t,
                    Some(_) => {
                        return TreeMapReport {
                            kind: TreeMapKind::Neither,
                            witness: Some((v, "local map not injective")),
                        }
                    }
                    None => {
                        return TreeMapReport {
                            kind: TreeMapKind::Neither,
                            witness: Some((v, "local map undefined")),
                        }
                    }
                };
                seen.insert(t);
            }
            if !seen.is_subset(allowed) {
                return TreeMapReport {
                    kind: TreeMapKind::Neither,
                    witness: Some((v, "image leaves the target tree")),
                };
            }
            if seen != allowed && first_strict.is_none() {
                first_strict = Some((v, "image misses target children"));
            }
        }
    }
    TreeMapReport {
        kind: if first_strict.is_some() {
            TreeMapKind::Morphism
        } else {
            TreeMapKind::Isomorphism
        },
        witness: first_strict,
    }
}
