//! Cubical portraits: families of local label bijections indexed by vertices
//! of the universal cover, their validation and synthesis.
//!
//! A portrait of depth `d` stores a local map at every vertex of `B_d(o)`, so
//! words of length up to `d + 1` can be evaluated. The conditions are only
//! certified on `B_d(o)`.

mod extend;
mod serial;
mod solver;
mod taus;
mod validate;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::labeling::Sym;
use crate::space::Space;
use crate::words::{endpoint, Ball, Word, WordError, XVertex};

pub use extend::{extend_red_to_edge, ExtendError};
pub use serial::{PortraitFile, SeedFile, SCHEMA_VERSION};
pub use solver::{solve_extension, Seed, SolveError, SolverOptions, ValueOrder};
pub use taus::enumerate_candidate_taus;
pub use validate::{validate_cubical, validate_red};

/// `σ_x`, indexed by source symbol; `None` outside the outgoing labels.
pub type LocalMap = Vec<Option<Sym>>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PortraitError {
    #[error("word of length {len} is beyond the evaluation horizon of depth {depth}")]
    OutOfDepth { len: usize, depth: usize },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("no local image of `{letter}` at vertex `{vertex}`")]
    UndefinedLocalMap { vertex: String, letter: String },
}

#[derive(Clone)]
pub struct CubicalPortrait {
    source: Arc<Space>,
    target: Arc<Space>,
    root: Word,
    depth: usize,
    ball: Arc<Ball>,
    maps: Vec<LocalMap>,
}

impl fmt::Debug for CubicalPortrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CubicalPortrait")
            .field("root", &self.target.format_word(&self.root))
            .field("depth", &self.depth)
            .field("vertices", &self.maps.len())
            .finish()
    }
}

impl CubicalPortrait {
    /// Tabulates `f(x, s)` over `B_depth(o)` of the source.
    pub fn from_fn(
        source: &Arc<Space>,
        target: &Arc<Space>,
        root: Word,
        depth: usize,
        f: impl Fn(&XVertex, Sym) -> Option<Sym>,
    ) -> Self {
        let ball = source.ball(depth);
        let n = source.alphabet().len();
        let maps = ball
            .vertices()
            .iter()
            .map(|x| {
                let mut m = vec![None; n];
                for s in source.sigma(x.quotient_vertex).iter() {
                    m[s.index()] = f(x, s);
                }
                m
            })
            .collect();
        CubicalPortrait {
            source: source.clone(),
            target: target.clone(),
            root,
            depth,
            ball,
            maps,
        }
    }

    pub fn identity(space: &Arc<Space>, depth: usize) -> Self {
        Self::from_fn(space, space, Word::empty(), depth, |_, s| Some(s))
    }

    pub(crate) fn from_maps(
        source: &Arc<Space>,
        target: &Arc<Space>,
        root: Word,
        depth: usize,
        maps: Vec<LocalMap>,
    ) -> Self {
        let ball = source.ball(depth);
        assert_eq!(ball.len(), maps.len());
        CubicalPortrait {
            source: source.clone(),
            target: target.clone(),
            root,
            depth,
            ball,
            maps,
        }
    }

    pub fn source(&self) -> &Arc<Space> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Space> {
        &self.target
    }

    /// `w0`, the image of the empty word.
    pub fn root(&self) -> &Word {
        &self.root
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn ball(&self) -> &Arc<Ball> {
        &self.ball
    }

    pub fn local_map(&self, i: usize) -> &LocalMap {
        &self.maps[i]
    }

    pub fn local(&self, i: usize, s: Sym) -> Option<Sym> {
        self.maps[i][s.index()]
    }

    /// Local map at a vertex given by its normal form.
    pub fn local_at(&self, normal_form: &[Sym]) -> Option<&LocalMap> {
        self.ball.index_of(normal_form).map(|i| &self.maps[i])
    }

    pub fn set_local(&mut self, i: usize, s: Sym, t: Option<Sym>) {
        self.maps[i][s.index()] = t;
    }

    /// `σ(v) = w0 · σ_o(s1) · σ_{s1}(s2) ⋯`, resolving each prefix to its
    /// vertex.
    pub fn evaluate(&self, v: &[Sym]) -> Result<Word, PortraitError> {
        let space = &self.source;
        if space.walk_from(space.basepoint(), v).is_none() {
            return Err(WordError::NotInLanguage(space.format_word(v)).into());
        }
        if v.len() > self.depth + 1 {
            return Err(PortraitError::OutOfDepth {
                len: v.len(),
                depth: self.depth,
            });
        }
        let mut out = self.root.clone();
        let mut at = 0;
        for (k, &s) in v.iter().enumerate() {
            let t = self.local(at, s).ok_or_else(|| PortraitError::UndefinedLocalMap {
                vertex: space.format_word(&self.ball.vertex(at).normal_form),
                letter: space.alphabet().name(s).to_string(),
            })?;
            out.push(t);
            if k + 1 < v.len() {
                at = self.ball.neighbor(at, s).expect("prefix stays inside the ball");
            }
        }
        Ok(out)
    }

    /// The target vertex reached by `σ(v)`.
    pub fn evaluate_vertex(&self, v: &[Sym]) -> Result<XVertex, PortraitError> {
        Ok(endpoint(&self.target, &self.evaluate(v)?)?)
    }

    pub fn describe_map(&self, i: usize) -> String {
        let src = self.source.alphabet();
        let tgt = self.target.alphabet();
        let pairs: Vec<String> = self.maps[i]
            .iter()
            .enumerate()
            .filter_map(|(k, t)| {
                t.map(|t| format!("{}->{}", src.name(Sym(k as u8)), tgt.name(t)))
            })
            .collect();
        pairs.join(" ")
    }
}

/// Which condition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ObstructionKind {
    Root,
    Tree,
    Comm,
    Par,
    Inv,
    End,
    /// A seed value or must-fix vertex cannot be honoured.
    Seed,
}

impl fmt::Display for ObstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObstructionKind::Root => "root",
            ObstructionKind::Tree => "tree",
            ObstructionKind::Comm => "comm",
            ObstructionKind::Par => "par",
            ObstructionKind::Inv => "inv",
            ObstructionKind::End => "end",
            ObstructionKind::Seed => "seed",
        })
    }
}

/// A violated condition at a source vertex (its normal form) and letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub vertex: Word,
    pub letters: Vec<Sym>,
    pub detail: String,
}

impl Obstruction {
    pub fn describe(&self, space: &Space) -> String {
        let letters: Vec<&str> = self.letters.iter().map(|&s| space.alphabet().name(s)).collect();
        format!(
            "{} at vertex {} letters ({}): {}",
            self.kind,
            space.format_word(&self.vertex),
            letters.join(", "),
            self.detail
        )
    }

    /// Re-checks the witness against a portrait's table; true when the
    /// violation is reproduced. Seed obstructions have no table to replay.
    pub fn replay(&self, p: &CubicalPortrait) -> bool {
        validate::replay(self, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::fixtures::*;

    pub(crate) fn swap_b(space: &Arc<Space>, depth: usize) -> CubicalPortrait {
        let b = space.parse_symbol("b").unwrap();
        let bi = space.parse_symbol("b^-1").unwrap();
        CubicalPortrait::from_fn(space, space, Word::empty(), depth, move |_, s| {
            Some(if s == b {
                bi
            } else if s == bi {
                b
            } else {
                s
            })
        })
    }

    #[test]
    fn identity_evaluation() {
        let t = t2();
        let p = CubicalPortrait::identity(&t, 3);
        let v = word(&t, "a b a^-1");
        assert_eq!(p.evaluate(&v).unwrap(), v);
    }

    #[test]
    fn swap_evaluation() {
        let w = w2();
        let p = swap_b(&w, 3);
        assert_eq!(w.format_word(&p.evaluate(&word(&w, "b b")).unwrap()), "b^-1 b^-1");
        let t = t2();
        let p = swap_b(&t, 3);
        assert_eq!(t.format_word(&p.evaluate(&word(&t, "a b")).unwrap()), "a b^-1");
    }

    #[test]
    fn evaluation_horizon() {
        let w = w2();
        let p = CubicalPortrait::identity(&w, 2);
        assert!(p.evaluate(&word(&w, "a a a")).is_ok());
        assert!(matches!(
            p.evaluate(&word(&w, "a a a a")),
            Err(PortraitError::OutOfDepth { len: 4, depth: 2 })
        ));
    }
}
