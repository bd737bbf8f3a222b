//! Cubical isometries as lazy evaluators with finite horizons, deck
//! transformations, the stabilizer generators `A_{v,τ}`, peeling, and the
//! generating-set manifest.

mod a0;
mod avt;
mod deck;
mod peel;

use std::sync::Arc;

use thiserror::Error;

use crate::labeling::Sym;
use crate::portraits::{CubicalPortrait, LocalMap, PortraitError};
use crate::space::Space;
use crate::words::{endpoint, Word, WordError, XVertex};

pub use a0::{build_a0, A0Entry, A0Manifest, GeneratingSet, OrbitRep, A0_SCHEMA_VERSION};
pub use avt::{check_avt, conjugate_a, make_a_v_tau, AvtError};
pub use deck::deck_generators;
pub use peel::{peel, PeelError, Peeled};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsometryError {
    #[error("vertex at distance {requested} is beyond the evaluation radius {radius}")]
    OutOfDepth { requested: usize, radius: usize },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Portrait(#[from] PortraitError),
    #[error("composition of isometries between different complexes")]
    BasepointMismatch,
    #[error("word `{0}` does not close up at the basepoint")]
    NotALoop(String),
    #[error("images of adjacent vertices `{0}` are not adjacent")]
    NotAdjacent(String),
}

#[derive(Debug, Clone)]
pub enum Realization {
    Identity,
    Portrait(CubicalPortrait),
    /// `v ↦ u v` for a loop word `u`.
    LeftMul(Word),
    /// Applied right to left: `[g, h]` is `g ∘ h`.
    Compose(Vec<Isometry>),
}

#[derive(Debug, Clone)]
pub struct Isometry {
    source: Arc<Space>,
    target: Arc<Space>,
    realization: Realization,
}

impl Isometry {
    pub fn identity(space: &Arc<Space>) -> Self {
        Isometry {
            source: space.clone(),
            target: space.clone(),
            realization: Realization::Identity,
        }
    }

    pub fn from_portrait(p: CubicalPortrait) -> Self {
        Isometry {
            source: p.source().clone(),
            target: p.target().clone(),
            realization: Realization::Portrait(p),
        }
    }

    pub fn source(&self) -> &Arc<Space> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Space> {
        &self.target
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn portrait(&self) -> Option<&CubicalPortrait> {
        match &self.realization {
            Realization::Portrait(p) => Some(p),
            _ => None,
        }
    }

    /// Largest distance from the basepoint at which vertices can be
    /// evaluated; `None` when unbounded.
    pub fn radius(&self) -> Option<usize> {
        match &self.realization {
            Realization::Identity | Realization::LeftMul(_) => None,
            Realization::Portrait(p) => Some(p.depth() + 1),
            Realization::Compose(parts) => {
                let mut radius: Option<usize> = None;
                let mut shift = 0;
                for g in parts.iter().rev() {
                    if let Some(r) = g.radius() {
                        let r = r.saturating_sub(shift);
                        radius = Some(radius.map_or(r, |x| x.min(r)));
                    }
                    shift += g.basepoint_image_len();
                }
                radius
            }
        }
    }

    fn basepoint_image_len(&self) -> usize {
        self.apply_vertex(&XVertex::root(&self.source))
            .map(|x| x.distance())
            .unwrap_or(0)
    }

    fn check_radius(&self, len: usize) -> Result<(), IsometryError> {
        match self.radius() {
            Some(radius) if len > radius => Err(IsometryError::OutOfDepth {
                requested: len,
                radius,
            }),
            _ => Ok(()),
        }
    }

    /// Image of a word from the basepoint; a path in the target language
    /// ending at the image vertex.
    pub fn apply(&self, v: &[Sym]) -> Result<Word, IsometryError> {
        let src = &self.source;
        if !crate::words::accepts_edge(src, v) {
            return Err(WordError::NotInLanguage(src.format_word(v)).into());
        }
        match &self.realization {
            Realization::Identity => Ok(Word::from(v)),
            Realization::Portrait(p) => {
                let x = endpoint(src, v)?;
                if v.len() <= p.depth() + 1 {
                    Ok(p.evaluate(v)?)
                } else {
                    self.check_radius(x.distance())?;
                    Ok(p.evaluate(&x.normal_form)?)
                }
            }
            Realization::LeftMul(u) => Ok(u.concat(v)),
            Realization::Compose(_) => Ok(self.apply_vertex(&endpoint(src, v)?)?.normal_form),
        }
    }

    pub fn apply_vertex(&self, x: &XVertex) -> Result<XVertex, IsometryError> {
        match &self.realization {
            Realization::Identity => Ok(x.clone()),
            Realization::Compose(parts) => parts
                .iter()
                .rev()
                .try_fold(x.clone(), |y, g| g.apply_vertex(&y)),
            _ => {
                self.check_radius(x.distance())?;
                Ok(endpoint(&self.target, &self.apply(&x.normal_form)?)?)
            }
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Isometry) -> Result<Isometry, IsometryError> {
        compose_all(&[self.clone(), inner.clone()])
    }

    pub fn inverse(&self) -> Result<Isometry, IsometryError> {
        let realization = match &self.realization {
            Realization::Identity => Realization::Identity,
            Realization::LeftMul(u) => Realization::LeftMul(u.inverse(self.source.alphabet())),
            Realization::Compose(parts) => Realization::Compose(
                parts.iter().rev().map(|g| g.inverse()).collect::<Result<_, _>>()?,
            ),
            Realization::Portrait(p) => Realization::Portrait(invert_portrait(p)?),
        };
        Ok(Isometry {
            source: self.target.clone(),
            target: self.source.clone(),
            realization,
        })
    }
}

/// `parts[0] ∘ parts[1] ∘ …`, flattening nested compositions and dropping
/// identities.
pub fn compose_all(parts: &[Isometry]) -> Result<Isometry, IsometryError> {
    let Some(first) = parts.first() else {
        return Err(IsometryError::BasepointMismatch);
    };
    for w in parts.windows(2) {
        if *w[0].source != *w[1].target {
            return Err(IsometryError::BasepointMismatch);
        }
    }
    let mut flat = Vec::new();
    for g in parts {
        match &g.realization {
            Realization::Identity => {}
            Realization::Compose(inner) => flat.extend(inner.iter().cloned()),
            _ => flat.push(g.clone()),
        }
    }
    let source = parts.last().unwrap().source.clone();
    let target = first.target.clone();
    Ok(match flat.len() {
        0 => Isometry::identity(&source),
        1 => flat.pop().unwrap(),
        _ => Isometry {
            source,
            target,
            realization: Realization::Compose(flat),
        },
    })
}

/// Inverse portrait on the image ball: `σ'_{g(x)} = σ_x⁻¹`. Its depth
/// shrinks by the displacement of the basepoint.
fn invert_portrait(p: &CubicalPortrait) -> Result<CubicalPortrait, IsometryError> {
    let g = Isometry::from_portrait(p.clone());
    let (src, tgt) = (p.source(), p.target());
    let shift = endpoint(tgt, p.root())?.distance();
    let depth = p.depth().saturating_sub(shift);
    let ball = tgt.ball(depth);
    let mut maps: Vec<LocalMap> = vec![vec![None; src.alphabet().len()]; ball.len()];
    let mut root = None;
    for (i, x) in p.ball().vertices().iter().enumerate() {
        let y = g.apply_vertex(x)?;
        if y.distance() == 0 {
            root = Some(x.normal_form.clone());
        }
        let Some(j) = ball.index_of(&y.normal_form) else {
            continue;
        };
        for (k, t) in p.local_map(i).iter().enumerate() {
            if let Some(t) = t {
                maps[j][t.index()] = Some(Sym(k as u8));
            }
        }
    }
    let root = root.ok_or(IsometryError::OutOfDepth {
        requested: shift,
        radius: p.depth(),
    })?;
    Ok(CubicalPortrait::from_maps(tgt, src, root, depth, maps))
}

/// The deck transformation `v ↦ u v`.
pub fn left_multiplication(space: &Arc<Space>, u: &[Sym]) -> Result<Isometry, IsometryError> {
    if space.walk_from(space.basepoint(), u) != Some(space.basepoint()) {
        return Err(IsometryError::NotALoop(space.format_word(u)));
    }
    Ok(Isometry {
        source: space.clone(),
        target: space.clone(),
        realization: Realization::LeftMul(Word::from(u)),
    })
}

/// Local maps read off from images of adjacent vertices:
/// `g(x s) = g(x) · σ_x(s)`.
pub fn extract_portrait(g: &Isometry, depth: usize) -> Result<CubicalPortrait, IsometryError> {
    if let Some(radius) = g.radius() {
        if depth + 1 > radius {
            return Err(IsometryError::OutOfDepth {
                requested: depth + 1,
                radius,
            });
        }
    }
    let (src, tgt) = (g.source(), g.target());
    let ball = src.ball(depth);
    let mut maps: Vec<LocalMap> = Vec::with_capacity(ball.len());
    for x in ball.vertices() {
        let y = g.apply_vertex(x)?;
        let mut m: LocalMap = vec![None; src.alphabet().len()];
        for s in src.sigma(x.quotient_vertex).iter() {
            let z = g.apply_vertex(&x.step(src, s).expect("outgoing label"))?;
            let t = tgt
                .sigma(y.quotient_vertex)
                .iter()
                .find(|&t| y.step(tgt, t).as_ref() == Some(&z))
                .ok_or_else(|| IsometryError::NotAdjacent(src.format_word(&x.normal_form)))?;
            m[s.index()] = Some(t);
        }
        maps.push(m);
    }
    let root = g.apply_vertex(&XVertex::root(src))?.normal_form;
    Ok(CubicalPortrait::from_maps(src, tgt, root, depth, maps))
}

/// Local action of `g` at the vertex `x`, read off from neighbour images.
pub fn local_action(g: &Isometry, x: &XVertex) -> Result<LocalMap, IsometryError> {
    let (src, tgt) = (g.source(), g.target());
    let y = g.apply_vertex(x)?;
    let mut m: LocalMap = vec![None; src.alphabet().len()];
    for s in src.sigma(x.quotient_vertex).iter() {
        let z = g.apply_vertex(&x.step(src, s).expect("outgoing label"))?;
        m[s.index()] = tgt
            .sigma(y.quotient_vertex)
            .iter()
            .find(|&t| y.step(tgt, t).as_ref() == Some(&z));
    }
    Ok(m)
}

/// True iff `g` and `h` agree on every vertex of `B_n(o)`.
pub fn equal_to_depth(g: &Isometry, h: &Isometry, n: usize) -> Result<bool, IsometryError> {
    if *g.source != *h.source || *g.target != *h.target {
        return Err(IsometryError::BasepointMismatch);
    }
    for x in g.source.ball(n).vertices() {
        if g.apply_vertex(x)? != h.apply_vertex(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `g` fixes every vertex of `B_n(o)`.
pub fn fixes_ball(g: &Isometry, n: usize) -> Result<bool, IsometryError> {
    equal_to_depth(g, &Isometry::identity(g.source()), n)
}
