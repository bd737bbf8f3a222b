//! Depth-bounded synthesis of cubical portraits from partial seeds.
//!
//! Vertices of `B_depth(o)` are assigned in canonical order. At each vertex
//! the image is read off every predecessor, forced values are propagated
//! from predecessors (`inv`, `par`), the seed and must-fix successors, and
//! the remaining labels branch over commutation-preserving bijections onto
//! the image's labels. Dead ends backjump to the latest vertex the failure
//! depends on.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::taus::completions;
use super::{CubicalPortrait, LocalMap, Obstruction, ObstructionKind};
use crate::labeling::{Sym, SymSet};
use crate::space::Space;
use crate::words::{endpoint, Ball, Word, XVertex};

/// Constraints on the solution, keyed by source normal forms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Seed {
    /// Prescribed local images `(source letter, target letter)`.
    pub partial: BTreeMap<Word, Vec<(Sym, Sym)>>,
    /// Vertices the isometry must fix (source and target must coincide).
    pub must_fix: BTreeSet<Word>,
}

impl Seed {
    pub fn with_map(mut self, vertex: Word, map: &LocalMap) -> Self {
        let entry = self.partial.entry(vertex).or_default();
        for (k, t) in map.iter().enumerate() {
            if let Some(t) = t {
                entry.push((Sym(k as u8), *t));
            }
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValueOrder {
    /// Lexicographic: the first solution is the canonical-least one.
    #[default]
    Canonical,
    /// Candidates shuffled per vertex by a generator seeded from the value
    /// and the vertex index.
    Random(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    pub order: ValueOrder,
    /// Maximum number of local-map assignments before giving up.
    pub node_limit: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            order: ValueOrder::Canonical,
            node_limit: 1_000_000,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("inconsistent seed: {0}")]
    SeedInconsistent(String),
    #[error("no extension: {0:?}")]
    Obstructed(Obstruction),
    #[error("search budget exhausted after {nodes} assignments")]
    SearchBudgetExceeded { nodes: u64 },
}

struct Problem<'a> {
    source: &'a Space,
    target: &'a Space,
    ball: &'a Ball,
    n: usize,
    root: XVertex,
    partial: Vec<Vec<(Sym, Sym)>>,
    fixed: Vec<bool>,
    ancestors: Vec<FixedBitSet>,
}

impl Problem<'_> {
    fn obstruction(&self, kind: ObstructionKind, i: usize, letters: Vec<Sym>, detail: &str) -> Obstruction {
        Obstruction {
            kind,
            vertex: self.ball.vertex(i).normal_form.clone(),
            letters,
            detail: detail.to_string(),
        }
    }

    fn image(&self, i: usize, maps: &[LocalMap], images: &[Option<XVertex>]) -> Result<XVertex, Obstruction> {
        if i == 0 {
            return Ok(self.root.clone());
        }
        let src = self.source.alphabet();
        let mut found: Option<(XVertex, Sym)> = None;
        for (j, s) in self.ball.predecessors(i, self.source) {
            let t = maps[j][s.index()].expect("predecessors are complete");
            let x = images[j]
                .as_ref()
                .expect("predecessors have images")
                .step(self.target, t)
                .ok_or_else(|| self.obstruction(ObstructionKind::Tree, j, vec![s], "image label is not outgoing"))?;
            match &found {
                None => found = Some((x, src.inv(s))),
                Some((y, r)) if *y != x => {
                    return Err(self.obstruction(
                        ObstructionKind::End,
                        i,
                        vec![*r, src.inv(s)],
                        "two geodesics to this vertex have different image endpoints",
                    ))
                }
                Some(_) => {}
            }
        }
        Ok(found.expect("non-root vertices have predecessors").0)
    }

    /// Candidate local maps at `i`, or the obstruction preventing any.
    fn candidates(
        &self,
        i: usize,
        maps: &[LocalMap],
        images: &[Option<XVertex>],
    ) -> Result<(XVertex, Vec<LocalMap>), Obstruction> {
        let src = self.source.alphabet();
        let tgt = self.target.alphabet();
        let x = self.ball.vertex(i);
        let image = self.image(i, maps, images)?;
        if self.fixed[i] && image != *x {
            return Err(self.obstruction(ObstructionKind::Seed, i, vec![], "must-fix vertex is moved"));
        }
        let dom = self.source.sigma(x.quotient_vertex);
        let allowed = self.target.sigma(image.quotient_vertex);
        if dom.len() != allowed.len() {
            return Err(self.obstruction(ObstructionKind::Tree, i, vec![], "label counts differ at the image"));
        }

        let mut base: LocalMap = vec![None; src.len()];
        let mut force = |s: Sym, t: Sym, kind: ObstructionKind, letters: Vec<Sym>| -> Result<(), Obstruction> {
            if !allowed.contains(t) {
                return Err(self.obstruction(ObstructionKind::Tree, i, letters, "forced image is not outgoing at the image vertex"));
            }
            match base[s.index()] {
                Some(u) if u != t => Err(self.obstruction(kind, i, letters, "conflicting forced images")),
                _ => {
                    base[s.index()] = Some(t);
                    Ok(())
                }
            }
        };

        for &(s, t) in &self.partial[i] {
            force(s, t, ObstructionKind::Seed, vec![s])?;
        }
        for (j, s) in self.ball.predecessors(i, self.source) {
            let back = src.inv(s);
            let t = maps[j][s.index()].expect("predecessors are complete");
            force(back, tgt.inv(t), ObstructionKind::Inv, vec![back])?;
            for u in self.source.sigma(self.ball.vertex(j).quotient_vertex).intersection(src.commuting(s)).iter() {
                let image_u = maps[j][u.index()].expect("predecessors are complete");
                force(u, image_u, ObstructionKind::Par, vec![back, u])?;
            }
        }
        for s in dom.iter() {
            let Some(k) = self.ball.neighbor(i, s) else { continue };
            if k <= i || !self.fixed[k] {
                continue;
            }
            let goal = self.ball.vertex(k);
            let t = allowed
                .iter()
                .find(|&t| image.step(self.target, t).as_ref() == Some(goal))
                .ok_or_else(|| self.obstruction(ObstructionKind::Seed, i, vec![s], "must-fix neighbour is unreachable"))?;
            force(s, t, ObstructionKind::Seed, vec![s])?;
        }

        let mut used = SymSet::EMPTY;
        let defined: Vec<(Sym, Sym)> = dom.iter().filter_map(|s| base[s.index()].map(|t| (s, t))).collect();
        for &(s, t) in &defined {
            if used.contains(t) {
                return Err(self.obstruction(ObstructionKind::Tree, i, vec![s], "forced images collide"));
            }
            used.insert(t);
        }
        for &(s, t) in &defined {
            for &(u, w) in &defined {
                if s < u && src.commutes(s, u) != tgt.commutes(t, w) {
                    return Err(self.obstruction(ObstructionKind::Comm, i, vec![s, u], "forced images break commutation"));
                }
            }
        }
        let free: Vec<Sym> = dom.iter().filter(|s| base[s.index()].is_none()).collect();
        let out = completions(src, tgt, &base, &free, allowed.difference(used));
        if out.is_empty() {
            return Err(self.obstruction(ObstructionKind::Comm, i, free, "no commutation-preserving completion"));
        }
        Ok((image, out))
    }
}

fn ancestor_sets(ball: &Ball, space: &Space, n: usize) -> Vec<FixedBitSet> {
    let mut out: Vec<FixedBitSet> = Vec::with_capacity(n);
    for i in 0..n {
        let mut set = FixedBitSet::with_capacity(n);
        for (j, _) in ball.predecessors(i, space) {
            set.insert(j);
            set.union_with(&out[j]);
        }
        out.push(set);
    }
    out
}

fn normalize(space: &Space, ball: &Ball, w: &Word) -> Result<usize, SolveError> {
    let x = endpoint(space, w).map_err(|e| SolveError::SeedInconsistent(e.to_string()))?;
    ball.index_of(&x.normal_form).ok_or_else(|| {
        SolveError::SeedInconsistent(format!("vertex {} lies outside the ball", space.format_word(w)))
    })
}

/// Finds a cubical portrait of the given depth honouring the seed, with
/// `root` as the image of the basepoint.
pub fn solve_extension(
    source: &Arc<Space>,
    target: &Arc<Space>,
    root: &Word,
    seed: &Seed,
    depth: usize,
    options: SolverOptions,
) -> Result<CubicalPortrait, SolveError> {
    let ball = source.ball(depth);
    let n = ball.len();
    let src = source.alphabet();
    let tgt = target.alphabet();

    let mut partial: Vec<Vec<(Sym, Sym)>> = vec![Vec::new(); n];
    for (w, pairs) in &seed.partial {
        let i = normalize(source, &ball, w)?;
        let dom = source.sigma(ball.vertex(i).quotient_vertex);
        for &(s, t) in pairs {
            if !dom.contains(s) || t.index() >= tgt.len() {
                return Err(SolveError::SeedInconsistent(format!(
                    "letter {} is not outgoing at {}",
                    src.name(s),
                    source.format_word(w)
                )));
            }
            if let Some(&(_, u)) = partial[i].iter().find(|(s2, _)| *s2 == s) {
                if u != t {
                    return Err(SolveError::SeedInconsistent(format!(
                        "{} has two images at {}",
                        src.name(s),
                        source.format_word(w)
                    )));
                }
                continue;
            }
            partial[i].push((s, t));
        }
    }
    let mut fixed = vec![false; n];
    if !seed.must_fix.is_empty() && **source != **target {
        return Err(SolveError::SeedInconsistent("must-fix needs source = target".into()));
    }
    for w in &seed.must_fix {
        fixed[normalize(source, &ball, w)?] = true;
    }

    let root_obstruction = |detail: &str| {
        SolveError::Obstructed(Obstruction {
            kind: ObstructionKind::Root,
            vertex: Word::empty(),
            letters: vec![],
            detail: detail.into(),
        })
    };
    let root_x = endpoint(target, root).map_err(|_| root_obstruction("root word leaves the target"))?;

    let problem = Problem {
        source,
        target,
        ball: &ball,
        n,
        root: root_x,
        partial,
        fixed,
        ancestors: ancestor_sets(&ball, source, n),
    };

    let mut maps: Vec<LocalMap> = vec![vec![None; src.len()]; n];
    let mut images: Vec<Option<XVertex>> = vec![None; n];
    let mut values: Vec<Vec<LocalMap>> = vec![Vec::new(); n];
    let mut next: Vec<usize> = vec![0; n];
    let mut conflicts: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
    let mut best: Option<(usize, Obstruction)> = None;
    let mut nodes: u64 = 0;

    let mut i = 0;
    let mut fresh = true;
    while i < problem.n {
        if fresh {
            conflicts[i].clear();
            next[i] = 0;
            match problem.candidates(i, &maps, &images) {
                Ok((image, mut cands)) => {
                    if let ValueOrder::Random(s) = options.order {
                        let mut rng = ChaCha8Rng::seed_from_u64(s ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                        cands.shuffle(&mut rng);
                    }
                    images[i] = Some(image);
                    values[i] = cands;
                }
                Err(ob) => {
                    if best.as_ref().is_none_or(|(k, _)| i < *k) {
                        best = Some((i, ob));
                    }
                    values[i].clear();
                }
            }
        }
        if next[i] < values[i].len() {
            maps[i] = values[i][next[i]].clone();
            next[i] += 1;
            nodes += 1;
            if nodes > options.node_limit {
                return Err(SolveError::SearchBudgetExceeded { nodes });
            }
            i += 1;
            fresh = true;
            continue;
        }
        let mut culprits = conflicts[i].clone();
        culprits.union_with(&problem.ancestors[i]);
        let Some(h) = culprits.ones().next_back() else {
            let (_, ob) = best.expect("a failure was recorded");
            return Err(SolveError::Obstructed(ob));
        };
        culprits.set(h, false);
        conflicts[h].union_with(&culprits);
        for k in h + 1..=i {
            maps[k].iter_mut().for_each(|m| *m = None);
            images[k] = None;
        }
        i = h;
        fresh = false;
    }
    Ok(CubicalPortrait::from_maps(source, target, root.clone(), depth, maps))
}
