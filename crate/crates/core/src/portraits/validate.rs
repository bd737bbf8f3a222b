use super::{CubicalPortrait, Obstruction, ObstructionKind};
use crate::complex::VertexId;
use crate::labeling::{Sym, SymSet};
use crate::words::{endpoint, Word};

/// Image data along the canonical path to a vertex: the image word, the
/// target quotient vertex it reaches and the red set of the local image
/// (relative to the root's endpoint).
#[derive(Debug, Clone)]
struct ImageState {
    word: Option<Word>,
    vertex: Option<VertexId>,
    red: SymSet,
}

/// Image states for every vertex of `B_upto(o)`, following each normal
/// form from the basepoint.
fn canonical_images(p: &CubicalPortrait, upto: usize) -> Vec<ImageState> {
    let tgt = p.target.alphabet();
    let ball = &p.ball;
    let mut out: Vec<ImageState> = Vec::with_capacity(ball.within(upto).len());
    out.push(ImageState {
        word: Some(p.root.clone()),
        vertex: p.target.walk_from(p.target.basepoint(), &p.root),
        red: SymSet::EMPTY,
    });
    for i in ball.within(upto).skip(1) {
        let nf = &ball.vertex(i).normal_form;
        let (s, prefix) = nf.split_last().expect("non-root vertices are nonempty");
        let j = ball.index_of(prefix).expect("prefixes of normal forms are normal forms");
        let parent = &out[j];
        let state = match (p.local(j, *s), &parent.word, parent.vertex) {
            (Some(t), Some(w), Some(q)) => ImageState {
                word: Some(w.with(t)),
                vertex: p.target.step(q, t),
                red: parent.red.intersection(tgt.commuting(t)).with(tgt.inv(t)),
            },
            _ => ImageState {
                word: None,
                vertex: None,
                red: SymSet::EMPTY,
            },
        };
        out.push(state);
    }
    out
}

fn domain(p: &CubicalPortrait, i: usize, reduced: bool) -> SymSet {
    let all = p.source.sigma(p.ball.vertex(i).quotient_vertex);
    if reduced {
        all.difference(p.ball.red(i))
    } else {
        all
    }
}

fn allowed(p: &CubicalPortrait, st: &ImageState, reduced: bool) -> SymSet {
    let all = st.vertex.map(|q| p.target.sigma(q)).unwrap_or_default();
    if reduced {
        all.difference(st.red)
    } else {
        all
    }
}

/// `σ_x` must map the domain bijectively onto the allowed target labels.
fn tree_violation(p: &CubicalPortrait, i: usize, dom: SymSet, allowed: SymSet) -> Option<String> {
    let tgt = p.target.alphabet();
    let mut image = SymSet::EMPTY;
    for s in dom.iter() {
        match p.local(i, s) {
            None => return Some(format!("no image for {}", p.source.alphabet().name(s))),
            Some(t) if image.contains(t) => {
                return Some(format!("{} is hit twice", tgt.name(t)))
            }
            Some(t) => image.insert(t),
        }
    }
    (image != allowed).then(|| {
        let names = |set: SymSet| set.iter().map(|s| tgt.name(s)).collect::<Vec<_>>().join(" ");
        format!("image {{{}}} differs from {{{}}}", names(image), names(allowed))
    })
}

fn comm_violated(p: &CubicalPortrait, i: usize, s: Sym, t: Sym) -> bool {
    match (p.local(i, s), p.local(i, t)) {
        (Some(x), Some(y)) => {
            p.source.alphabet().commutes(s, t) != p.target.alphabet().commutes(x, y)
        }
        _ => false,
    }
}

fn par_violated(p: &CubicalPortrait, i: usize, s: Sym, t: Sym) -> bool {
    match p.ball.neighbor(i, s) {
        Some(j) => p.local(i, t) != p.local(j, t),
        None => false,
    }
}

fn inv_violated(p: &CubicalPortrait, i: usize, s: Sym) -> bool {
    let Some(j) = p.ball.neighbor(i, s) else {
        return false;
    };
    let back = p.local(j, p.source.alphabet().inv(s));
    let forward = p.local(i, s).map(|t| p.target.alphabet().inv(t));
    back != forward
}

/// Compares the image endpoint along the canonical path with the one along
/// the geodesic through the predecessor across `alt`.
fn end_violated(p: &CubicalPortrait, images: &[ImageState], i: usize, alt: Sym) -> bool {
    let Some(j) = p.ball.neighbor(i, alt) else {
        return false;
    };
    let back = p.source.alphabet().inv(alt);
    let (Some(w1), Some(w2), Some(t)) = (&images[i].word, &images[j].word, p.local(j, back)) else {
        return false;
    };
    match (endpoint(&p.target, w1), endpoint(&p.target, &w2.with(t))) {
        (Ok(a), Ok(b)) => a != b,
        _ => false,
    }
}

fn obstruction(
    p: &CubicalPortrait,
    kind: ObstructionKind,
    i: usize,
    letters: Vec<Sym>,
    detail: String,
) -> Obstruction {
    Obstruction {
        kind,
        vertex: p.ball.vertex(i).normal_form.clone(),
        letters,
        detail,
    }
}

fn check(p: &CubicalPortrait, depth: usize, reduced: bool) -> Result<(), Obstruction> {
    let depth = depth.min(p.depth);
    let ball = &p.ball;
    let inside = ball.within(depth);
    let images = canonical_images(p, depth);
    let src = p.source.alphabet();
    let tgt = p.target.alphabet();
    let scope = if reduced { "reduced tree" } else { "edge tree" };

    for i in inside.clone() {
        let dom = domain(p, i, reduced);
        let st = &images[i];
        let kind = if i == 0 {
            ObstructionKind::Root
        } else {
            ObstructionKind::Tree
        };
        if i == 0 && st.vertex.is_none() {
            return Err(obstruction(p, kind, i, vec![], "root word leaves the target".into()));
        }
        if let Some(detail) = tree_violation(p, i, dom, allowed(p, st, reduced)) {
            return Err(obstruction(p, kind, i, vec![], format!("{scope}: {detail}")));
        }

        for s in dom.iter() {
            for t in dom.iter().filter(|&t| t > s) {
                if comm_violated(p, i, s, t) {
                    return Err(obstruction(
                        p,
                        ObstructionKind::Comm,
                        i,
                        vec![s, t],
                        "commutation not preserved".into(),
                    ));
                }
            }
        }

        for s in dom.iter() {
            if !ball.neighbor(i, s).is_some_and(|j| inside.contains(&j)) {
                continue;
            }
            for t in dom.intersection(src.commuting(s)).iter() {
                if reduced && ball.red(ball.neighbor(i, s).unwrap()).contains(t) {
                    continue;
                }
                if par_violated(p, i, s, t) {
                    return Err(obstruction(
                        p,
                        ObstructionKind::Par,
                        i,
                        vec![s, t],
                        format!(
                            "{} maps to {:?} here but {:?} across {}",
                            src.name(t),
                            p.local(i, t).map(|x| tgt.name(x)),
                            p.local(ball.neighbor(i, s).unwrap(), t).map(|x| tgt.name(x)),
                            src.name(s)
                        ),
                    ));
                }
            }
            if !reduced && inv_violated(p, i, s) {
                return Err(obstruction(
                    p,
                    ObstructionKind::Inv,
                    i,
                    vec![s],
                    format!(
                        "image of {} across {} is not the inverse image",
                        src.name(src.inv(s)),
                        src.name(s)
                    ),
                ));
            }
        }

        if let Some(&canonical) = ball.vertex(i).normal_form.last() {
            let canonical_back = src.inv(canonical);
            if let Some(alt) = ball.red(i).iter().find(|&r| r != canonical_back) {
                if end_violated(p, &images, i, alt) {
                    return Err(obstruction(
                        p,
                        ObstructionKind::End,
                        i,
                        vec![canonical_back, alt],
                        "two geodesics to this vertex have different image endpoints".into(),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Checks root, tree, comm, par, inv and end over `B_depth(o)`; returns the
/// first obstruction in canonical order. `par` and `inv` are skipped for
/// edges leaving the ball.
pub fn validate_cubical(p: &CubicalPortrait, depth: usize) -> Result<(), Obstruction> {
    check(p, depth, false)
}

/// The same conditions restricted to reduced paths: at each vertex only the
/// labels leading away from the basepoint are checked, against the target's
/// reduced labels at the image.
pub fn validate_red(p: &CubicalPortrait, depth: usize) -> Result<(), Obstruction> {
    check(p, depth, true)
}

pub(super) fn replay(ob: &Obstruction, p: &CubicalPortrait) -> bool {
    let Some(i) = p.ball.index_of(&ob.vertex) else {
        return false;
    };
    let l = &ob.letters;
    match ob.kind {
        ObstructionKind::Root | ObstructionKind::Tree => {
            let images = canonical_images(p, p.ball.dist(i));
            let st = &images[i];
            (i == 0 && st.vertex.is_none())
                || tree_violation(p, i, domain(p, i, false), allowed(p, st, false)).is_some()
                || tree_violation(p, i, domain(p, i, true), allowed(p, st, true)).is_some()
        }
        ObstructionKind::Comm => l.len() == 2 && comm_violated(p, i, l[0], l[1]),
        ObstructionKind::Par => l.len() == 2 && par_violated(p, i, l[0], l[1]),
        ObstructionKind::Inv => l.len() == 1 && inv_violated(p, i, l[0]),
        ObstructionKind::End => {
            let images = canonical_images(p, p.ball.dist(i));
            l.len() == 2 && end_violated(p, &images, i, l[1])
        }
        ObstructionKind::Seed => false,
    }
}
