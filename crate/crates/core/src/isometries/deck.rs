use std::collections::VecDeque;

use crate::complex::EdgeId;
use crate::space::Space;
use crate::words::{shortlex, Word};

/// Label words of a breadth-first spanning tree path from the basepoint to
/// each quotient vertex, with the tree edges.
pub(crate) fn tree_paths(space: &Space) -> (Vec<Option<Word>>, Vec<bool>) {
    let c = space.complex();
    let mut path: Vec<Option<Word>> = vec![None; c.vertex_count()];
    let mut tree = vec![false; c.edge_count()];
    path[c.basepoint()] = Some(Word::empty());
    let mut queue = VecDeque::from([c.basepoint()]);
    while let Some(p) = queue.pop_front() {
        for &e in c.outgoing(p) {
            let q = c.edge(e).end;
            if path[q].is_none() {
                path[q] = Some(path[p].as_ref().unwrap().with(space.labeling().label(e)));
                tree[e] = true;
                tree[c.reverse(e)] = true;
                queue.push_back(q);
            }
        }
    }
    (path, tree)
}

/// Loop words at the basepoint, one per non-tree edge of a breadth-first
/// spanning tree together with its inverse, in shortlex order.
pub fn deck_generators(space: &Space) -> Vec<Word> {
    let c = space.complex();
    let alpha = space.alphabet();
    let label = |e: EdgeId| space.labeling().label(e);
    let (path, tree) = tree_paths(space);

    let mut out: Vec<Word> = Vec::new();
    for (e, edge) in c.edges().iter().enumerate() {
        if tree[e] {
            continue;
        }
        let (Some(to_start), Some(to_end)) = (&path[edge.start], &path[edge.end]) else {
            continue;
        };
        out.push(to_start.with(label(e)).concat(&to_end.inverse(alpha)));
    }
    out.sort_by(|a, b| shortlex(a, b));
    out.dedup();
    out
}
