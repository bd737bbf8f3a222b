use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;

use super::{EdgeId, QuotientComplex};

/// The square that merged two edges into one class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareWitness {
    pub first: EdgeId,
    pub second: EdgeId,
    pub square: usize,
}

/// Oriented parallel classes and hyperplanes of a square complex.
///
/// Classes are listed in order of their canonically least member; members are
/// sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelClasses {
    pub oriented_classes: Vec<Vec<EdgeId>>,
    /// Hyperplanes, as classes of unoriented edges (each edge represented by
    /// the canonically smaller orientation).
    pub unoriented_classes: Vec<Vec<EdgeId>>,
    pub witness: Vec<SquareWitness>,
    oriented_of: Vec<usize>,
    hyperplane_of: Vec<usize>,
}

impl ParallelClasses {
    /// Index of the oriented class containing `e`.
    pub fn oriented_class(&self, e: EdgeId) -> usize {
        self.oriented_of[e]
    }

    /// Index of the hyperplane crossed by `e` (either orientation).
    pub fn hyperplane(&self, e: EdgeId) -> usize {
        self.hyperplane_of[e]
    }

    pub fn same_oriented(&self, e: EdgeId, f: EdgeId) -> bool {
        self.oriented_of[e] == self.oriented_of[f]
    }

    /// Hyperplane adjacency: two hyperplanes are joined when they cross in a
    /// square.
    pub fn hyperplane_crossings(&self, complex: &QuotientComplex) -> Vec<(usize, usize)> {
        let mut pairs: Vec<(usize, usize)> = complex
            .squares()
            .iter()
            .map(|sq| {
                let h = self.hyperplane_of[sq[0]];
                let k = self.hyperplane_of[sq[1]];
                (h.min(k), h.max(k))
            })
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }

    pub fn hyperplane_dot(&self, complex: &QuotientComplex) -> String {
        let mut out = String::from("graph hyperplanes {\n");
        for (h, members) in self.unoriented_classes.iter().enumerate() {
            let names: Vec<&str> = members.iter().map(|&e| complex.edge(e).id.as_str()).collect();
            let _ = writeln!(out, "  h{h} [label=\"{}\"];", names.join(" "));
        }
        for (h, k) in self.hyperplane_crossings(complex) {
            let _ = writeln!(out, "  h{h} -- h{k};");
        }
        out.push_str("}\n");
        out
    }
}

/// Union-find closure of the square-wise parallelism relations.
///
/// In a square `(c1, c2, c3, c4)` the oriented relations are `c1 ~ reverse(c3)`
/// and `c2 ~ reverse(c4)` (together with their reversals); the unoriented ones
/// identify positions 1/3 and 2/4.
pub fn parallel_classes(complex: &QuotientComplex) -> ParallelClasses {
    let n = complex.edge_count();
    let mut oriented = UnionFind::<usize>::new(n);
    let mut unoriented = UnionFind::<usize>::new(n);
    let mut witness = Vec::new();
    for (k, sq) in complex.squares().iter().enumerate() {
        for (i, j) in [(0, 2), (1, 3)] {
            let a = sq[i];
            let b = complex.reverse(sq[j]);
            if oriented.union(a, b) {
                witness.push(SquareWitness {
                    first: a.min(b),
                    second: a.max(b),
                    square: k,
                });
            }
            oriented.union(complex.reverse(a), complex.reverse(b));
            unoriented.union(complex.unoriented(sq[i]), complex.unoriented(sq[j]));
        }
    }

    let (oriented_classes, oriented_of) = collect_classes(&oriented, n, 0..n);
    let reps: Vec<EdgeId> = (0..n).filter(|&e| complex.unoriented(e) == e).collect();
    let (unoriented_classes, rep_class) = collect_classes(&unoriented, n, reps.iter().copied());
    let hyperplane_of = (0..n).map(|e| rep_class[complex.unoriented(e)]).collect();

    ParallelClasses {
        oriented_classes,
        unoriented_classes,
        witness,
        oriented_of,
        hyperplane_of,
    }
}

/// Groups `members` by union-find root, ordering classes by least member.
fn collect_classes(
    uf: &UnionFind<usize>,
    n: usize,
    members: impl Iterator<Item = usize>,
) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_class = std::collections::HashMap::new();
    let mut class_of = vec![usize::MAX; n];
    for m in members {
        let root = uf.find(m);
        let idx = *root_class.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[idx].push(m);
        class_of[m] = idx;
    }
    (classes, class_of)
}
