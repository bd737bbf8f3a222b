use std::collections::HashMap;
use std::ops::Range;

use super::{append_reduced, normal_form, red_set_of, shortlex, Word, XVertex};
use crate::labeling::{Sym, SymSet};
use crate::space::Space;

/// The closed ball `B_n(o)` of the universal cover with its induced graph.
///
/// Vertices are sorted by distance, then lexicographically by normal form, so
/// index order is the canonical vertex order.
#[derive(Debug, Clone)]
pub struct Ball {
    radius: usize,
    vertices: Vec<XVertex>,
    red: Vec<SymSet>,
    sphere_start: Vec<usize>,
    index: HashMap<Word, usize>,
    /// `neighbors[i][s]`: the neighbour across label `s`, if inside the ball.
    neighbors: Vec<Vec<Option<usize>>>,
}

pub fn enumerate_ball(space: &Space, n: usize) -> Ball {
    let alpha = space.alphabet();
    let mut vertices = vec![XVertex::root(space)];
    let mut red = vec![SymSet::EMPTY];
    let mut sphere_start = vec![0, 1];
    let mut index = HashMap::from([(Word::empty(), 0)]);

    for _ in 0..n {
        let sphere = sphere_start[sphere_start.len() - 2]..sphere_start[sphere_start.len() - 1];
        let mut next: Vec<(Word, usize, Sym)> = Vec::new();
        for i in sphere {
            let v = &vertices[i];
            for s in space.sigma(v.quotient_vertex).difference(red[i]).iter() {
                let nf = normal_form(alpha, &v.normal_form.with(s)).expect("extension stays reduced");
                next.push((nf, i, s));
            }
        }
        next.sort_by(|a, b| shortlex(&a.0, &b.0));
        next.dedup_by(|a, b| a.0 == b.0);
        for (nf, parent, s) in next {
            let p = space
                .step(vertices[parent].quotient_vertex, s)
                .expect("label is outgoing");
            index.insert(nf.clone(), vertices.len());
            red.push(red_set_of(alpha, &nf));
            vertices.push(XVertex {
                normal_form: nf,
                quotient_vertex: p,
            });
        }
        sphere_start.push(vertices.len());
    }

    let neighbors = vertices
        .iter()
        .map(|v| {
            (0..alpha.len())
                .map(|k| {
                    let s = Sym(k as u8);
                    space.step(v.quotient_vertex, s)?;
                    let w = append_reduced(alpha, &v.normal_form, s);
                    let nf = normal_form(alpha, &w).expect("reduced");
                    index.get(&nf).copied()
                })
                .collect()
        })
        .collect();

    Ball {
        radius: n,
        vertices,
        red,
        sphere_start,
        index,
        neighbors,
    }
}

impl Ball {
    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[XVertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &XVertex {
        &self.vertices[i]
    }

    pub fn index_of(&self, normal_form: &[Sym]) -> Option<usize> {
        self.index.get(normal_form).copied()
    }

    pub fn dist(&self, i: usize) -> usize {
        self.vertices[i].normal_form.len()
    }

    pub fn red(&self, i: usize) -> SymSet {
        self.red[i]
    }

    /// Indices of the vertices at distance `k`.
    pub fn sphere(&self, k: usize) -> Range<usize> {
        if k > self.radius {
            return self.len()..self.len();
        }
        self.sphere_start[k]..self.sphere_start[k + 1]
    }

    /// Index range of `B_k(o)` for `k ≤ radius`.
    pub fn within(&self, k: usize) -> Range<usize> {
        0..self.sphere_start[k.min(self.radius) + 1]
    }

    pub fn neighbor(&self, i: usize, s: Sym) -> Option<usize> {
        self.neighbors[i][s.index()]
    }

    /// Neighbours one step closer to the basepoint, as `(j, s)` with `j`
    /// reaching `i` along `s`.
    pub fn predecessors<'a>(
        &'a self,
        i: usize,
        space: &'a Space,
    ) -> impl Iterator<Item = (usize, Sym)> + 'a {
        self.red[i].iter().map(move |r| {
            let j = self.neighbors[i][r.index()].expect("predecessors are inside the ball");
            (j, space.alphabet().inv(r))
        })
    }

    /// Walks `letters` from vertex `i` inside the ball.
    pub fn walk(&self, i: usize, letters: &[Sym]) -> Option<usize> {
        letters.iter().try_fold(i, |at, &s| self.neighbor(at, s))
    }

    /// Breadth-first distances from vertex `i` in the induced graph.
    pub fn graph_distances(&self, i: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[i] = Some(0);
        let mut queue = std::collections::VecDeque::from([i]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for v in self.neighbors[u].iter().flatten() {
                if dist[*v].is_none() {
                    dist[*v] = Some(d + 1);
                    queue.push_back(*v);
                }
            }
        }
        dist
    }
}
