use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::labeling::{Sym, SymSet};
use crate::words::Word;

/// A finite rooted graph with outgoing edges labelled injectively; its path
/// language from the start state is a rooted tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathAutomaton<P> {
    symbols: Vec<String>,
    start: usize,
    transitions: Vec<Vec<Option<usize>>>,
    payload: Vec<P>,
}

impl<P: Clone + Eq + std::hash::Hash> PathAutomaton<P> {
    /// Materializes the states reachable from `start` by breadth-first search
    /// in symbol order. `next` returns the successor payload on a symbol.
    pub fn explore(
        symbols: Vec<String>,
        start: P,
        mut next: impl FnMut(&P, Sym) -> Option<P>,
    ) -> Self {
        let mut payload = vec![start.clone()];
        let mut index = HashMap::from([(start, 0usize)]);
        let mut transitions = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(q) = queue.pop_front() {
            let mut row = vec![None; symbols.len()];
            for (k, slot) in row.iter_mut().enumerate() {
                let Some(target) = next(&payload[q], Sym(k as u8)) else {
                    continue;
                };
                let id = *index.entry(target.clone()).or_insert_with(|| {
                    payload.push(target);
                    queue.push_back(payload.len() - 1);
                    payload.len() - 1
                });
                *slot = Some(id);
            }
            if transitions.len() <= q {
                transitions.resize(q + 1, Vec::new());
            }
            transitions[q] = row;
        }
        PathAutomaton {
            symbols,
            start: 0,
            transitions,
            payload,
        }
    }
}

impl<P> PathAutomaton<P> {
    pub fn state_count(&self) -> usize {
        self.payload.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn payload(&self, q: usize) -> &P {
        &self.payload[q]
    }

    pub fn step(&self, q: usize, s: Sym) -> Option<usize> {
        self.transitions[q][s.index()]
    }

    pub fn run(&self, w: &[Sym]) -> Option<usize> {
        w.iter().try_fold(self.start, |q, &s| self.step(q, s))
    }

    pub fn accepts(&self, w: &[Sym]) -> bool {
        self.run(w).is_some()
    }

    /// Labels leaving state `q`.
    pub fn out_labels(&self, q: usize) -> SymSet {
        self.transitions[q]
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_some())
            .map(|(k, _)| Sym(k as u8))
            .collect()
    }

    /// `Σ_v`: labels extending `v`, empty when `v` is rejected.
    pub fn sigma_v(&self, v: &[Sym]) -> SymSet {
        self.run(v).map(|q| self.out_labels(q)).unwrap_or_default()
    }

    /// The shortlex-least word reaching each state.
    pub fn representatives(&self) -> Vec<Word> {
        let mut reps: Vec<Option<Word>> = vec![None; self.state_count()];
        reps[self.start] = Some(Word::empty());
        let mut queue = VecDeque::from([self.start]);
        while let Some(q) = queue.pop_front() {
            let w = reps[q].clone().expect("queued states have words");
            for (k, t) in self.transitions[q].iter().enumerate() {
                if let Some(t) = *t {
                    if reps[t].is_none() {
                        reps[t] = Some(w.with(Sym(k as u8)));
                        queue.push_back(t);
                    }
                }
            }
        }
        reps.into_iter()
            .map(|w| w.expect("every state is reachable"))
            .collect()
    }

    /// Accepted words of length `0..=n`, grouped by length, lexicographic
    /// within each group.
    pub fn enumerate_words(&self, n: usize) -> Vec<Vec<Word>> {
        let mut layers: Vec<Vec<(Word, usize)>> = vec![vec![(Word::empty(), self.start)]];
        for _ in 0..n {
            let last = layers.last().unwrap();
            let mut next = Vec::new();
            for (w, q) in last {
                for (k, t) in self.transitions[*q].iter().enumerate() {
                    if let Some(t) = t {
                        next.push((w.with(Sym(k as u8)), *t));
                    }
                }
            }
            layers.push(next);
        }
        layers
            .into_iter()
            .map(|layer| layer.into_iter().map(|(w, _)| w).collect())
            .collect()
    }

    /// Number of accepted words of each length `0..=n`.
    pub fn count_words(&self, n: usize) -> Vec<u64> {
        let mut counts = vec![0u64; self.state_count()];
        counts[self.start] = 1;
        let mut out = vec![1];
        for _ in 0..n {
            let mut next = vec![0u64; self.state_count()];
            for (q, &c) in counts.iter().enumerate() {
                for t in self.transitions[q].iter().flatten() {
                    next[*t] += c;
                }
            }
            out.push(next.iter().sum());
            counts = next;
        }
        out
    }

    pub fn to_dot(&self, name: &str, label: impl Fn(&P) -> String) -> String {
        let mut out = format!("digraph {name} {{\n  rankdir=LR;\n");
        for (q, p) in self.payload.iter().enumerate() {
            let shape = if q == self.start { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  q{q} [shape={shape}, label=\"{}\"];", label(p));
        }
        for (q, row) in self.transitions.iter().enumerate() {
            for (k, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    let _ = writeln!(out, "  q{q} -> q{t} [label=\"{}\"];", self.symbols[k]);
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// One `q --s--> r` line per transition.
    pub fn transition_dump(&self, label: impl Fn(&P) -> String) -> String {
        let mut out = String::new();
        for (q, row) in self.transitions.iter().enumerate() {
            let _ = writeln!(out, "state {q}: {}", label(&self.payload[q]));
            for (k, t) in row.iter().enumerate() {
                if let Some(t) = t {
                    let _ = writeln!(out, "  {} -> {t}", self.symbols[k]);
                }
            }
        }
        out
    }
}
