//! Path-language trees of finite labelled graphs, the edge and reduced-path
//! automata of a labelled complex, and word-indexed portraits between trees.

mod automaton;
mod generic;

use crate::complex::VertexId;
use crate::labeling::{Sym, SymSet};
use crate::space::Space;
use crate::words::Word;

pub use automaton::PathAutomaton;
pub use generic::{
    validate_generic_portrait, GenericPortrait, GenericPortraitError, TreeMapKind, TreeMapReport,
};

/// States are quotient vertices; accepts exactly the edge paths from the
/// basepoint.
pub fn build_edge_automaton(space: &Space) -> PathAutomaton<VertexId> {
    PathAutomaton::explore(
        space.alphabet().names().to_vec(),
        space.basepoint(),
        |&p, s| space.step(p, s),
    )
}

/// A reduced-path automaton state: the quotient vertex and the red set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RedState {
    pub vertex: VertexId,
    pub red: SymSet,
}

/// States are the reachable pairs (quotient vertex, red set); accepts exactly
/// the reduced edge paths from the basepoint.
pub fn build_red_automaton(space: &Space) -> PathAutomaton<RedState> {
    let alpha = space.alphabet();
    PathAutomaton::explore(
        alpha.names().to_vec(),
        RedState {
            vertex: space.basepoint(),
            red: SymSet::EMPTY,
        },
        |st, s| {
            if st.red.contains(s) {
                return None;
            }
            let vertex = space.step(st.vertex, s)?;
            Some(RedState {
                vertex,
                red: st.red.intersection(alpha.commuting(s)).with(alpha.inv(s)),
            })
        },
    )
}

pub fn describe_red_state(space: &Space, st: &RedState) -> String {
    let names: Vec<&str> = st.red.iter().map(|s| space.alphabet().name(s)).collect();
    format!(
        "({}, {{{}}})",
        space.complex().vertex_name(st.vertex),
        names.join(", ")
    )
}

/// One shortlex-least reduced word per reduced-path automaton state, in
/// state order; the first is the empty word.
pub fn red_state_representatives(space: &Space) -> Vec<Word> {
    let mut reps = build_red_automaton(space).representatives();
    reps.sort_by(|a, b| crate::words::shortlex(a, b));
    reps
}

/// Labels at the state reached by `v`, empty if `v` is rejected.
pub fn sigma_v<P>(automaton: &PathAutomaton<P>, v: &[Sym]) -> SymSet {
    automaton.sigma_v(v)
}
