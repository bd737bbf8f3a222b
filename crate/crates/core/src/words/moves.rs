use std::collections::{HashSet, VecDeque};

use super::{Word, WordError};
use crate::labeling::Sym;
use crate::space::Space;

/// One elementary rewrite of an edge path. Positions are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveSpec {
    /// Swap the letters at `position` and `position + 1`.
    Commute { position: usize },
    /// Insert `letter, inv(letter)` before `position`.
    Insert { position: usize, letter: Sym },
    /// Delete the pair at `position`, `position + 1`.
    Delete { position: usize },
}

impl MoveSpec {
    pub fn position(&self) -> usize {
        match *self {
            MoveSpec::Commute { position }
            | MoveSpec::Insert { position, .. }
            | MoveSpec::Delete { position } => position,
        }
    }
}

pub fn apply_move(space: &Space, w: &[Sym], m: MoveSpec) -> Result<Word, WordError> {
    let alpha = space.alphabet();
    let illegal = |reason: String| Err(WordError::IllegalMove(reason));
    let mut v = w.to_vec();
    match m {
        MoveSpec::Commute { position: i } => {
            if i + 1 >= w.len() {
                return illegal(format!("no letter pair at position {i}"));
            }
            if !alpha.commutes(w[i], w[i + 1]) {
                return illegal(format!(
                    "{} and {} do not commute",
                    alpha.name(w[i]),
                    alpha.name(w[i + 1])
                ));
            }
            v.swap(i, i + 1);
        }
        MoveSpec::Insert { position: i, letter } => {
            if i > w.len() {
                return illegal(format!("position {i} is past the end"));
            }
            let at = space.walk_from(space.basepoint(), &w[..i]);
            if at.and_then(|p| space.step(p, letter)).is_none() {
                return illegal(format!(
                    "{} is not outgoing at position {i}",
                    alpha.name(letter)
                ));
            }
            v.splice(i..i, [letter, alpha.inv(letter)]);
        }
        MoveSpec::Delete { position: i } => {
            if i + 1 >= w.len() || w[i + 1] != alpha.inv(w[i]) {
                return illegal(format!("no inverse pair at position {i}"));
            }
            v.drain(i..i + 2);
        }
    }
    Ok(Word::from(v))
}

/// Every legal move on `w` producing a word of length at most `budget`.
pub fn move_neighbours(space: &Space, w: &[Sym], budget: usize) -> Vec<Word> {
    let alpha = space.alphabet();
    let mut out = Vec::new();
    for i in 0..w.len().saturating_sub(1) {
        if alpha.commutes(w[i], w[i + 1]) {
            let mut v = w.to_vec();
            v.swap(i, i + 1);
            out.push(Word::from(v));
        }
        if w[i + 1] == alpha.inv(w[i]) {
            let mut v = w.to_vec();
            v.drain(i..i + 2);
            out.push(Word::from(v));
        }
    }
    if w.len() + 2 <= budget {
        let mut at = Some(space.basepoint());
        for i in 0..=w.len() {
            let Some(p) = at else { break };
            for s in space.sigma(p).iter() {
                let mut v = w.to_vec();
                v.splice(i..i, [s, alpha.inv(s)]);
                out.push(Word::from(v));
            }
            at = w.get(i).and_then(|&s| space.step(p, s));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MovesVerdict {
    Related,
    /// The reachable set closed under the budget without meeting the target.
    ClosedWithoutTarget,
}

pub const DEFAULT_STATE_CAP: usize = 2_000_000;

/// Breadth-first search over moves through words of length at most `budget`.
/// Fails with `BudgetExhausted` when an input is already longer than the
/// budget or more than `state_cap` words are visited.
pub fn moves_oracle(
    space: &Space,
    v: &[Sym],
    w: &[Sym],
    budget: usize,
    state_cap: usize,
) -> Result<MovesVerdict, WordError> {
    if v == w {
        return Ok(MovesVerdict::Related);
    }
    if v.len() > budget || w.len() > budget {
        return Err(WordError::BudgetExhausted { explored: 0 });
    }
    let mut seen: HashSet<Word> = HashSet::from([Word::from(v)]);
    let mut queue = VecDeque::from([Word::from(v)]);
    while let Some(u) = queue.pop_front() {
        for x in move_neighbours(space, &u, budget) {
            if x.letters() == w {
                return Ok(MovesVerdict::Related);
            }
            if seen.insert(x.clone()) {
                if seen.len() > state_cap {
                    return Err(WordError::BudgetExhausted {
                        explored: seen.len(),
                    });
                }
                queue.push_back(x);
            }
        }
    }
    Ok(MovesVerdict::ClosedWithoutTarget)
}
