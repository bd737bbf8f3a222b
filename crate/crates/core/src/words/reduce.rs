use super::{Word, WordError};
use crate::labeling::{Alphabet, Sym};

/// The lexicographically least pair of 0-based positions `(i, j)` with
/// `w[j] = inv(w[i])` and `w[i]` commuting with every letter strictly between.
pub fn find_innermost_cancellation(alpha: &Alphabet, w: &[Sym]) -> Option<(usize, usize)> {
    for i in 0..w.len() {
        let target = alpha.inv(w[i]);
        for j in (i + 1)..w.len() {
            if w[j] == target {
                return Some((i, j));
            }
            if !alpha.commutes(w[i], w[j]) {
                break;
            }
        }
    }
    None
}

pub fn is_reduced(alpha: &Alphabet, w: &[Sym]) -> bool {
    find_innermost_cancellation(alpha, w).is_none()
}

/// Deletes least innermost cancellations until none is left.
pub fn reduce(alpha: &Alphabet, w: &[Sym]) -> Word {
    let mut v = w.to_vec();
    while let Some((i, j)) = find_innermost_cancellation(alpha, &v) {
        v.remove(j);
        v.remove(i);
    }
    Word::from(v)
}

/// Reduces `w · s` for reduced `w`. The only possible cancellation pairs `s`
/// with the last `inv(s)` that it commutes past.
pub fn append_reduced(alpha: &Alphabet, w: &[Sym], s: Sym) -> Word {
    let target = alpha.inv(s);
    for k in (0..w.len()).rev() {
        if w[k] == target {
            let mut v = w.to_vec();
            v.remove(k);
            return Word::from(v);
        }
        if !alpha.commutes(s, w[k]) {
            break;
        }
    }
    let mut v = w.to_vec();
    v.push(s);
    Word::from(v)
}

/// Lex-least word in the commutation class of a reduced word: repeatedly
/// emit the least letter that commutes with everything before it.
pub fn normal_form(alpha: &Alphabet, w: &[Sym]) -> Result<Word, WordError> {
    if !is_reduced(alpha, w) {
        return Err(WordError::NotReduced(
            w.iter()
                .map(|&s| alpha.name(s))
                .collect::<Vec<_>>()
                .join(" "),
        ));
    }
    let mut rest = w.to_vec();
    let mut out = Vec::with_capacity(w.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for k in 0..rest.len() {
            if best.is_some_and(|b| rest[b] <= rest[k]) {
                continue;
            }
            if rest[..k].iter().all(|&m| alpha.commutes(rest[k], m)) {
                best = Some(k);
            }
        }
        let k = best.expect("the first letter is always available");
        out.push(rest.remove(k));
    }
    Ok(Word::from(out))
}

/// True iff every letter of `v` commutes with every letter of `w`.
pub fn words_commute(alpha: &Alphabet, v: &[Sym], w: &[Sym]) -> bool {
    v.iter().all(|&s| w.iter().all(|&t| alpha.commutes(s, t)))
}
