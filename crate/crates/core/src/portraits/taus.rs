use super::LocalMap;
use crate::labeling::{Alphabet, Sym, SymSet};
use crate::space::Space;
use crate::words::{red_sets, WordError};

/// All ways to extend `base` by sending each letter of `free` injectively
/// into `pool`, keeping commutation between every pair of defined letters.
/// Lexicographic in the images of `free`.
pub(crate) fn completions(
    src: &Alphabet,
    tgt: &Alphabet,
    base: &LocalMap,
    free: &[Sym],
    pool: SymSet,
) -> Vec<LocalMap> {
    fn go(
        src: &Alphabet,
        tgt: &Alphabet,
        map: &mut LocalMap,
        free: &[Sym],
        pool: SymSet,
        out: &mut Vec<LocalMap>,
    ) {
        let Some((&s, rest)) = free.split_first() else {
            out.push(map.clone());
            return;
        };
        for t in pool.iter() {
            let consistent = map.iter().enumerate().all(|(k, image)| match image {
                Some(u) => src.commutes(s, Sym(k as u8)) == tgt.commutes(t, *u),
                None => true,
            });
            if consistent {
                map[s.index()] = Some(t);
                go(src, tgt, map, rest, pool.difference(SymSet::single(t)), out);
                map[s.index()] = None;
            }
        }
    }
    let mut map = base.clone();
    let mut out = Vec::new();
    go(src, tgt, &mut map, free, pool, &mut out);
    out
}

/// Bijections of the outgoing labels at the endpoint of the reduced word `v`
/// that preserve commutation and fix the commuting span of its red set.
pub fn enumerate_candidate_taus(space: &Space, v: &[Sym]) -> Result<Vec<LocalMap>, WordError> {
    let alpha = space.alphabet();
    let sets = red_sets(space, v)?;
    let out = space.sigma(space.walk_from(space.basepoint(), v).expect("checked by red_sets"));
    let mut base: LocalMap = vec![None; alpha.len()];
    for s in sets.span.iter() {
        base[s.index()] = Some(s);
    }
    let free: Vec<Sym> = out.difference(sets.span).iter().collect();
    let pool = out.difference(sets.span);
    Ok(completions(alpha, alpha, &base, &free, pool))
}
