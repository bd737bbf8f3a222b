use std::sync::Arc;

use thiserror::Error;

use super::{compose_all, left_multiplication, local_action, Isometry, IsometryError};
use crate::labeling::Sym;
use crate::portraits::{solve_extension, LocalMap, Seed, SolveError, SolverOptions};
use crate::space::Space;
use crate::words::{classify_type, endpoint, red_sets, reduce, VertexType, Word, WordError, XVertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AvtError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Isometry(#[from] IsometryError),
    #[error("vertex `{v}` lies beyond depth {depth}")]
    OutOfDepth { v: String, depth: usize },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("red sets of `{v}` and `{v_prime}` differ")]
    RedSetMismatch { v: String, v_prime: String },
    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

/// True iff the vertex `w` must be fixed by `A_{v,τ}`: Type 1 or 2 relative
/// to `(o, v)`, or the basepoint itself when `v` is empty.
fn pinned(space: &Space, v: &[Sym], w: &[Sym]) -> Result<bool, WordError> {
    if v.is_empty() {
        return Ok(w.is_empty());
    }
    Ok(classify_type(space, v, w)? != VertexType::Type3)
}

/// An isometry fixing every Type-1/2 vertex of `B_depth(o)` relative to
/// `(o, v)` with local action `τ` at `v`, found by the solver.
pub fn make_a_v_tau(
    space: &Arc<Space>,
    v: &[Sym],
    tau: &LocalMap,
    depth: usize,
    options: SolverOptions,
) -> Result<Isometry, AvtError> {
    red_sets(space, v)?;
    let x = endpoint(space, v)?;
    if x.distance() > depth {
        return Err(AvtError::OutOfDepth {
            v: space.format_word(v),
            depth,
        });
    }
    let mut seed = Seed::default().with_map(x.normal_form.clone(), tau);
    for y in space.ball(depth).vertices() {
        if pinned(space, v, &y.normal_form)? {
            seed.must_fix.insert(y.normal_form.clone());
        }
    }
    let p = solve_extension(space, space, &Word::empty(), &seed, depth, options)?;
    Ok(Isometry::from_portrait(p))
}

/// The `A_{v,τ}` postconditions on `B_depth(o)`: pinned vertices are fixed,
/// `B_|v|(o)` is fixed and the local action at `v` is `τ`.
pub fn check_avt(g: &Isometry, v: &[Sym], tau: &LocalMap, depth: usize) -> Result<(), AvtError> {
    let space = g.source();
    let x = endpoint(space, v)?;
    for y in space.ball(depth).vertices() {
        let pin = pinned(space, v, &y.normal_form)? || y.distance() <= x.distance();
        if pin && g.apply_vertex(y)? != *y {
            return Err(AvtError::Postcondition(format!(
                "vertex {} is moved",
                space.format_word(&y.normal_form)
            )));
        }
    }
    let action = local_action(g, &x)?;
    if action != *tau {
        return Err(AvtError::Postcondition(format!(
            "local action at {} differs from the prescribed one",
            space.format_word(v)
        )));
    }
    Ok(())
}

/// `L_u ∘ A ∘ L_u⁻¹` for an `A_{v,τ}`; an `A_{v',τ}` for `v' = u v` when the
/// red sets agree. Verified on the ball shrunk by the length of `u`.
pub fn conjugate_a(
    u: &[Sym],
    a: &Isometry,
    v: &[Sym],
    tau: &LocalMap,
    depth: usize,
) -> Result<(Isometry, XVertex), AvtError> {
    let space = a.source();
    let alpha = space.alphabet();
    let lu = left_multiplication(space, u)?;
    let x = endpoint(space, v)?;
    let v_prime = lu.apply_vertex(&x)?;
    if red_sets(space, v)?.red != red_sets(space, &v_prime.normal_form)?.red {
        return Err(AvtError::RedSetMismatch {
            v: space.format_word(v),
            v_prime: space.format_word(&v_prime.normal_form),
        });
    }
    let conj = compose_all(&[lu.clone(), a.clone(), lu.inverse()?])?;
    let shrunk = depth.saturating_sub(reduce(alpha, u).len());
    if v_prime.distance() <= shrunk {
        check_avt(&conj, &v_prime.normal_form, tau, shrunk)?;
    }
    Ok((conj, v_prime))
}
