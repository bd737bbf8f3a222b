use thiserror::Error;

use super::{validate_cubical, validate_red, CubicalPortrait, Obstruction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtendError {
    #[error("reduced-tree validation failed: {0:?}")]
    RedValidationFailed(Obstruction),
    /// The reduced-tree conditions held but the edge-tree ones did not. This
    /// is an implementation bug, never an input problem.
    #[error("edge-tree validation failed after a reduced-tree pass: {0:?}")]
    EdgeValidationFailed(Obstruction),
}

/// Completes a portrait whose local maps are known on the labels leading
/// away from the basepoint. Each backward label is filled from the
/// predecessor by `σ_x(r) = inv(σ_{xr}(inv r))`, then the full conditions
/// are verified on `B_depth(o)`.
pub fn extend_red_to_edge(
    p: &CubicalPortrait,
    depth: usize,
) -> Result<CubicalPortrait, ExtendError> {
    validate_red(p, depth).map_err(ExtendError::RedValidationFailed)?;
    let mut out = p.clone();
    let src = p.source.alphabet();
    let tgt = p.target.alphabet();
    for i in p.ball.within(depth.min(p.depth)) {
        for r in p.ball.red(i).iter() {
            let j = p.ball.neighbor(i, r).expect("predecessors are inside the ball");
            let image = p.local(j, src.inv(r)).map(|t| tgt.inv(t));
            out.set_local(i, r, image);
        }
    }
    validate_cubical(&out, depth).map_err(ExtendError::EdgeValidationFailed)?;
    Ok(out)
}
