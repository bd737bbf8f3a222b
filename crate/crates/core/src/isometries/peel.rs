use thiserror::Error;

use super::{compose_all, fixes_ball, local_action, make_a_v_tau, AvtError, Isometry, IsometryError};
use crate::portraits::{LocalMap, SolverOptions};
use crate::words::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PeelError {
    #[error(transparent)]
    Isometry(#[from] IsometryError),
    #[error("the isometry does not fix the ball of radius {0}")]
    NotFixing(usize),
    #[error("no generator for vertex `{vertex}` at this depth: {source}")]
    GeneratorSynthesisFailed {
        vertex: String,
        tau: LocalMap,
        source: Box<AvtError>,
    },
}

#[derive(Debug, Clone)]
pub struct Peeled {
    /// `(v, τ, A_{v,τ})` in canonical vertex order; identity actions are
    /// skipped.
    pub factors: Vec<(Word, LocalMap, Isometry)>,
    /// `(∏ factors)⁻¹ ∘ g`, fixing `B_{n+1}(o)`.
    pub residual: Isometry,
}

impl Peeled {
    /// `A_1 ∘ A_2 ∘ ⋯` in factor order.
    pub fn product(&self) -> Result<Isometry, IsometryError> {
        match self.factors.is_empty() {
            true => Ok(Isometry::identity(self.residual.source())),
            false => compose_all(&self.factors.iter().map(|f| f.2.clone()).collect::<Vec<_>>()),
        }
    }
}

/// One peeling step: for an isometry fixing `B_n(o)`, factors out the local
/// actions at the sphere of radius `n` so that the residual fixes
/// `B_{n+1}(o)`. Generators are synthesized at `depth`.
pub fn peel(g: &Isometry, n: usize, depth: usize, options: SolverOptions) -> Result<Peeled, PeelError> {
    let space = g.source();
    if !fixes_ball(g, n)? {
        return Err(PeelError::NotFixing(n));
    }
    let ball = space.ball(n);
    let mut factors = Vec::new();
    for i in ball.sphere(n) {
        let x = ball.vertex(i);
        let tau = local_action(g, x)?;
        let identity = tau.iter().enumerate().all(|(k, t)| t.is_none_or(|t| t.index() == k));
        if identity {
            continue;
        }
        let a = make_a_v_tau(space, &x.normal_form, &tau, depth, options).map_err(|source| {
            PeelError::GeneratorSynthesisFailed {
                vertex: space.format_word(&x.normal_form),
                tau: tau.clone(),
                source: Box::new(source),
            }
        })?;
        factors.push((x.normal_form.clone(), tau, a));
    }
    let mut peeled = Peeled {
        factors,
        residual: g.clone(),
    };
    let product = peeled.product()?;
    peeled.residual = compose_all(&[product.inverse()?, g.clone()])?;
    Ok(peeled)
}
