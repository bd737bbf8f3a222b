use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::deck::tree_paths;
use super::{deck_generators, make_a_v_tau, Isometry};
use crate::labeling::Sym;
use crate::portraits::{enumerate_candidate_taus, solve_extension, LocalMap, Seed, SolveError, SolverOptions};
use crate::selfsim::red_state_representatives;
use crate::space::Space;
use crate::words::Word;

pub const A0_SCHEMA_VERSION: u32 = 1;

/// A quotient vertex whose lift was tested as an image of the basepoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRep {
    pub quotient_vertex: String,
    pub lift: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

/// One `(v, τ)` candidate and whether the solver realized it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct A0Entry {
    pub rep: String,
    pub tau: Vec<[String; 2]>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct A0Manifest {
    pub schema_version: u32,
    pub complex: String,
    pub depth: usize,
    pub deck_generators: Vec<String>,
    /// Orbit representatives come from a depth-bounded search and may
    /// over-approximate the true orbits.
    pub orbit_reps_approximate: bool,
    pub orbit_depth: usize,
    pub orbit_reps: Vec<OrbitRep>,
    pub red_reps: Vec<String>,
    pub a_family: Vec<A0Entry>,
    pub realized: usize,
    pub obstructed: usize,
}

/// The manifest together with the isometries it describes.
#[derive(Debug, Clone)]
pub struct GeneratingSet {
    pub manifest: A0Manifest,
    pub deck: Vec<Word>,
    pub orbit_reps: Vec<Isometry>,
    /// `(v, τ, A_{v,τ})` for every realized candidate.
    pub family: Vec<(Word, LocalMap, Isometry)>,
}

fn describe_tau(space: &Space, tau: &LocalMap) -> Vec<[String; 2]> {
    let alpha = space.alphabet();
    tau.iter()
        .enumerate()
        .filter_map(|(k, t)| t.map(|t| [alpha.name(Sym(k as u8)).to_string(), alpha.name(t).to_string()]))
        .collect()
}

fn failure(e: &impl std::fmt::Display) -> (String, Option<String>) {
    ("obstructed".into(), Some(e.to_string()))
}

/// Deck generators, orbit representatives, red-state representatives and
/// the `A_{v,τ}` family at `depth`.
pub fn build_a0(space: &Arc<Space>, depth: usize, options: SolverOptions) -> GeneratingSet {
    let deck = deck_generators(space);
    let orbit_depth = depth / 2;

    let (paths, _) = tree_paths(space);
    let mut orbit_reps = Vec::new();
    let mut orbit_records = Vec::new();
    let base = space.basepoint();
    let order = std::iter::once(base).chain((0..paths.len()).filter(|&p| p != base));
    for p in order {
        let Some(lift) = &paths[p] else { continue };
        let result = solve_extension(space, space, lift, &Seed::default(), orbit_depth, options);
        let (status, witness) = match &result {
            Ok(_) => ("realized".to_string(), None),
            Err(SolveError::Obstructed(ob)) => ("obstructed".to_string(), Some(ob.describe(space))),
            Err(e) => failure(e),
        };
        if let Ok(portrait) = result {
            orbit_reps.push(if p == base {
                Isometry::identity(space)
            } else {
                Isometry::from_portrait(portrait)
            });
        }
        orbit_records.push(OrbitRep {
            quotient_vertex: space.complex().vertex_name(p).to_string(),
            lift: space.format_word(lift),
            status,
            witness,
        });
    }

    let reps = red_state_representatives(space);
    let mut family = Vec::new();
    let mut entries = Vec::new();
    for v in &reps {
        let taus = enumerate_candidate_taus(space, v).expect("representatives are reduced");
        for tau in taus {
            let (status, witness) = match make_a_v_tau(space, v, &tau, depth, options) {
                Ok(a) => {
                    family.push((v.clone(), tau.clone(), a));
                    ("realized".to_string(), None)
                }
                Err(e) => failure(&e),
            };
            entries.push(A0Entry {
                rep: space.format_word(v),
                tau: describe_tau(space, &tau),
                status,
                witness,
            });
        }
    }

    let realized = family.len();
    let manifest = A0Manifest {
        schema_version: A0_SCHEMA_VERSION,
        complex: space.complex().name().unwrap_or("").to_string(),
        depth,
        deck_generators: deck.iter().map(|u| space.format_word(u)).collect(),
        orbit_reps_approximate: true,
        orbit_depth,
        orbit_reps: orbit_records,
        red_reps: reps.iter().map(|v| space.format_word(v)).collect(),
        obstructed: entries.len() - realized,
        a_family: entries,
        realized,
    };
    GeneratingSet {
        manifest,
        deck,
        orbit_reps,
        family,
    }
}
