use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{CubicalPortrait, Seed};
use crate::space::Space;
use crate::words::{endpoint, WordError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortraitRecord {
    /// Normal form of the source vertex.
    pub vertex: String,
    /// `[source label, target label]` pairs in source symbol order.
    pub map: Vec<[String; 2]>,
}

/// On-disk portrait: a header and one record per ball vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortraitFile {
    pub schema_version: u32,
    pub source: String,
    pub target: String,
    pub target_root: String,
    pub depth: usize,
    pub records: Vec<PortraitRecord>,
}

impl PortraitFile {
    pub fn from_portrait(p: &CubicalPortrait) -> Self {
        let src = p.source().alphabet();
        let tgt = p.target().alphabet();
        let records = p
            .ball()
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, x)| PortraitRecord {
                vertex: p.source().format_word(&x.normal_form),
                map: p
                    .local_map(i)
                    .iter()
                    .enumerate()
                    .filter_map(|(k, t)| {
                        t.map(|t| [src.name(crate::labeling::Sym(k as u8)).to_string(), tgt.name(t).to_string()])
                    })
                    .collect(),
            })
            .collect();
        PortraitFile {
            schema_version: SCHEMA_VERSION,
            source: p.source().complex().name().unwrap_or("").to_string(),
            target: p.target().complex().name().unwrap_or("").to_string(),
            target_root: p.target().format_word(p.root()),
            depth: p.depth(),
            records,
        }
    }

    /// Rebuilds the table; vertices are resolved through their endpoints, so
    /// any word reaching a vertex is accepted as its key.
    pub fn to_portrait(&self, source: &Arc<Space>, target: &Arc<Space>) -> Result<CubicalPortrait, WordError> {
        let root = target.parse_word(&self.target_root)?;
        let mut p = CubicalPortrait::from_fn(source, target, root, self.depth, |_, _| None);
        for rec in &self.records {
            let x = endpoint(source, &source.parse_word(&rec.vertex)?)?;
            let Some(i) = p.ball().index_of(&x.normal_form) else {
                continue;
            };
            for [s, t] in &rec.map {
                p.set_local(i, source.parse_symbol(s)?, Some(target.parse_symbol(t)?));
            }
        }
        Ok(p)
    }
}

/// On-disk seed for the solver.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedFile {
    #[serde(default)]
    pub root: Option<String>,
    #[serde(default)]
    pub partial: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    pub must_fix: Vec<String>,
}

impl SeedFile {
    pub fn to_seed(&self, source: &Space, target: &Space) -> Result<Seed, WordError> {
        let mut seed = Seed::default();
        for (v, pairs) in &self.partial {
            let entry = seed.partial.entry(source.parse_word(v)?).or_default();
            for (s, t) in pairs {
                entry.push((source.parse_symbol(s)?, target.parse_symbol(t)?));
            }
        }
        for v in &self.must_fix {
            seed.must_fix.insert(source.parse_word(v)?);
        }
        Ok(seed)
    }
}
