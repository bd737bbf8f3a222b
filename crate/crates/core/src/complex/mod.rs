//! Finite square complexes: ingestion, validation, parallel classes and the
//! specialness pathologies.
//!
//! Only the 2-skeleton is represented. Higher cubes are implicit.

mod parallel;
mod raw;
mod salvetti;
mod special;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

pub use parallel::{parallel_classes, ParallelClasses, SquareWitness};
pub use raw::{RawComplex, RawEdge};
pub use salvetti::{build_salvetti, DefiningGraph};
pub use special::{
    check_special, InterOsculation, OneSided, SelfIntersection, SelfOsculation, SpecialnessReport,
};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Suffix used for auto-generated reverse edges.
pub const INVERSE_SUFFIX: &str = "^-1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` references unknown vertex `{vertex}`")]
    UnknownVertex { edge: String, vertex: String },
    #[error("square {square} references unknown edge `{edge}`")]
    UnknownEdge { square: usize, edge: String },
    #[error("broken involution at edge `{edge}`: {reason}")]
    BrokenInvolution { edge: String, reason: String },
    #[error("square {square} has {len} sides, expected 4")]
    SquareArity { square: usize, len: usize },
    #[error("square {square} is not closed: side {position} (`{edge}`) ends at `{end}` but the next side starts at `{next_start}`")]
    OpenSquareBoundary {
        square: usize,
        position: usize,
        edge: String,
        end: String,
        next_start: String,
    },
    #[error("square {square} folds back at corner {position}: side `{edge}` is followed by its own reverse")]
    DegenerateCorner {
        square: usize,
        position: usize,
        edge: String,
    },
    #[error("squares {first} and {second} both span the corner ({edge_a}, {edge_b}) at vertex `{vertex}`")]
    DuplicateCornerSquare {
        vertex: String,
        edge_a: String,
        edge_b: String,
        first: usize,
        second: usize,
    },
    #[error("unknown basepoint `{0}`")]
    UnknownBasepoint(String),
    #[error("defining graph has a loop at generator `{0}`")]
    LoopInDefiningGraph(String),
    #[error("defining graph references unknown generator `{0}`")]
    UnknownGenerator(String),
}

impl ComplexError {
    pub(crate) fn from_json(err: &serde_json::Error) -> Self {
        ComplexError::Parse {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedEdge {
    pub id: String,
    pub start: VertexId,
    pub end: VertexId,
    pub reverse: EdgeId,
}

/// A corner of a square: the square index, the corner position and the two
/// outgoing edges at the corner vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corner {
    pub square: usize,
    pub position: usize,
    pub vertex: VertexId,
    pub edges: (EdgeId, EdgeId),
}

/// A validated finite square complex with a marked basepoint.
///
/// Ids are indices in serialization order, which is also the canonical order
/// used for every report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientComplex {
    name: Option<String>,
    vertices: Vec<String>,
    edges: Vec<OrientedEdge>,
    squares: Vec<[EdgeId; 4]>,
    basepoint: VertexId,
    outgoing: Vec<Vec<EdgeId>>,
    /// Unordered outgoing pair (min, max) -> square spanning it.
    corners: BTreeMap<(EdgeId, EdgeId), usize>,
}

impl QuotientComplex {
    pub fn from_json(text: &str) -> Result<Self, ComplexError> {
        let raw = RawComplex::from_json(text).map_err(|e| ComplexError::from_json(&e))?;
        validate_complex(&raw)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn square_count(&self) -> usize {
        self.squares.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge(&self, e: EdgeId) -> &OrientedEdge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[OrientedEdge] {
        &self.edges
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.id == name)
    }

    pub fn reverse(&self, e: EdgeId) -> EdgeId {
        self.edges[e].reverse
    }

    pub fn squares(&self) -> &[[EdgeId; 4]] {
        &self.squares
    }

    pub fn basepoint(&self) -> VertexId {
        self.basepoint
    }

    pub fn outgoing(&self, v: VertexId) -> &[EdgeId] {
        &self.outgoing[v]
    }

    /// The square spanned by two outgoing edges at a common vertex, if any.
    pub fn spanning_square(&self, e: EdgeId, f: EdgeId) -> Option<usize> {
        self.corners.get(&(e.min(f), e.max(f))).copied()
    }

    pub fn spans_square(&self, e: EdgeId, f: EdgeId) -> bool {
        self.spanning_square(e, f).is_some()
    }

    /// All corners in canonical order (square, then position).
    pub fn corners(&self) -> impl Iterator<Item = Corner> + '_ {
        self.squares.iter().enumerate().flat_map(move |(k, sq)| {
            (0..4).map(move |i| {
                let (a, b) = corner_edges(sq, i, &self.edges);
                Corner {
                    square: k,
                    position: i,
                    vertex: self.edges[a].start,
                    edges: (a, b),
                }
            })
        })
    }

    /// The unoriented edge of `e`, represented by the canonically smaller of
    /// `e` and its reverse.
    pub fn unoriented(&self, e: EdgeId) -> EdgeId {
        e.min(self.edges[e].reverse)
    }

    /// Label walk helper: the end of the outgoing edge sequence from `start`.
    pub fn walk(&self, start: VertexId, path: &[EdgeId]) -> Option<VertexId> {
        let mut at = start;
        for &e in path {
            if self.edges[e].start != at {
                return None;
            }
            at = self.edges[e].end;
        }
        Some(at)
    }

    pub fn to_raw(&self) -> RawComplex {
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.reverse < i && e.reverse + 1 == i && self.edges[i].id == format!("{}{}", self.edges[e.reverse].id, INVERSE_SUFFIX) {
                continue;
            }
            let rev = &self.edges[e.reverse];
            let auto = e.reverse == i + 1 && rev.id == format!("{}{}", e.id, INVERSE_SUFFIX);
            edges.push(RawEdge {
                id: e.id.clone(),
                from: self.vertices[e.start].clone(),
                to: self.vertices[e.end].clone(),
                reverse: if auto { None } else { Some(rev.id.clone()) },
            });
        }
        RawComplex {
            name: self.name.clone(),
            vertices: self.vertices.clone(),
            edges,
            squares: self
                .squares
                .iter()
                .map(|sq| sq.iter().map(|&e| self.edges[e].id.clone()).collect())
                .collect(),
            basepoint: self.vertices[self.basepoint].clone(),
        }
    }
}

impl fmt::Display for QuotientComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "complex{}: {} vertices, {} oriented edges, {} squares, basepoint {}",
            self.name
                .as_deref()
                .map(|n| format!(" {n}"))
                .unwrap_or_default(),
            self.vertices.len(),
            self.edges.len(),
            self.squares.len(),
            self.vertices[self.basepoint]
        )
    }
}

/// Corner `i` of a square boundary `(c1, c2, c3, c4)`: the outgoing edges
/// `c_i` and `reverse(c_{i-1})` at `start(c_i)`.
fn corner_edges(sq: &[EdgeId; 4], i: usize, edges: &[OrientedEdge]) -> (EdgeId, EdgeId) {
    (sq[i], edges[sq[(i + 3) % 4]].reverse)
}

/// Validates a parsed description and canonicalizes ids in serialization order.
pub fn validate_complex(raw: &RawComplex) -> Result<QuotientComplex, ComplexError> {
    let mut vertex_ids = HashMap::new();
    for (i, v) in raw.vertices.iter().enumerate() {
        if vertex_ids.insert(v.as_str(), i).is_some() {
            return Err(ComplexError::DuplicateVertex(v.clone()));
        }
    }

    let mut listed = HashMap::new();
    for (i, e) in raw.edges.iter().enumerate() {
        if listed.insert(e.id.as_str(), i).is_some() {
            return Err(ComplexError::DuplicateEdge(e.id.clone()));
        }
        for end in [&e.from, &e.to] {
            if !vertex_ids.contains_key(end.as_str()) {
                return Err(ComplexError::UnknownVertex {
                    edge: e.id.clone(),
                    vertex: end.clone(),
                });
            }
        }
    }

    let partner = pair_listed_edges(raw, &listed)?;

    // Canonical order: listed edges in order, each auto-generated reverse
    // directly after its edge.
    let mut edges: Vec<OrientedEdge> = Vec::new();
    let mut position_of_listed = vec![usize::MAX; raw.edges.len()];
    for (i, e) in raw.edges.iter().enumerate() {
        let start = vertex_ids[e.from.as_str()];
        let end = vertex_ids[e.to.as_str()];
        position_of_listed[i] = edges.len();
        edges.push(OrientedEdge {
            id: e.id.clone(),
            start,
            end,
            reverse: usize::MAX,
        });
        if partner[i].is_none() {
            let auto = format!("{}{}", e.id, INVERSE_SUFFIX);
            if listed.contains_key(auto.as_str()) {
                return Err(ComplexError::DuplicateEdge(auto));
            }
            edges.push(OrientedEdge {
                id: auto,
                start: end,
                end: start,
                reverse: usize::MAX,
            });
        }
    }
    for (i, p) in partner.iter().enumerate() {
        let here = position_of_listed[i];
        match p {
            Some(j) => edges[here].reverse = position_of_listed[*j],
            None => {
                edges[here].reverse = here + 1;
                edges[here + 1].reverse = here;
            }
        }
    }

    let edge_ids: HashMap<&str, EdgeId> = edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.id.as_str(), i))
        .collect();

    let mut squares = Vec::with_capacity(raw.squares.len());
    for (k, sides) in raw.squares.iter().enumerate() {
        if sides.len() != 4 {
            return Err(ComplexError::SquareArity {
                square: k,
                len: sides.len(),
            });
        }
        let mut sq = [0; 4];
        for (i, token) in sides.iter().enumerate() {
            sq[i] = resolve_signed(token, &edge_ids, &edges).ok_or_else(|| {
                ComplexError::UnknownEdge {
                    square: k,
                    edge: token.clone(),
                }
            })?;
        }
        for i in 0..4 {
            let here = &edges[sq[i]];
            let next = &edges[sq[(i + 1) % 4]];
            if here.end != next.start {
                return Err(ComplexError::OpenSquareBoundary {
                    square: k,
                    position: i + 1,
                    edge: here.id.clone(),
                    end: raw.vertices[here.end].clone(),
                    next_start: raw.vertices[next.start].clone(),
                });
            }
            if next.reverse == sq[i] {
                return Err(ComplexError::DegenerateCorner {
                    square: k,
                    position: i + 1,
                    edge: here.id.clone(),
                });
            }
        }
        squares.push(sq);
    }

    let mut corners = BTreeMap::new();
    for (k, sq) in squares.iter().enumerate() {
        for i in 0..4 {
            let (a, b) = corner_edges(sq, i, &edges);
            let key = (a.min(b), a.max(b));
            if let Some(&first) = corners.get(&key) {
                if first != k {
                    return Err(ComplexError::DuplicateCornerSquare {
                        vertex: raw.vertices[edges[a].start].clone(),
                        edge_a: edges[key.0].id.clone(),
                        edge_b: edges[key.1].id.clone(),
                        first,
                        second: k,
                    });
                }
            } else {
                corners.insert(key, k);
            }
        }
    }

    let basepoint = *vertex_ids
        .get(raw.basepoint.as_str())
        .ok_or_else(|| ComplexError::UnknownBasepoint(raw.basepoint.clone()))?;

    let mut outgoing = vec![Vec::new(); raw.vertices.len()];
    for (i, e) in edges.iter().enumerate() {
        outgoing[e.start].push(i);
    }

    Ok(QuotientComplex {
        name: raw.name.clone(),
        vertices: raw.vertices.clone(),
        edges,
        squares,
        basepoint,
        outgoing,
        corners,
    })
}

/// Finds the explicitly listed reverse of every listed edge, if any.
fn pair_listed_edges(
    raw: &RawComplex,
    listed: &HashMap<&str, usize>,
) -> Result<Vec<Option<usize>>, ComplexError> {
    let broken = |edge: &str, reason: String| ComplexError::BrokenInvolution {
        edge: edge.to_string(),
        reason,
    };
    let mut partner: Vec<Option<usize>> = vec![None; raw.edges.len()];
    for (i, e) in raw.edges.iter().enumerate() {
        let wanted = if let Some(r) = &e.reverse {
            let j = *listed
                .get(r.as_str())
                .ok_or_else(|| broken(&e.id, format!("reverse `{r}` is not listed")))?;
            Some(j)
        } else if let Some(base) = e.id.strip_suffix(INVERSE_SUFFIX) {
            listed.get(base).copied()
        } else {
            listed
                .get(format!("{}{}", e.id, INVERSE_SUFFIX).as_str())
                .copied()
        };
        let Some(j) = wanted else { continue };
        if j == i {
            return Err(broken(&e.id, "an edge cannot be its own reverse".into()));
        }
        let other = &raw.edges[j];
        if let Some(r) = &other.reverse {
            if r != &e.id {
                return Err(broken(
                    &e.id,
                    format!("`{}` names `{r}` as its reverse", other.id),
                ));
            }
        }
        if other.from != e.to || other.to != e.from {
            return Err(broken(
                &e.id,
                format!("reverse `{}` does not swap the endpoints", other.id),
            ));
        }
        match (partner[i], partner[j]) {
            (Some(p), _) if p != j => {
                return Err(broken(&e.id, "paired with two different reverses".into()))
            }
            (_, Some(p)) if p != i => {
                return Err(broken(
                    &other.id,
                    "paired with two different reverses".into(),
                ))
            }
            _ => {}
        }
        partner[i] = Some(j);
        partner[j] = Some(i);
    }
    Ok(partner)
}

fn resolve_signed(
    token: &str,
    ids: &HashMap<&str, EdgeId>,
    edges: &[OrientedEdge],
) -> Option<EdgeId> {
    let token = token.trim();
    if let Some(rest) = token.strip_prefix('-') {
        ids.get(rest).map(|&e| edges[e].reverse)
    } else {
        ids.get(token.strip_prefix('+').unwrap_or(token)).copied()
    }
}
