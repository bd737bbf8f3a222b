use super::{parallel_classes, EdgeId, ParallelClasses, QuotientComplex, VertexId};

/// Two distinct edges of one oriented class spanning a square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelfIntersection {
    pub edges: (EdgeId, EdgeId),
    pub square: usize,
}

/// An edge parallel to its own reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OneSided {
    pub edge: EdgeId,
}

/// A vertex with two distinct outgoing edges in one oriented class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelfOsculation {
    pub vertex: VertexId,
    pub edges: (EdgeId, EdgeId),
}

/// A spanning corner `(e, f)` and a non-spanning corner `(e', f')` with
/// `e ~ e'` and `f ~ f'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterOsculation {
    pub spanning: (EdgeId, EdgeId),
    pub square: usize,
    pub non_spanning: (EdgeId, EdgeId),
    pub vertex: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialnessReport {
    pub self_intersecting: Option<SelfIntersection>,
    pub one_sided: Option<OneSided>,
    pub self_osculating: Option<SelfOsculation>,
    pub inter_osculating: Option<InterOsculation>,
    pub is_special: bool,
}

impl SpecialnessReport {
    /// Human-readable witness lines, one per pathology found.
    pub fn describe(&self, c: &QuotientComplex) -> Vec<String> {
        let id = |e: EdgeId| c.edge(e).id.as_str();
        let mut out = Vec::new();
        if let Some(w) = self.self_intersecting {
            out.push(format!(
                "self-intersection: parallel edges {} and {} span square {}",
                id(w.edges.0),
                id(w.edges.1),
                w.square
            ));
        }
        if let Some(w) = self.one_sided {
            out.push(format!(
                "one-sided: edge {} is parallel to its reverse {}",
                id(w.edge),
                id(c.reverse(w.edge))
            ));
        }
        if let Some(w) = self.self_osculating {
            out.push(format!(
                "self-osculation: vertex {} has parallel outgoing edges {} and {}",
                c.vertex_name(w.vertex),
                id(w.edges.0),
                id(w.edges.1)
            ));
        }
        if let Some(w) = self.inter_osculating {
            out.push(format!(
                "inter-osculation: ({}, {}) spans square {} but parallel ({}, {}) at vertex {} spans none",
                id(w.spanning.0),
                id(w.spanning.1),
                w.square,
                id(w.non_spanning.0),
                id(w.non_spanning.1),
                c.vertex_name(w.vertex)
            ));
        }
        out
    }
}

/// Looks for the four specialness pathologies. Pathological complexes are
/// valid inputs; the report carries the minimal witness of each finding.
pub fn check_special(complex: &QuotientComplex) -> SpecialnessReport {
    let pc = parallel_classes(complex);
    check_special_with(complex, &pc)
}

pub(crate) fn check_special_with(c: &QuotientComplex, pc: &ParallelClasses) -> SpecialnessReport {
    let spanning = spanning_corners(c);

    let self_intersecting = spanning
        .iter()
        .find(|&&(e, f, _)| pc.same_oriented(e, f))
        .map(|&(e, f, square)| SelfIntersection {
            edges: (e, f),
            square,
        });

    let one_sided = (0..c.edge_count())
        .find(|&e| pc.same_oriented(e, c.reverse(e)))
        .map(|edge| OneSided { edge });

    let self_osculating = outgoing_pairs(c)
        .find(|&(_, e, f)| pc.same_oriented(e, f))
        .map(|(vertex, e, f)| SelfOsculation {
            vertex,
            edges: (e, f),
        });

    let inter_osculating = spanning.iter().find_map(|&(e, f, square)| {
        outgoing_pairs(c)
            .filter(|&(_, x, y)| !c.spans_square(x, y))
            .find(|&(_, x, y)| {
                (pc.same_oriented(e, x) && pc.same_oriented(f, y))
                    || (pc.same_oriented(e, y) && pc.same_oriented(f, x))
            })
            .map(|(vertex, x, y)| InterOsculation {
                spanning: (e, f),
                square,
                non_spanning: (x, y),
                vertex,
            })
    });

    let is_special = self_intersecting.is_none()
        && one_sided.is_none()
        && self_osculating.is_none()
        && inter_osculating.is_none();
    SpecialnessReport {
        self_intersecting,
        one_sided,
        self_osculating,
        inter_osculating,
        is_special,
    }
}

/// Spanning corner pairs `(e, f, square)` with `e < f`, sorted.
fn spanning_corners(c: &QuotientComplex) -> Vec<(EdgeId, EdgeId, usize)> {
    let mut out: Vec<_> = c
        .corners()
        .map(|k| {
            let (a, b) = k.edges;
            (a.min(b), a.max(b), k.square)
        })
        .collect();
    out.sort_unstable();
    out.dedup_by_key(|t| (t.0, t.1));
    out
}

/// Unordered pairs of distinct outgoing edges per vertex, canonical order.
fn outgoing_pairs(c: &QuotientComplex) -> impl Iterator<Item = (VertexId, EdgeId, EdgeId)> + '_ {
    (0..c.vertex_count()).flat_map(move |v| {
        let out = c.outgoing(v);
        (0..out.len()).flat_map(move |i| ((i + 1)..out.len()).map(move |j| (v, out[i], out[j])))
    })
}
