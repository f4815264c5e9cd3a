//! Link diagrams as labeled 4-valent planar maps.
//!
//! A crossing is a vertex with four edge-ends in counterclockwise order;
//! slots 0 and 2 carry the under-strand, slots 1 and 3 the over-strand.
//! This normalization bakes in the axiom that over-ends and under-ends
//! alternate around every vertex. Vertex-free components are tracked as a
//! count of isolated loops.

mod bfs;
mod canon;
mod codes;
mod faces;
mod moves;

pub use bfs::{bfs_untangle, BfsLimits, UntangleOutcome};
pub use canon::CanonicalForm;
pub use codes::{parse_diagram, serialize_diagram};
pub use faces::{Face, FaceSet};
pub use moves::{
    apply_move, enumerate_moves, format_move, inverse_move, CrossSign, MoveLine, MoveScript, RMove, StrandRef,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("validity error: {0}")]
    Invalid(String),
    #[error("non-planar rotation system: component has Euler characteristic {0}, expected 2")]
    NonPlanar(i64),
    #[error("move does not match the local pattern: {0}")]
    PatternMismatch(String),
    #[error("operation requires a knot diagram (got {0} link components)")]
    NotAKnot(usize),
    #[error("search state limit exceeded ({0} states)")]
    ResourceLimit(usize),
}

/// One endpoint of an edge: a vertex slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EndPoint {
    pub vertex: usize,
    pub slot: u8,
}

/// A directed edge-end: edge `edge`, pointing toward `ends[toward]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: usize,
    pub toward: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    /// per vertex: the edge occupying each of the 4 slots (edge id, which end)
    pub(crate) slots: Vec<[(usize, u8); 4]>,
    /// per edge: its two endpoints
    pub(crate) edges: Vec<[EndPoint; 2]>,
    /// vertex-free components
    pub(crate) isolated_loops: usize,
}

impl LinkDiagram {
    /// The trivial knot diagram: one isolated loop, no crossings.
    pub fn trivial() -> Self {
        LinkDiagram { slots: Vec::new(), edges: Vec::new(), isolated_loops: 1 }
    }

    pub fn vertex_count(&self) -> usize {
        self.slots.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn isolated_loops(&self) -> usize {
        self.isolated_loops
    }

    pub fn endpoint(&self, d: Dart) -> EndPoint {
        self.edges[d.edge][d.toward as usize]
    }

    pub fn dart_at(&self, p: EndPoint) -> Dart {
        let (edge, end) = self.slots[p.vertex][p.slot as usize];
        Dart { edge, toward: end }
    }

    /// Is this slot on the under-strand?
    pub fn is_under(slot: u8) -> bool {
        slot % 2 == 0
    }

    /// true iff the diagram is the trivial knot diagram
    pub fn is_trivial(&self) -> bool {
        self.slots.is_empty() && self.isolated_loops == 1
    }

    /// Structural validation: slot/edge cross-references, 4-valence and the
    /// planarity of the rotation system (V - E + F = 2 per component).
    pub fn validate(&self) -> Result<(), DiagramError> {
        for (v, sl) in self.slots.iter().enumerate() {
            for (s, &(e, end)) in sl.iter().enumerate() {
                let Some(edge) = self.edges.get(e) else {
                    return Err(DiagramError::Invalid(format!("vertex {v} slot {s}: edge {e} out of range")));
                };
                let p = edge[end as usize];
                if p.vertex != v || p.slot as usize != s {
                    return Err(DiagramError::Invalid(format!(
                        "vertex {v} slot {s} points at edge {e}:{end}, which points back at {}:{}",
                        p.vertex, p.slot
                    )));
                }
            }
        }
        let mut seen = vec![[false; 2]; self.edges.len()];
        for (v, sl) in self.slots.iter().enumerate() {
            for &(e, end) in sl.iter() {
                if seen[e][end as usize] {
                    return Err(DiagramError::Invalid(format!("edge {e} end {end} used twice (near vertex {v})")));
                }
                seen[e][end as usize] = true;
            }
        }
        for (e, s) in seen.iter().enumerate() {
            if !s[0] || !s[1] {
                return Err(DiagramError::Invalid(format!("edge {e} has an unattached end")));
            }
        }
        self.check_planarity()
    }

    fn check_planarity(&self) -> Result<(), DiagramError> {
        // Euler check per connected component of the underlying graph,
        // faces computed from the rotation system.
        let comps = self.graph_components();
        let faces = faces::FaceSet::compute(self);
        for comp in comps {
            let vs = comp.len() as i64;
            let mut es = 0i64;
            for (e, ends) in self.edges.iter().enumerate() {
                let _ = e;
                if comp.contains(&ends[0].vertex) {
                    es += 1;
                }
            }
            let fs = faces
                .faces
                .iter()
                .filter(|f| !f.walk.is_empty() && comp.contains(&self.endpoint(f.walk[0]).vertex))
                .count() as i64;
            let chi = vs - es + fs;
            if chi != 2 {
                return Err(DiagramError::NonPlanar(chi));
            }
        }
        Ok(())
    }

    /// Connected components of the underlying 4-valent graph (vertex sets).
    /// Isolated loops are not included.
    pub fn graph_components(&self) -> Vec<std::collections::BTreeSet<usize>> {
        let n = self.slots.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for v0 in 0..n {
            if seen[v0] {
                continue;
            }
            let mut comp = std::collections::BTreeSet::new();
            let mut stack = vec![v0];
            seen[v0] = true;
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for s in 0..4 {
                    let (e, end) = self.slots[v][s];
                    let w = self.edges[e][1 - end as usize].vertex;
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Number of link-diagram components (graph components plus isolated loops).
    pub fn diagram_components(&self) -> usize {
        self.graph_components().len() + self.isolated_loops
    }

    /// Crossing measure |D| = #vertices + #link-diagram-components - 1.
    /// Zero for the empty diagram as a degenerate case.
    pub fn crossing_measure(&self) -> usize {
        let comps = self.diagram_components();
        if comps == 0 {
            return 0;
        }
        self.vertex_count() + comps - 1
    }

    /// Link components: closed edge paths where consecutive edges at a vertex
    /// are both over or both under (i.e. the strand goes straight through).
    /// Each component is returned as the cyclic sequence of directed darts.
    /// Isolated loops count as additional components but carry no darts.
    pub fn link_components(&self) -> Vec<Vec<Dart>> {
        let mut seen = std::collections::HashSet::new();
        let mut comps = Vec::new();
        for e in 0..self.edges.len() {
            for toward in 0..2u8 {
                let start = Dart { edge: e, toward };
                if seen.contains(&start) {
                    continue;
                }
                // traverse; mark both directions of each traversed edge so each
                // component is reported once
                let mut walk = Vec::new();
                let mut d = start;
                loop {
                    walk.push(d);
                    seen.insert(d);
                    seen.insert(Dart { edge: d.edge, toward: 1 - d.toward });
                    let p = self.endpoint(d);
                    let out_slot = (p.slot + 2) % 4;
                    let (ne, nend) = self.slots[p.vertex][out_slot as usize];
                    d = Dart { edge: ne, toward: 1 - nend };
                    if d == start {
                        break;
                    }
                }
                comps.push(walk);
            }
        }
        comps
    }

    /// Number of link components (the order of the diagram).
    pub fn order(&self) -> usize {
        self.link_components().len() + self.isolated_loops
    }

    /// Sum of crossing signs for a knot diagram. The sign convention: a
    /// crossing is +1 when the under-strand passes left-to-right beneath,
    /// seen along the over-strand orientation. Independent of which of the
    /// two orientations of the knot is used, so no orientation argument.
    pub fn writhe(&self) -> Result<i64, DiagramError> {
        let comps = self.link_components();
        let order = comps.len() + self.isolated_loops;
        if order != 1 {
            return Err(DiagramError::NotAKnot(order));
        }
        if comps.is_empty() {
            return Ok(0);
        }
        let walk = &comps[0];
        // record the exit slot of each passage
        let mut under_out: Vec<Option<u8>> = vec![None; self.vertex_count()];
        let mut over_out: Vec<Option<u8>> = vec![None; self.vertex_count()];
        for d in walk {
            let p = self.endpoint(*d);
            let out = (p.slot + 2) % 4;
            if Self::is_under(p.slot) {
                under_out[p.vertex] = Some(out);
            } else {
                over_out[p.vertex] = Some(out);
            }
        }
        let mut w = 0i64;
        for v in 0..self.vertex_count() {
            let (Some(u), Some(o)) = (under_out[v], over_out[v]) else {
                return Err(DiagramError::Invalid(format!("vertex {v} not traversed twice")));
            };
            if o == (u + 1) % 4 {
                w += 1;
            } else {
                debug_assert_eq!((o + 1) % 4, u);
                w -= 1;
            }
        }
        Ok(w)
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canon::canonical_form(self)
    }

    pub fn is_isomorphic(&self, other: &LinkDiagram) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    pub fn faces(&self) -> FaceSet {
        FaceSet::compute(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::codes::parse_diagram;

    pub(crate) const TREFOIL: &str = "K[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";
    // derived from the closure of (s1 s2^-1)^2: arcs numbered along the knot
    pub(crate) const FIGURE_EIGHT: &str = "K[X(4,1,5,2),X(2,8,3,7),X(8,5,1,6),X(6,4,7,3)]";

    #[test]
    fn trivial_diagram() {
        let d = parse_diagram("L[]").unwrap();
        assert_eq!(d.vertex_count(), 0);
        assert_eq!(d.isolated_loops(), 1);
        assert!(d.is_trivial());
        assert_eq!(d.crossing_measure(), 0);
        assert_eq!(d.order(), 1);
        assert_eq!(d.writhe().unwrap(), 0);
    }

    #[test]
    fn trefoil_structure() {
        let d = parse_diagram(TREFOIL).unwrap();
        assert_eq!(d.vertex_count(), 3);
        assert_eq!(d.edge_count(), 6);
        assert_eq!(d.order(), 1, "trefoil is a knot");
        assert_eq!(d.crossing_measure(), 3);
        assert!(!d.is_trivial());
        // right trefoil under this convention
        assert_eq!(d.writhe().unwrap(), 3);
        // 4-valent planar map face count: V - E + F = 2
        assert_eq!(d.faces().faces.len(), 5);
    }

    #[test]
    fn figure_eight_writhe_zero() {
        let d = parse_diagram(FIGURE_EIGHT).unwrap();
        assert_eq!(d.vertex_count(), 4);
        assert_eq!(d.order(), 1);
        assert_eq!(d.writhe().unwrap(), 0);
    }

    #[test]
    fn two_disjoint_loops() {
        let d = parse_diagram("L[; loops=2]").unwrap();
        assert_eq!(d.crossing_measure(), 1, "0 vertices + 2 components - 1");
        assert!(!d.is_trivial());
        assert!(d.writhe().is_err());
    }

    #[test]
    fn hopf_link_two_components() {
        let d = parse_diagram("L[X(1,4,2,3),X(3,2,4,1)]").unwrap();
        assert_eq!(d.order(), 2);
        assert_eq!(d.crossing_measure(), 2);
    }

    #[test]
    fn writhe_mirror_negates() {
        // mirror of the right trefoil: swap over/under by rotating each tuple
        let d = parse_diagram("K[X(4,2,5,1),X(6,4,1,3),X(2,6,3,5)]").unwrap();
        assert_eq!(d.writhe().unwrap(), -3);
    }
}
