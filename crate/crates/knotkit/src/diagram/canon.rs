//! Canonical forms for diagram isomorphism and search dedup.
//!
//! Isomorphism here respects the rotation system and the over/under labels
//! (orientation-preserving map isomorphism); mirror images are distinct.
//! The form is the minimum, over all rooted breadth-first traversals, of a
//! token sequence; components are canonicalized independently and sorted.

use super::LinkDiagram;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub components: Vec<Vec<u32>>,
    pub isolated_loops: usize,
}

pub fn canonical_form(d: &LinkDiagram) -> CanonicalForm {
    let comps = d.graph_components();
    let mut encodings: Vec<Vec<u32>> = comps
        .iter()
        .map(|comp| {
            let mut best: Option<Vec<u32>> = None;
            for &v in comp.iter() {
                for s in 0..4u8 {
                    let enc = encode_from(d, v, s);
                    if best.as_ref().map_or(true, |b| &enc < b) {
                        best = Some(enc);
                    }
                }
            }
            best.unwrap()
        })
        .collect();
    encodings.sort();
    CanonicalForm { components: encodings, isolated_loops: d.isolated_loops }
}

/// BFS relabeling rooted at vertex `v0` with slot offset `s0` (the root's
/// slot s0 becomes its relative slot 0). Emits, per vertex in discovery
/// order, the under-parity of its offset slot and, per relative slot, a
/// token identifying the far endpoint.
fn encode_from(d: &LinkDiagram, v0: usize, s0: u8) -> Vec<u32> {
    let n = d.slots.len();
    let mut vid = vec![usize::MAX; n];
    let mut voff = vec![0u8; n];
    let mut order = Vec::with_capacity(n);
    vid[v0] = 0;
    voff[v0] = s0;
    order.push(v0);
    let mut out = Vec::new();
    let mut qi = 0;
    while qi < order.len() {
        let v = order[qi];
        qi += 1;
        out.push(if LinkDiagram::is_under(voff[v]) { 0 } else { 1 });
        for r in 0..4u8 {
            let s = (voff[v] + r) % 4;
            let (e, end) = d.slots[v][s as usize];
            let far = d.edges[e][1 - end as usize];
            if vid[far.vertex] == usize::MAX {
                vid[far.vertex] = order.len();
                voff[far.vertex] = far.slot;
                order.push(far.vertex);
                out.push(2);
            } else {
                let rel = (4 + far.slot - voff[far.vertex]) % 4;
                out.push(3 + (vid[far.vertex] as u32) * 4 + rel as u32);
            }
        }
    }
    out
}
