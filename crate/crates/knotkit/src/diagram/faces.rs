//! Faces of the embedding, computed from the rotation system.
//!
//! A directed dart (edge, toward-end) lies on exactly one face. The face
//! successor of a dart arriving at slot s is the edge at slot s+1, directed
//! away. Face ids are assigned in order of the smallest dart they contain,
//! which makes move locations replayable.

use super::{Dart, LinkDiagram};

#[derive(Clone, Debug)]
pub struct Face {
    pub id: usize,
    /// boundary walk as directed darts, starting from the smallest
    pub walk: Vec<Dart>,
}

#[derive(Clone, Debug)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    /// face id containing each directed dart, indexed [edge][toward]
    pub dart_face: Vec<[usize; 2]>,
}

impl FaceSet {
    pub fn compute(d: &LinkDiagram) -> FaceSet {
        let ne = d.edges.len();
        let mut dart_face = vec![[usize::MAX; 2]; ne];
        let mut faces = Vec::new();
        for e in 0..ne {
            for toward in 0..2u8 {
                if dart_face[e][toward as usize] != usize::MAX {
                    continue;
                }
                let start = Dart { edge: e, toward };
                let id = faces.len();
                let mut walk = Vec::new();
                let mut cur = start;
                loop {
                    walk.push(cur);
                    dart_face[cur.edge][cur.toward as usize] = id;
                    cur = face_next(d, cur);
                    if cur == start {
                        break;
                    }
                }
                faces.push(Face { id, walk });
            }
        }
        FaceSet { faces, dart_face }
    }

    pub fn face_of(&self, dart: Dart) -> usize {
        self.dart_face[dart.edge][dart.toward as usize]
    }
}

pub(crate) fn face_next(d: &LinkDiagram, dart: Dart) -> Dart {
    let p = d.endpoint(dart);
    let s = (p.slot + 1) % 4;
    let (e, end) = d.slots[p.vertex][s as usize];
    Dart { edge: e, toward: 1 - end }
}
