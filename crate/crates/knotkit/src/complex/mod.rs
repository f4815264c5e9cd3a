//! Gluing-based triangulations of compact 3-manifolds.
//!
//! A triangulation is a list of tetrahedra with face gluings. Face i of a
//! tetrahedron is the one opposite local vertex i; a gluing carries a full
//! vertex correspondence in S4. Vertex, edge and face classes are derived by
//! walking the gluings; manifold validity is checked through vertex links
//! and edge walks.

mod chain;
mod format;
mod neighborhood;
mod pachner;
mod subdivide;

pub use chain::{
    boundary_matrix, chain_vector, cycle_vector, cycle_vector_with, cyclic_cover, dual_cocycle,
    homology_h1, vertex_boundary, BoundaryMatrix, CyclicCover, Homology,
};
pub use format::{parse_triangulation, serialize_triangulation};
pub use neighborhood::{
    marked_faces, regular_neighborhood, truncated_complement, SolidTorusNbhd, PERIPHERAL_MARK,
};
pub use pachner::{simplify, try_two_three, try_three_two};
pub use subdivide::{barycentric_subdivide, DoubleSubdivision, Subdivision};

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("gluings are not involutive: tet {tet} face {face}")]
    NotInvolutive { tet: usize, face: u8 },
    #[error("non-manifold: {0}")]
    NonManifold(String),
    #[error("{0}")]
    Invalid(String),
    #[error("curve is not closed or not embedded: {0}")]
    BadCurve(String),
    #[error("curve touches the boundary: vertex {0}")]
    Interiority(usize),
    #[error("operation requires a second barycentric subdivision")]
    NotSecondSubdivision,
    #[error("internal error: {0}")]
    Internal(String),
}

/// Permutation of {0,1,2,3}; image[i] is where vertex i goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Perm4(pub [u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    pub fn apply(&self, v: u8) -> u8 {
        self.0[v as usize]
    }

    pub fn inverse(&self) -> Perm4 {
        let mut inv = [0u8; 4];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm4(inv)
    }

    pub fn compose(&self, other: &Perm4) -> Perm4 {
        // apply other first, then self
        Perm4([
            self.apply(other.0[0]),
            self.apply(other.0[1]),
            self.apply(other.0[2]),
            self.apply(other.0[3]),
        ])
    }

    pub fn is_valid(&self) -> bool {
        let mut seen = [false; 4];
        for &x in &self.0 {
            if x > 3 || seen[x as usize] {
                return false;
            }
            seen[x as usize] = true;
        }
        true
    }

    pub fn parity_odd(&self) -> bool {
        let mut inv = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if self.0[i] > self.0[j] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub tet: usize,
    pub face: u8,
    pub perm: Perm4,
}

pub type Mark = String;

/// Local edge numbering: edge e spans EDGE_VERTS[e].
pub const EDGE_VERTS: [[u8; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

pub fn edge_index(a: u8, b: u8) -> u8 {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    EDGE_VERTS.iter().position(|&[x, y]| x == a && y == b).expect("distinct vertices") as u8
}

/// Faces of the tetrahedron: face f omits vertex f.
pub fn face_verts(f: u8) -> [u8; 3] {
    let mut out = [0u8; 3];
    let mut k = 0;
    for v in 0..4u8 {
        if v != f {
            out[k] = v;
            k += 1;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    /// per tetrahedron, per face: a gluing or None for boundary
    pub gluings: Vec<[Option<Gluing>; 4]>,
    /// mark per boundary face (same shape; None for glued faces)
    pub marks: Vec<[Option<Mark>; 4]>,
    /// optional coordinates per vertex class
    pub coords: Option<Vec<[BigInt; 3]>>,
    /// how many barycentric subdivisions this complex is from its base
    pub subdivisions_from_base: u32,
}

/// A closed embedded polygonal curve in the 1-skeleton, as vertex classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLCurve {
    pub vertices: Vec<usize>,
}

impl PLCurve {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Derived structures: class maps for vertices, edges and faces.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub tets: usize,
    /// vertex class of (tet, corner)
    pub vertex_class: Vec<[usize; 4]>,
    pub vertex_count: usize,
    /// edge class and sign of (tet, local edge); sign is +1 when the local
    /// ascending orientation agrees with the class representative's
    pub edge_class: Vec<[(usize, i8); 6]>,
    pub edge_count: usize,
    /// endpoints (vertex classes) of each edge class, in representative order
    pub edge_ends: Vec<[usize; 2]>,
    /// face class of (tet, face)
    pub face_class: Vec<[usize; 4]>,
    pub face_count: usize,
    /// representative (tet, face) of each face class, and whether boundary
    pub face_rep: Vec<(usize, u8, bool)>,
}

impl Triangulation {
    pub fn new(gluings: Vec<[Option<Gluing>; 4]>, marks: Vec<[Option<Mark>; 4]>) -> Self {
        Triangulation { gluings, marks, coords: None, subdivisions_from_base: 0 }
    }

    pub fn tets(&self) -> usize {
        self.gluings.len()
    }

    pub fn gluing(&self, tet: usize, face: u8) -> Option<&Gluing> {
        self.gluings[tet][face as usize].as_ref()
    }

    pub fn is_boundary(&self, tet: usize, face: u8) -> bool {
        self.gluings[tet][face as usize].is_none()
    }

    /// Involutivity of gluings plus basic index sanity.
    pub fn check_involutive(&self) -> Result<(), ComplexError> {
        for (t, faces) in self.gluings.iter().enumerate() {
            for f in 0..4u8 {
                if let Some(g) = &faces[f as usize] {
                    if g.tet >= self.tets() || !g.perm.is_valid() || g.perm.apply(f) != g.face {
                        return Err(ComplexError::NotInvolutive { tet: t, face: f });
                    }
                    let back = self
                        .gluing(g.tet, g.face)
                        .ok_or(ComplexError::NotInvolutive { tet: t, face: f })?;
                    if back.tet != t || back.face != f || back.perm != g.perm.inverse() {
                        return Err(ComplexError::NotInvolutive { tet: t, face: f });
                    }
                    if g.tet == t && g.face == f {
                        return Err(ComplexError::NotInvolutive { tet: t, face: f });
                    }
                }
            }
        }
        Ok(())
    }

    /// Full validation: involutive gluings, no reversed edges, and every
    /// vertex link a sphere (interior) or disk (boundary).
    pub fn validate(&self) -> Result<(), ComplexError> {
        self.check_involutive()?;
        let sk = self.skeleton()?;
        self.check_links(&sk)?;
        Ok(())
    }

    /// Compute vertex/edge/face classes. Fails on reversed edge gluings.
    pub fn skeleton(&self) -> Result<Skeleton, ComplexError> {
        let n = self.tets();
        // vertex classes by union-find over corners
        let mut uf = UnionFind::new(n * 4);
        for (t, faces) in self.gluings.iter().enumerate() {
            for f in 0..4u8 {
                if let Some(g) = &faces[f as usize] {
                    for v in face_verts(f) {
                        uf.union(t * 4 + v as usize, g.tet * 4 + g.perm.apply(v) as usize);
                    }
                }
            }
        }
        let (vertex_class, vertex_count) = uf.compact();
        let vertex_class: Vec<[usize; 4]> =
            (0..n).map(|t| [vertex_class[t * 4], vertex_class[t * 4 + 1], vertex_class[t * 4 + 2], vertex_class[t * 4 + 3]]).collect();

        // edge classes with orientation tracking via BFS along gluings
        let mut edge_class = vec![[(usize::MAX, 0i8); 6]; n];
        let mut edge_count = 0;
        let mut edge_ends = Vec::new();
        for t0 in 0..n {
            for e0 in 0..6u8 {
                if edge_class[t0][e0 as usize].0 != usize::MAX {
                    continue;
                }
                let id = edge_count;
                edge_count += 1;
                let [a0, b0] = EDGE_VERTS[e0 as usize];
                edge_ends.push([vertex_class[t0][a0 as usize], vertex_class[t0][b0 as usize]]);
                // BFS over (tet, ordered pair) instances
                let mut queue = vec![(t0, a0, b0)];
                while let Some((t, a, b)) = queue.pop() {
                    let e = edge_index(a, b);
                    let sign = if a < b { 1i8 } else { -1 };
                    let cur = &mut edge_class[t][e as usize];
                    if cur.0 != usize::MAX {
                        if cur.0 != id {
                            return Err(ComplexError::Internal("edge class collision".into()));
                        }
                        if cur.1 != sign {
                            return Err(ComplexError::NonManifold(format!(
                                "edge of tet {t} is glued to itself with a reversal"
                            )));
                        }
                        continue;
                    }
                    *cur = (id, sign);
                    for f in 0..4u8 {
                        if f == a || f == b {
                            continue;
                        }
                        if let Some(g) = self.gluing(t, f) {
                            queue.push((g.tet, g.perm.apply(a), g.perm.apply(b)));
                        }
                    }
                }
            }
        }

        // face classes
        let mut face_class = vec![[usize::MAX; 4]; n];
        let mut face_rep = Vec::new();
        for t in 0..n {
            for f in 0..4u8 {
                if face_class[t][f as usize] != usize::MAX {
                    continue;
                }
                let id = face_rep.len();
                face_class[t][f as usize] = id;
                match self.gluing(t, f) {
                    Some(g) => {
                        face_class[g.tet][g.face as usize] = id;
                        face_rep.push((t, f, false));
                    }
                    None => face_rep.push((t, f, true)),
                }
            }
        }
        let face_count = face_rep.len();
        Ok(Skeleton { tets: n, vertex_class, vertex_count, edge_class, edge_count, edge_ends, face_class, face_count, face_rep })
    }

    fn check_links(&self, sk: &Skeleton) -> Result<(), ComplexError> {
        // Build each vertex link as a surface from corner triangles.
        // Corner (t, v): one triangle; its side toward face f (f != v) is
        // glued to the corresponding corner across the gluing of (t, f).
        let n = self.tets();
        // link-vertex classes: flags (t, v, u), u != v
        let flag_id = |t: usize, v: u8, u: u8| -> usize { t * 12 + (v as usize) * 3 + flag_slot(v, u) };
        let mut uf = UnionFind::new(n * 12);
        for t in 0..n {
            for f in 0..4u8 {
                if let Some(g) = self.gluing(t, f) {
                    let vs = face_verts(f);
                    for &v in &vs {
                        for &u in &vs {
                            if u != v {
                                uf.union(flag_id(t, v, u), flag_id(g.tet, g.perm.apply(v), g.perm.apply(u)));
                            }
                        }
                    }
                }
            }
        }
        let (link_vert, _) = uf.compact();

        // per vertex class: collect corners, count sides/edges, connectivity
        let mut corners_of: Vec<Vec<(usize, u8)>> = vec![Vec::new(); sk.vertex_count];
        for t in 0..n {
            for v in 0..4u8 {
                corners_of[sk.vertex_class[t][v as usize]].push((t, v));
            }
        }
        for (vc, corners) in corners_of.iter().enumerate() {
            // faces of the link = corners; edges = sides (t, v, f)
            let mut side_seen: std::collections::HashMap<(usize, u8, u8), usize> = std::collections::HashMap::new();
            let mut interior_sides = 0usize;
            let mut boundary_sides = 0usize;
            let mut cuf = UnionFind::new(corners.len());
            let corner_index: std::collections::HashMap<(usize, u8), usize> =
                corners.iter().copied().enumerate().map(|(i, c)| (c, i)).collect();
            for (ci, &(t, v)) in corners.iter().enumerate() {
                for f in 0..4u8 {
                    if f == v {
                        continue;
                    }
                    match self.gluing(t, f) {
                        None => boundary_sides += 1,
                        Some(g) => {
                            let other = (g.tet, g.perm.apply(v), g.perm.apply(f));
                            if let Some(&cj_side) = side_seen.get(&other) {
                                interior_sides += 1;
                                cuf.union(ci, cj_side);
                            } else {
                                side_seen.insert((t, v, f), ci);
                            }
                        }
                    }
                }
            }
            if corners.is_empty() {
                continue;
            }
            // connectivity
            let root0 = cuf.find(0);
            for i in 1..corners.len() {
                if cuf.find(i) != root0 {
                    return Err(ComplexError::NonManifold(format!("link of vertex {vc} is disconnected")));
                }
            }
            // link vertices: classes of flags (t, v, u) present around this vertex
            let mut lv: std::collections::HashSet<usize> = std::collections::HashSet::new();
            for &(t, v) in corners {
                for u in 0..4u8 {
                    if u != v {
                        lv.insert(link_vert[flag_id(t, v, u)]);
                    }
                }
            }
            let vcount = lv.len() as i64;
            let ecount = (interior_sides + boundary_sides) as i64;
            let fcount = corners.len() as i64;
            let chi = vcount - ecount + fcount;
            let _ = corner_index;
            if boundary_sides == 0 {
                if chi != 2 {
                    return Err(ComplexError::NonManifold(format!(
                        "link of interior vertex {vc} has Euler characteristic {chi}, not a sphere"
                    )));
                }
            } else if chi != 1 {
                return Err(ComplexError::NonManifold(format!(
                    "link of boundary vertex {vc} has Euler characteristic {chi}, not a disk"
                )));
            }
        }
        Ok(())
    }

    /// Orientability: assign signs to tets so every gluing is compatible.
    pub fn is_orientable(&self) -> bool {
        let n = self.tets();
        if n == 0 {
            return true;
        }
        let mut sign = vec![0i8; n];
        for start in 0..n {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                for f in 0..4u8 {
                    if let Some(g) = self.gluing(t, f) {
                        let want = if g.perm.parity_odd() { sign[t] } else { -sign[t] };
                        if sign[g.tet] == 0 {
                            sign[g.tet] = want;
                            stack.push(g.tet);
                        } else if sign[g.tet] != want {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Boundary faces grouped into connected components, each with its Euler
    /// characteristic: (faces, chi) per component.
    pub fn boundary_components(&self) -> Result<Vec<(Vec<(usize, u8)>, i64)>, ComplexError> {
        let sk = self.skeleton()?;
        let bfaces: Vec<(usize, u8)> = sk
            .face_rep
            .iter()
            .filter(|(_, _, bd)| *bd)
            .map(|&(t, f, _)| (t, f))
            .collect();
        let index: std::collections::HashMap<(usize, u8), usize> =
            bfaces.iter().copied().enumerate().map(|(i, x)| (x, i)).collect();
        let mut uf = UnionFind::new(bfaces.len());
        // adjacent boundary faces share an edge: walk around the edge
        for (i, &(t, f)) in bfaces.iter().enumerate() {
            let vs = face_verts(f);
            for k in 0..3 {
                let (a, b) = (vs[k], vs[(k + 1) % 3]);
                let (t2, f2) = self.walk_to_boundary(t, f, a, b)?;
                let j = index[&(t2, f2)];
                uf.union(i, j);
            }
        }
        let mut comps: std::collections::HashMap<usize, Vec<(usize, u8)>> = std::collections::HashMap::new();
        for (i, &bf) in bfaces.iter().enumerate() {
            comps.entry(uf.find(i)).or_default().push(bf);
        }
        let mut out = Vec::new();
        let mut comp_list: Vec<_> = comps.into_values().collect();
        comp_list.sort();
        for comp in comp_list {
            let chi = self.boundary_chi(&sk, &comp);
            out.push((comp, chi));
        }
        Ok(out)
    }

    fn boundary_chi(&self, sk: &Skeleton, faces: &[(usize, u8)]) -> i64 {
        let mut vs = std::collections::HashSet::new();
        let mut es = std::collections::HashSet::new();
        for &(t, f) in faces {
            let fv = face_verts(f);
            for &v in &fv {
                vs.insert(sk.vertex_class[t][v as usize]);
            }
            for k in 0..3 {
                let e = edge_index(fv[k], fv[(k + 1) % 3]);
                es.insert(sk.edge_class[t][e as usize].0);
            }
        }
        vs.len() as i64 - es.len() as i64 + faces.len() as i64
    }

    /// Like `walk_to_boundary` but also returns the local images of (a, b)
    /// in the reached face's tetrahedron.
    #[allow(clippy::type_complexity)]
    pub fn walk_to_boundary_with(
        &self,
        t: usize,
        f: u8,
        a: u8,
        b: u8,
    ) -> Result<((usize, u8), (u8, u8)), ComplexError> {
        let c = face_verts(f).into_iter().find(|&v| v != a && v != b).unwrap();
        let (mut t, mut a, mut b, mut pivot) = (t, a, b, c);
        loop {
            match self.gluing(t, pivot) {
                None => return Ok(((t, pivot), (a, b))),
                Some(g) => {
                    let (t2, a2, b2) = (g.tet, g.perm.apply(a), g.perm.apply(b));
                    let other = (0..4u8).find(|&v| v != a2 && v != b2 && v != g.face).expect("fourth vertex");
                    t = t2;
                    a = a2;
                    b = b2;
                    pivot = other;
                }
            }
        }
    }

    /// From boundary face (t, f) across the edge (a, b) of that face: walk
    /// through glued tetrahedra around the edge to the boundary face on the
    /// other side.
    pub fn walk_to_boundary(&self, t: usize, f: u8, a: u8, b: u8) -> Result<(usize, u8), ComplexError> {
        // the third vertex of face f beside a,b:
        let c = face_verts(f).into_iter().find(|&v| v != a && v != b).unwrap();
        // pivot: cross the face of tet t containing (a, b) other than f, i.e.
        // the face opposite c
        let (mut t, mut a, mut b, mut pivot) = (t, a, b, c);
        loop {
            match self.gluing(t, pivot) {
                None => return Ok((t, pivot)),
                Some(g) => {
                    let (t2, a2, b2) = (g.tet, g.perm.apply(a), g.perm.apply(b));
                    // entered t2 through face g.face; next pivot is the face
                    // containing (a2,b2) other than g.face: opposite vertex
                    let other = (0..4u8)
                        .find(|&v| v != a2 && v != b2 && v != g.face)
                        .expect("fourth vertex");
                    t = t2;
                    a = a2;
                    b = b2;
                    pivot = other;
                }
            }
        }
    }

    /// Check a PL curve: closed, embedded, consecutive vertices joined by
    /// edges of the skeleton. Returns per-step edge classes.
    pub fn check_curve(&self, sk: &Skeleton, curve: &PLCurve) -> Result<Vec<usize>, ComplexError> {
        let k = curve.vertices.len();
        if k < 3 {
            return Err(ComplexError::BadCurve("fewer than 3 vertices".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for &v in &curve.vertices {
            if v >= sk.vertex_count {
                return Err(ComplexError::BadCurve(format!("vertex {v} out of range")));
            }
            if !seen.insert(v) {
                return Err(ComplexError::BadCurve(format!("vertex {v} repeated")));
            }
        }
        let mut edges = Vec::with_capacity(k);
        for i in 0..k {
            let (a, b) = (curve.vertices[i], curve.vertices[(i + 1) % k]);
            let e = self
                .find_edge(sk, a, b)
                .ok_or_else(|| ComplexError::BadCurve(format!("no edge between {a} and {b}")))?;
            edges.push(e);
        }
        Ok(edges)
    }

    pub fn find_edge(&self, sk: &Skeleton, a: usize, b: usize) -> Option<usize> {
        (0..sk.edge_count).find(|&e| {
            let ends = sk.edge_ends[e];
            (ends[0] == a && ends[1] == b) || (ends[0] == b && ends[1] == a)
        })
    }

    /// Vertex classes lying on the boundary.
    pub fn boundary_vertices(&self, sk: &Skeleton) -> std::collections::HashSet<usize> {
        let mut out = std::collections::HashSet::new();
        for t in 0..self.tets() {
            for f in 0..4u8 {
                if self.is_boundary(t, f) {
                    for v in face_verts(f) {
                        out.insert(sk.vertex_class[t][v as usize]);
                    }
                }
            }
        }
        out
    }
}

pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != c {
            let nxt = self.parent[c];
            self.parent[c] = r;
            c = nxt;
        }
        r
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Assign compact ids in order of smallest member.
    pub fn compact(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut ids = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0usize; n];
        for i in 0..n {
            let r = self.find(i);
            if ids[r] == usize::MAX {
                ids[r] = next;
                next += 1;
            }
            out[i] = ids[r];
        }
        (out, next)
    }
}

/// The standard 2-tetrahedron 3-sphere: two tets glued along all four faces
/// by the identity correspondence.
pub fn two_tet_sphere() -> Triangulation {
    let g = |tet: usize, face: u8| Some(Gluing { tet, face, perm: Perm4::IDENTITY });
    Triangulation::new(
        vec![
            [g(1, 0), g(1, 1), g(1, 2), g(1, 3)],
            [g(0, 0), g(0, 1), g(0, 2), g(0, 3)],
        ],
        vec![[None, None, None, None], [None, None, None, None]],
    )
}

/// One tetrahedron with all faces boundary, marked `sphere`.
pub fn one_tet_ball() -> Triangulation {
    let m = Some("sphere".to_string());
    Triangulation::new(vec![[None, None, None, None]], vec![[m.clone(), m.clone(), m.clone(), m]])
}

fn flag_slot(v: u8, u: u8) -> usize {
    // index of u among the three vertices != v
    let mut k = 0;
    for w in 0..4u8 {
        if w == v {
            continue;
        }
        if w == u {
            return k;
        }
        k += 1;
    }
    panic!("u == v");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_tet_is_valid_ball() {
        let t = one_tet_ball();
        t.validate().unwrap();
        let sk = t.skeleton().unwrap();
        assert_eq!(sk.vertex_count, 4);
        assert_eq!(sk.edge_count, 6);
        assert_eq!(sk.face_count, 4);
        let bc = t.boundary_components().unwrap();
        assert_eq!(bc.len(), 1);
        assert_eq!(bc[0].1, 2, "boundary is a 2-sphere");
        assert!(t.is_orientable());
    }

    #[test]
    fn two_tet_sphere_is_valid_closed() {
        let t = two_tet_sphere();
        t.validate().unwrap();
        let sk = t.skeleton().unwrap();
        assert_eq!(sk.vertex_count, 4);
        assert_eq!(sk.edge_count, 6);
        assert_eq!(sk.face_count, 4);
        assert!(t.boundary_components().unwrap().is_empty());
        assert!(t.is_orientable());
    }

    #[test]
    fn involution_violation_detected() {
        let mut t = two_tet_sphere();
        // face (0, 0) says it maps to (1, 0) but (1, 0) answers (0, 2)
        t.gluings[1][0] = Some(Gluing { tet: 0, face: 2, perm: Perm4([2, 1, 0, 3]) });
        assert!(matches!(t.check_involutive(), Err(ComplexError::NotInvolutive { .. })));
    }

    #[test]
    fn curve_checking() {
        let t = two_tet_sphere();
        let sk = t.skeleton().unwrap();
        let tri = PLCurve { vertices: vec![0, 1, 2] };
        let edges = t.check_curve(&sk, &tri).unwrap();
        assert_eq!(edges.len(), 3);
        assert!(t.check_curve(&sk, &PLCurve { vertices: vec![0, 1] }).is_err());
        assert!(t.check_curve(&sk, &PLCurve { vertices: vec![0, 1, 0, 2] }).is_err());
    }
}
