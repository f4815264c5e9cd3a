//! Triangulated surfaces as Δ-complexes, with transverse curves and the
//! homological intersection pairing.
//!
//! A surface is a list of triangles with side gluings; side i of a triangle
//! joins its corners i and i+1 (mod 3). Surfaces arise as marked boundary
//! components of a 3-manifold triangulation (each side then remembers the
//! ambient edge class) or as standalone fixtures.

use crate::complex::{edge_index, face_verts, ComplexError, Skeleton, Triangulation};
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("{0}")]
    Invalid(String),
    #[error("curve is not realizable: {0}")]
    BadCurve(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SideGluing {
    pub tri: usize,
    pub side: u8,
    /// false: corner s -> corner s', s+1 -> s'+1; true: corner s -> s'+1
    pub swap: bool,
}

#[derive(Clone, Debug)]
pub struct SurfaceComplex {
    pub sides: Vec<[Option<SideGluing>; 3]>,
    /// ambient face (tet, face) when built from a boundary, else None
    pub source_face: Vec<Option<(usize, u8)>>,
    /// ambient edge class and sign per (tri, side): sign +1 when the side
    /// direction (corner s -> s+1) agrees with the ambient representative
    pub ambient_edge: Vec<[Option<(usize, i8)>; 3]>,
    /// ambient vertex class per corner
    pub ambient_vertex: Vec<[Option<usize>; 3]>,
}

/// Derived side/corner classes of a surface.
pub struct SurfaceSkeleton {
    pub edge_count: usize,
    /// edge class and sign of (tri, side); sign +1 when the side direction
    /// agrees with the class representative
    pub edge_class: Vec<[(usize, i8); 3]>,
    pub vertex_count: usize,
    pub vertex_class: Vec<[usize; 3]>,
    /// whether each edge class is boundary
    pub edge_boundary: Vec<bool>,
}

impl SurfaceComplex {
    pub fn tris(&self) -> usize {
        self.sides.len()
    }

    pub fn standalone(sides: Vec<[Option<SideGluing>; 3]>) -> Self {
        let n = sides.len();
        SurfaceComplex {
            sides,
            source_face: vec![None; n],
            ambient_edge: vec![[None, None, None]; n],
            ambient_vertex: vec![[None, None, None]; n],
        }
    }

    /// Check gluing involutivity.
    pub fn validate(&self) -> Result<(), SurfaceError> {
        for (t, sides) in self.sides.iter().enumerate() {
            for s in 0..3u8 {
                if let Some(g) = &sides[s as usize] {
                    let back = self.sides.get(g.tri).and_then(|x| x[g.side as usize].as_ref());
                    match back {
                        Some(b) if b.tri == t && b.side == s && b.swap == g.swap => {}
                        _ => {
                            return Err(SurfaceError::Invalid(format!(
                                "side ({t},{s}) gluing is not involutive"
                            )))
                        }
                    }
                    if g.tri == t && g.side == s {
                        return Err(SurfaceError::Invalid(format!("side ({t},{s}) glued to itself")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Corner image across the gluing of side (tri, s) for corner c in {s, s+1}.
    fn corner_image(&self, _tri: usize, s: u8, g: &SideGluing, c: u8) -> u8 {
        let first = c == s; // c is the corner at the start of the side
        match (first, g.swap) {
            (true, false) => g.side,
            (true, true) => (g.side + 1) % 3,
            (false, false) => (g.side + 1) % 3,
            (false, true) => g.side,
        }
    }

    pub fn skeleton(&self) -> SurfaceSkeleton {
        let n = self.tris();
        // edge classes: sides glued in pairs
        let mut edge_class = vec![[(usize::MAX, 0i8); 3]; n];
        let mut edge_boundary = Vec::new();
        let mut edge_count = 0;
        for t in 0..n {
            for s in 0..3u8 {
                if edge_class[t][s as usize].0 != usize::MAX {
                    continue;
                }
                let id = edge_count;
                edge_count += 1;
                edge_class[t][s as usize] = (id, 1);
                match &self.sides[t][s as usize] {
                    None => edge_boundary.push(true),
                    Some(g) => {
                        // partner side direction: agrees when swap (start maps
                        // to the far corner, i.e. directions anti-align when
                        // corner s -> corner s')
                        let sign = if g.swap { 1 } else { -1 };
                        edge_class[g.tri][g.side as usize] = (id, sign);
                        edge_boundary.push(false);
                    }
                }
            }
        }
        // corner classes via union-find
        let mut uf = crate::complex::UnionFind::new(n * 3);
        for t in 0..n {
            for s in 0..3u8 {
                if let Some(g) = &self.sides[t][s as usize] {
                    for c in [s, (s + 1) % 3] {
                        let img = self.corner_image(t, s, g, c);
                        uf.union(t * 3 + c as usize, g.tri * 3 + img as usize);
                    }
                }
            }
        }
        let (classes, vertex_count) = uf.compact();
        let vertex_class: Vec<[usize; 3]> =
            (0..n).map(|t| [classes[t * 3], classes[t * 3 + 1], classes[t * 3 + 2]]).collect();
        SurfaceSkeleton { edge_count, edge_class, vertex_count, vertex_class, edge_boundary }
    }

    pub fn euler_characteristic(&self) -> i64 {
        let sk = self.skeleton();
        sk.vertex_count as i64 - sk.edge_count as i64 + self.tris() as i64
    }

    pub fn is_connected(&self) -> bool {
        if self.tris() == 0 {
            return true;
        }
        let mut uf = crate::complex::UnionFind::new(self.tris());
        for t in 0..self.tris() {
            for s in 0..3 {
                if let Some(g) = &self.sides[t][s] {
                    uf.union(t, g.tri);
                }
            }
        }
        let root = uf.find(0);
        (1..self.tris()).all(|t| uf.find(t) == root)
    }

    /// Coherent triangle orientations (+1/-1), or None if non-orientable.
    /// A gluing is orientation-coherent between equal signs iff it swaps.
    pub fn orientations(&self) -> Option<Vec<i8>> {
        let n = self.tris();
        let mut or = vec![0i8; n];
        for start in 0..n {
            if or[start] != 0 {
                continue;
            }
            or[start] = 1;
            let mut stack = vec![start];
            while let Some(t) = stack.pop() {
                for s in 0..3 {
                    if let Some(g) = &self.sides[t][s] {
                        let want = if g.swap { or[t] } else { -or[t] };
                        if or[g.tri] == 0 {
                            or[g.tri] = want;
                            stack.push(g.tri);
                        } else if or[g.tri] != want {
                            return None;
                        }
                    }
                }
            }
        }
        Some(or)
    }

    pub fn max_vertex_valence(&self) -> usize {
        let sk = self.skeleton();
        let mut count = vec![0usize; sk.vertex_count];
        for t in 0..self.tris() {
            for c in 0..3 {
                count[sk.vertex_class[t][c]] += 1;
            }
        }
        // corner count equals the number of incident triangle-corners; the
        // edge valence of an interior vertex equals its corner count
        count.into_iter().max().unwrap_or(0)
    }

    /// Generators of the cycle space: fundamental cycles of a spanning tree
    /// of the 1-skeleton, as signed vectors over edge classes.
    pub fn cycle_generators(&self) -> Vec<Vec<BigInt>> {
        let sk = self.skeleton();
        // edges as vertex pairs with the representative orientation
        let mut ends = vec![(usize::MAX, usize::MAX); sk.edge_count];
        for t in 0..self.tris() {
            for s in 0..3u8 {
                let (e, sign) = sk.edge_class[t][s as usize];
                if ends[e].0 != usize::MAX {
                    continue;
                }
                let (a, b) = (sk.vertex_class[t][s as usize], sk.vertex_class[t][(s as usize + 1) % 3]);
                ends[e] = if sign > 0 { (a, b) } else { (b, a) };
            }
        }
        // spanning forest
        let mut parent: Vec<Option<(usize, usize, i8)>> = vec![None; sk.vertex_count]; // (parent, edge, dir)
        let mut visited = vec![false; sk.vertex_count];
        let mut adjacency: Vec<Vec<(usize, usize, i8)>> = vec![Vec::new(); sk.vertex_count];
        for (e, &(a, b)) in ends.iter().enumerate() {
            adjacency[a].push((b, e, 1));
            adjacency[b].push((a, e, -1));
        }
        let mut tree_edges = vec![false; sk.edge_count];
        for root in 0..sk.vertex_count {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &(w, e, dir) in &adjacency[v] {
                    if !visited[w] {
                        visited[w] = true;
                        parent[w] = Some((v, e, dir));
                        tree_edges[e] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let path_to_root = |mut v: usize| -> Vec<(usize, i8)> {
            let mut out = Vec::new();
            while let Some((p, e, dir)) = parent[v] {
                out.push((e, dir));
                v = p;
            }
            out
        };
        let mut gens = Vec::new();
        for (e, &(a, b)) in ends.iter().enumerate() {
            if tree_edges[e] {
                continue;
            }
            let mut v = vec![BigInt::zero(); sk.edge_count];
            v[e] += 1;
            // walk b -> root, root -> a: add b's path, subtract a's path
            for (pe, dir) in path_to_root(b) {
                v[pe] += BigInt::from(dir as i64);
            }
            for (pe, dir) in path_to_root(a) {
                v[pe] -= BigInt::from(dir as i64);
            }
            gens.push(v);
        }
        gens
    }

    /// Translate a signed ambient edge-cycle (coefficients on ambient edge
    /// classes lying on this surface) into a vector over surface edges.
    pub fn ambient_edge_cycle(&self, coeffs: &[(usize, i64)]) -> Result<Vec<BigInt>, SurfaceError> {
        let sk = self.skeleton();
        let mut by_ambient: std::collections::HashMap<usize, (usize, i8)> = std::collections::HashMap::new();
        for t in 0..self.tris() {
            for s in 0..3u8 {
                if let Some((ae, dir)) = self.ambient_edge[t][s as usize] {
                    let (se, ssign) = sk.edge_class[t][s as usize];
                    // orientation of the surface edge class relative to the
                    // ambient representative
                    by_ambient.entry(ae).or_insert((se, dir * ssign));
                }
            }
        }
        let mut v = vec![BigInt::zero(); sk.edge_count];
        for &(ae, c) in coeffs {
            let &(se, sign) = by_ambient
                .get(&ae)
                .ok_or_else(|| SurfaceError::BadCurve(format!("ambient edge {ae} not on surface")))?;
            v[se] += BigInt::from(c * sign as i64);
        }
        Ok(v)
    }

    /// Express a surface edge-cycle as coefficients on ambient edge classes.
    pub fn to_ambient_cycle(&self, cycle: &[BigInt]) -> Result<Vec<(usize, i64)>, SurfaceError> {
        use num_traits::ToPrimitive;
        let sk = self.skeleton();
        let mut seen = vec![false; sk.edge_count];
        let mut out = Vec::new();
        for t in 0..self.tris() {
            for s in 0..3u8 {
                let (se, ssign) = sk.edge_class[t][s as usize];
                if seen[se] || cycle[se].is_zero() {
                    continue;
                }
                seen[se] = true;
                let (ae, dir) = self.ambient_edge[t][s as usize]
                    .ok_or_else(|| SurfaceError::BadCurve("surface has no ambient annotations".into()))?;
                let c = cycle[se]
                    .to_i64()
                    .ok_or_else(|| SurfaceError::BadCurve("coefficient overflow".into()))?;
                out.push((ae, c * (dir * ssign) as i64));
            }
        }
        out.sort();
        Ok(out)
    }

    /// Translate a closed walk of ambient vertex classes lying on this
    /// surface into a signed vector over the surface's edge classes.
    pub fn ambient_cycle_vector(&self, walk: &[usize]) -> Result<Vec<BigInt>, SurfaceError> {
        let sk = self.skeleton();
        // ambient vertex class -> surface vertex class
        let mut to_surface: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        for t in 0..self.tris() {
            for c in 0..3 {
                if let Some(av) = self.ambient_vertex[t][c] {
                    to_surface.insert(av, sk.vertex_class[t][c]);
                }
            }
        }
        // surface edges by their endpoint pair
        let mut by_pair: std::collections::HashMap<(usize, usize), (usize, i8)> =
            std::collections::HashMap::new();
        for t in 0..self.tris() {
            for s in 0..3u8 {
                let (e, sign) = sk.edge_class[t][s as usize];
                let (a, b) = (sk.vertex_class[t][s as usize], sk.vertex_class[t][(s as usize + 1) % 3]);
                let (ra, rb, rs) = if sign > 0 { (a, b, 1i8) } else { (b, a, 1i8) };
                let _ = rs;
                by_pair.entry((ra, rb)).or_insert((e, 1));
                by_pair.entry((rb, ra)).or_insert((e, -1));
            }
        }
        let mut v = vec![BigInt::zero(); sk.edge_count];
        let k = walk.len();
        for i in 0..k {
            let (a, b) = (walk[i], walk[(i + 1) % k]);
            if a == b {
                continue;
            }
            let (&sa, &sb) = (
                to_surface.get(&a).ok_or_else(|| SurfaceError::BadCurve(format!("vertex {a} not on surface")))?,
                to_surface.get(&b).ok_or_else(|| SurfaceError::BadCurve(format!("vertex {b} not on surface")))?,
            );
            let &(e, sign) = by_pair
                .get(&(sa, sb))
                .ok_or_else(|| SurfaceError::BadCurve(format!("no surface edge {a}-{b}")))?;
            v[e] += BigInt::from(sign as i64);
        }
        Ok(v)
    }
}

/// Build the surface carried by the boundary faces with the given mark.
pub fn from_marked_boundary(
    t: &Triangulation,
    sk: &Skeleton,
    mark: &str,
) -> Result<SurfaceComplex, ComplexError> {
    let faces: Vec<(usize, u8)> = crate::complex::marked_faces(t, mark);
    let index: std::collections::HashMap<(usize, u8), usize> =
        faces.iter().copied().enumerate().map(|(i, x)| (x, i)).collect();
    let n = faces.len();
    let mut sides: Vec<[Option<SideGluing>; 3]> = vec![[None, None, None]; n];
    let mut ambient_edge: Vec<[Option<(usize, i8)>; 3]> = vec![[None, None, None]; n];
    let mut ambient_vertex: Vec<[Option<usize>; 3]> = vec![[None, None, None]; n];
    for (i, &(tet, f)) in faces.iter().enumerate() {
        let vs = face_verts(f);
        for c in 0..3 {
            ambient_vertex[i][c] = Some(sk.vertex_class[tet][vs[c] as usize]);
        }
        for s in 0..3u8 {
            let (a, b) = (vs[s as usize], vs[(s as usize + 1) % 3]);
            let (ec, sign) = sk.edge_class[tet][edge_index(a, b) as usize];
            // side direction a -> b versus ambient representative: the stored
            // sign refers to ascending local order; flip when a > b
            let dir = if a < b { sign } else { -sign };
            ambient_edge[i][s as usize] = Some((ec, dir));
            // neighbor boundary face across this edge
            let (t2, f2) = t.walk_to_boundary_with(tet, f, a, b)?;
            let j = *index.get(&(t2.0, t2.1)).ok_or_else(|| {
                ComplexError::Invalid(format!(
                    "boundary face ({},{}) reached from mark '{mark}' carries a different mark",
                    t2.0, t2.1
                ))
            })?;
            // f2 = (image of a, image of b) as local vertices of the far face
            let (ia, ib) = f2;
            let vs2 = face_verts(t2.1);
            let pa = vs2.iter().position(|&x| x == ia).unwrap() as u8;
            let pb = vs2.iter().position(|&x| x == ib).unwrap() as u8;
            // the far side joins corners pa and pb; sides are (s', s'+1)
            let (s2, swap) = if (pa + 1) % 3 == pb {
                (pa, false)
            } else if (pb + 1) % 3 == pa {
                (pb, true)
            } else {
                return Err(ComplexError::Internal("far corners are not adjacent".into()));
            };
            sides[i][s as usize] = Some(SideGluing { tri: j, side: s2, swap });
        }
    }
    let surf = SurfaceComplex {
        sides,
        source_face: faces.iter().map(|&x| Some(x)).collect(),
        ambient_edge,
        ambient_vertex,
    };
    surf.validate().map_err(|e| ComplexError::Invalid(e.to_string()))?;
    Ok(surf)
}

/// Signed intersection number of a transverse-crossing list with a cycle
/// vector over surface edges. `crossings` lists (edge class, out-of triangle,
/// side) steps; the sign convention is fixed by coherent orientations.
pub fn intersection_number(
    surf: &SurfaceComplex,
    sk: &SurfaceSkeleton,
    orientations: &[i8],
    crossings: &[(usize, usize, u8)], // (edge class, from-triangle, via side)
    cycle: &[BigInt],
) -> BigInt {
    let mut total = BigInt::zero();
    for &(e, tri, side) in crossings {
        if cycle[e].is_zero() {
            continue;
        }
        let (ec, dir) = sk.edge_class[tri][side as usize];
        debug_assert_eq!(ec, e);
        let sign = BigInt::from((orientations[tri] * dir) as i64);
        total += sign * &cycle[e];
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two-triangle torus: the unit square (A,B,C,D) with opposite sides
    /// identified, cut along the diagonal AC. Triangle 0 = (A,B,C),
    /// triangle 1 = (A,C,D).
    pub fn two_triangle_torus() -> SurfaceComplex {
        SurfaceComplex::standalone(vec![
            [
                Some(SideGluing { tri: 1, side: 1, swap: true }), // AB ~ DC
                Some(SideGluing { tri: 1, side: 2, swap: true }), // BC ~ AD
                Some(SideGluing { tri: 1, side: 0, swap: true }), // CA ~ AC
            ],
            [
                Some(SideGluing { tri: 0, side: 2, swap: true }),
                Some(SideGluing { tri: 0, side: 0, swap: true }),
                Some(SideGluing { tri: 0, side: 1, swap: true }),
            ],
        ])
    }

    #[test]
    fn torus_invariants() {
        let t = two_triangle_torus();
        t.validate().unwrap();
        assert_eq!(t.euler_characteristic(), 0);
        assert!(t.is_connected());
        assert!(t.orientations().is_some());
        let sk = t.skeleton();
        assert_eq!(sk.vertex_count, 1);
        assert_eq!(sk.edge_count, 3);
        assert_eq!(t.cycle_generators().len(), 3, "e - v + components");
    }

    #[test]
    fn boundary_surface_of_solid_torus() {
        let st = crate::fixtures::solid_torus();
        let sk = st.skeleton().unwrap();
        let surf = from_marked_boundary(&st, &sk, "peripheral_torus").unwrap();
        assert_eq!(surf.tris(), 2);
        assert_eq!(surf.euler_characteristic(), 0);
        assert!(surf.is_connected());
        assert!(surf.orientations().is_some());
    }
}
