//! Barycentric subdivision via the flag construction: one tetrahedron per
//! chain vertex < edge < face < tet. Subdividing multiplies the tetrahedron
//! count by exactly 24 and scales integer coordinates by 12 so barycenters
//! stay integral.

use super::{edge_index, face_verts, ComplexError, Gluing, PLCurve, Perm4, Triangulation, EDGE_VERTS};
use num_bigint::BigInt;

/// One barycentric subdivision together with the vertex maps needed to push
/// curves into the finer complex.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub result: Triangulation,
    /// old vertex class -> new vertex class
    pub vertex_map: Vec<usize>,
    /// old edge class -> new vertex class of its midpoint
    pub edge_mid: Vec<usize>,
}

/// Flags of one tetrahedron in a fixed order: (v, e, f), v in e, e in f.
fn flags() -> Vec<(u8, u8, u8)> {
    let mut out = Vec::with_capacity(24);
    for v in 0..4u8 {
        for e in 0..6u8 {
            let [a, b] = EDGE_VERTS[e as usize];
            if a != v && b != v {
                continue;
            }
            for f in 0..4u8 {
                if f != a && f != b {
                    out.push((v, e, f));
                }
            }
        }
    }
    debug_assert_eq!(out.len(), 24);
    out
}

fn flag_index(v: u8, e: u8, f: u8) -> usize {
    // must match the iteration order of flags()
    static ONCE: std::sync::OnceLock<std::collections::HashMap<(u8, u8, u8), usize>> = std::sync::OnceLock::new();
    let map = ONCE.get_or_init(|| flags().into_iter().enumerate().map(|(i, k)| (k, i)).collect());
    map[&(v, e, f)]
}

pub fn barycentric_subdivide(t: &Triangulation) -> Result<Subdivision, ComplexError> {
    let sk = t.skeleton()?;
    let n = t.tets();
    let fl = flags();
    let new_tets = n * 24;
    let mut gluings: Vec<[Option<Gluing>; 4]> = vec![[None, None, None, None]; new_tets];
    let mut marks: Vec<[Option<String>; 4]> = vec![[None, None, None, None]; new_tets];
    let id = |tet: usize, v: u8, e: u8, f: u8| tet * 24 + flag_index(v, e, f);

    for tet in 0..n {
        for &(v, e, f) in &fl {
            let me = id(tet, v, e, f);
            let [a, b] = EDGE_VERTS[e as usize];
            let vprime = if a == v { b } else { a };
            // face 0: across the edge barycenter to the other end of e
            gluings[me][0] = Some(Gluing { tet: id(tet, vprime, e, f), face: 0, perm: Perm4::IDENTITY });
            // face 1: other edge of face f at v
            let eprime = {
                let other = face_verts(f).into_iter().find(|&w| w != v && w != vprime).unwrap();
                edge_index(v, other)
            };
            gluings[me][1] = Some(Gluing { tet: id(tet, v, eprime, f), face: 1, perm: Perm4::IDENTITY });
            // face 2: other face of the tet containing e
            let fprime = (0..4u8).find(|&w| w != a && w != b && w != f).unwrap();
            gluings[me][2] = Some(Gluing { tet: id(tet, v, e, fprime), face: 2, perm: Perm4::IDENTITY });
            // face 3: lies on the old face f
            match t.gluing(tet, f) {
                None => {
                    marks[me][3] = t.marks[tet][f as usize].clone();
                }
                Some(g) => {
                    let v2 = g.perm.apply(v);
                    let [ea, eb] = [g.perm.apply(a), g.perm.apply(b)];
                    let e2 = edge_index(ea, eb);
                    gluings[me][3] =
                        Some(Gluing { tet: id(g.tet, v2, e2, g.face), face: 3, perm: Perm4::IDENTITY });
                }
            }
        }
    }

    let mut result = Triangulation::new(gluings, marks);
    result.subdivisions_from_base = t.subdivisions_from_base + 1;
    let new_sk = result.skeleton()?;

    // vertex maps and coordinates via representative corners
    let mut vertex_map = vec![usize::MAX; sk.vertex_count];
    let mut edge_mid = vec![usize::MAX; sk.edge_count];
    let mut face_center = vec![usize::MAX; sk.face_count];
    let mut tet_center = vec![usize::MAX; n];
    for tet in 0..n {
        for &(v, e, f) in &fl {
            let me = id(tet, v, e, f);
            let nc = &new_sk.vertex_class[me];
            vertex_map[sk.vertex_class[tet][v as usize]] = nc[0];
            edge_mid[sk.edge_class[tet][e as usize].0] = nc[1];
            face_center[sk.face_class[tet][f as usize]] = nc[2];
            tet_center[tet] = nc[3];
        }
    }

    if let Some(coords) = &t.coords {
        let mut new_coords = vec![[BigInt::from(0), BigInt::from(0), BigInt::from(0)]; new_sk.vertex_count];
        let twelve = BigInt::from(12);
        for (old, &nv) in vertex_map.iter().enumerate() {
            for k in 0..3 {
                new_coords[nv][k] = &coords[old][k] * &twelve;
            }
        }
        for tet in 0..n {
            // midpoints and centers from representative corners
            for e in 0..6u8 {
                let [a, b] = EDGE_VERTS[e as usize];
                let (ca, cb) = (sk.vertex_class[tet][a as usize], sk.vertex_class[tet][b as usize]);
                let nv = edge_mid[sk.edge_class[tet][e as usize].0];
                for k in 0..3 {
                    new_coords[nv][k] = (&coords[ca][k] + &coords[cb][k]) * BigInt::from(6);
                }
            }
            for f in 0..4u8 {
                let vs = face_verts(f);
                let nv = face_center[sk.face_class[tet][f as usize]];
                for k in 0..3 {
                    let s: BigInt = vs.iter().map(|&v| coords[sk.vertex_class[tet][v as usize]][k].clone()).sum();
                    new_coords[nv][k] = s * BigInt::from(4);
                }
            }
            let nv = tet_center[tet];
            for k in 0..3 {
                let s: BigInt = (0..4).map(|v| coords[sk.vertex_class[tet][v]][k].clone()).sum();
                new_coords[nv][k] = s * BigInt::from(3);
            }
        }
        result.coords = Some(new_coords);
    }

    Ok(Subdivision { result, vertex_map, edge_mid })
}

impl Subdivision {
    /// Push a curve in the base complex into the subdivided one: each edge
    /// becomes two edges through its midpoint.
    pub fn push_curve(&self, base: &Triangulation, curve: &PLCurve) -> Result<PLCurve, ComplexError> {
        let sk = base.skeleton()?;
        let edges = base.check_curve(&sk, curve)?;
        let k = curve.vertices.len();
        let mut out = Vec::with_capacity(2 * k);
        for i in 0..k {
            out.push(self.vertex_map[curve.vertices[i]]);
            out.push(self.edge_mid[edges[i]]);
        }
        Ok(PLCurve { vertices: out })
    }
}

/// Two barycentric subdivisions, with the composite curve map. This is the
/// provenance regular-neighborhood constructions check for.
#[derive(Clone, Debug)]
pub struct DoubleSubdivision {
    pub base_tets: usize,
    pub first: Subdivision,
    pub second: Subdivision,
}

impl DoubleSubdivision {
    pub fn build(base: &Triangulation) -> Result<DoubleSubdivision, ComplexError> {
        let first = barycentric_subdivide(base)?;
        let second = barycentric_subdivide(&first.result)?;
        Ok(DoubleSubdivision { base_tets: base.tets(), first, second })
    }

    pub fn complex(&self) -> &Triangulation {
        &self.second.result
    }

    /// Push a curve from the base: each base edge becomes four edges; the
    /// original vertices land every fourth position.
    pub fn push_curve(&self, base: &Triangulation, curve: &PLCurve) -> Result<PLCurve, ComplexError> {
        let mid = self.first.push_curve(base, curve)?;
        self.second.push_curve(&self.first.result, &mid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{one_tet_ball, two_tet_sphere};

    #[test]
    fn one_tet_subdivides_to_24() {
        let t = one_tet_ball();
        let sub = barycentric_subdivide(&t).unwrap();
        assert_eq!(sub.result.tets(), 24);
        sub.result.validate().unwrap();
        // boundary sphere: 4 faces become 24
        let bc = sub.result.boundary_components().unwrap();
        assert_eq!(bc.len(), 1);
        assert_eq!(bc[0].0.len(), 24);
        assert_eq!(bc[0].1, 2);
    }

    #[test]
    fn double_subdivision_counts() {
        let t = one_tet_ball();
        let dd = DoubleSubdivision::build(&t).unwrap();
        assert_eq!(dd.complex().tets(), 576);
        assert_eq!(dd.complex().subdivisions_from_base, 2);
        dd.complex().validate().unwrap();
    }

    #[test]
    fn closed_manifold_stays_closed() {
        let t = two_tet_sphere();
        let sub = barycentric_subdivide(&t).unwrap();
        assert_eq!(sub.result.tets(), 48);
        sub.result.validate().unwrap();
        assert!(sub.result.boundary_components().unwrap().is_empty());
        assert!(sub.result.is_orientable());
    }

    #[test]
    fn curve_pushes_through() {
        let t = two_tet_sphere();
        let curve = PLCurve { vertices: vec![0, 1, 2] };
        let dd = DoubleSubdivision::build(&t).unwrap();
        let pushed = dd.push_curve(&t, &curve).unwrap();
        assert_eq!(pushed.vertices.len(), 12, "s = 4r + 4 with r = 2");
        let sk = dd.complex().skeleton().unwrap();
        dd.complex().check_curve(&sk, &pushed).unwrap();
    }

    #[test]
    fn coordinates_scale_exactly() {
        let mut t = one_tet_ball();
        t.coords = Some(vec![
            [BigInt::from(0), BigInt::from(0), BigInt::from(0)],
            [BigInt::from(1), BigInt::from(0), BigInt::from(0)],
            [BigInt::from(0), BigInt::from(1), BigInt::from(0)],
            [BigInt::from(0), BigInt::from(0), BigInt::from(1)],
        ]);
        let sub = barycentric_subdivide(&t).unwrap();
        let coords = sub.result.coords.as_ref().unwrap();
        let sk = sub.result.skeleton().unwrap();
        assert_eq!(coords.len(), sk.vertex_count);
        // original vertex 1 maps to coordinate (12,0,0)
        let v = sub.vertex_map[1];
        assert_eq!(coords[v], [BigInt::from(12), BigInt::from(0), BigInt::from(0)]);
    }
}
