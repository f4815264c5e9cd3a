//! Reconstruction of the normal surface determined by a coordinate vector.
//!
//! Pieces are glued along their arcs on tetrahedron faces; arcs at a face
//! corner are nested by distance from the corner, and matched across face
//! gluings by nesting depth. Quadrilaterals are split into two triangles
//! along a diagonal, so the result is a triangulated surface.

use super::{quad_partner, quad_type_pairing, NormalError, NormalVector};
use crate::complex::{edge_index, face_verts, Skeleton, Triangulation, EDGE_VERTS};
use crate::surface::{SideGluing, SurfaceComplex};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// One elementary piece after quad splitting.
#[derive(Clone, Debug)]
pub struct Piece {
    pub tet: usize,
    /// triangle type (vertex it cuts off) or quad type + half
    pub kind: PieceKind,
    pub copy: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PieceKind {
    Tri(u8),
    QuadHalf(u8, u8), // (quad type, half 0/1)
}

/// A boundary-curve step: the curve runs through arc `arc` on the boundary
/// face `(tet, face)`, leaving through the point on `via_edge` (an ambient
/// edge class).
#[derive(Clone, Debug)]
pub struct BoundaryStep {
    pub tet: usize,
    pub face: u8,
    pub via_edge: usize,
}

pub struct ReconstructedSurface {
    pub pieces: Vec<Piece>,
    /// the assembled triangulated surface; triangle i corresponds to pieces[i]
    pub complex: SurfaceComplex,
    pub euler_characteristic: i64,
    pub components: usize,
    pub orientable: bool,
    /// boundary curves as cyclic step lists
    pub boundary_curves: Vec<Vec<BoundaryStep>>,
    /// total triangles counting each quad as two
    pub triangles_after_split: BigInt,
}

/// Identity of a surface vertex: a point where the surface meets an edge
/// class of the triangulation, indexed along the representative orientation.
type PointKey = (usize, u64);

/// Identity of a surface edge: an arc on a face class (corner as seen from
/// the representative, nesting depth) or a quad diagonal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum ArcKey {
    FaceArc { face: usize, corner: u8, nest: u64 },
    Diagonal { tet: usize, quad: u8, copy: u64 },
}

pub fn reconstruct(t: &Triangulation, v: &NormalVector) -> Result<ReconstructedSurface, NormalError> {
    let sk = t.skeleton()?;
    let n = t.tets();
    if v.coords.len() != 7 * n {
        return Err(NormalError::Length { got: v.coords.len(), want: 7 * n });
    }
    let tri_count = |tet: usize, vv: u8| -> u64 {
        v.tri(tet, vv).to_u64().expect("reconstruction needs machine-size counts")
    };
    let quad_of = |tet: usize| -> Option<(u8, u64)> {
        (0..3u8).find_map(|q| {
            let c = v.quad(tet, q);
            if c.is_zero() {
                None
            } else {
                Some((q, c.to_u64().expect("machine-size counts")))
            }
        })
    };

    // --- points on edges -------------------------------------------------
    // Along local edge (a, b) from a: tri(a) copies, the quad stack, tri(b)
    // copies reversed. Quad copy j sits at position j from the side of the
    // partition containing vertex 0.
    // Edge-point index along the representative orientation:
    let point_key = |tet: usize, a: u8, b: u8, idx_from_a: u64| -> PointKey {
        let e = edge_index(a, b);
        let (ec, sign) = sk.edge_class[tet][e as usize];
        let total = edge_total(v, tet, a, b);
        // sign refers to ascending local order
        let ascending_idx = if a < b { idx_from_a } else { total - 1 - idx_from_a };
        let idx = if sign > 0 { ascending_idx } else { total - 1 - ascending_idx };
        (ec, idx)
    };

    // --- pieces and their sides ------------------------------------------
    let mut pieces = Vec::new();
    let mut sides_keys: Vec<[(ArcKey, PointKey, PointKey); 3]> = Vec::new();
    let mut tri_split_total = BigInt::zero();

    // arc key on face (tet, f) at local corner c with local nest depth k:
    // translated through the gluing to the face representative
    let arc_key = |tet: usize, f: u8, c: u8, k: u64| -> ArcKey {
        let fc = sk.face_class[tet][f as usize];
        let (rt, rf, _) = sk.face_rep[fc];
        if (rt, rf) == (tet, f) {
            ArcKey::FaceArc { face: fc, corner: c, nest: k }
        } else {
            let g = t.gluing(tet, f).expect("interior face");
            debug_assert_eq!((g.tet, g.face), (rt, rf));
            ArcKey::FaceArc { face: fc, corner: g.perm.apply(c), nest: k }
        }
    };

    for tet in 0..n {
        // triangle pieces
        for vv in 0..4u8 {
            for j in 0..tri_count(tet, vv) {
                let others: Vec<u8> = (0..4u8).filter(|&x| x != vv).collect();
                // corners on edges (vv, u); sides on faces f != vv
                // build the 3 sides: side on face f joins the corners on the
                // two edges at vv lying in f
                let mut side_list = Vec::new();
                for &f in &others {
                    // face f contains vv and the two others != f
                    let us: Vec<u8> = others.iter().copied().filter(|&u| u != f).collect();
                    let (u1, u2) = (us[0], us[1]);
                    let p1 = point_key(tet, vv, u1, j);
                    let p2 = point_key(tet, vv, u2, j);
                    side_list.push((arc_key(tet, f, vv, j), p1, p2));
                }
                pieces.push(Piece { tet, kind: PieceKind::Tri(vv), copy: j });
                sides_keys.push([side_list[0], side_list[1], side_list[2]]);
                tri_split_total += 1;
            }
        }
        // quad pieces, split along a diagonal
        if let Some((q, count)) = quad_of(tet) {
            let [s1, s2] = super::QUAD_PAIRS[q as usize];
            let (a, bq) = (s1[0], s1[1]); // side containing vertex 0
            let (c, dq) = (s2[0], s2[1]);
            for j in 0..count {
                // four corners: on edges (a,c), (c,b), (b,d), (d,a)
                let idx = |x: u8, y: u8| -> PointKey {
                    // position from x: tri(x) + offset in the quad stack
                    let off = if x == a || x == bq { j } else { count - 1 - j };
                    point_key(tet, x, y, tri_count(tet, x) + off)
                };
                let p_ac = idx(a, c);
                let p_cb = idx(c, bq);
                let p_bd = idx(bq, dq);
                let p_da = idx(dq, a);
                // nesting of the quad's arc at corner `partner(f)` on face f:
                // after the tri copies, offset j from the side containing 0
                let nest = |f: u8| -> u64 {
                    let corner = quad_partner(q, f);
                    let off = if corner == a || corner == bq { j } else { count - 1 - j };
                    tri_count(tet, corner) + off
                };
                // sides on faces: face d joins p_ac..p_cb (arc at corner c);
                // face a: p_cb..p_bd (corner b); face c: p_bd..p_da (corner d);
                // face b: p_da..p_ac (corner a)
                let side_d = (arc_key(tet, dq, c, nest(dq)), p_ac, p_cb);
                let side_a = (arc_key(tet, a, bq, nest(a)), p_cb, p_bd);
                let side_c = (arc_key(tet, c, dq, nest(c)), p_bd, p_da);
                let side_b = (arc_key(tet, bq, a, nest(bq)), p_da, p_ac);
                let diag = (ArcKey::Diagonal { tet, quad: q, copy: j }, p_ac, p_bd);
                // two halves: (ac, cb, bd) and (ac, bd, da)
                pieces.push(Piece { tet, kind: PieceKind::QuadHalf(q, 0), copy: j });
                sides_keys.push([side_d, side_a, (diag.0, diag.2, diag.1)]);
                pieces.push(Piece { tet, kind: PieceKind::QuadHalf(q, 1), copy: j });
                sides_keys.push([diag, side_c, side_b]);
                tri_split_total += 2;
            }
        }
    }

    // --- assemble the surface complex ------------------------------------
    // Group sides by arc key; each key owns one or two sides.
    let mut owners: std::collections::HashMap<ArcKey, Vec<(usize, u8)>> = std::collections::HashMap::new();
    for (tri, sides) in sides_keys.iter().enumerate() {
        for (s, (key, _, _)) in sides.iter().enumerate() {
            owners.entry(*key).or_default().push((tri, s as u8));
        }
    }
    let ntri = pieces.len();
    let mut gluing: Vec<[Option<SideGluing>; 3]> = vec![[None, None, None]; ntri];
    let mut boundary_sides: Vec<(usize, u8)> = Vec::new();
    for (key, own) in owners.iter() {
        match own.len() {
            1 => {
                let (tri, s) = own[0];
                match key {
                    ArcKey::FaceArc { face, .. } if sk.face_rep[*face].2 => {
                        boundary_sides.push((tri, s));
                    }
                    _ => {
                        return Err(NormalError::Invalid(format!(
                            "interior arc {key:?} has a single owner; vector is not admissible"
                        )))
                    }
                }
            }
            2 => {
                let (t1, s1) = own[0];
                let (t2, s2) = own[1];
                // orientation from the endpoint keys
                let (_, a1, b1) = sides_keys[t1][s1 as usize];
                let (_, a2, b2) = sides_keys[t2][s2 as usize];
                let swap = if (a1, b1) == (a2, b2) {
                    false
                } else if (a1, b1) == (b2, a2) {
                    true
                } else {
                    return Err(NormalError::Invalid(format!(
                        "arc {key:?} endpoints disagree: {a1:?},{b1:?} vs {a2:?},{b2:?}"
                    )));
                };
                gluing[t1][s1 as usize] = Some(SideGluing { tri: t2, side: s2, swap });
                gluing[t2][s2 as usize] = Some(SideGluing { tri: t1, side: s1, swap });
            }
            k => {
                return Err(NormalError::Invalid(format!("arc {key:?} has {k} owners")));
            }
        }
    }
    let complex = SurfaceComplex::standalone(gluing);
    complex.validate().map_err(|e| NormalError::Invalid(e.to_string()))?;
    let chi = complex.euler_characteristic();
    let orientable = complex.orientations().is_some();
    // components via union-find on triangles
    let components = {
        if ntri == 0 {
            0
        } else {
            let mut uf = crate::complex::UnionFind::new(ntri);
            for (t1, sides) in complex.sides.iter().enumerate() {
                for g in sides.iter().flatten() {
                    uf.union(t1, g.tri);
                }
            }
            let mut roots = std::collections::HashSet::new();
            for i in 0..ntri {
                roots.insert(uf.find(i));
            }
            roots.len()
        }
    };

    // --- boundary curves --------------------------------------------------
    // boundary sides chain through shared endpoint keys
    let mut point_to_sides: std::collections::HashMap<PointKey, Vec<usize>> = std::collections::HashMap::new();
    for (i, &(tri, s)) in boundary_sides.iter().enumerate() {
        let (_, a, b) = sides_keys[tri][s as usize];
        point_to_sides.entry(a).or_default().push(i);
        point_to_sides.entry(b).or_default().push(i);
    }
    for (p, ss) in &point_to_sides {
        if ss.len() != 2 {
            return Err(NormalError::Invalid(format!(
                "boundary point {p:?} met by {} arcs",
                ss.len()
            )));
        }
    }
    let mut used = vec![false; boundary_sides.len()];
    let mut boundary_curves = Vec::new();
    for start in 0..boundary_sides.len() {
        if used[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut cur = start;
        // orient: exit through endpoint b each time
        let (_, _, mut exit) = sides_keys[boundary_sides[cur].0][boundary_sides[cur].1 as usize];
        loop {
            used[cur] = true;
            let (tri, s) = boundary_sides[cur];
            let key = sides_keys[tri][s as usize].0;
            let (tet, face) = match key {
                ArcKey::FaceArc { face, .. } => {
                    let (rt, rf, _) = sk.face_rep[face];
                    (rt, rf)
                }
                _ => unreachable!("boundary side is a face arc"),
            };
            walk.push(BoundaryStep { tet, face, via_edge: exit.0 });
            // next side: the other side at `exit`
            let ss = &point_to_sides[&exit];
            let nxt = if ss[0] == cur { ss[1] } else { ss[0] };
            let (_, na, nb) = sides_keys[boundary_sides[nxt].0][boundary_sides[nxt].1 as usize];
            exit = if na == exit { nb } else { na };
            cur = nxt;
            if cur == start {
                break;
            }
        }
        boundary_curves.push(walk);
    }

    Ok(ReconstructedSurface {
        pieces,
        complex,
        euler_characteristic: chi,
        components,
        orientable,
        boundary_curves,
        triangles_after_split: tri_split_total,
    })
}

/// Total surface points along local edge (a, b) of a tetrahedron.
fn edge_total(v: &NormalVector, tet: usize, a: u8, b: u8) -> u64 {
    let t = |x: u8| v.tri(tet, x).to_u64().expect("machine-size counts");
    let q = quad_type_pairing(a, b);
    // quads crossing edge (a,b) are those separating a from b: the two types
    // other than the one pairing a with b; admissibility leaves at most one
    let crossing: u64 = (0..3u8)
        .filter(|&qq| qq != q)
        .map(|qq| v.quad(tet, qq).to_u64().expect("machine-size counts"))
        .sum();
    t(a) + crossing + t(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::two_tet_sphere;
    use crate::normalsurf::{matching_system, vertex_link_vector};

    #[test]
    fn vertex_link_is_sphere() {
        let t = two_tet_sphere();
        let sk = t.skeleton().unwrap();
        let v = vertex_link_vector(&t, &sk, 0);
        let s = reconstruct(&t, &v).unwrap();
        assert_eq!(s.euler_characteristic, 2);
        assert_eq!(s.components, 1);
        assert!(s.orientable);
        assert!(s.boundary_curves.is_empty());
        assert_eq!(s.triangles_after_split, BigInt::from(2));
    }

    #[test]
    fn boundary_vertex_link_is_disk() {
        let t = crate::complex::one_tet_ball();
        let sk = t.skeleton().unwrap();
        let v = vertex_link_vector(&t, &sk, 0);
        let s = reconstruct(&t, &v).unwrap();
        assert_eq!(s.euler_characteristic, 1);
        assert_eq!(s.components, 1);
        assert_eq!(s.boundary_curves.len(), 1);
    }

    #[test]
    fn doubling_scales_components() {
        let t = two_tet_sphere();
        let sk = t.skeleton().unwrap();
        let v = vertex_link_vector(&t, &sk, 0);
        let ms = matching_system(&t).unwrap();
        let doubled = v.scale(2);
        assert!(crate::normalsurf::is_admissible(&ms, &doubled).unwrap());
        let s = reconstruct(&t, &doubled).unwrap();
        assert_eq!(s.components, 2, "two parallel copies");
        assert_eq!(s.euler_characteristic, 4);
    }

    #[test]
    fn quad_pieces_assemble() {
        // a single tetrahedron: one quad of each type is a valid (boundary)
        // surface; with no equations every vector is matching
        let t = crate::complex::one_tet_ball();
        for q in 0..3u8 {
            let mut v = NormalVector::zero(1);
            v.coords[crate::normalsurf::quad_index(0, q)] = BigInt::from(2);
            let s = reconstruct(&t, &v).unwrap();
            assert_eq!(s.components, 2);
            assert_eq!(s.euler_characteristic, 2, "two disks");
            assert_eq!(s.boundary_curves.len(), 2);
            assert_eq!(s.triangles_after_split, BigInt::from(4));
        }
    }
}
