//! Integer chain complex machinery: the edge/face boundary matrix with fixed
//! orientations, cycle vectors of curves, homology via Smith normal form,
//! and cyclic covers (used to validate bundled fixtures).

use super::{edge_index, face_verts, ComplexError, Gluing, PLCurve, Skeleton, Triangulation};
use crate::linalg::{rank, smith_diagonal, IntMat};
use num_bigint::BigInt;
use num_traits::Zero;

/// Oriented boundary matrix: rows = edge classes, columns = face classes.
/// On complexes without edge identifications within a face every column has
/// exactly three entries, all +-1; wilder gluings can merge or cancel edge
/// contributions, which `three_per_column` reports.
pub struct BoundaryMatrix {
    pub mat: IntMat,
    pub skeleton: Skeleton,
    /// squared Euclidean norm of each column
    pub col_norm_sq: Vec<BigInt>,
    pub three_per_column: bool,
}

pub fn boundary_matrix(t: &Triangulation) -> Result<BoundaryMatrix, ComplexError> {
    let sk = t.skeleton()?;
    let mut mat = IntMat::zero(sk.edge_count, sk.face_count);
    let mut three = true;
    for fc in 0..sk.face_count {
        let (tet, f, _) = sk.face_rep[fc];
        let vs = face_verts(f); // ascending local vertices; cycle v0->v1->v2
        for k in 0..3 {
            let (a, b) = (vs[k], vs[(k + 1) % 3]);
            let e = edge_index(a, b);
            let (ec, sign) = sk.edge_class[tet][e as usize];
            // sign: +1 if local ascending orientation matches the class rep;
            // the traversal a->b is ascending iff a < b
            let dir = if a < b { 1 } else { -1 };
            *mat.at_mut(ec, fc) += BigInt::from((sign as i64) * dir);
        }
        let one = BigInt::from(1);
        let mut nonzero = 0;
        for r in 0..sk.edge_count {
            let x = mat.at(r, fc);
            if x.is_zero() {
                continue;
            }
            nonzero += 1;
            if x.magnitude() != one.magnitude() {
                three = false;
            }
        }
        if nonzero != 3 {
            three = false;
        }
    }
    let col_norm_sq: Vec<BigInt> = (0..sk.face_count)
        .map(|c| (0..sk.edge_count).map(|r| mat.at(r, c) * mat.at(r, c)).sum())
        .collect();
    Ok(BoundaryMatrix { mat, skeleton: sk, col_norm_sq, three_per_column: three })
}

/// Signed edge-incidence vector of a closed curve in the 1-skeleton.
pub fn cycle_vector(t: &Triangulation, curve: &PLCurve) -> Result<Vec<BigInt>, ComplexError> {
    let sk = t.skeleton()?;
    cycle_vector_with(&sk, t, curve)
}

pub fn cycle_vector_with(
    sk: &Skeleton,
    t: &Triangulation,
    curve: &PLCurve,
) -> Result<Vec<BigInt>, ComplexError> {
    let edges = t.check_curve(sk, curve)?;
    let mut v = vec![BigInt::zero(); sk.edge_count];
    let k = curve.vertices.len();
    for i in 0..k {
        let (a, b) = (curve.vertices[i], curve.vertices[(i + 1) % k]);
        let e = edges[i];
        let ends = sk.edge_ends[e];
        let sign = if (ends[0], ends[1]) == (a, b) {
            1
        } else if (ends[0], ends[1]) == (b, a) {
            -1
        } else {
            return Err(ComplexError::Internal("edge endpoints disagree with curve".into()));
        };
        if !v[e].is_zero() {
            return Err(ComplexError::BadCurve(format!("edge {e} traversed twice")));
        }
        v[e] = BigInt::from(sign);
    }
    Ok(v)
}

/// Signed cycle vector of a cyclic vertex walk that may repeat edges
/// (accumulates multiplicity; used for synthetic chains).
pub fn chain_vector(sk: &Skeleton, t: &Triangulation, walk: &[usize]) -> Result<Vec<BigInt>, ComplexError> {
    let mut v = vec![BigInt::zero(); sk.edge_count];
    let k = walk.len();
    for i in 0..k {
        let (a, b) = (walk[i], walk[(i + 1) % k]);
        if a == b {
            continue;
        }
        let e = t
            .find_edge(sk, a, b)
            .ok_or_else(|| ComplexError::BadCurve(format!("no edge between {a} and {b}")))?;
        let ends = sk.edge_ends[e];
        let sign = if (ends[0], ends[1]) == (a, b) { 1 } else { -1 };
        v[e] += BigInt::from(sign);
    }
    Ok(v)
}

/// H1 of the triangulation as (free rank, torsion invariant factors > 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl std::fmt::Display for Homology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = vec!["Z".repeat(0); 0];
        for _ in 0..self.rank {
            parts.push("Z".to_string());
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// First homology from the vertex-edge and edge-face incidence matrices.
pub fn homology_h1(t: &Triangulation) -> Result<Homology, ComplexError> {
    let sk = t.skeleton()?;
    // d1: edges -> vertices
    let mut d1 = IntMat::zero(sk.vertex_count, sk.edge_count);
    for e in 0..sk.edge_count {
        let [a, b] = sk.edge_ends[e];
        *d1.at_mut(b, e) += BigInt::from(1);
        *d1.at_mut(a, e) -= BigInt::from(1);
    }
    let d2 = boundary_matrix(t)?.mat;
    let z = sk.edge_count - rank(&d1);
    let r = rank(&d2);
    let torsion: Vec<BigInt> =
        smith_diagonal(&d2).into_iter().filter(|d| d > &BigInt::from(1)).collect();
    Ok(Homology { rank: z - r, torsion })
}

/// d1 boundary (vertices) of an edge chain; zero iff the chain is a cycle.
pub fn vertex_boundary(sk: &Skeleton, v: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); sk.vertex_count];
    for (e, coef) in v.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let [a, b] = sk.edge_ends[e];
        out[b] += coef;
        out[a] -= coef;
    }
    out
}

/// A k-fold cyclic cover induced by a primitive cocycle on interior faces.
pub struct CyclicCover {
    pub cover: Triangulation,
    pub sheets: usize,
}

/// Compute a primitive Z-cocycle on the dual 1-skeleton (values on interior
/// face classes, relations around interior edges). Coboundaries are gauged
/// away by forcing the cocycle to vanish on a dual spanning tree, so the
/// kernel computed below is H^1 itself. Requires H^1 rank >= 1.
pub fn dual_cocycle(t: &Triangulation) -> Result<Vec<BigInt>, ComplexError> {
    let sk = t.skeleton()?;
    // dual spanning tree over tets through interior faces
    let mut tree_faces: std::collections::HashSet<usize> = std::collections::HashSet::new();
    {
        let mut seen = vec![false; t.tets()];
        for root in 0..t.tets() {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut stack = vec![root];
            while let Some(tt) = stack.pop() {
                for f in 0..4u8 {
                    if let Some(g) = t.gluing(tt, f) {
                        if !seen[g.tet] {
                            seen[g.tet] = true;
                            tree_faces.insert(sk.face_class[tt][f as usize]);
                            stack.push(g.tet);
                        }
                    }
                }
            }
        }
    }
    // unknowns: interior faces off the tree (tree faces are fixed to zero)
    let interior_faces: Vec<usize> = (0..sk.face_count)
        .filter(|&f| !sk.face_rep[f].2 && !tree_faces.contains(&f))
        .collect();
    let col_of: std::collections::HashMap<usize, usize> =
        interior_faces.iter().copied().enumerate().map(|(i, f)| (f, i)).collect();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut visited_edges = std::collections::HashSet::new();
    for t0 in 0..t.tets() {
        for e0 in 0..6u8 {
            let ec = sk.edge_class[t0][e0 as usize].0;
            if !visited_edges.insert(ec) {
                continue;
            }
            // walk around the edge; interior edges close up into a relation
            let [a0, b0] = super::EDGE_VERTS[e0 as usize];
            // find a starting pivot; if the walk hits boundary, no relation
            let mut row = vec![BigInt::zero(); interior_faces.len()];
            let (mut tt, mut a, mut b) = (t0, a0, b0);
            // pick one of the two pivot faces to start
            let mut pivot = (0..4u8).find(|&f| f != a && f != b).unwrap();
            let start = (tt, pivot);
            let mut closed = false;
            let mut hit_boundary = false;
            loop {
                match t.gluing(tt, pivot) {
                    None => {
                        hit_boundary = true;
                        break;
                    }
                    Some(g) => {
                        let fc = sk.face_class[tt][pivot as usize];
                        // crossing direction sign: from tt into g.tet; fix a
                        // convention using the face representative
                        let (rt, rf, _) = sk.face_rep[fc];
                        let sign = if (rt, rf) == (tt, pivot) { 1 } else { -1 };
                        if let Some(&c) = col_of.get(&fc) {
                            row[c] += BigInt::from(sign);
                        }
                        let (t2, a2, b2) = (g.tet, g.perm.apply(a), g.perm.apply(b));
                        let entered = g.face;
                        let next_pivot =
                            (0..4u8).find(|&f| f != a2 && f != b2 && f != entered).unwrap();
                        tt = t2;
                        a = a2;
                        b = b2;
                        pivot = next_pivot;
                        if (tt, pivot) == start {
                            closed = true;
                            break;
                        }
                    }
                }
            }
            if closed && !hit_boundary {
                rows.push(row);
            }
        }
    }
    let mat = IntMat::from_rows(if rows.is_empty() {
        vec![vec![BigInt::zero(); interior_faces.len()]]
    } else {
        rows
    });
    let kern = crate::linalg::kernel_basis(&mat);
    let gen = kern
        .into_iter()
        .find(|v| v.iter().any(|x| !x.is_zero()))
        .ok_or_else(|| ComplexError::Invalid("no nontrivial dual cocycle (H^1 rank 0)".into()))?;
    // spread back over all face classes (boundary faces get 0)
    let mut full = vec![BigInt::zero(); sk.face_count];
    for (i, f) in interior_faces.iter().enumerate() {
        full[*f] = gen[i].clone();
    }
    Ok(full)
}

/// Build the k-fold cyclic cover along the given face cocycle.
pub fn cyclic_cover(t: &Triangulation, cocycle: &[BigInt], k: usize) -> Result<CyclicCover, ComplexError> {
    let sk = t.skeleton()?;
    let n = t.tets();
    let kk = BigInt::from(k as i64);
    let shift_of = |tt: usize, f: u8| -> i64 {
        let fc = sk.face_class[tt][f as usize];
        let (rt, rf, _) = sk.face_rep[fc];
        let sign: i64 = if (rt, rf) == (tt, f) { 1 } else { -1 };
        let val = &cocycle[fc] % &kk;
        let val: BigInt = if val < BigInt::zero() { val + &kk } else { val };
        let v: i64 = i64::try_from(&val).unwrap_or(0);
        if sign > 0 {
            v
        } else {
            (k as i64 - v) % k as i64
        }
    };
    let id = |tt: usize, sheet: usize| sheet * n + tt;
    let mut gluings: Vec<[Option<Gluing>; 4]> = vec![[None, None, None, None]; n * k];
    let mut marks: Vec<[Option<String>; 4]> = vec![[None, None, None, None]; n * k];
    for sheet in 0..k {
        for tt in 0..n {
            for f in 0..4u8 {
                match t.gluing(tt, f) {
                    None => marks[id(tt, sheet)][f as usize] = t.marks[tt][f as usize].clone(),
                    Some(g) => {
                        let s2 = (sheet + shift_of(tt, f) as usize) % k;
                        gluings[id(tt, sheet)][f as usize] =
                            Some(Gluing { tet: id(g.tet, s2), face: g.face, perm: g.perm });
                    }
                }
            }
        }
    }
    let cover = Triangulation::new(gluings, marks);
    cover.validate()?;
    Ok(CyclicCover { cover, sheets: k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{one_tet_ball, two_tet_sphere};

    #[test]
    fn single_tet_matrix_shape() {
        let t = one_tet_ball();
        let bm = boundary_matrix(&t).unwrap();
        assert_eq!(bm.mat.rows, 6);
        assert_eq!(bm.mat.cols, 4);
        for c in 0..4 {
            let nz = (0..6).filter(|&r| !bm.mat.at(r, c).is_zero()).count();
            assert_eq!(nz, 3);
        }
    }

    #[test]
    fn boundary_of_boundary_zero() {
        for t in [one_tet_ball(), two_tet_sphere()] {
            let bm = boundary_matrix(&t).unwrap();
            let sk = &bm.skeleton;
            for c in 0..bm.mat.cols {
                let col: Vec<BigInt> = (0..bm.mat.rows).map(|r| bm.mat.at(r, c).clone()).collect();
                let vb = vertex_boundary(sk, &col);
                assert!(vb.iter().all(|x| x.is_zero()), "d1 d2 != 0");
            }
        }
    }

    #[test]
    fn cycle_vectors() {
        let t = two_tet_sphere();
        let c = PLCurve { vertices: vec![0, 1, 2] };
        let v = cycle_vector(&t, &c).unwrap();
        assert_eq!(v.iter().filter(|x| !x.is_zero()).count(), 3);
        let sk = t.skeleton().unwrap();
        assert!(vertex_boundary(&sk, &v).iter().all(|x| x.is_zero()));
        let c_rev = PLCurve { vertices: vec![2, 1, 0] };
        let vr = cycle_vector(&t, &c_rev).unwrap();
        for (a, b) in v.iter().zip(vr.iter()) {
            assert_eq!(a.clone(), -b.clone());
        }
    }

    #[test]
    fn sphere_homology_trivial() {
        let h = homology_h1(&two_tet_sphere()).unwrap();
        assert_eq!(h.rank, 0);
        assert!(h.torsion.is_empty());
    }

    #[test]
    fn ball_homology_trivial() {
        let h = homology_h1(&one_tet_ball()).unwrap();
        assert_eq!(h.rank, 0);
        assert!(h.torsion.is_empty());
    }
}
