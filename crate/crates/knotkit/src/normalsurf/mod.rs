//! Normal surface theory: matching equations, the normal cone, exact vertex
//! enumeration, reconstruction and unknot certification.
//!
//! Coordinates: 7 per tetrahedron. Index 7t+v (v = 0..3) counts triangles
//! cutting off vertex v; index 7t+4+q counts quadrilaterals of type q, where
//! type q separates the vertex pairs {0,q+1} | {the rest}.

mod dd;
mod reconstruct;
pub mod certify;

pub use dd::{vertex_rays, vertex_rays_of, EnumLimits};
pub use reconstruct::{reconstruct, BoundaryStep, ReconstructedSurface};

use crate::complex::{face_verts, ComplexError, Skeleton, Triangulation};
use crate::linalg::IntMat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalError {
    #[error("coordinate vector has length {got}, expected {want}")]
    Length { got: usize, want: usize },
    #[error("dimension guard exceeded: 7t = {0} > limit {1}")]
    DimensionGuard(usize, usize),
    #[error("{0}")]
    Complex(String),
    #[error("{0}")]
    Invalid(String),
}

impl From<ComplexError> for NormalError {
    fn from(e: ComplexError) -> Self {
        NormalError::Complex(e.to_string())
    }
}

/// Quadrilateral types: partition of the tetrahedron vertices into pairs.
/// `QUAD_PAIRS[q]` = the pair containing vertex 0 and its complement.
pub const QUAD_PAIRS: [[[u8; 2]; 2]; 3] = [
    [[0, 1], [2, 3]],
    [[0, 2], [1, 3]],
    [[0, 3], [1, 2]],
];

/// The vertex paired with `v` in quad type `q`.
pub fn quad_partner(q: u8, v: u8) -> u8 {
    let [p1, p2] = QUAD_PAIRS[q as usize];
    if p1.contains(&v) {
        p1[0] + p1[1] - v
    } else {
        p2[0] + p2[1] - v
    }
}

/// The quad type pairing vertices a and b.
pub fn quad_type_pairing(a: u8, b: u8) -> u8 {
    (0..3u8).find(|&q| quad_partner(q, a) == b).expect("distinct vertices")
}

pub fn tri_index(tet: usize, v: u8) -> usize {
    7 * tet + v as usize
}

pub fn quad_index(tet: usize, q: u8) -> usize {
    7 * tet + 4 + q as usize
}

/// A nonnegative integer vector of normal coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NormalVector {
    pub coords: Vec<BigInt>,
}

impl NormalVector {
    pub fn zero(tets: usize) -> Self {
        NormalVector { coords: vec![BigInt::zero(); 7 * tets] }
    }

    pub fn tets(&self) -> usize {
        self.coords.len() / 7
    }

    pub fn tri(&self, tet: usize, v: u8) -> &BigInt {
        &self.coords[tri_index(tet, v)]
    }

    pub fn quad(&self, tet: usize, q: u8) -> &BigInt {
        &self.coords[quad_index(tet, q)]
    }

    pub fn scale(&self, k: u64) -> NormalVector {
        NormalVector { coords: self.coords.iter().map(|x| x * BigInt::from(k)).collect() }
    }

    pub fn max_coord(&self) -> BigInt {
        self.coords.iter().cloned().max().unwrap_or_else(BigInt::zero)
    }

    /// `t=<N>; v=<7N comma-separated integers>`
    pub fn serialize(&self) -> String {
        let vals: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        format!("t={}; v={}", self.tets(), vals.join(","))
    }

    pub fn parse(text: &str) -> Result<NormalVector, NormalError> {
        let err = |m: &str| NormalError::Invalid(format!("{m}: '{text}'"));
        let (tpart, vpart) = text.split_once(';').ok_or_else(|| err("expected 't=N; v=...'"))?;
        let n: usize = tpart
            .trim()
            .strip_prefix("t=")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err("bad tetrahedron count"))?;
        let body = vpart.trim().strip_prefix("v=").ok_or_else(|| err("missing v="))?;
        let coords: Result<Vec<BigInt>, _> = body.split(',').map(|s| s.trim().parse::<BigInt>()).collect();
        let coords = coords.map_err(|_| err("bad coordinate"))?;
        if coords.len() != 7 * n {
            return Err(NormalError::Length { got: coords.len(), want: 7 * n });
        }
        Ok(NormalVector { coords })
    }
}

/// The matching equations of a triangulation: 3 per interior face.
pub struct MatchingSystem {
    pub tets: usize,
    pub mat: IntMat,
    pub skeleton: Skeleton,
}

pub fn matching_system(t: &Triangulation) -> Result<MatchingSystem, NormalError> {
    let sk = t.skeleton()?;
    let n = t.tets();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for fc in 0..sk.face_count {
        let (t1, f1, bd) = sk.face_rep[fc];
        if bd {
            continue; // boundary faces give no matching equations
        }
        let g = t.gluing(t1, f1).expect("interior face");
        let (t2, f2, p) = (g.tet, g.face, g.perm);
        for v in face_verts(f1) {
            let v2 = p.apply(v);
            let mut row = vec![BigInt::zero(); 7 * n];
            row[tri_index(t1, v)] += BigInt::one();
            row[quad_index(t1, quad_type_pairing(v, f1))] += BigInt::one();
            row[tri_index(t2, v2)] -= BigInt::one();
            row[quad_index(t2, quad_type_pairing(v2, f2))] -= BigInt::one();
            rows.push(row);
        }
    }
    let mat = if rows.is_empty() {
        IntMat::zero(0, 7 * n)
    } else {
        IntMat::from_rows(rows)
    };
    Ok(MatchingSystem { tets: n, mat, skeleton: sk })
}

impl MatchingSystem {
    pub fn equation_count(&self) -> usize {
        self.mat.rows
    }

    /// Largest squared Euclidean row length (at most 4 by construction).
    pub fn max_row_norm_sq(&self) -> BigInt {
        (0..self.mat.rows)
            .map(|r| self.mat.row(r).iter().map(|x| x * x).sum::<BigInt>())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn satisfies(&self, v: &NormalVector) -> bool {
        v.coords.len() == self.mat.cols && self.mat.mul_vec(&v.coords).iter().all(|x| x.is_zero())
    }
}

/// Nonnegative, matching, and at most one quad type per tetrahedron.
pub fn is_admissible(ms: &MatchingSystem, v: &NormalVector) -> Result<bool, NormalError> {
    if v.coords.len() != 7 * ms.tets {
        return Err(NormalError::Length { got: v.coords.len(), want: 7 * ms.tets });
    }
    if v.coords.iter().any(|x| x.is_negative()) {
        return Ok(false);
    }
    for tet in 0..ms.tets {
        let nz = (0..3u8).filter(|&q| !v.quad(tet, q).is_zero()).count();
        if nz > 1 {
            return Ok(false);
        }
    }
    Ok(ms.satisfies(v))
}

/// Fundamental-surface coordinate gate: max coordinate < t 2^{7t+2}.
pub fn hilbert_bound_check(v: &NormalVector) -> bool {
    let t = v.tets();
    if t == 0 {
        return true;
    }
    let bound = BigInt::from(t) * (BigInt::one() << (7 * t + 2));
    v.max_coord() < bound
}

/// Coordinate vector of the link of a vertex class: one triangle per corner.
pub fn vertex_link_vector(t: &Triangulation, sk: &Skeleton, vclass: usize) -> NormalVector {
    let mut v = NormalVector::zero(t.tets());
    for tet in 0..t.tets() {
        for corner in 0..4u8 {
            if sk.vertex_class[tet][corner as usize] == vclass {
                v.coords[tri_index(tet, corner)] += BigInt::one();
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{one_tet_ball, two_tet_sphere, Gluing, Perm4, Triangulation};

    #[test]
    fn no_equations_for_lone_tet() {
        let ms = matching_system(&one_tet_ball()).unwrap();
        assert_eq!(ms.equation_count(), 0);
    }

    #[test]
    fn three_equations_per_interior_face() {
        // two tets glued along one face
        let t = Triangulation::new(
            vec![
                [Some(Gluing { tet: 1, face: 0, perm: Perm4::IDENTITY }), None, None, None],
                [Some(Gluing { tet: 0, face: 0, perm: Perm4::IDENTITY }), None, None, None],
            ],
            vec![[None, None, None, None], [None, None, None, None]],
        );
        t.validate().unwrap();
        let ms = matching_system(&t).unwrap();
        assert_eq!(ms.equation_count(), 3);
        assert!(ms.max_row_norm_sq() <= BigInt::from(4));
    }

    #[test]
    fn sphere_equation_count() {
        let ms = matching_system(&two_tet_sphere()).unwrap();
        assert_eq!(ms.equation_count(), 12, "3 per face, 4 interior faces");
        assert!(ms.equation_count() <= 6 * 2);
        assert!(ms.max_row_norm_sq() <= BigInt::from(4));
    }

    #[test]
    fn vertex_links_satisfy_matching() {
        for t in [two_tet_sphere(), crate::fixtures::solid_torus(), crate::fixtures::trefoil_exterior()] {
            let ms = matching_system(&t).unwrap();
            let sk = t.skeleton().unwrap();
            for vc in 0..sk.vertex_count {
                let v = vertex_link_vector(&t, &sk, vc);
                assert!(is_admissible(&ms, &v).unwrap(), "vertex link {vc} admissible");
            }
        }
    }

    #[test]
    fn admissibility_edge_cases() {
        let t = two_tet_sphere();
        let ms = matching_system(&t).unwrap();
        assert!(is_admissible(&ms, &NormalVector::zero(2)).unwrap(), "zero vector");
        let mut two_quads = NormalVector::zero(2);
        two_quads.coords[quad_index(0, 0)] = BigInt::one();
        two_quads.coords[quad_index(0, 1)] = BigInt::one();
        assert!(!is_admissible(&ms, &two_quads).unwrap());
        assert!(is_admissible(&ms, &NormalVector::zero(1)).is_err(), "length mismatch");
    }

    #[test]
    fn serialization_roundtrip() {
        let t = two_tet_sphere();
        let sk = t.skeleton().unwrap();
        let v = vertex_link_vector(&t, &sk, 0);
        let s = v.serialize();
        assert_eq!(NormalVector::parse(&s).unwrap(), v);
        assert!(NormalVector::parse("t=1; v=1,2").is_err());
    }

    #[test]
    fn hilbert_gate() {
        let mut v = NormalVector::zero(1);
        assert!(hilbert_bound_check(&v));
        v.coords[0] = BigInt::from(1) << 9; // t 2^{7t+2} = 2^9 at t = 1
        assert!(!hilbert_bound_check(&v), "boundary case is rejected");
        v.coords[0] -= 1;
        assert!(hilbert_bound_check(&v));
    }
}
