//! Regular neighborhoods of curves in a second barycentric subdivision and
//! the truncated knot complement.

use super::{face_verts, ComplexError, DoubleSubdivision, Gluing, Mark, PLCurve, Triangulation};

pub const PERIPHERAL_MARK: &str = "peripheral_torus";

/// The closed star of a curve in a double subdivision: a solid torus whose
/// boundary is the peripheral torus.
#[derive(Clone, Debug)]
pub struct SolidTorusNbhd {
    /// tetrahedra of the neighborhood, ascending
    pub tets: Vec<usize>,
    /// peripheral faces as (tet, face) of the ambient complex, tet inside
    pub peripheral_faces: Vec<(usize, u8)>,
    /// the subdivided core curve, cyclically ordered vertex classes w_0..w_{s-1}
    pub core: PLCurve,
}

/// Closed star of `curve` (a curve in the base complex) inside the second
/// barycentric subdivision. The curve must avoid the base boundary.
pub fn regular_neighborhood(
    dd: &DoubleSubdivision,
    base: &Triangulation,
    curve: &PLCurve,
) -> Result<SolidTorusNbhd, ComplexError> {
    let ambient = dd.complex();
    if ambient.subdivisions_from_base < 2 {
        return Err(ComplexError::NotSecondSubdivision);
    }
    let core = dd.push_curve(base, curve)?;
    let sk = ambient.skeleton()?;
    ambient.check_curve(&sk, &core)?;
    debug_assert_eq!(core.vertices.len() % 4, 0, "s = 4r + 4");

    let on_core: std::collections::HashSet<usize> = core.vertices.iter().copied().collect();
    let bd = ambient.boundary_vertices(&sk);
    for &v in &core.vertices {
        if bd.contains(&v) {
            return Err(ComplexError::Interiority(v));
        }
    }

    let tets: Vec<usize> = (0..ambient.tets())
        .filter(|&t| (0..4).any(|v| on_core.contains(&sk.vertex_class[t][v])))
        .collect();
    let inside: std::collections::HashSet<usize> = tets.iter().copied().collect();

    let mut peripheral = Vec::new();
    for &t in &tets {
        for f in 0..4u8 {
            match ambient.gluing(t, f) {
                None => {
                    return Err(ComplexError::Internal(
                        "neighborhood touches the ambient boundary".into(),
                    ))
                }
                Some(g) => {
                    if !inside.contains(&g.tet) {
                        peripheral.push((t, f));
                    }
                }
            }
        }
    }

    let nbhd = SolidTorusNbhd { tets, peripheral_faces: peripheral, core };
    let chi = nbhd.peripheral_chi(ambient)?;
    if chi != 0 {
        return Err(ComplexError::Internal(format!(
            "closed star is not a solid torus: peripheral surface has chi = {chi}"
        )));
    }
    Ok(nbhd)
}

impl SolidTorusNbhd {
    /// Euler characteristic of the peripheral surface (must be 0).
    pub fn peripheral_chi(&self, ambient: &Triangulation) -> Result<i64, ComplexError> {
        let sk = ambient.skeleton()?;
        let mut vs = std::collections::HashSet::new();
        let mut es = std::collections::HashSet::new();
        for &(t, f) in &self.peripheral_faces {
            let fv = face_verts(f);
            for &v in &fv {
                vs.insert(sk.vertex_class[t][v as usize]);
            }
            for k in 0..3 {
                let e = super::edge_index(fv[k], fv[(k + 1) % 3]);
                es.insert(sk.edge_class[t][e as usize].0);
            }
        }
        Ok(vs.len() as i64 - es.len() as i64 + self.peripheral_faces.len() as i64)
    }

    /// Number of peripheral-surface connected components.
    pub fn peripheral_components(&self, ambient: &Triangulation) -> Result<usize, ComplexError> {
        let sk = ambient.skeleton()?;
        let mut uf = super::UnionFind::new(self.peripheral_faces.len());
        let mut by_edge: std::collections::HashMap<usize, Vec<usize>> = std::collections::HashMap::new();
        for (i, &(t, f)) in self.peripheral_faces.iter().enumerate() {
            let fv = face_verts(f);
            for k in 0..3 {
                let e = sk.edge_class[t][super::edge_index(fv[k], fv[(k + 1) % 3]) as usize].0;
                by_edge.entry(e).or_default().push(i);
            }
        }
        for (_, faces) in by_edge {
            for w in faces.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let mut roots = std::collections::HashSet::new();
        for i in 0..self.peripheral_faces.len() {
            roots.insert(uf.find(i));
        }
        Ok(roots.len())
    }
}

/// Remove the open neighborhood, keeping its boundary torus as marked
/// boundary. Existing boundary marks survive.
pub fn truncated_complement(
    ambient: &Triangulation,
    nbhd: &SolidTorusNbhd,
) -> Result<Triangulation, ComplexError> {
    let inside: std::collections::HashSet<usize> = nbhd.tets.iter().copied().collect();
    let keep: Vec<usize> = (0..ambient.tets()).filter(|t| !inside.contains(t)).collect();
    let remap: std::collections::HashMap<usize, usize> =
        keep.iter().copied().enumerate().map(|(i, t)| (t, i)).collect();
    let mut gluings: Vec<[Option<Gluing>; 4]> = Vec::with_capacity(keep.len());
    let mut marks: Vec<[Option<Mark>; 4]> = Vec::with_capacity(keep.len());
    for &t in &keep {
        let mut grow = [None, None, None, None];
        let mut mrow: [Option<Mark>; 4] = [None, None, None, None];
        for f in 0..4u8 {
            match ambient.gluing(t, f) {
                None => {
                    mrow[f as usize] = ambient.marks[t][f as usize].clone();
                }
                Some(g) => {
                    if inside.contains(&g.tet) {
                        mrow[f as usize] = Some(PERIPHERAL_MARK.to_string());
                    } else {
                        grow[f as usize] = Some(Gluing { tet: remap[&g.tet], face: g.face, perm: g.perm });
                    }
                }
            }
        }
        gluings.push(grow);
        marks.push(mrow);
    }
    let mut out = Triangulation::new(gluings, marks);
    out.subdivisions_from_base = ambient.subdivisions_from_base;
    if let Some(coords) = &ambient.coords {
        // keep the full vertex coordinate table; vertex classes change, so
        // recompute through a representative corner of each new class
        let old_sk = ambient.skeleton()?;
        let new_sk = out.skeleton()?;
        let mut new_coords = vec![[num_bigint::BigInt::from(0), num_bigint::BigInt::from(0), num_bigint::BigInt::from(0)]; new_sk.vertex_count];
        for (i, &t) in keep.iter().enumerate() {
            for v in 0..4 {
                new_coords[new_sk.vertex_class[i][v]] = coords[old_sk.vertex_class[t][v]].clone();
            }
        }
        out.coords = Some(new_coords);
    }
    out.validate()?;
    Ok(out)
}

/// Faces of a triangulation carrying the given mark.
pub fn marked_faces(t: &Triangulation, mark: &str) -> Vec<(usize, u8)> {
    let mut out = Vec::new();
    for tet in 0..t.tets() {
        for f in 0..4u8 {
            if t.marks[tet][f as usize].as_deref() == Some(mark) {
                out.push((tet, f));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::two_tet_sphere;

    fn sphere_with_triangle() -> (Triangulation, PLCurve, DoubleSubdivision) {
        let base = two_tet_sphere();
        let curve = PLCurve { vertices: vec![0, 1, 2] };
        let dd = DoubleSubdivision::build(&base).unwrap();
        (base, curve, dd)
    }

    #[test]
    fn star_of_triangle_is_solid_torus() {
        let (base, curve, dd) = sphere_with_triangle();
        let nb = regular_neighborhood(&dd, &base, &curve).unwrap();
        assert_eq!(nb.core.vertices.len(), 12, "s = 4r+4, r = 2");
        assert_eq!(nb.peripheral_chi(dd.complex()).unwrap(), 0);
        assert_eq!(nb.peripheral_components(dd.complex()).unwrap(), 1);
    }

    #[test]
    fn complement_counts_partition() {
        let (base, curve, dd) = sphere_with_triangle();
        let nb = regular_neighborhood(&dd, &base, &curve).unwrap();
        let mk = truncated_complement(dd.complex(), &nb).unwrap();
        assert_eq!(mk.tets() + nb.tets.len(), 576 * base.tets());
        let bc = mk.boundary_components().unwrap();
        assert_eq!(bc.len(), 1, "one torus boundary, no outer sphere in a closed base");
        assert_eq!(bc[0].1, 0, "peripheral torus has chi 0");
        assert_eq!(marked_faces(&mk, PERIPHERAL_MARK).len(), bc[0].0.len());
    }

    #[test]
    fn interiority_violation() {
        let base = crate::complex::one_tet_ball();
        let curve = PLCurve { vertices: vec![0, 1, 2] };
        let dd = DoubleSubdivision::build(&base).unwrap();
        let err = regular_neighborhood(&dd, &base, &curve).unwrap_err();
        assert!(matches!(err, ComplexError::Interiority(_)), "{err:?}");
    }
}
