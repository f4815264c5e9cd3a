//! Pachner 2-3 and 3-2 moves, used to shrink fixture triangulations.
//! External faces of the replaced region are rewired through an explicit
//! correspondence, so neighbors inside the region (self-adjacencies) are
//! handled. Every successful move is re-validated.

use super::{face_verts, ComplexError, Gluing, Perm4, Triangulation};
use rand::Rng;

/// Record of one external face of the dead region: where it was and where it
/// went, with a full local-vertex correspondence old -> new.
struct ExtFace {
    old: (usize, u8),
    new: (usize, u8),
    vmap: Perm4,
}

/// Rewire external gluings after a region replacement. `dead` lists removed
/// tets; `ext` the correspondence for each of their outward faces; `remap`
/// maps surviving old tet ids to new ids.
fn wire_externals(
    t: &Triangulation,
    gluings: &mut [[Option<Gluing>; 4]],
    marks: &mut [[Option<String>; 4]],
    ext: &[ExtFace],
    remap: &std::collections::HashMap<usize, usize>,
) -> Option<()> {
    let find_ext = |key: (usize, u8)| ext.iter().find(|e| e.old == key);
    for e in ext {
        match t.gluing(e.old.0, e.old.1) {
            None => {
                marks[e.new.0][e.new.1 as usize] = t.marks[e.old.0][e.old.1 as usize].clone();
            }
            Some(g) => {
                if let Some(&nbr) = remap.get(&g.tet) {
                    // neighbor survives: perm maps new locals -> neighbor locals
                    let perm = g.perm.compose(&e.vmap.inverse());
                    gluings[e.new.0][e.new.1 as usize] =
                        Some(Gluing { tet: nbr, face: g.face, perm });
                    gluings[nbr][g.face as usize] =
                        Some(Gluing { tet: e.new.0, face: e.new.1, perm: perm.inverse() });
                } else {
                    // neighbor is inside the dead region: find its record
                    let partner = find_ext((g.tet, g.face))?;
                    if e.old < partner.old {
                        let perm = partner.vmap.compose(&g.perm).compose(&e.vmap.inverse());
                        gluings[e.new.0][e.new.1 as usize] =
                            Some(Gluing { tet: partner.new.0, face: partner.new.1, perm });
                        gluings[partner.new.0][partner.new.1 as usize] =
                            Some(Gluing { tet: e.new.0, face: e.new.1, perm: perm.inverse() });
                    }
                }
            }
        }
    }
    Some(())
}

/// Replace two distinct tetrahedra sharing interior face (`tet`, `face`) by
/// three around a new central edge.
pub fn try_two_three(t: &Triangulation, tet: usize, face: u8) -> Option<Triangulation> {
    let g = *t.gluing(tet, face)?;
    let (t1, t2) = (tet, g.tet);
    if t1 == t2 {
        return None;
    }
    let p = g.perm; // t1-local -> t2-local
    let a1 = face;
    let a2 = g.face;
    let shared = face_verts(face);
    let n = t.tets();
    let keep: Vec<usize> = (0..n).filter(|&x| x != t1 && x != t2).collect();
    let remap: std::collections::HashMap<usize, usize> =
        keep.iter().copied().enumerate().map(|(i, x)| (x, i)).collect();
    let newid = |k: usize| keep.len() + k;
    let mut gluings: Vec<[Option<Gluing>; 4]> = Vec::new();
    let mut marks: Vec<[Option<String>; 4]> = Vec::new();
    for &x in &keep {
        let mut grow = [None, None, None, None];
        for f in 0..4u8 {
            if let Some(e) = t.gluing(x, f) {
                if e.tet != t1 && e.tet != t2 {
                    grow[f as usize] = Some(Gluing { tet: remap[&e.tet], face: e.face, perm: e.perm });
                }
            }
        }
        gluings.push(grow);
        marks.push(t.marks[x].clone());
    }
    for _ in 0..3 {
        gluings.push([None, None, None, None]);
        marks.push([None, None, None, None]);
    }
    // New tets N_k: locals 0 = apex1, 1 = apex2, 2 = u = shared[k],
    // 3 = v = shared[k+1]. N_k's face 2 (omitting u) = {apex1, apex2, v}
    // meets N_{k+1}'s face 3 (omitting its v) with v at local 2 there.
    for k in 0..3 {
        let kn = (k + 1) % 3;
        let perm = Perm4([0, 1, 3, 2]);
        gluings[newid(k)][2] = Some(Gluing { tet: newid(kn), face: 3, perm });
        gluings[newid(kn)][3] = Some(Gluing { tet: newid(k), face: 2, perm });
    }
    // external faces: t1's face opposite w hosts (apex1, u, v); t2's likewise
    let mut ext = Vec::new();
    for k in 0..3 {
        let (u, v) = (shared[k], shared[(k + 1) % 3]);
        let w = shared[(k + 2) % 3];
        // old t1 locals -> N_k locals: a1 -> 0, u -> 2, v -> 3, w -> 1
        let mut m1 = [0u8; 4];
        m1[a1 as usize] = 0;
        m1[u as usize] = 2;
        m1[v as usize] = 3;
        m1[w as usize] = 1;
        ext.push(ExtFace { old: (t1, w), new: (newid(k), 1), vmap: Perm4(m1) });
        let (u2, v2, w2) = (p.apply(u), p.apply(v), p.apply(w));
        let mut m2 = [0u8; 4];
        m2[a2 as usize] = 1;
        m2[u2 as usize] = 2;
        m2[v2 as usize] = 3;
        m2[w2 as usize] = 0;
        ext.push(ExtFace { old: (t2, w2), new: (newid(k), 0), vmap: Perm4(m2) });
    }
    wire_externals(t, &mut gluings, &mut marks, &ext, &remap)?;
    let mut out = Triangulation::new(gluings, marks);
    out.subdivisions_from_base = 0;
    out.validate().ok()?;
    Some(out)
}

/// Replace three distinct tetrahedra around an interior degree-3 edge by two.
pub fn try_three_two(t: &Triangulation, tet: usize, edge: u8) -> Option<Triangulation> {
    let [a0, b0] = super::EDGE_VERTS[edge as usize];
    // walk the ring, recording (tet, a, b, shared-with-next, shared-with-prev)
    let mut info: Vec<(usize, u8, u8, u8, u8)> = Vec::new();
    {
        let (mut tt, mut a, mut b) = (tet, a0, b0);
        let mut pivot = (0..4u8).find(|&f| f != a && f != b).unwrap();
        let start = (tt, pivot);
        loop {
            let others: Vec<u8> = (0..4u8).filter(|&v| v != a && v != b).collect();
            let x_next = others.into_iter().find(|&v| v != pivot).unwrap();
            let x_prev = pivot;
            info.push((tt, a, b, x_next, x_prev));
            let g = t.gluing(tt, pivot)?;
            let (t2, a2, b2) = (g.tet, g.perm.apply(a), g.perm.apply(b));
            let entered = g.face;
            let next = (0..4u8).find(|&f| f != a2 && f != b2 && f != entered).unwrap();
            tt = t2;
            a = a2;
            b = b2;
            pivot = next;
            if (tt, pivot) == start {
                if a != a0 || b != b0 {
                    return None;
                }
                break;
            }
            if info.len() > 3 {
                return None;
            }
        }
    }
    if info.len() != 3 {
        return None;
    }
    let tetset: std::collections::HashSet<usize> = info.iter().map(|r| r.0).collect();
    if tetset.len() != 3 {
        return None;
    }
    let n = t.tets();
    let keep: Vec<usize> = (0..n).filter(|x| !tetset.contains(x)).collect();
    let remap: std::collections::HashMap<usize, usize> =
        keep.iter().copied().enumerate().map(|(i, x)| (x, i)).collect();
    let top = keep.len();
    let bottom = keep.len() + 1;
    let mut gluings: Vec<[Option<Gluing>; 4]> = Vec::new();
    let mut marks: Vec<[Option<String>; 4]> = Vec::new();
    for &x in &keep {
        let mut grow = [None, None, None, None];
        for f in 0..4u8 {
            if let Some(e) = t.gluing(x, f) {
                if !tetset.contains(&e.tet) {
                    grow[f as usize] = Some(Gluing { tet: remap[&e.tet], face: e.face, perm: e.perm });
                }
            }
        }
        gluings.push(grow);
        marks.push(t.marks[x].clone());
    }
    gluings.push([None, None, None, None]); // top: 0 = a, 1+i = y_i
    gluings.push([None, None, None, None]); // bottom: 0 = b, 1+i = y_i
    marks.push([None, None, None, None]);
    marks.push([None, None, None, None]);
    gluings[top][0] = Some(Gluing { tet: bottom, face: 0, perm: Perm4::IDENTITY });
    gluings[bottom][0] = Some(Gluing { tet: top, face: 0, perm: Perm4::IDENTITY });
    // T_i carries link vertices y_i (= x_prev) and y_{i+1} (= x_next).
    // Its face opposite b_i = (a, y_i, y_{i+1}) -> top's face opposite y_{i+2};
    // face opposite a_i -> bottom's.
    let mut ext = Vec::new();
    for (i, &(ti, ai, bi, x_next, x_prev)) in info.iter().enumerate() {
        let yi = (1 + i) as u8;
        let yn = (1 + (i + 1) % 3) as u8;
        let yfar = (1 + (i + 2) % 3) as u8;
        for (gone, apex, newtet) in [(bi, ai, top), (ai, bi, bottom)] {
            let mut m = [0u8; 4];
            m[apex as usize] = 0;
            m[x_prev as usize] = yi;
            m[x_next as usize] = yn;
            m[gone as usize] = yfar;
            ext.push(ExtFace { old: (ti, gone), new: (newtet, yfar), vmap: Perm4(m) });
        }
    }
    wire_externals(t, &mut gluings, &mut marks, &ext, &remap)?;
    let mut out = Triangulation::new(gluings, marks);
    out.subdivisions_from_base = 0;
    out.validate().ok()?;
    Some(out)
}

/// Remove a tetrahedron with 1-3 boundary faces (a boundary shelling),
/// under conditions that keep the removal a homeomorphism:
/// - 1 boundary face: the opposite vertex is internal and the three interior
///   faces are not glued to one another;
/// - 2 boundary faces: the edge between the two interior faces is not a
///   boundary edge and those faces are not glued to each other;
/// - 3 boundary faces: the apex vertex class meets no other tetrahedron.
pub fn try_shell_boundary(t: &Triangulation, tet: usize) -> Option<Triangulation> {
    let sk = t.skeleton().ok()?;
    let bd_faces: Vec<u8> = (0..4u8).filter(|&f| t.is_boundary(tet, f)).collect();
    let k = bd_faces.len();
    if !(1..=3).contains(&k) {
        return None;
    }
    let int_faces: Vec<u8> = (0..4u8).filter(|&f| !t.is_boundary(tet, f)).collect();
    // interior faces must not be glued to each other (or themselves)
    for &f in &int_faces {
        let g = t.gluing(tet, f)?;
        if g.tet == tet && int_faces.contains(&g.face) {
            return None;
        }
    }
    let bd_vertices = t.boundary_vertices(&sk);
    match k {
        1 => {
            let apex = bd_faces[0]; // vertex index opposite the boundary face
            if bd_vertices.contains(&sk.vertex_class[tet][apex as usize]) {
                return None;
            }
        }
        2 => {
            // the two interior faces meet along the edge joining the two
            // vertices opposite the boundary faces
            let e = super::edge_index(bd_faces[0], bd_faces[1]);
            let ec = sk.edge_class[tet][e as usize].0;
            // boundary edge classes
            let mut bd_edges = std::collections::HashSet::new();
            for tt in 0..t.tets() {
                for f in 0..4u8 {
                    if t.is_boundary(tt, f) {
                        let vs = face_verts(f);
                        for i in 0..3 {
                            bd_edges.insert(sk.edge_class[tt][super::edge_index(vs[i], vs[(i + 1) % 3]) as usize].0);
                        }
                    }
                }
            }
            if bd_edges.contains(&ec) {
                return None;
            }
        }
        _ => {
            let apex = int_faces[0];
            let cls = sk.vertex_class[tet][apex as usize];
            for tt in 0..t.tets() {
                for v in 0..4 {
                    if (tt, v) != (tet, apex as usize) && sk.vertex_class[tt][v] == cls {
                        return None;
                    }
                }
            }
        }
    }
    // remove the tet; its interior faces' partners become boundary
    let keep: Vec<usize> = (0..t.tets()).filter(|&x| x != tet).collect();
    let remap: std::collections::HashMap<usize, usize> =
        keep.iter().copied().enumerate().map(|(i, x)| (x, i)).collect();
    let mut gluings: Vec<[Option<Gluing>; 4]> = Vec::new();
    let mut marks: Vec<[Option<String>; 4]> = Vec::new();
    for &x in &keep {
        let mut grow = [None, None, None, None];
        let mut mrow = t.marks[x].clone();
        for f in 0..4u8 {
            if let Some(e) = t.gluing(x, f) {
                if e.tet == tet {
                    mrow[f as usize] = Some(super::neighborhood::PERIPHERAL_MARK.to_string());
                } else {
                    grow[f as usize] = Some(Gluing { tet: remap[&e.tet], face: e.face, perm: e.perm });
                }
            }
        }
        gluings.push(grow);
        marks.push(mrow);
    }
    let mut out = Triangulation::new(gluings, marks);
    out.subdivisions_from_base = 0;
    out.validate().ok()?;
    Some(out)
}

/// Greedy 3-2 reduction with randomized 2-3 kicks, preserving the manifold.
/// Deterministic for a fixed seed. Returns the smallest triangulation found.
pub fn simplify(t: &Triangulation, seed: u64, rounds: usize) -> Result<Triangulation, ComplexError> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut best = reduce_greedy(t.clone());
    let mut cur = best.clone();
    for _ in 0..rounds {
        let n = cur.tets();
        if n <= 2 {
            break;
        }
        // random kicks (2-3 moves, occasionally a boundary-growing shelling),
        // then reduce
        let kicks = 1 + rng.gen_range(0..3usize);
        let mut kicked = cur.clone();
        for _ in 0..kicks {
            if rng.gen_ratio(1, 4) {
                let start = rng.gen_range(0..kicked.tets());
                for d in 0..kicked.tets() {
                    let tet = (start + d) % kicked.tets();
                    if let Some(t2) = try_shell_boundary(&kicked, tet) {
                        kicked = t2;
                        break;
                    }
                }
                continue;
            }
            for _ in 0..60 {
                let tet = rng.gen_range(0..kicked.tets());
                let face = rng.gen_range(0..4u8);
                if let Some(t2) = try_two_three(&kicked, tet, face) {
                    kicked = t2;
                    break;
                }
            }
        }
        cur = reduce_greedy(kicked);
        if cur.tets() < best.tets() {
            best = cur.clone();
        }
        if cur.tets() > best.tets() + 8 {
            cur = best.clone();
        }
    }
    Ok(best)
}

fn reduce_greedy(mut t: Triangulation) -> Triangulation {
    loop {
        let mut reduced = false;
        'scan: for tet in 0..t.tets() {
            for e in 0..6u8 {
                if let Some(t2) = try_three_two(&t, tet, e) {
                    t = t2;
                    reduced = true;
                    break 'scan;
                }
            }
            // shellings that do not grow the boundary
            let bd = (0..4u8).filter(|&f| t.is_boundary(tet, f)).count();
            if bd >= 2 {
                if let Some(t2) = try_shell_boundary(&t, tet) {
                    t = t2;
                    reduced = true;
                    break 'scan;
                }
            }
        }
        if !reduced {
            return t;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::two_tet_sphere;

    #[test]
    fn two_three_then_back() {
        // the 2-tet sphere is heavily self-adjacent: a good stress test
        let t = two_tet_sphere();
        let t3 = try_two_three(&t, 0, 0).expect("2-3 applies to the sphere");
        assert_eq!(t3.tets(), 3);
        t3.validate().unwrap();
        assert!(t3.boundary_components().unwrap().is_empty());
        let mut back = None;
        'outer: for tet in 0..3 {
            for e in 0..6u8 {
                if let Some(t2) = try_three_two(&t3, tet, e) {
                    back = Some(t2);
                    break 'outer;
                }
            }
        }
        let back = back.expect("some 3-2 applies");
        assert_eq!(back.tets(), 2);
        back.validate().unwrap();
        assert!(back.boundary_components().unwrap().is_empty());
    }

    #[test]
    fn moves_preserve_homology() {
        let t = crate::complex::barycentric_subdivide(&crate::complex::one_tet_ball()).unwrap().result;
        let h0 = crate::complex::homology_h1(&t).unwrap();
        let mut grown = None;
        'outer: for tet in 0..t.tets() {
            for f in 0..4u8 {
                if let Some(t3) = try_two_three(&t, tet, f) {
                    grown = Some(t3);
                    break 'outer;
                }
            }
        }
        let t3 = grown.unwrap();
        assert_eq!(crate::complex::homology_h1(&t3).unwrap(), h0);
    }

    #[test]
    fn simplify_preserves_validity() {
        let t = two_tet_sphere();
        let s = simplify(&t, 7, 5).unwrap();
        s.validate().unwrap();
        assert!(s.tets() <= 3);
    }
}
