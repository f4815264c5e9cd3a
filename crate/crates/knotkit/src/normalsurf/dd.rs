//! Exact vertex-ray enumeration of the normal cone.
//!
//! The cone {v >= 0, Av = 0} is enumerated once per quad-type selection (one
//! of four choices per tetrahedron: no quads or one of the three types),
//! which keeps every intermediate ray admissible; each restricted cone is a
//! face of the full cone, so the union over selections is exactly the set of
//! admissible extreme rays. Selections are independent, so they fan out over
//! the worker pool; results are merged and sorted for determinism.

use super::{is_admissible, matching_system, MatchingSystem, NormalError, NormalVector};
use crate::complex::Triangulation;
use crate::linalg::{kernel_basis, IntMat};
use crate::par::{self, ExecMode};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug)]
pub struct EnumLimits {
    /// refuse when 7t exceeds this
    pub max_dimension: usize,
    pub mode: ExecMode,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits { max_dimension: 7 * 8, mode: ExecMode::default() }
    }
}

/// Minimal integer generators of all admissible extreme rays of the normal
/// cone, sorted lexicographically.
pub fn vertex_rays(t: &Triangulation, limits: &EnumLimits) -> Result<Vec<NormalVector>, NormalError> {
    let ms = matching_system(t)?;
    vertex_rays_of(&ms, limits)
}

pub fn vertex_rays_of(ms: &MatchingSystem, limits: &EnumLimits) -> Result<Vec<NormalVector>, NormalError> {
    let n = ms.tets;
    let dim = 7 * n;
    if dim > limits.max_dimension {
        return Err(NormalError::DimensionGuard(dim, limits.max_dimension));
    }
    // enumerate the 4^n quad selections
    let patterns: u64 = 4u64.pow(n as u32);
    let results: Vec<Vec<Vec<BigInt>>> = par::map_range(limits.mode, patterns as usize, |pat| {
        let mut allowed: Vec<usize> = Vec::with_capacity(5 * n);
        let mut p = pat;
        for tet in 0..n {
            for v in 0..4u8 {
                allowed.push(super::tri_index(tet, v));
            }
            let choice = p % 4;
            p /= 4;
            if choice > 0 {
                allowed.push(super::quad_index(tet, choice as u8 - 1));
            }
        }
        restricted_extreme_rays(&ms.mat, &allowed, dim)
    });
    let mut set: std::collections::BTreeSet<Vec<BigInt>> = std::collections::BTreeSet::new();
    for rays in results {
        for r in rays {
            set.insert(r);
        }
    }
    let out: Vec<NormalVector> = set.into_iter().map(|coords| NormalVector { coords }).collect();
    for v in &out {
        debug_assert!(is_admissible(ms, v).unwrap_or(false));
    }
    Ok(out)
}

/// Extreme rays of {x >= 0 on `allowed`, x = 0 elsewhere, A x = 0}, as
/// gcd-reduced full-length vectors.
fn restricted_extreme_rays(a: &IntMat, allowed: &[usize], dim: usize) -> Vec<Vec<BigInt>> {
    let na = allowed.len();
    // restrict the equations to the allowed columns
    let mut sub = IntMat::zero(a.rows, na);
    for r in 0..a.rows {
        for (j, &c) in allowed.iter().enumerate() {
            *sub.at_mut(r, j) = a.at(r, c).clone();
        }
    }
    let basis = kernel_basis(&sub); // each vector has length na
    let d = basis.len();
    if d == 0 {
        return Vec::new();
    }
    // inequality i: x_i = sum_j basis[j][i] y_j >= 0 -- i.e. the matrix B
    // with B[i][j] = basis[j][i]
    let b = |i: usize, j: usize| &basis[j][i];
    // choose d linearly independent rows of B for the initial simplicial cone
    let full = IntMat::from_rows((0..na).map(|i| (0..d).map(|j| b(i, j).clone()).collect()).collect());
    let (_, pivots) = crate::linalg::row_echelon(&full.transpose());
    // pivots of the transpose give independent columns of B^T = rows of B
    let init_rows: Vec<usize> = pivots;
    debug_assert_eq!(init_rows.len(), d);
    let c = IntMat::from_rows(init_rows.iter().map(|&i| (0..d).map(|j| b(i, j).clone()).collect()).collect());
    let det = determinant(&c);
    debug_assert!(!det.is_zero());
    let adj = adjugate(&c, &det);
    // initial rays in y-space: columns of adj * sign(det)
    let sign = if det.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut rays: Vec<Ray> = (0..d)
        .map(|j| {
            let y: Vec<BigInt> = (0..d).map(|i| adj.at(i, j) * &sign).collect();
            Ray::from_y(&y, &basis, na)
        })
        .collect();
    // process the remaining inequalities
    let mut processed: Vec<usize> = init_rows.clone();
    let mut processed_mask = vec![false; na];
    for &i in &processed {
        processed_mask[i] = true;
    }
    for i in 0..na {
        if processed_mask[i] {
            continue;
        }
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut zero = Vec::new();
        for r in rays.into_iter() {
            match r.x[i].sign() {
                num_bigint::Sign::Plus => pos.push(r),
                num_bigint::Sign::Minus => neg.push(r),
                num_bigint::Sign::NoSign => zero.push(r),
            }
        }
        let mut next = Vec::with_capacity(pos.len() + zero.len() + pos.len().min(neg.len()) * 2);
        // adjacency test over the processed inequalities
        let mask_of = |r: &Ray| -> Vec<bool> { r.zero_mask(&processed) };
        let all: Vec<&Ray> = pos.iter().chain(zero.iter()).chain(neg.iter()).collect();
        let masks: Vec<Vec<bool>> = all.iter().map(|r| mask_of(r)).collect();
        for (pi, p) in pos.iter().enumerate() {
            for (ni, ng) in neg.iter().enumerate() {
                let pm = &masks[pi];
                let nm = &masks[pos.len() + zero.len() + ni];
                let meet: Vec<bool> = pm.iter().zip(nm.iter()).map(|(a, b)| *a && *b).collect();
                let adjacent = !all.iter().enumerate().any(|(k, _)| {
                    let m = &masks[k];
                    let same_p = k == pi;
                    let same_n = k == pos.len() + zero.len() + ni;
                    !same_p && !same_n && meet.iter().zip(m.iter()).all(|(need, have)| !*need || *have)
                });
                if !adjacent {
                    continue;
                }
                // combine: x_i(p) * ng - x_i(ng) * p  (nonnegative combination)
                let cp = &p.x[i];
                let cn = &ng.x[i];
                let mut x: Vec<BigInt> = (0..na).map(|k| cp * &ng.x[k] - cn * &p.x[k]).collect();
                reduce(&mut x);
                next.push(Ray { x });
            }
        }
        next.extend(pos);
        next.extend(zero);
        rays = next;
        processed.push(i);
        processed_mask[i] = true;
    }
    // expand to full coordinates
    rays.into_iter()
        .map(|r| {
            let mut full = vec![BigInt::zero(); dim];
            for (j, &c) in allowed.iter().enumerate() {
                full[c] = r.x[j].clone();
            }
            full
        })
        .collect()
}

struct Ray {
    x: Vec<BigInt>,
}

impl Ray {
    fn from_y(y: &[BigInt], basis: &[Vec<BigInt>], na: usize) -> Ray {
        let mut x = vec![BigInt::zero(); na];
        for (j, b) in basis.iter().enumerate() {
            if y[j].is_zero() {
                continue;
            }
            for i in 0..na {
                if !b[i].is_zero() {
                    x[i] += &y[j] * &b[i];
                }
            }
        }
        reduce(&mut x);
        Ray { x }
    }

    fn zero_mask(&self, processed: &[usize]) -> Vec<bool> {
        processed.iter().map(|&i| self.x[i].is_zero()).collect()
    }
}

fn reduce(x: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for v in x.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for v in x.iter_mut() {
        *v = &*v / &g;
    }
}

fn determinant(m: &IntMat) -> BigInt {
    // Bareiss fraction-free determinant
    let n = m.rows;
    assert_eq!(n, m.cols);
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = &num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    a[n - 1][n - 1].clone() * sign
}

fn adjugate(m: &IntMat, _det: &BigInt) -> IntMat {
    let n = m.rows;
    let mut adj = IntMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            // cofactor C_ji
            let mut minor = IntMat::zero(n - 1, n - 1);
            let mut r = 0;
            for x in 0..n {
                if x == j {
                    continue;
                }
                let mut c = 0;
                for y in 0..n {
                    if y == i {
                        continue;
                    }
                    *minor.at_mut(r, c) = m.at(x, y).clone();
                    c += 1;
                }
                r += 1;
            }
            let s = if (i + j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            *adj.at_mut(i, j) = determinant(&minor) * s;
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::one_tet_ball;

    #[test]
    fn lone_tet_rays_are_units() {
        let rays = vertex_rays(&one_tet_ball(), &EnumLimits::default()).unwrap();
        assert_eq!(rays.len(), 7, "no equations: the 7 coordinate axes");
        for r in &rays {
            assert_eq!(r.coords.iter().filter(|x| !x.is_zero()).count(), 1);
            assert_eq!(r.max_coord(), BigInt::one());
        }
    }

    #[test]
    fn rays_are_minimal_and_bounded() {
        for t in [crate::fixtures::solid_torus(), crate::complex::two_tet_sphere()] {
            let ms = matching_system(&t).unwrap();
            let rays = vertex_rays(&t, &EnumLimits::default()).unwrap();
            assert!(!rays.is_empty());
            let bound = BigInt::one() << (7 * t.tets() - 1);
            for r in &rays {
                assert!(is_admissible(&ms, r).unwrap());
                assert!(r.max_coord() <= bound, "coordinate bound 2^(7t-1)");
                let mut g = BigInt::zero();
                for x in &r.coords {
                    if !x.is_zero() {
                        g = g.gcd(x);
                    }
                }
                assert_eq!(g, BigInt::one(), "gcd-reduced");
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let t = crate::fixtures::solid_torus();
        let seq = vertex_rays(&t, &EnumLimits { mode: ExecMode::Sequential, ..Default::default() }).unwrap();
        let par = vertex_rays(&t, &EnumLimits { mode: ExecMode::Parallel, ..Default::default() }).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn dimension_guard() {
        let t = crate::complex::barycentric_subdivide(&one_tet_ball()).unwrap().result;
        let err = vertex_rays(&t, &EnumLimits::default()).unwrap_err();
        assert!(matches!(err, NormalError::DimensionGuard(168, 56)));
    }
}
