//! Hilbert bases of `L ∩ C` for a lattice `L` and a pointed cone `C`.
//!
//! The cone is moved into coordinates of the saturated lattice of its
//! span, split by a pulling triangulation on its extreme rays, and the
//! lattice points of each half-open fundamental parallelepiped are
//! collected. Irreducible elements of the collected set form the basis.

use std::collections::BTreeSet;

use num_traits::{ToPrimitive, Zero};

use crate::cone::{cone_from_rays, dual_rays, face_lattice, Cone, FaceLattice};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::linalg::{
    dot, hermite_normal_form, integer_kernel, primitive_from_rational, saturated_basis, solve_in_basis, sub, IntMatrix,
};

/// Simplicial cones (as sets of ray indices) of a pulling triangulation.
pub fn pulling_triangulation(fl: &FaceLattice) -> Vec<BTreeSet<usize>> {
    fn rec(fl: &FaceLattice, f: usize, out: &mut Vec<BTreeSet<usize>>) {
        let face = fl.face(f);
        if face.rays.len() == face.dim {
            out.push(face.rays.clone());
            return;
        }
        let apex = *face.rays.iter().next().expect("nonzero face has a ray");
        for g in fl.facets_of(f) {
            if fl.face(g).rays.contains(&apex) {
                continue;
            }
            let mut sub = Vec::new();
            rec(fl, g, &mut sub);
            for mut s in sub {
                s.insert(apex);
                out.push(s);
            }
        }
    }
    let mut out = Vec::new();
    if fl.cone().dim() > 0 {
        rec(fl, fl.top(), &mut out);
    }
    out
}

/// Lattice points of the half-open parallelepiped spanned by `rays`
/// (linearly independent, full rank `k`), including zero.
pub fn parallelepiped_points(k: usize, rays: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(k, rays));
    let diag: Vec<i64> = (0..k).map(|i| h[(i, i)].to_i64().expect("pivot overflow")).collect();
    let mut reps: Vec<Vec<i64>> = vec![vec![]];
    for &m in &diag {
        let mut next = Vec::new();
        for r in &reps {
            for c in 0..m {
                let mut v = r.clone();
                v.push(c);
                next.push(v);
            }
        }
        reps = next;
    }
    reps.into_iter()
        .map(|x| {
            let q = solve_in_basis(rays, &x).expect("rays span the space");
            let mut p = x.clone();
            for (qi, r) in q.iter().zip(rays) {
                let fl = qi.floor().to_integer().to_i64().expect("coefficient overflow");
                if fl != 0 {
                    for (pj, rj) in p.iter_mut().zip(r) {
                        *pj -= fl * rj;
                    }
                }
            }
            p
        })
        .collect()
}

/// Hilbert basis of `Z^k ∩ C` for a full-dimensional pointed cone.
fn hilbert_full(cone: &Cone) -> Vec<Vec<i64>> {
    let k = cone.ambient_dim();
    let fl = face_lattice(cone);
    let mut cand: BTreeSet<Vec<i64>> = cone.rays().iter().cloned().collect();
    for simplex in pulling_triangulation(&fl) {
        let rays: Vec<Vec<i64>> = simplex.iter().map(|&r| cone.rays()[r].clone()).collect();
        for p in parallelepiped_points(k, &rays) {
            if p.iter().any(|x| *x != 0) {
                cand.insert(p);
            }
        }
    }
    reduce_to_irreducibles(cone, cand.into_iter().collect())
}

/// Keeps the elements of a generating set of `Z^k ∩ C` that are not a
/// candidate plus a point of the cone.
pub(crate) fn reduce_to_irreducibles(cone: &Cone, mut cand: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let grading = cone.grading();
    cand.sort_by_key(|v| (dot(&grading, v), v.clone()));
    let mut out = Vec::new();
    for (i, x) in cand.iter().enumerate() {
        let gx = dot(&grading, x);
        let reducible = cand[..i].iter().any(|y| dot(&grading, y) < gx && cone.contains(&sub(x, y)));
        if !reducible {
            out.push(x.clone());
        }
    }
    out
}

/// Minimal generating set of the monoid `L ∩ C`, taken inside `span(C)`.
pub fn hilbert_basis(cone: &Cone, lattice: &Lattice) -> Result<Vec<Vec<i64>>> {
    let d = cone.ambient_dim();
    if lattice.ambient_dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: lattice.ambient_dim() });
    }
    if cone.dim() == 0 || lattice.is_zero() {
        return Ok(vec![]);
    }
    // L' = L ∩ span(C)
    let lb = lattice.basis();
    let constraints: Vec<Vec<i64>> = cone.equations().iter().map(|e| lb.iter().map(|b| dot(e, b)).collect()).collect();
    let ys = integer_kernel(lb.len(), &constraints);
    let lp: Vec<Vec<i64>> =
        ys.iter().map(|y| (0..d).map(|j| y.iter().zip(lb).map(|(c, b)| c * b[j]).sum()).collect()).collect();
    let r = lp.len();
    if r == 0 {
        return Ok(vec![]);
    }
    // cone pulled back to coordinates of L'
    let pulled: Vec<Vec<i64>> = cone.facet_normals().iter().map(|n| lp.iter().map(|b| dot(n, b)).collect()).collect();
    let prays: Vec<Vec<i64>> = if r == cone.dim() {
        cone.rays().iter().map(|ray| primitive_from_rational(&solve_in_basis(&lp, ray).expect("ray in span"))).collect()
    } else {
        dual_rays(r, &pulled)
    };
    if prays.is_empty() {
        return Ok(vec![]);
    }
    // the pulled-back cone may be lower dimensional in Z^r; saturate again
    let sat = saturated_basis(r, &prays);
    let inner: Vec<Vec<i64>> = prays
        .iter()
        .map(|ray| primitive_from_rational(&solve_in_basis(&sat, ray).expect("ray in saturated span")))
        .collect();
    let inner_cone = cone_from_rays(sat.len(), &inner)?;
    let hb = hilbert_full(&inner_cone);
    let mut out: Vec<Vec<i64>> = hb
        .iter()
        .map(|z| {
            let y: Vec<i64> = (0..r).map(|j| z.iter().zip(&sat).map(|(c, b)| c * b[j]).sum()).collect();
            (0..d).map(|j| y.iter().zip(&lp).map(|(c, b)| c * b[j]).sum()).collect()
        })
        .collect();
    out.sort();
    debug_assert!(out.iter().all(|v: &Vec<i64>| !v.iter().all(Zero::is_zero)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::lattice_from_vectors;

    fn z(d: usize) -> Lattice {
        let id: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
        lattice_from_vectors(&id, d).unwrap()
    }

    #[test]
    fn quadrant() {
        let c = cone_from_rays(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(hilbert_basis(&c, &z(2)).unwrap(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn interior_parallelepiped_point() {
        let c = cone_from_rays(2, &[vec![1, 0], vec![1, 2]]).unwrap();
        assert_eq!(hilbert_basis(&c, &z(2)).unwrap(), vec![vec![1, 0], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn half_line() {
        let c = cone_from_rays(1, &[vec![3]]).unwrap();
        assert_eq!(hilbert_basis(&c, &z(1)).unwrap(), vec![vec![1]]);
    }

    #[test]
    fn sublattice_and_lower_dimensional_cone() {
        // ray (1,1) in Z^2 with lattice {x - y even}: generator (1,1)
        let c = cone_from_rays(2, &[vec![1, 1]]).unwrap();
        let l = lattice_from_vectors(&[vec![2, 0], vec![1, 1]], 2).unwrap();
        assert_eq!(hilbert_basis(&c, &l).unwrap(), vec![vec![1, 1]]);
        // x-axis with lattice 2Z x Z
        let c = cone_from_rays(2, &[vec![1, 0]]).unwrap();
        let l = lattice_from_vectors(&[vec![2, 0], vec![0, 1]], 2).unwrap();
        assert_eq!(hilbert_basis(&c, &l).unwrap(), vec![vec![2, 0]]);
    }

    #[test]
    fn lattice_of_lower_rank_than_cone() {
        // quadrant intersected with the line spanned by (1,1)
        let c = cone_from_rays(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let l = lattice_from_vectors(&[vec![2, 2]], 2).unwrap();
        assert_eq!(hilbert_basis(&c, &l).unwrap(), vec![vec![2, 2]]);
        let l = lattice_from_vectors(&[vec![1, -1]], 2).unwrap();
        assert!(hilbert_basis(&c, &l).unwrap().is_empty());
    }

    #[test]
    fn non_simplicial_square_cone() {
        let c = cone_from_rays(3, &[vec![0, 0, 1], vec![1, 0, 1], vec![1, 1, 1], vec![0, 1, 1]]).unwrap();
        let hb = hilbert_basis(&c, &z(3)).unwrap();
        assert_eq!(hb.len(), 4);
    }

    #[test]
    fn parallelepiped_size_is_determinant() {
        let pts = parallelepiped_points(2, &[vec![1, 0], vec![1, 3]]);
        assert_eq!(pts.len(), 3);
        assert!(pts.contains(&vec![0, 0]));
    }
}
