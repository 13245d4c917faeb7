//! Pointed rational cones, their faces and incidence signs.
//!
//! A cone lives in `R^d` but need not be full-dimensional. Facet normals
//! are taken inside the linear span of the cone and scaled to primitive
//! integer vectors, so both descriptions are canonical and comparable.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, orientation_sign, primitive, rank_of, rational_kernel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cone {
    ambient_dim: usize,
    dim: usize,
    rays: Vec<Vec<i64>>,
    facet_normals: Vec<Vec<i64>>,
    /// Integer basis of the orthogonal complement of the span.
    equations: Vec<Vec<i64>>,
}

/// All subsets of `0..n` of size `k`, in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Facet normals (inside the span) of the cone generated by `gens`, which
/// may contain a line. A facet of a `k`-dimensional cone carries `k - 1`
/// independent generators, so every facet is found among the hyperplanes
/// through such subsets.
pub(crate) fn facets_of_generated(d: usize, gens: &[Vec<i64>], equations: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let mut normals: Vec<Vec<i64>> = Vec::new();
    if k == 0 {
        return normals;
    }
    for subset in subsets(gens.len(), k - 1) {
        let mut rows: Vec<Vec<i64>> = subset.iter().map(|&i| gens[i].clone()).collect();
        if rank_of(d, &rows) != k - 1 {
            continue;
        }
        rows.extend(equations.iter().cloned());
        let ker = rational_kernel(d, &rows);
        debug_assert_eq!(ker.len(), 1);
        let n = &ker[0];
        let vals: Vec<i64> = gens.iter().map(|g| dot(n, g)).collect();
        let candidate = if vals.iter().all(|&x| x >= 0) {
            n.clone()
        } else if vals.iter().all(|&x| x <= 0) {
            n.iter().map(|x| -x).collect()
        } else {
            continue;
        };
        // a valid hyperplane through k-1 independent generators is a facet
        // unless every generator lies on it
        if vals.iter().all(|&x| x == 0) {
            continue;
        }
        if !normals.contains(&candidate) {
            normals.push(candidate);
        }
    }
    normals
}

impl Cone {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn facet_normals(&self) -> &[Vec<i64>] {
        &self.facet_normals
    }

    pub fn equations(&self) -> &[Vec<i64>] {
        &self.equations
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.ambient_dim
    }

    pub fn in_span(&self, v: &[i64]) -> bool {
        self.equations.iter().all(|e| dot(e, v) == 0)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        v.len() == self.ambient_dim && self.in_span(v) && self.facet_normals.iter().all(|n| dot(n, v) >= 0)
    }

    pub fn in_relative_interior(&self, v: &[i64]) -> bool {
        v.len() == self.ambient_dim && self.in_span(v) && self.facet_normals.iter().all(|n| dot(n, v) > 0)
    }

    /// A strictly positive integer functional on the nonzero points of the cone.
    pub fn grading(&self) -> Vec<i64> {
        let mut g = vec![0; self.ambient_dim];
        for n in &self.facet_normals {
            for (x, y) in g.iter_mut().zip(n) {
                *x += y;
            }
        }
        g
    }
}

pub fn cone_from_rays(d: usize, gens: &[Vec<i64>]) -> Result<Cone> {
    let mut prims: Vec<Vec<i64>> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: g.len() });
        }
        if g.iter().all(|x| *x == 0) {
            return Err(Error::ZeroGenerator(i));
        }
        let p = primitive(g);
        if !prims.contains(&p) {
            prims.push(p);
        }
    }
    let k = rank_of(d, &prims);
    let equations = rational_kernel(d, &prims);
    let normals = facets_of_generated(d, &prims, &equations, k);
    if k > 0 && rank_of(d, &normals) != k {
        return Err(Error::NotPointed);
    }
    let rays: Vec<Vec<i64>> = prims
        .into_iter()
        .filter(|r| {
            let tight: Vec<Vec<i64>> = normals.iter().filter(|n| dot(n, r) == 0).cloned().collect();
            rank_of(d, &tight) + 1 == k
        })
        .collect();
    Ok(Cone { ambient_dim: d, dim: k, rays, facet_normals: normals, equations })
}

/// Extreme rays of `{x : <n, x> >= 0 for n in normals}` (assumed pointed).
pub fn dual_rays(d: usize, normals: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let nz: Vec<Vec<i64>> = normals.iter().filter(|n| n.iter().any(|x| *x != 0)).map(|n| primitive(n)).collect();
    let k = rank_of(d, &nz);
    let eqs = rational_kernel(d, &nz);
    if k < d {
        // the polyhedron contains the lines in `eqs`; callers only use pointed ones
        debug_assert!(eqs.is_empty(), "dual_rays on a cone with lineality");
    }
    facets_of_generated(d, &nz, &eqs, k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    /// indices into `Cone::rays`
    pub rays: BTreeSet<usize>,
    /// indices into `Cone::facet_normals` vanishing on the face
    pub support: BTreeSet<usize>,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceLattice {
    cone: Cone,
    faces: Vec<Face>,
    /// ordered basis of the linear span of each face
    bases: Vec<Vec<Vec<i64>>>,
    /// (larger, smaller) covering pairs
    covers: Vec<(usize, usize)>,
    #[serde(skip)]
    incidence: HashMap<(usize, usize), i8>,
}

impl FaceLattice {
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face(&self, i: usize) -> &Face {
        &self.faces[i]
    }

    pub fn face_rays(&self, i: usize) -> Vec<Vec<i64>> {
        self.faces[i].rays.iter().map(|&r| self.cone.rays[r].clone()).collect()
    }

    pub fn basis(&self, i: usize) -> &[Vec<i64>] {
        &self.bases[i]
    }

    /// Index of the full cone.
    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    /// Index of the zero face.
    pub fn bottom(&self) -> usize {
        0
    }

    /// `big ⊇ small`
    pub fn contains_face(&self, big: usize, small: usize) -> bool {
        self.faces[small].rays.is_subset(&self.faces[big].rays)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Faces covered by `f`.
    pub fn facets_of(&self, f: usize) -> Vec<usize> {
        self.covers.iter().filter(|(a, _)| *a == f).map(|(_, b)| *b).collect()
    }

    /// Faces covering `f`.
    pub fn cofacets_of(&self, f: usize) -> Vec<usize> {
        self.covers.iter().filter(|(_, b)| *b == f).map(|(a, _)| *a).collect()
    }

    pub fn faces_of_dim(&self, k: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&i| self.faces[i].dim == k).collect()
    }

    pub fn incidence(&self, big: usize, small: usize) -> Option<i8> {
        self.incidence.get(&(big, small)).copied()
    }

    pub fn incidence_map(&self) -> &HashMap<(usize, usize), i8> {
        &self.incidence
    }

    /// Whether `v` lies on face `f` (all support normals vanish).
    pub fn on_face(&self, f: usize, v: &[i64]) -> bool {
        self.cone.contains(v) && self.faces[f].support.iter().all(|&n| dot(&self.cone.facet_normals[n], v) == 0)
    }

    pub fn find_by_support(&self, support: &BTreeSet<usize>) -> Option<usize> {
        self.faces.iter().position(|f| &f.support == support)
    }

    pub fn find_by_rays(&self, rays: &BTreeSet<usize>) -> Option<usize> {
        self.faces.iter().position(|f| &f.rays == rays)
    }

    /// The face whose relative interior contains `v`.
    pub fn carrier_face(&self, v: &[i64]) -> Result<usize> {
        if !self.cone.contains(v) {
            return Err(Error::NotInCone);
        }
        let support: BTreeSet<usize> =
            (0..self.cone.facet_normals.len()).filter(|&n| dot(&self.cone.facet_normals[n], v) == 0).collect();
        self.find_by_support(&support).ok_or(Error::NotInCone)
    }
}

pub fn face_lattice(cone: &Cone) -> FaceLattice {
    let nr = cone.rays.len();
    let nn = cone.facet_normals.len();
    let vanish = |n: usize, r: usize| dot(&cone.facet_normals[n], &cone.rays[r]) == 0;
    let closure = |rays: &BTreeSet<usize>| -> BTreeSet<usize> {
        (0..nn).filter(|&n| rays.iter().all(|&r| vanish(n, r))).collect()
    };
    let full: BTreeSet<usize> = (0..nr).collect();
    let mut found: Vec<BTreeSet<usize>> = vec![full.clone()];
    let mut queue = vec![full];
    while let Some(rays) = queue.pop() {
        let support = closure(&rays);
        for n in 0..nn {
            if support.contains(&n) {
                continue;
            }
            let next: BTreeSet<usize> = rays.iter().copied().filter(|&r| vanish(n, r)).collect();
            if !found.contains(&next) {
                found.push(next.clone());
                queue.push(next);
            }
        }
    }
    let d = cone.ambient_dim;
    let mut faces: Vec<Face> = found
        .into_iter()
        .map(|rays| {
            let vecs: Vec<Vec<i64>> = rays.iter().map(|&r| cone.rays[r].clone()).collect();
            let dim = rank_of(d, &vecs);
            let support = if rays.is_empty() { (0..nn).collect() } else { closure(&rays) };
            Face { rays, support, dim }
        })
        .collect();
    faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.rays.iter().cmp(b.rays.iter())));

    let bases: Vec<Vec<Vec<i64>>> = faces
        .iter()
        .map(|f| {
            let mut basis: Vec<Vec<i64>> = Vec::new();
            for &r in &f.rays {
                let mut trial = basis.clone();
                trial.push(cone.rays[r].clone());
                if rank_of(d, &trial) == trial.len() {
                    basis = trial;
                }
            }
            basis
        })
        .collect();

    let mut covers = Vec::new();
    for (i, fi) in faces.iter().enumerate() {
        for (j, fj) in faces.iter().enumerate() {
            if fi.dim == fj.dim + 1 && fj.rays.is_subset(&fi.rays) {
                covers.push((i, j));
            }
        }
    }

    let mut incidence = HashMap::new();
    for &(big, small) in &covers {
        let inward = faces[big]
            .rays
            .iter()
            .find(|r| !faces[small].rays.contains(r))
            .map(|&r| cone.rays[r].clone())
            .expect("a covering face has an extra ray");
        let mut vectors = bases[small].clone();
        vectors.push(inward);
        let s = orientation_sign(&bases[big], &vectors);
        assert!(s != 0, "degenerate orientation");
        incidence.insert((big, small), s);
    }

    FaceLattice { cone: cone.clone(), faces, bases, covers, incidence }
}

/// Standalone entry point for the incidence map of a face lattice.
pub fn incidence_function(fl: &FaceLattice) -> &HashMap<(usize, usize), i8> {
    fl.incidence_map()
}

/// Checks the two-step sum condition on every pair with dimension gap 2.
pub fn incidence_is_consistent(fl: &FaceLattice) -> bool {
    for (f, face) in fl.faces.iter().enumerate() {
        for (h, small) in fl.faces.iter().enumerate() {
            if face.dim != small.dim + 2 || !small.rays.is_subset(&face.rays) {
                continue;
            }
            let s: i32 = fl
                .facets_of(f)
                .into_iter()
                .filter(|&g| fl.contains_face(g, h) && fl.faces[g].dim == small.dim + 1)
                .map(|g| fl.incidence(f, g).unwrap() as i32 * fl.incidence(g, h).unwrap() as i32)
                .sum();
            if s != 0 {
                return false;
            }
        }
    }
    fl.incidence.values().all(|v| *v == 1 || *v == -1)
}
