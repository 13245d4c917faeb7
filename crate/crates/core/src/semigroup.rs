//! Affine semigroups `M ⊂ Z^d` with pointed cones.

use std::cell::Cell;
use std::collections::{BTreeSet, HashSet};
use std::sync::OnceLock;

use serde::Serialize;

use crate::cone::{cone_from_rays, face_lattice, Cone, FaceLattice};
use crate::degree_box::DegreeBox;
use crate::error::{Error, Result};
use crate::hilbert::hilbert_basis;
use crate::lattice::{lattice_from_vectors, Lattice};
use crate::linalg::{dot, sub};

pub const DEFAULT_BOUND: u32 = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipCertificate {
    /// multiplicity per generator index
    pub multiplicities: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum SearchOutcome {
    Found(Vec<u64>),
    NotFound,
    Exhausted,
}

/// Depth-first search for nonnegative multiplicities `λ` with
/// `accept(target - Σ λ_i gens_i)`. `level` must be strictly positive on
/// every generator and nonnegative on every residual that passes `prune`,
/// which bounds each multiplicity.
pub(crate) fn decompose(
    gens: &[Vec<i64>],
    target: &[i64],
    level: &[i64],
    prune: &dyn Fn(&[i64]) -> bool,
    accept: &dyn Fn(&[i64]) -> bool,
    budget: u64,
) -> SearchOutcome {
    struct Ctx<'a> {
        gens: &'a [Vec<i64>],
        level: &'a [i64],
        prune: &'a dyn Fn(&[i64]) -> bool,
        accept: &'a dyn Fn(&[i64]) -> bool,
        failed: HashSet<(usize, Vec<i64>)>,
        left: Cell<u64>,
        exhausted: Cell<bool>,
    }
    fn rec(cx: &mut Ctx<'_>, i: usize, r: Vec<i64>, mult: &mut Vec<u64>) -> bool {
        if (cx.accept)(&r) {
            return true;
        }
        if i == cx.gens.len() || cx.failed.contains(&(i, r.clone())) {
            return false;
        }
        if cx.left.get() == 0 {
            cx.exhausted.set(true);
            return false;
        }
        cx.left.set(cx.left.get() - 1);
        let g = &cx.gens[i];
        let step = dot(cx.level, g);
        debug_assert!(step > 0);
        let max = dot(cx.level, &r).max(0) / step;
        for k in (0..=max).rev() {
            let next: Vec<i64> = r.iter().zip(g).map(|(a, b)| a - k * b).collect();
            if !(cx.prune)(&next) {
                continue;
            }
            if rec(cx, i + 1, next, mult) {
                mult[i] = k as u64;
                return true;
            }
        }
        if !cx.exhausted.get() {
            cx.failed.insert((i, r));
        }
        false
    }
    let mut cx = Ctx {
        gens,
        level,
        prune,
        accept,
        failed: HashSet::new(),
        left: Cell::new(budget),
        exhausted: Cell::new(false),
    };
    let mut mult = vec![0; gens.len()];
    if !prune(target) {
        return SearchOutcome::NotFound;
    }
    if rec(&mut cx, 0, target.to_vec(), &mut mult) {
        SearchOutcome::Found(mult)
    } else if cx.exhausted.get() {
        SearchOutcome::Exhausted
    } else {
        SearchOutcome::NotFound
    }
}

#[derive(Clone, Debug)]
pub struct AffineSemigroup {
    d: usize,
    gens: Vec<Vec<i64>>,
    faces: FaceLattice,
    group: Lattice,
    /// generator indices lying on each face
    face_gens: Vec<Vec<usize>>,
    face_groups: Vec<Lattice>,
    normal: OnceLock<bool>,
}

impl PartialEq for AffineSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.gens == other.gens
    }
}

impl AffineSemigroup {
    pub fn new(gens: Vec<Vec<i64>>, d: usize) -> Result<Self> {
        let mut uniq: Vec<Vec<i64>> = Vec::new();
        for (i, g) in gens.into_iter().enumerate() {
            if g.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: g.len() });
            }
            if g.iter().all(|x| *x == 0) {
                return Err(Error::ZeroGenerator(i));
            }
            if !uniq.contains(&g) {
                uniq.push(g);
            }
        }
        let cone = cone_from_rays(d, &uniq).map_err(|e| if e == Error::NotPointed { Error::NotPositive } else { e })?;
        let faces = face_lattice(&cone);
        let group = lattice_from_vectors(&uniq, d)?;
        let face_gens: Vec<Vec<usize>> =
            (0..faces.len()).map(|f| (0..uniq.len()).filter(|&i| faces.on_face(f, &uniq[i])).collect()).collect();
        let face_groups = face_gens
            .iter()
            .map(|ix| lattice_from_vectors(&ix.iter().map(|&i| uniq[i].clone()).collect::<Vec<_>>(), d))
            .collect::<Result<Vec<_>>>()?;
        Ok(AffineSemigroup { d, gens: uniq, faces, group, face_gens, face_groups, normal: OnceLock::new() })
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    /// Krull dimension of `k[M]`: the rank of `ZM`.
    pub fn dim(&self) -> usize {
        self.faces.cone().dim()
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.gens
    }

    pub fn cone(&self) -> &Cone {
        self.faces.cone()
    }

    pub fn face_lattice(&self) -> &FaceLattice {
        &self.faces
    }

    pub fn group(&self) -> &Lattice {
        &self.group
    }

    pub fn face_group(&self, f: usize) -> &Lattice {
        &self.face_groups[f]
    }

    pub fn face_generators(&self, f: usize) -> Vec<Vec<i64>> {
        self.face_gens[f].iter().map(|&i| self.gens[i].clone()).collect()
    }

    /// Face index of a cone that is a face of `C(M)`.
    pub fn face_index_of(&self, face: &Cone) -> Result<usize> {
        let rays: BTreeSet<usize> = face
            .rays()
            .iter()
            .map(|r| self.cone().rays().iter().position(|s| s == r).ok_or(Error::NotAFace))
            .collect::<Result<_>>()?;
        let f = self.faces.find_by_rays(&rays).ok_or(Error::NotAFace)?;
        if self.faces.face(f).dim != face.dim() {
            return Err(Error::NotAFace);
        }
        Ok(f)
    }

    pub fn certificate(&self, a: &[i64]) -> Option<MembershipCertificate> {
        if a.len() != self.d || !self.cone().contains(a) {
            return None;
        }
        let cone = self.cone();
        let level = cone.grading();
        match decompose(&self.gens, a, &level, &|r| cone.contains(r), &|r| r.iter().all(|x| *x == 0), u64::MAX) {
            SearchOutcome::Found(m) => Some(MembershipCertificate { multiplicities: m }),
            _ => None,
        }
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        self.certificate(a).is_some()
    }

    pub fn face_monoid(&self, f: usize) -> Result<AffineSemigroup> {
        if f >= self.faces.len() {
            return Err(Error::NotAFace);
        }
        AffineSemigroup::new(self.face_generators(f), self.d)
    }

    /// Hilbert basis of `ZM ∩ C(M)`.
    pub fn normalization(&self) -> Vec<Vec<i64>> {
        hilbert_basis(self.cone(), &self.group).expect("cone of a positive semigroup is pointed")
    }

    pub fn is_normal(&self) -> bool {
        *self.normal.get_or_init(|| self.normalization().iter().all(|h| self.contains(h)))
    }

    /// `a ∈ ⁺M`: `a ∈ C(M)` and `a ∈ ZM_F` for the carrier face `F` of `a`.
    pub fn plus_membership(&self, a: &[i64]) -> bool {
        match self.faces.carrier_face(a) {
            Ok(f) => self.face_groups[f].contains(a).unwrap_or(false),
            Err(_) => false,
        }
    }

    /// Whether `b ∈ M − M_F`, i.e. `b ∈ M + ZM_F`. Decided exactly: the
    /// multiplicities of generators off `F` are bounded by a functional that
    /// vanishes on `F`, and the remainder must lie in `ZM_F`. `None` when the
    /// search budget runs out.
    pub fn in_localization(&self, b: &[i64], f: usize, budget: u64) -> Option<bool> {
        let cone = self.cone();
        if !cone.in_span(b) || !self.group.contains(b).unwrap_or(false) {
            return Some(false);
        }
        let normals = cone.facet_normals();
        let support: Vec<&Vec<i64>> = self.faces.face(f).support.iter().map(|&n| &normals[n]).collect();
        let mut level = vec![0; self.d];
        for n in &support {
            for (x, y) in level.iter_mut().zip(n.iter()) {
                *x += y;
            }
        }
        let off: Vec<Vec<i64>> =
            (0..self.gens.len()).filter(|i| !self.face_gens[f].contains(i)).map(|i| self.gens[i].clone()).collect();
        let lattice = &self.face_groups[f];
        let prune = |r: &[i64]| support.iter().all(|n| dot(n, r) >= 0);
        let accept = |r: &[i64]| support.iter().all(|n| dot(n, r) == 0) && lattice.contains(r).unwrap_or(false);
        match decompose(&off, b, &level, &prune, &accept, budget) {
            SearchOutcome::Found(_) => Some(true),
            SearchOutcome::NotFound => Some(false),
            SearchOutcome::Exhausted => None,
        }
    }

    /// Points of `M ∩ relint C(M)` inside the box.
    pub fn interior_degrees(&self, bx: &DegreeBox) -> Vec<Vec<i64>> {
        bx.points().into_iter().filter(|a| self.cone().in_relative_interior(a) && self.contains(a)).collect()
    }

    /// Cone points of `[-side, side]^d`.
    fn cone_box(&self, side: i64) -> Vec<Vec<i64>> {
        DegreeBox::cube(self.d, -side, side).points().into_iter().filter(|p| self.cone().contains(p)).collect()
    }

    /// Generators of `⁺M`, certified on a verification box.
    ///
    /// Candidates are the generators of `M` together with, for every face
    /// `F`, the elements of `ZM_F ∩ relint F` that are sums of at most
    /// `bound` Hilbert basis elements of `ZM_F ∩ F`. The irreducible
    /// candidates are returned after checking on the box that they generate
    /// `⁺M`, that none splits as a sum of two nonzero box points of `⁺M`,
    /// and that the monoid they generate is its own seminormalization.
    pub fn seminormalization(&self, bound: u32) -> Result<Vec<Vec<i64>>> {
        if bound == 0 {
            return Err(Error::BoundTooSmall { bound, detail: "bound must be at least 1".into() });
        }
        let fl = &self.faces;
        let mut cand: BTreeSet<Vec<i64>> = self.gens.iter().cloned().collect();
        for f in 0..fl.len() {
            if fl.face(f).dim == 0 {
                continue;
            }
            let face_cone = cone_from_rays(self.d, &fl.face_rays(f))?;
            let hb = hilbert_basis(&face_cone, &self.face_groups[f])?;
            for combo in bounded_combinations(hb.len(), bound as u64) {
                let mut v = vec![0i64; self.d];
                for (c, h) in combo.iter().zip(&hb) {
                    for (x, y) in v.iter_mut().zip(h) {
                        *x += *c as i64 * y;
                    }
                }
                if fl.carrier_face(&v).ok() == Some(f) {
                    cand.insert(v);
                }
            }
        }
        debug_assert!(cand.iter().all(|c| self.plus_membership(c)));
        let level = self.cone().grading();
        let mut cand: Vec<Vec<i64>> = cand.into_iter().collect();
        cand.sort_by_key(|v| (dot(&level, v), v.clone()));
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for (i, x) in cand.iter().enumerate() {
            let lx = dot(&level, x);
            if !cand[..i].iter().any(|y| dot(&level, y) < lx && self.plus_membership(&sub(x, y))) {
                gens.push(x.clone());
            }
        }
        gens.sort();

        let max_gen = self.gens.iter().flatten().map(|x| x.abs()).max().unwrap_or(1);
        let max_out = gens.iter().flatten().map(|x| x.abs()).max().unwrap_or(1);
        let side = (bound as i64).max(2 * max_out).max(4 * max_gen);
        self.certify_seminormalization(&gens, side, bound)?;
        Ok(gens)
    }

    fn certify_seminormalization(&self, gens: &[Vec<i64>], side: i64, bound: u32) -> Result<()> {
        let fail = |detail: String| Error::BoundTooSmall { bound, detail };
        let generated = AffineSemigroup::new(gens.to_vec(), self.d)?;
        let plus_points: Vec<Vec<i64>> = self.cone_box(side).into_iter().filter(|p| self.plus_membership(p)).collect();
        for p in &plus_points {
            if !generated.contains(p) {
                return Err(fail(format!("{p:?} lies in the seminormalization but is not generated")));
            }
            if generated.plus_membership(p) != self.plus_membership(p) {
                return Err(fail(format!("seminormalization is not idempotent at {p:?}")));
            }
        }
        for g in gens {
            if !self.plus_membership(g) {
                return Err(fail(format!("{g:?} is not in the seminormalization")));
            }
            let splits =
                plus_points.iter().any(|u| u != g && u.iter().any(|x| *x != 0) && self.plus_membership(&sub(g, u)));
            if splits {
                return Err(fail(format!("{g:?} is reducible")));
            }
        }
        Ok(())
    }

    pub fn is_seminormal(&self, bound: u32) -> Result<bool> {
        Ok(self.seminormalization(bound)?.iter().all(|g| self.contains(g)))
    }
}

/// All vectors of `n` nonnegative integers with sum at most `bound`.
fn bounded_combinations(n: usize, bound: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = vec![0u64; n];
    fn rec(i: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..=left {
            cur[i] = c;
            rec(i + 1, left - c, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, bound, &mut cur, &mut out);
    out
}
