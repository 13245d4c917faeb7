use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::hilbert_basis;
use crate::lattice::lattice_from_vectors;
use crate::linalg::{integer_coordinates, primitive, rank_of, saturated_basis};
use crate::semigroup::AffineSemigroup;
use crate::toric::poset::{CwPoset, Issue, EMPTY_CELL};

/// Integer matrix as rows.
pub type Matrix = Vec<Vec<i64>>;

pub(crate) fn mat_vec(m: &Matrix, v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix, cols: usize) -> Matrix {
    a.iter().map(|row| (0..cols).map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum()).collect()).collect()
}

fn columns(m: &Matrix, cols: usize) -> Vec<Vec<i64>> {
    (0..cols).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// One affine semigroup per cell of a CW poset, glued along integer
/// embeddings. Cell `0` is the empty cell, carrying the zero monoid.
#[derive(Clone, Debug)]
pub struct MonoidalComplex {
    poset: CwPoset,
    monoids: Vec<AffineSemigroup>,
    /// `ĩ_{σ,τ}` for every pair `σ >= τ`
    emb: HashMap<(usize, usize), Matrix>,
    /// face of `C_σ` that is the image of `C_τ`
    faces: HashMap<(usize, usize), usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub cells: usize,
    pub pairs_checked: usize,
    pub issues: Vec<Issue>,
}

impl MonoidalComplex {
    /// Assembles the data without checking the axioms. `cover_embeddings`
    /// must hold a matrix for every cover between nonempty cells; the
    /// others are composed along chains. Incidence signs are derived when
    /// the poset carries none.
    pub fn assemble(
        mut poset: CwPoset,
        mut monoids: Vec<AffineSemigroup>,
        cover_embeddings: &HashMap<(usize, usize), Matrix>,
    ) -> Result<Self> {
        let n = poset.len();
        if monoids.len() + 1 == n {
            monoids.insert(0, AffineSemigroup::new(vec![], 0)?);
        }
        if monoids.len() != n {
            return Err(Error::Malformed(format!("{} monoids for {} cells", monoids.len(), n)));
        }
        if poset.incidence_map().is_empty() && n > 1 {
            poset.derive_incidence()?;
        }
        let rank = |c: usize| (poset.dim(c) + 1) as usize;
        for (c, m) in monoids.iter().enumerate() {
            if m.ambient_dim() != rank(c) {
                return Err(Error::Malformed(format!(
                    "monoid of cell {} lives in Z^{} but the cell needs Z^{}",
                    poset.name(c),
                    m.ambient_dim(),
                    rank(c)
                )));
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&c| poset.dim(c));
        let mut emb: HashMap<(usize, usize), Matrix> = HashMap::new();
        for &c in &order {
            emb.insert((c, c), identity(rank(c)));
            let mut lower: Vec<usize> = poset.below(c).iter().copied().filter(|&t| t != c).collect();
            lower.sort_by_key(|&t| std::cmp::Reverse(poset.dim(t)));
            for t in lower {
                let m = if t == EMPTY_CELL {
                    vec![vec![]; rank(c)]
                } else if let Some(m) = cover_embeddings.get(&(c, t)) {
                    if m.len() != rank(c) || m.iter().any(|r| r.len() != rank(t)) {
                        return Err(Error::Malformed(format!(
                            "embedding {}|{} must be {}x{}",
                            poset.name(c),
                            poset.name(t),
                            rank(c),
                            rank(t)
                        )));
                    }
                    m.clone()
                } else if poset.facets_of(c).contains(&t) {
                    return Err(Error::Malformed(format!("missing embedding {}|{}", poset.name(c), poset.name(t))));
                } else {
                    let via = poset
                        .facets_of(c)
                        .into_iter()
                        .find(|&r| poset.leq(t, r))
                        .expect("a lower cell lies below some facet");
                    mat_mul(&emb[&(c, via)], &emb[&(via, t)], rank(t))
                };
                emb.insert((c, t), m);
            }
        }
        let mut mc = MonoidalComplex { poset, monoids, emb, faces: HashMap::new() };
        mc.faces = mc.image_faces();
        Ok(mc)
    }

    /// Assembles and validates.
    pub fn new(
        poset: CwPoset,
        monoids: Vec<AffineSemigroup>,
        cover_embeddings: &HashMap<(usize, usize), Matrix>,
    ) -> Result<Self> {
        let mc = Self::assemble(poset, monoids, cover_embeddings)?;
        mc.require_valid()?;
        Ok(mc)
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let rep = self.validate();
        if let Some(i) = rep.issues.first() {
            return Err(Error::Invalid(format!("{} at {}: {}", i.axiom, i.cells.join("|"), i.detail)));
        }
        Ok(())
    }

    fn image_faces(&self) -> HashMap<(usize, usize), usize> {
        let mut out = HashMap::new();
        for (&(s, t), m) in &self.emb {
            let fl = self.monoids[s].face_lattice();
            if t == EMPTY_CELL {
                out.insert((s, t), fl.bottom());
                continue;
            }
            let mut v = vec![0; self.rank(s)];
            for r in self.monoids[t].cone().rays() {
                for (x, y) in v.iter_mut().zip(mat_vec(m, r)) {
                    *x += y;
                }
            }
            if let Ok(f) = fl.carrier_face(&v) {
                out.insert((s, t), f);
            }
        }
        out
    }

    pub fn poset(&self) -> &CwPoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    /// `dim σ + 1`, the rank of `L_σ`.
    pub fn rank(&self, c: usize) -> usize {
        (self.poset.dim(c) + 1) as usize
    }

    /// Krull dimension `dim X + 1` of the toric face ring.
    pub fn dim(&self) -> usize {
        (self.poset.top_dim() + 1) as usize
    }

    pub fn monoid(&self, c: usize) -> &AffineSemigroup {
        &self.monoids[c]
    }

    pub fn monoids(&self) -> &[AffineSemigroup] {
        &self.monoids
    }

    pub fn embedding(&self, big: usize, small: usize) -> Option<&Matrix> {
        self.emb.get(&(big, small))
    }

    pub fn embed(&self, big: usize, small: usize, v: &[i64]) -> Option<Vec<i64>> {
        self.emb.get(&(big, small)).map(|m| mat_vec(m, v))
    }

    /// Face index of `C_big` that is the image of `C_small`.
    pub fn image_face(&self, big: usize, small: usize) -> Option<usize> {
        self.faces.get(&(big, small)).copied()
    }

    /// The cell `τ <= σ` whose cone maps onto face `f` of `C_σ`.
    pub fn cell_of_face(&self, s: usize, f: usize) -> Option<usize> {
        self.poset.below(s).iter().copied().find(|&t| self.image_face(s, t) == Some(f))
    }

    pub fn validate(&self) -> ValidationReport {
        let p = &self.poset;
        let mut issues = p.check();
        let issue = |cells: &[usize], axiom: &str, detail: String| Issue {
            cells: cells.iter().map(|&c| p.name(c).to_string()).collect(),
            axiom: axiom.to_string(),
            detail,
        };
        for c in 1..self.len() {
            if self.monoids[c].dim() != self.rank(c) {
                issues.push(issue(&[c], "cone", format!("cone has dimension {}", self.monoids[c].dim())));
            }
        }
        let mut pairs = 0;
        for s in 1..self.len() {
            let fl = self.monoids[s].face_lattice();
            let mut hit: HashMap<usize, usize> = HashMap::new();
            for &t in p.below(s) {
                pairs += 1;
                let (rs, rt) = (self.rank(s), self.rank(t));
                let m = &self.emb[&(s, t)];
                let cols = columns(m, rt);
                if t != EMPTY_CELL && t != s {
                    if rank_of(rs, &cols) != rt {
                        issues.push(issue(&[s, t], "injective", "embedding is not injective".into()));
                        continue;
                    }
                    let lat = lattice_from_vectors(&cols, rs).expect("shapes checked");
                    if !saturated_basis(rs, &cols).iter().all(|b| lat.contains(b).unwrap_or(false)) {
                        issues.push(issue(&[s, t], "lattice", "image of L_τ is not saturated in L_σ".into()));
                    }
                    for r in p.facets_of(s).into_iter().filter(|&r| r != t && p.leq(t, r)) {
                        if mat_mul(&self.emb[&(s, r)], &self.emb[&(r, t)], rt) != *m {
                            issues.push(issue(&[s, r, t], "functoriality", "composite embeddings differ".into()));
                        }
                    }
                }
                let Some(f) = self.image_face(s, t) else {
                    issues.push(issue(&[s, t], "face", "image cone is not a face".into()));
                    continue;
                };
                let face = fl.face(f);
                let image_rays: BTreeSet<Vec<i64>> =
                    self.monoids[t].cone().rays().iter().map(|r| primitive(&mat_vec(m, r))).collect();
                let face_rays: BTreeSet<Vec<i64>> = fl.face_rays(f).into_iter().collect();
                if face.dim != rt || image_rays != face_rays {
                    issues.push(issue(&[s, t], "face", "image cone is not a face".into()));
                    continue;
                }
                if let Some(prev) = hit.insert(f, t) {
                    issues.push(issue(&[s, prev, t], "face-bijection", "two cells map onto one face".into()));
                }
                if t == EMPTY_CELL || t == s {
                    continue;
                }
                let ms = &self.monoids[s];
                for g in self.monoids[t].generators() {
                    let im = mat_vec(m, g);
                    if !ms.contains(&im) {
                        issues.push(issue(&[s, t], "monoid", format!("image of generator {g:?} is not in M_σ")));
                    }
                }
                for g in ms.face_generators(f) {
                    match integer_coordinates(&cols, &g) {
                        Some(pre) if self.monoids[t].contains(&pre) => {}
                        _ => issues.push(issue(
                            &[s, t],
                            "monoid",
                            format!("{g:?} in M_σ on the face has no preimage in M_τ"),
                        )),
                    }
                }
            }
            if hit.len() != fl.len() {
                issues.push(issue(&[s], "face-bijection", format!("{} faces but {} cells below", fl.len(), hit.len())));
            }
        }
        ValidationReport { valid: issues.is_empty(), cells: self.len(), pairs_checked: pairs, issues }
    }

    fn with_monoids(&self, monoids: Vec<AffineSemigroup>) -> Result<MonoidalComplex> {
        let mut mc =
            MonoidalComplex { poset: self.poset.clone(), monoids, emb: self.emb.clone(), faces: HashMap::new() };
        mc.faces = mc.image_faces();
        mc.require_valid()?;
        Ok(mc)
    }

    /// Every `M_σ` replaced by its seminormalization `⁺M_σ`.
    pub fn seminormalize(&self, bound: u32) -> Result<MonoidalComplex> {
        let monoids = self
            .monoids
            .iter()
            .map(|m| {
                if m.ambient_dim() == 0 {
                    Ok(m.clone())
                } else {
                    AffineSemigroup::new(m.seminormalization(bound)?, m.ambient_dim())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        self.with_monoids(monoids)
    }

    /// Every `M_σ` replaced by `L_σ ∩ C_σ`, the lattice points of its cone.
    pub fn conewise_normalize(&self) -> Result<MonoidalComplex> {
        let monoids = self
            .monoids
            .iter()
            .map(|m| {
                let k = m.ambient_dim();
                if k == 0 {
                    return Ok(m.clone());
                }
                let z = lattice_from_vectors(&identity(k), k)?;
                AffineSemigroup::new(hilbert_basis(m.cone(), &z)?, k)
            })
            .collect::<Result<Vec<_>>>()?;
        self.with_monoids(monoids)
    }

    pub fn is_seminormal(&self, bound: u32) -> Result<bool> {
        for m in self.monoids.iter().filter(|m| m.ambient_dim() > 0) {
            if !m.is_seminormal(bound)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `M_σ = L_σ ∩ C_σ` for every cell.
    pub fn is_conewise_normal(&self) -> bool {
        self.monoids.iter().all(|m| {
            let k = m.ambient_dim();
            m.is_normal() && identity(k).iter().all(|e| m.group().contains(e).unwrap_or(false))
        })
    }

    /// Cells whose monoid differs from the other complex's.
    pub fn changed_cells(&self, other: &MonoidalComplex) -> Vec<usize> {
        (0..self.len())
            .filter(|&c| {
                let (a, b) = (&self.monoids[c], &other.monoids[c]);
                !(a.generators().iter().all(|g| b.contains(g)) && b.generators().iter().all(|g| a.contains(g)))
            })
            .collect()
    }
}
