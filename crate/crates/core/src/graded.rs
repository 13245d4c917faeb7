//! Degree-wise slices of the complexes `I•`, `⁺I•` and `Č•` of `k[M]`,
//! and the checks built on their cohomology.
//!
//! Every slice has at most one basis vector per face, so a slice is the
//! subcomplex of the augmented face complex spanned by the faces that
//! qualify at the given degree, with incidence signs as differentials.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{cohomology, CohomologyTable, FieldSpec, VectorSpaceComplex};
use crate::degree_box::DegreeBox;
use crate::error::{Error, Result};
use crate::linalg::{dot, IntMatrix};
use crate::semigroup::AffineSemigroup;

/// Search nodes allowed per unit of the Čech bound.
pub const NODES_PER_BOUND: u64 = 4096;

/// Builds the complex on the present cells. With `ascending`, position `i`
/// holds the cells of dimension `i` and the differential into a cell `G`
/// from its facet `F` is `inc(G, F)`; otherwise position `-i` holds the
/// cells of dimension `i` and the differential from `F` to its facet `G`
/// is `inc(F, G)`. `inc` returns `None` off covering pairs.
pub(crate) fn assemble(
    dims: &[usize],
    labels: &[String],
    present: &[bool],
    top: usize,
    ascending: bool,
    inc: &dyn Fn(usize, usize) -> Option<i8>,
) -> VectorSpaceComplex {
    let by_dim: Vec<Vec<usize>> =
        (0..=top).map(|k| (0..dims.len()).filter(|&c| present[c] && dims[c] == k).collect()).collect();
    let order: Vec<usize> = if ascending { (0..=top).collect() } else { (0..=top).rev().collect() };
    let names = order.iter().map(|&k| by_dim[k].iter().map(|&c| labels[c].clone()).collect()).collect();
    let maps = order
        .windows(2)
        .map(|w| {
            let (src, tgt) = (&by_dim[w[0]], &by_dim[w[1]]);
            let rows: Vec<Vec<i64>> = tgt
                .iter()
                .map(|&t| {
                    src.iter()
                        .map(|&s| {
                            let e = if ascending { inc(t, s) } else { inc(s, t) };
                            e.map_or(0, i64::from)
                        })
                        .collect()
                })
                .collect();
            IntMatrix::from_rows(src.len(), &rows)
        })
        .collect();
    let lo = if ascending { 0 } else { -(top as i32) };
    VectorSpaceComplex::new(lo, names, maps)
}

fn face_labels(m: &AffineSemigroup) -> Vec<String> {
    m.face_lattice()
        .faces()
        .iter()
        .map(|f| format!("<{}>", f.rays.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect()
}

fn ishida_type(m: &AffineSemigroup, present: &[bool]) -> VectorSpaceComplex {
    let fl = m.face_lattice();
    let dims: Vec<usize> = fl.faces().iter().map(|f| f.dim).collect();
    assemble(&dims, &face_labels(m), present, m.dim(), false, &|a, b| fl.incidence(a, b))
}

/// Slice of `I•` at degree `a`: faces `F` with `a ∈ M_F`.
pub fn ishida_slice(m: &AffineSemigroup, a: &[i64]) -> VectorSpaceComplex {
    let fl = m.face_lattice();
    let in_m = a.len() == m.ambient_dim() && m.contains(a);
    let present: Vec<bool> = (0..fl.len()).map(|f| in_m && fl.on_face(f, a)).collect();
    ishida_type(m, &present)
}

/// Slice of `⁺I•` at degree `a`: faces `F` with `a ∈ F ∩ ZM_F`.
pub fn plus_ishida_slice(m: &AffineSemigroup, a: &[i64]) -> VectorSpaceComplex {
    let fl = m.face_lattice();
    let ok = a.len() == m.ambient_dim() && m.cone().contains(a);
    let present: Vec<bool> =
        (0..fl.len()).map(|f| ok && fl.on_face(f, a) && m.face_group(f).contains(a).unwrap_or(false)).collect();
    ishida_type(m, &present)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechSlice {
    pub complex: VectorSpaceComplex,
    /// faces whose membership search ran out of budget; they are left out
    pub unresolved: Vec<usize>,
}

/// Whether `b ∈ M − M_F`, `None` if undecided within the bound.
pub fn localization_degree(m: &AffineSemigroup, b: &[i64], f: usize, bound: u32) -> Option<bool> {
    if m.is_normal() {
        let cone = m.cone();
        let normals = cone.facet_normals();
        let ok = cone.in_span(b)
            && m.group().contains(b).unwrap_or(false)
            && m.face_lattice().face(f).support.iter().all(|&n| dot(&normals[n], b) >= 0);
        return Some(ok);
    }
    m.in_localization(b, f, (bound as u64).max(1) * NODES_PER_BOUND)
}

/// Slice of `Č•` at degree `b`: faces `F` with `b ∈ M − M_F`.
pub fn cech_slice(m: &AffineSemigroup, b: &[i64], bound: u32) -> CechSlice {
    let fl = m.face_lattice();
    let mut unresolved = Vec::new();
    let present: Vec<bool> = (0..fl.len())
        .map(|f| {
            if b.len() != m.ambient_dim() {
                return false;
            }
            localization_degree(m, b, f, bound).unwrap_or_else(|| {
                unresolved.push(f);
                false
            })
        })
        .collect();
    let dims: Vec<usize> = fl.faces().iter().map(|f| f.dim).collect();
    let complex = assemble(&dims, &face_labels(m), &present, m.dim(), true, &|a, b| fl.incidence(a, b));
    CechSlice { complex, unresolved }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SliceKind {
    Ishida,
    PlusIshida,
    Cech,
}

impl fmt::Display for SliceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SliceKind::Ishida => "ISHIDA",
            SliceKind::PlusIshida => "PLUS_ISHIDA",
            SliceKind::Cech => "CECH",
        })
    }
}

impl FromStr for SliceKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('-', "_").as_str() {
            "ISHIDA" | "I" => Ok(SliceKind::Ishida),
            "PLUS_ISHIDA" | "PLUS" | "+I" => Ok(SliceKind::PlusIshida),
            "CECH" => Ok(SliceKind::Cech),
            _ => Err(Error::Malformed(format!("unknown complex {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanEntry {
    pub degree: Vec<i64>,
    pub index: i32,
    pub dimension: usize,
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub kind: SliceKind,
    pub field: String,
    #[serde(rename = "box")]
    pub bx: DegreeBox,
    pub entries: Vec<ScanEntry>,
    /// degrees with at least one undecided face
    pub unresolved: Vec<Vec<i64>>,
}

impl ScanReport {
    pub fn table(&self) -> CohomologyTable<Vec<i64>> {
        let mut t: CohomologyTable<Vec<i64>> = BTreeMap::new();
        for e in &self.entries {
            t.entry(e.degree.clone()).or_default().insert(e.index, e.dimension);
        }
        t
    }

    pub fn get(&self, degree: &[i64], index: i32) -> usize {
        self.entries.iter().find(|e| e.degree == degree && e.index == index).map_or(0, |e| e.dimension)
    }

    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }
}

impl fmt::Display for ScanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} cohomology over {} on box {}", self.kind, self.field, self.bx)?;
        writeln!(f, "{:<20} {:>6} {:>9}  flags", "degree", "index", "dimension")?;
        for e in &self.entries {
            writeln!(f, "{:<20} {:>6} {:>9}  {}", format!("{:?}", e.degree), e.index, e.dimension, e.flags.join(","))?;
        }
        if self.entries.is_empty() {
            writeln!(f, "(no nonzero cohomology)")?;
        }
        Ok(())
    }
}

/// Cohomology of one slice, with the undecided flag for Čech slices.
pub fn slice_cohomology(
    m: &AffineSemigroup,
    kind: SliceKind,
    a: &[i64],
    field: FieldSpec,
    bound: u32,
) -> (BTreeMap<i32, usize>, bool) {
    match kind {
        SliceKind::Ishida => (cohomology(&ishida_slice(m, a), field), false),
        SliceKind::PlusIshida => (cohomology(&plus_ishida_slice(m, a), field), false),
        SliceKind::Cech => {
            let s = cech_slice(m, a, bound);
            (cohomology(&s.complex, field), !s.unresolved.is_empty())
        }
    }
}

pub fn scan(m: &AffineSemigroup, kind: SliceKind, bx: &DegreeBox, field: FieldSpec, bound: u32) -> Result<ScanReport> {
    let bx = bx.fit(m.ambient_dim())?;
    let points = bx.points();
    let results: Vec<(BTreeMap<i32, usize>, bool)> =
        points.par_iter().map(|a| slice_cohomology(m, kind, a, field, bound)).collect();
    let mut entries = Vec::new();
    let mut unresolved = Vec::new();
    for (a, (h, open)) in points.iter().zip(results) {
        let flags = if open { vec!["unresolved".to_string()] } else { vec![] };
        if open {
            unresolved.push(a.clone());
        }
        for (i, dim) in h {
            entries.push(ScanEntry { degree: a.clone(), index: i, dimension: dim, flags: flags.clone() });
        }
    }
    Ok(ScanReport { kind, field: field.to_string(), bx, entries, unresolved })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub index: i32,
    pub degree: Vec<i64>,
    pub dimension: usize,
}

/// Degrees `a` with `H^i_m(R)_a ≠ 0` and `-a ∉ C(M)`; any such degree
/// shows that `R` is not seminormal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeminormalityProbe {
    pub witnesses: Vec<Witness>,
    pub unresolved: Vec<Vec<i64>>,
}

impl SeminormalityProbe {
    pub fn consistent_with_seminormal(&self) -> bool {
        self.witnesses.is_empty()
    }
}

pub fn seminormality_criterion_probe(
    m: &AffineSemigroup,
    bx: &DegreeBox,
    field: FieldSpec,
    bound: u32,
) -> Result<SeminormalityProbe> {
    let rep = scan(m, SliceKind::Cech, bx, field, bound)?;
    let witnesses = rep
        .entries
        .iter()
        .filter(|e| {
            let neg: Vec<i64> = e.degree.iter().map(|x| -x).collect();
            !m.cone().contains(&neg)
        })
        .map(|e| Witness { index: e.index, degree: e.degree.clone(), dimension: e.dimension })
        .collect();
    Ok(SeminormalityProbe { witnesses, unresolved: rep.unresolved })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub degree: Vec<i64>,
    pub index: usize,
    /// `dim H^{-i}` of the `⁺I•` slice at `a`
    pub plus_ishida: usize,
    /// `dim H^i_m(R)` at `-a`
    pub local: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
    pub unresolved: Vec<Vec<i64>>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.unresolved.is_empty()
    }
}

/// Compares `H^{-i}(⁺I•)_a` with `H^i_m(R)_{-a}` on every degree of the box.
pub fn duality_check(m: &AffineSemigroup, bx: &DegreeBox, field: FieldSpec, bound: u32) -> Result<DualityReport> {
    let bx = bx.fit(m.ambient_dim())?;
    let points = bx.points();
    let rows: Vec<(Vec<Mismatch>, bool)> = points
        .par_iter()
        .map(|a| {
            let neg: Vec<i64> = a.iter().map(|x| -x).collect();
            let plus = cohomology(&plus_ishida_slice(m, a), field);
            let (local, open) = slice_cohomology(m, SliceKind::Cech, &neg, field, bound);
            let mism = (0..=m.dim())
                .filter_map(|i| {
                    let p = plus.get(&-(i as i32)).copied().unwrap_or(0);
                    let l = local.get(&(i as i32)).copied().unwrap_or(0);
                    (p != l).then(|| Mismatch { degree: a.clone(), index: i, plus_ishida: p, local: l })
                })
                .collect();
            (mism, open)
        })
        .collect();
    let mut mismatches = Vec::new();
    let mut unresolved = Vec::new();
    for (a, (mism, open)) in points.iter().zip(rows) {
        mismatches.extend(mism);
        if open {
            unresolved.push(a.clone());
        }
    }
    Ok(DualityReport { checked: points.len(), mismatches, unresolved })
}

/// Nonvanishing `H^i_m(R)_a` below the top index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmProbe {
    pub dim: usize,
    pub witnesses: Vec<Witness>,
    pub unresolved: Vec<Vec<i64>>,
}

impl CmProbe {
    pub fn consistent_with_cm(&self) -> bool {
        self.witnesses.is_empty()
    }
}

pub fn cm_probe(m: &AffineSemigroup, bx: &DegreeBox, field: FieldSpec, bound: u32) -> Result<CmProbe> {
    let rep = scan(m, SliceKind::Cech, bx, field, bound)?;
    let d = m.dim() as i32;
    let witnesses = rep
        .entries
        .iter()
        .filter(|e| e.index < d)
        .map(|e| Witness { index: e.index, degree: e.degree.clone(), dimension: e.dimension })
        .collect();
    Ok(CmProbe { dim: m.dim(), witnesses, unresolved: rep.unresolved })
}

/// Degrees of `H^{-d}(I•)` against `M ∩ relint C(M)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalComparison {
    pub normal: bool,
    pub cm_on_box: bool,
    pub top_cohomology: Vec<Vec<i64>>,
    pub interior: Vec<Vec<i64>>,
    pub sets_equal: bool,
    /// normal forces equal sets and no CM witness; otherwise nothing is forced on a box
    pub consistent: bool,
    pub note: String,
}

pub fn canonical_compare(
    m: &AffineSemigroup,
    bx: &DegreeBox,
    field: FieldSpec,
    bound: u32,
) -> Result<CanonicalComparison> {
    let bx = bx.fit(m.ambient_dim())?;
    let d = m.dim() as i32;
    let points = bx.points();
    let flags: Vec<bool> =
        points.par_iter().map(|a| cohomology(&ishida_slice(m, a), field).contains_key(&-d)).collect();
    let top_cohomology: Vec<Vec<i64>> = points.iter().zip(flags).filter(|(_, f)| *f).map(|(a, _)| a.clone()).collect();
    let interior = m.interior_degrees(&bx);
    let normal = m.is_normal();
    let cm = cm_probe(m, &bx, field, bound)?;
    let cm_on_box = cm.consistent_with_cm() && cm.unresolved.is_empty();
    let sets_equal = top_cohomology == interior;
    let consistent = !normal || (sets_equal && cm_on_box);
    let note = if normal {
        "normal: canonical module is the interior ideal".to_string()
    } else if sets_equal && cm_on_box {
        "not normal: box data agree with the interior ideal, so the two differ outside the box or only up to a non-graded isomorphism".to_string()
    } else {
        "not normal".to_string()
    };
    Ok(CanonicalComparison { normal, cm_on_box, top_cohomology, interior, sets_equal, consistent, note })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane() -> AffineSemigroup {
        AffineSemigroup::new(vec![vec![1, 0], vec![0, 1]], 2).unwrap()
    }

    fn numerical() -> AffineSemigroup {
        AffineSemigroup::new(vec![vec![2], vec![3]], 1).unwrap()
    }

    fn x2_y_xy() -> AffineSemigroup {
        AffineSemigroup::new(vec![vec![2, 0], vec![0, 1], vec![1, 1]], 2).unwrap()
    }

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn ishida_slices_of_the_plane() {
        let s = ishida_slice(&plane(), &[1, 1]);
        assert_eq!((s.lo(), s.dims()), (-2, vec![1, 0, 0]));
        let s = ishida_slice(&plane(), &[1, 0]);
        assert_eq!(s.dims(), vec![1, 1, 0]);
        assert!(!cohomology(&s, Q).contains_key(&-2));
        let s = ishida_slice(&plane(), &[0, 0]);
        assert_eq!(s.dims(), vec![1, 2, 1]);
        assert!(s.squares_to_zero());
        assert!(cohomology(&s, Q).is_empty());
    }

    #[test]
    fn plus_ishida_slices() {
        let s = plus_ishida_slice(&x2_y_xy(), &[1, 0]);
        assert_eq!(s.dims(), vec![1, 0, 0]);
        let s = plus_ishida_slice(&plane(), &[2, 0]);
        assert_eq!(s.dims(), vec![1, 1, 0]);
        assert!(cohomology(&s, Q).is_empty());
        assert!(cohomology(&plus_ishida_slice(&x2_y_xy(), &[0, 0]), Q).is_empty());
    }

    #[test]
    fn cech_slices() {
        let s = cech_slice(&plane(), &[-1, -1], 4);
        assert_eq!(s.complex.dims(), vec![0, 0, 1]);
        assert_eq!(cohomology(&s.complex, Q).into_iter().collect::<Vec<_>>(), vec![(2, 1)]);
        let s = cech_slice(&plane(), &[0, 0], 4);
        assert_eq!(s.complex.dims(), vec![1, 2, 1]);
        assert!(cohomology(&s.complex, Q).is_empty());
        let s = cech_slice(&numerical(), &[1], 4);
        assert_eq!(s.complex.dims(), vec![0, 1]);
        assert_eq!(cohomology(&s.complex, Q).get(&1), Some(&1));
        assert!(s.unresolved.is_empty());
    }

    #[test]
    fn scans() {
        let bx = DegreeBox::cube(2, -2, 2);
        let rep = scan(&plane(), SliceKind::Cech, &bx, Q, 4).unwrap();
        assert!(rep.entries.iter().all(|e| e.index == 2 && e.degree.iter().all(|x| *x <= -1)));
        assert_eq!(rep.entries.len(), 4);
        let rep = scan(&numerical(), SliceKind::Cech, &DegreeBox::cube(1, -3, 3), Q, 4).unwrap();
        let degs: Vec<i64> = rep.entries.iter().map(|e| e.degree[0]).collect();
        assert_eq!(degs, vec![-3, -2, -1, 1]);
        assert!(rep.entries.iter().all(|e| e.index == 1));
        let rep = scan(&plane(), SliceKind::PlusIshida, &DegreeBox::cube(2, 0, 2), Q, 4).unwrap();
        let degs: Vec<Vec<i64>> = rep.entries.iter().map(|e| e.degree.clone()).collect();
        assert_eq!(degs, vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 2]]);
        assert!(rep.entries.iter().all(|e| e.index == -2));
    }

    #[test]
    fn seminormality_probes() {
        let p = seminormality_criterion_probe(&numerical(), &DegreeBox::cube(1, -3, 3), Q, 4).unwrap();
        assert_eq!(p.witnesses, vec![Witness { index: 1, degree: vec![1], dimension: 1 }]);
        let bx = DegreeBox::cube(2, -3, 3);
        assert!(seminormality_criterion_probe(&x2_y_xy(), &bx, Q, 4).unwrap().consistent_with_seminormal());
        assert!(seminormality_criterion_probe(&plane(), &bx, Q, 4).unwrap().consistent_with_seminormal());
    }

    #[test]
    fn duality() {
        let bx = DegreeBox::cube(2, 0, 3);
        assert!(duality_check(&plane(), &bx, Q, 4).unwrap().passed());
        assert!(duality_check(&x2_y_xy(), &DegreeBox::cube(2, -3, 3), Q, 4).unwrap().passed());
        let rep = duality_check(&numerical(), &DegreeBox::cube(1, -3, 3), Q, 4).unwrap();
        assert_eq!(rep.mismatches, vec![Mismatch { degree: vec![-1], index: 1, plus_ishida: 0, local: 1 }]);
    }

    #[test]
    fn cm_and_canonical() {
        assert!(cm_probe(&plane(), &DegreeBox::cube(2, -2, 2), Q, 4).unwrap().consistent_with_cm());
        assert!(cm_probe(&numerical(), &DegreeBox::cube(1, -4, 4), Q, 4).unwrap().consistent_with_cm());
        let bx = DegreeBox::cube(2, 0, 3);
        let c = canonical_compare(&plane(), &bx, Q, 4).unwrap();
        assert!(c.sets_equal && c.consistent);
        let m = AffineSemigroup::new(vec![vec![1, 0], vec![1, 2]], 2).unwrap();
        let c = canonical_compare(&m, &bx, Q, 4).unwrap();
        assert!(c.normal && c.sets_equal && c.consistent);
        let c = canonical_compare(&numerical(), &DegreeBox::cube(1, -3, 3), Q, 4).unwrap();
        assert!(!c.normal && c.consistent);
    }

    #[test]
    fn normal_slices_agree() {
        let m = AffineSemigroup::new(vec![vec![1, 0], vec![1, 2], vec![1, 1]], 2).unwrap();
        for a in DegreeBox::cube(2, -1, 3).points() {
            assert_eq!(ishida_slice(&m, &a), plus_ishida_slice(&m, &a));
        }
    }
}
