use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{cohomology, FieldSpec, VectorSpaceComplex};
use crate::degree_box::DegreeBox;
use crate::error::Result;
use crate::graded::{assemble, localization_degree, CechSlice};
use crate::toric::degree::{degrees_in_box, ToricDegree};
use crate::toric::monoidal::MonoidalComplex;

fn ishida_type(mc: &MonoidalComplex, present: &[bool]) -> VectorSpaceComplex {
    let p = mc.poset();
    let dims: Vec<usize> = (0..mc.len()).map(|c| mc.rank(c)).collect();
    assemble(&dims, p.names(), present, mc.dim(), false, &|a, b| p.incidence(a, b))
}

/// Slice of `⁺I•` at `a ∈ |M̄M|`: cells `σ >= carrier(a)` with `a ∈ ZM_σ`.
pub fn plus_ishida_slice(mc: &MonoidalComplex, a: &ToricDegree) -> VectorSpaceComplex {
    let present: Vec<bool> = (0..mc.len())
        .map(|s| a.embed(mc, s).is_some_and(|v| mc.monoid(s).group().contains(&v).unwrap_or(false)))
        .collect();
    ishida_type(mc, &present)
}

/// Slice of `I•` at `a`: cells `σ >= carrier(a)` with `a ∈ M_σ`.
pub fn ishida_slice(mc: &MonoidalComplex, a: &ToricDegree) -> VectorSpaceComplex {
    let present: Vec<bool> = (0..mc.len()).map(|s| a.embed(mc, s).is_some_and(|v| mc.monoid(s).contains(&v))).collect();
    ishida_type(mc, &present)
}

/// Slice of `Č•` at `a` (or at `-a` when `negate`). A cell `σ` enters when
/// some maximal cell `τ >= σ, carrier(a)` has the degree in `M_τ − M_σ`.
pub fn cech_slice(mc: &MonoidalComplex, a: &ToricDegree, negate: bool, bound: u32) -> CechSlice {
    let p = mc.poset();
    let tops: Vec<usize> = p.maximal_cells().into_iter().filter(|&t| p.leq(a.cell, t)).collect();
    let mut unresolved = Vec::new();
    let present: Vec<bool> = (0..mc.len())
        .map(|s| {
            let mut open = false;
            for &t in tops.iter().filter(|&&t| p.leq(s, t)) {
                let mut v = a.embed(mc, t).expect("carrier lies below");
                if negate {
                    v.iter_mut().for_each(|x| *x = -*x);
                }
                let f = mc.image_face(t, s).expect("valid complex");
                match localization_degree(mc.monoid(t), &v, f, bound) {
                    Some(true) => return true,
                    Some(false) => {}
                    None => open = true,
                }
            }
            if open {
                unresolved.push(s);
            }
            false
        })
        .collect();
    let dims: Vec<usize> = (0..mc.len()).map(|c| mc.rank(c)).collect();
    let complex = assemble(&dims, p.names(), &present, mc.dim(), true, &|x, y| p.incidence(x, y));
    CechSlice { complex, unresolved }
}

/// `H^i` of the degree-zero Čech slice, which computes `H̃^{i-1}(X; k)`.
pub fn degree_zero_cohomology(mc: &MonoidalComplex, field: FieldSpec) -> BTreeMap<i32, usize> {
    cohomology(&cech_slice(mc, &ToricDegree::zero(), false, 1).complex, field)
}

/// Degree with a sign: `negative` stands for the formal negative `-a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignedDegree {
    pub cell: String,
    pub vector: Vec<i64>,
    pub negative: bool,
}

impl SignedDegree {
    pub fn new(mc: &MonoidalComplex, a: &ToricDegree, negative: bool) -> Self {
        SignedDegree { cell: mc.poset().name(a.cell).to_string(), vector: a.v.clone(), negative }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToricWitness {
    pub degree: SignedDegree,
    pub index: i32,
    pub dimension: usize,
}

/// Local cohomology `H^i_m` at `±a` for all box degrees, with undecided degrees.
pub fn local_cohomology_scan(
    mc: &MonoidalComplex,
    bx: &DegreeBox,
    field: FieldSpec,
    bound: u32,
    signs: &[bool],
) -> Result<(Vec<ToricWitness>, Vec<SignedDegree>)> {
    let degrees = degrees_in_box(mc, bx)?;
    // zero is its own negative
    let jobs: Vec<(&ToricDegree, bool)> = degrees
        .iter()
        .flat_map(|a| signs.iter().map(move |&s| (a, s)))
        .filter(|(a, neg)| !(a.is_zero() && *neg && signs.contains(&false)))
        .collect();
    let results: Vec<(BTreeMap<i32, usize>, bool)> = jobs
        .par_iter()
        .map(|(a, neg)| {
            let s = cech_slice(mc, a, *neg, bound);
            (cohomology(&s.complex, field), !s.unresolved.is_empty())
        })
        .collect();
    let mut out = Vec::new();
    let mut open = Vec::new();
    for ((a, neg), (h, unresolved)) in jobs.iter().zip(results) {
        if unresolved {
            open.push(SignedDegree::new(mc, a, *neg));
        }
        for (i, dim) in h {
            out.push(ToricWitness { degree: SignedDegree::new(mc, a, *neg), index: i, dimension: dim });
        }
    }
    Ok((out, open))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToricMismatch {
    pub degree: SignedDegree,
    pub index: usize,
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToricDualityReport {
    pub checked: usize,
    /// `left` is `dim H^{-i}(⁺I•)_a`, `right` is `dim H^i_m(R)_{-a}`
    pub mismatches: Vec<ToricMismatch>,
    pub unresolved: Vec<SignedDegree>,
}

impl ToricDualityReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.unresolved.is_empty()
    }
}

/// Compares `H^{-i}(⁺I•)_a` with `H^i_m(R)_{-a}` for `a ∈ |M̄M|` in the box.
pub fn duality_check(mc: &MonoidalComplex, bx: &DegreeBox, field: FieldSpec, bound: u32) -> Result<ToricDualityReport> {
    let degrees = degrees_in_box(mc, bx)?;
    let rows: Vec<(Vec<ToricMismatch>, bool)> = degrees
        .par_iter()
        .map(|a| {
            let plus = cohomology(&plus_ishida_slice(mc, a), field);
            let s = cech_slice(mc, a, true, bound);
            let local = cohomology(&s.complex, field);
            let mism = (0..=mc.dim())
                .filter_map(|i| {
                    let l = plus.get(&-(i as i32)).copied().unwrap_or(0);
                    let r = local.get(&(i as i32)).copied().unwrap_or(0);
                    (l != r).then(|| ToricMismatch {
                        degree: SignedDegree::new(mc, a, false),
                        index: i,
                        left: l,
                        right: r,
                    })
                })
                .collect();
            (mism, !s.unresolved.is_empty())
        })
        .collect();
    let mut mismatches = Vec::new();
    let mut unresolved = Vec::new();
    for (a, (m, open)) in degrees.iter().zip(rows) {
        mismatches.extend(m);
        if open {
            unresolved.push(SignedDegree::new(mc, a, true));
        }
    }
    Ok(ToricDualityReport { checked: degrees.len(), mismatches, unresolved })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCohomologyComparison {
    pub seminormal: bool,
    /// degrees `-a` where `H^i_m(⁺R)` and `H^i_m(R)` differ; `left` is `⁺R`
    pub mismatches: Vec<ToricMismatch>,
    /// nonzero `H^i_m(R)_a` at `a ∈ |M̄M| \ {0}`, outside `-|M̄M|`
    pub off_support: Vec<ToricWitness>,
    /// the same for `⁺R`, which is seminormal
    pub plus_off_support: Vec<ToricWitness>,
    pub unresolved: Vec<SignedDegree>,
}

impl LocalCohomologyComparison {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
            && self.plus_off_support.is_empty()
            && (!self.seminormal || self.off_support.is_empty())
            && self.unresolved.is_empty()
    }
}

pub fn local_cohomology_comparison(
    mc: &MonoidalComplex,
    bx: &DegreeBox,
    field: FieldSpec,
    bound: u32,
) -> Result<LocalCohomologyComparison> {
    let plus = mc.seminormalize(bound)?;
    let seminormal = plus.changed_cells(mc).is_empty();
    let (r_neg, mut unresolved) = local_cohomology_scan(mc, bx, field, bound, &[true])?;
    let (p_neg, open) = local_cohomology_scan(&plus, bx, field, bound, &[true])?;
    unresolved.extend(open);
    let key = |w: &ToricWitness| (w.degree.cell.clone(), w.degree.vector.clone(), w.index);
    let r_map: BTreeMap<_, usize> = r_neg.iter().map(|w| (key(w), w.dimension)).collect();
    let p_map: BTreeMap<_, usize> = p_neg.iter().map(|w| (key(w), w.dimension)).collect();
    let mut mismatches = Vec::new();
    for k in r_map.keys().chain(p_map.keys()).collect::<std::collections::BTreeSet<_>>() {
        let (l, r) = (p_map.get(k).copied().unwrap_or(0), r_map.get(k).copied().unwrap_or(0));
        if l != r {
            let degree = SignedDegree { cell: k.0.clone(), vector: k.1.clone(), negative: true };
            mismatches.push(ToricMismatch { degree, index: k.2 as usize, left: l, right: r });
        }
    }
    let positive = |m: &MonoidalComplex| -> Result<(Vec<ToricWitness>, Vec<SignedDegree>)> {
        let (w, open) = local_cohomology_scan(m, bx, field, bound, &[false])?;
        Ok((w.into_iter().filter(|w| w.degree.cell != m.poset().name(0)).collect(), open))
    };
    let (off_support, open) = positive(mc)?;
    unresolved.extend(open);
    let (plus_off_support, open) = positive(&plus)?;
    unresolved.extend(open);
    Ok(LocalCohomologyComparison { seminormal, mismatches, off_support, plus_off_support, unresolved })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingCmEvidence {
    pub ring: String,
    pub witnesses: Vec<ToricWitness>,
    pub unresolved: Vec<SignedDegree>,
}

impl RingCmEvidence {
    pub fn indices(&self) -> std::collections::BTreeSet<i32> {
        self.witnesses.iter().map(|w| w.index).collect()
    }
}

/// Nonvanishing `H^i_m` below the top index for `R`, `⁺R` and `R̄`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CmChainReport {
    pub dim: usize,
    pub rings: Vec<RingCmEvidence>,
    pub violations: Vec<String>,
}

impl CmChainReport {
    pub fn consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn cm_evidence(
    mc: &MonoidalComplex,
    name: &str,
    bx: &DegreeBox,
    field: FieldSpec,
    bound: u32,
) -> Result<RingCmEvidence> {
    let d = mc.dim() as i32;
    let (w, unresolved) = local_cohomology_scan(mc, bx, field, bound, &[false, true])?;
    Ok(RingCmEvidence {
        ring: name.to_string(),
        witnesses: w.into_iter().filter(|w| w.index < d).collect(),
        unresolved,
    })
}

/// Each index with a witness for `R̄` must have one for `⁺R`, and each for
/// `⁺R` one for `R`.
pub fn cm_chain_report(mc: &MonoidalComplex, bx: &DegreeBox, field: FieldSpec, bound: u32) -> Result<CmChainReport> {
    let plus = mc.seminormalize(bound)?;
    let bar = mc.conewise_normalize()?;
    let rings = vec![
        cm_evidence(mc, "R", bx, field, bound)?,
        cm_evidence(&plus, "+R", bx, field, bound)?,
        cm_evidence(&bar, "R-bar", bx, field, bound)?,
    ];
    let mut violations = Vec::new();
    for (hi, lo) in [(1, 0), (2, 1), (2, 0)] {
        for i in rings[hi].indices().difference(&rings[lo].indices()) {
            violations
                .push(format!("{} has a witness at i={i} but {} has none in the box", rings[hi].ring, rings[lo].ring));
        }
    }
    Ok(CmChainReport { dim: mc.dim(), rings, violations })
}
