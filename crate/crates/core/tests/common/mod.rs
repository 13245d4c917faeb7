#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use semitoric::graded;
use semitoric::toric::{self, MonoidalComplex};
use semitoric::{cohomology, AffineSemigroup, DegreeBox, FaceLattice, FieldSpec, VectorSpaceComplex};

/// Generators with nonnegative entries and positive last coordinate.
pub fn random_semigroup(rng: &mut ChaCha8Rng) -> AffineSemigroup {
    let d = rng.gen_range(1..=4);
    let k = rng.gen_range(d..=d + 2);
    let gens: Vec<Vec<i64>> = (0..k)
        .map(|_| (0..d).map(|j| if j == d - 1 { rng.gen_range(1..=3) } else { rng.gen_range(0..=3) }).collect())
        .collect();
    AffineSemigroup::new(gens, d).expect("pointed by construction")
}

/// All sums of `gens` inside `[0, hi]^d`.
pub fn closure(gens: &[Vec<i64>], d: usize, hi: i64) -> HashSet<Vec<i64>> {
    let mut seen = HashSet::from([vec![0; d]]);
    let mut stack = vec![vec![0; d]];
    while let Some(p) = stack.pop() {
        for g in gens {
            let q: Vec<i64> = p.iter().zip(g).map(|(a, b)| a + b).collect();
            if q.iter().all(|&x| x <= hi) && seen.insert(q.clone()) {
                stack.push(q);
            }
        }
    }
    seen
}

fn in_normalization(m: &AffineSemigroup, p: &[i64]) -> bool {
    m.cone().contains(p) && m.group().contains(p).unwrap_or(false)
}

pub fn two_step_sums_vanish(fl: &FaceLattice) -> Result<(), String> {
    for f in 0..fl.len() {
        for g in 0..fl.len() {
            if fl.face(f).dim != fl.face(g).dim + 2 || !fl.contains_face(f, g) {
                continue;
            }
            let s: i32 = fl
                .facets_of(f)
                .into_iter()
                .filter(|&h| fl.contains_face(h, g))
                .map(|h| fl.incidence(f, h).unwrap_or(0) as i32 * fl.incidence(h, g).unwrap_or(0) as i32)
                .sum();
            if s != 0 {
                return Err(format!("two-step sum {s} for faces {f} > {g}"));
            }
        }
    }
    Ok(())
}

pub fn affine_slices_square_to_zero(m: &AffineSemigroup) -> Result<(), String> {
    for a in DegreeBox::cube(m.ambient_dim(), -2, 2).points() {
        let slices: [(&str, VectorSpaceComplex); 3] = [
            ("I", graded::ishida_slice(m, &a)),
            ("+I", graded::plus_ishida_slice(m, &a)),
            ("C", graded::cech_slice(m, &a, 4).complex),
        ];
        for (name, c) in slices {
            if !c.squares_to_zero() {
                return Err(format!("{name} slice at {a:?} has nonzero square"));
            }
        }
    }
    Ok(())
}

pub fn hilbert_basis_oracle(m: &AffineSemigroup) -> Result<(), String> {
    let hb = m.normalization();
    let d = m.ambient_dim();
    let hi = hb.iter().flatten().copied().max().unwrap_or(0).clamp(3, 6);
    let ambient: Vec<Vec<i64>> = DegreeBox::cube(d, 0, hi).points();
    let normal: Vec<&Vec<i64>> = ambient.iter().filter(|p| in_normalization(m, p)).collect();
    for h in &hb {
        if !in_normalization(m, h) {
            return Err(format!("{h:?} is not in the normalization"));
        }
        let splits = normal.iter().any(|x| {
            let rest: Vec<i64> = h.iter().zip(x.iter()).map(|(a, b)| a - b).collect();
            x.iter().any(|&v| v != 0) && rest.iter().any(|&v| v != 0) && in_normalization(m, &rest)
        });
        if splits {
            return Err(format!("{h:?} is reducible"));
        }
    }
    let generated = closure(&hb, d, hi);
    for p in normal {
        if !generated.contains(p) {
            return Err(format!("{p:?} is not generated by the Hilbert basis"));
        }
    }
    Ok(())
}

pub fn membership_oracle(m: &AffineSemigroup) -> Result<(), String> {
    let d = m.ambient_dim();
    let hi = if d >= 4 { 4 } else { 6 };
    let reach = closure(m.generators(), d, hi);
    for p in DegreeBox::cube(d, 0, hi).points() {
        if m.contains(&p) != reach.contains(&p) {
            return Err(format!("contains disagrees with enumeration at {p:?}"));
        }
    }
    Ok(())
}

pub fn plus_sandwich(m: &AffineSemigroup) -> Result<(), String> {
    for p in DegreeBox::cube(m.ambient_dim(), -1, 4).points() {
        let (a, b, c) = (m.contains(&p), m.plus_membership(&p), in_normalization(m, &p));
        if (a && !b) || (b && !c) {
            return Err(format!("M ⊆ +M ⊆ M-bar fails at {p:?}: {a} {b} {c}"));
        }
    }
    Ok(())
}

fn nonzero(h: BTreeMap<i32, usize>) -> BTreeMap<i32, usize> {
    h.into_iter().filter(|&(_, d)| d > 0).collect()
}

pub fn single_cone_slices_agree(m: &AffineSemigroup) -> Result<(), String> {
    let mc = toric::from_affine(m).map_err(|e| e.to_string())?;
    let q = FieldSpec::Rationals;
    for a in DegreeBox::cube(m.ambient_dim(), 0, 2).points() {
        if !m.cone().contains(&a) {
            continue;
        }
        let t = toric::affine_degree(m, &mc, &a).map_err(|e| e.to_string())?;
        let neg: Vec<i64> = a.iter().map(|x| -x).collect();
        let pairs = [
            ("I", cohomology(&toric::ishida_slice(&mc, &t), q), cohomology(&graded::ishida_slice(m, &a), q)),
            ("+I", cohomology(&toric::plus_ishida_slice(&mc, &t), q), cohomology(&graded::plus_ishida_slice(m, &a), q)),
            (
                "C",
                cohomology(&toric::cech_slice(&mc, &t, false, 4).complex, q),
                cohomology(&graded::cech_slice(m, &a, 4).complex, q),
            ),
            (
                "-C",
                cohomology(&toric::cech_slice(&mc, &t, true, 4).complex, q),
                cohomology(&graded::cech_slice(m, &neg, 4).complex, q),
            ),
        ];
        for (name, x, y) in pairs {
            if nonzero(x.clone()) != nonzero(y.clone()) {
                return Err(format!("{name} at {a:?}: toric {x:?} vs affine {y:?}"));
            }
        }
    }
    Ok(())
}

/// Poset axioms and `∂∘∂ = 0` on small degrees of a monoidal complex.
pub fn complex_properties(mc: &MonoidalComplex) -> Result<(), String> {
    if let Some(i) = mc.poset().check().first() {
        return Err(format!("{}: {}", i.axiom, i.detail));
    }
    for a in toric::degrees_in_box(mc, &DegreeBox::cube(1, 0, 1)).map_err(|e| e.to_string())? {
        for c in [
            toric::ishida_slice(mc, &a),
            toric::plus_ishida_slice(mc, &a),
            toric::cech_slice(mc, &a, false, 4).complex,
            toric::cech_slice(mc, &a, true, 4).complex,
        ] {
            if !c.squares_to_zero() {
                return Err(format!("slice at {} has nonzero square", a.label(mc)));
            }
        }
    }
    Ok(())
}

pub fn cone_properties(m: &AffineSemigroup) -> Result<(), String> {
    two_step_sums_vanish(m.face_lattice())?;
    affine_slices_square_to_zero(m)?;
    hilbert_basis_oracle(m)?;
    membership_oracle(m)?;
    plus_sandwich(m)?;
    single_cone_slices_agree(m)
}
