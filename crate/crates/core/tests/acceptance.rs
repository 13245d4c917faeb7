#![allow(clippy::absurd_extreme_comparisons)]

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semitoric::datasets;
use semitoric::graded::{self, SliceKind};
use semitoric::io::Structure;
use semitoric::toric::{self, MonoidalComplex};
use semitoric::{AffineSemigroup, DegreeBox, FieldSpec};

// Every comparison is between exact integers: tolerance zero.
const TOLERANCE: usize = 0;
const BOUND: u32 = 8;
const SEED: u64 = 0x5e41;
const RANDOM_CONES: usize = 100;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn affine(name: &str) -> AffineSemigroup {
    match datasets::load(name).unwrap() {
        Structure::Affine(m) => m,
        Structure::Complex(_) => panic!("{name} is a complex"),
    }
}

fn complex(name: &str) -> MonoidalComplex {
    match datasets::load(name).unwrap() {
        Structure::Complex(mc) => mc,
        Structure::Affine(m) => toric::from_affine(&m).unwrap(),
    }
}

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn sorted(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    v.sort();
    v
}

fn x2_y_xy_flags() -> Outcome {
    let m = affine("paper_example_x2_y_xy");
    let seminormal = m.is_seminormal(BOUND).map_err(|e| e.to_string())?;
    check(seminormal, "not seminormal")?;
    check(!m.is_normal(), "reported normal")?;
    let n = sorted(m.normalization());
    check(n == vec![vec![0, 1], vec![1, 0]], format!("normalization {n:?}"))?;
    Ok("seminormal, not normal, normalization {(1,0),(0,1)}".into())
}

fn non_seminormal_witness() -> Outcome {
    let m = affine("numerical_2_3");
    let plus = m.seminormalization(BOUND).map_err(|e| e.to_string())?;
    check(plus == vec![vec![1]], format!("seminormalization {plus:?}"))?;
    let p = graded::seminormality_criterion_probe(&m, &DegreeBox::cube(1, -3, 3), FieldSpec::Rationals, BOUND)
        .map_err(|e| e.to_string())?;
    check(p.unresolved.is_empty(), "unresolved degrees")?;
    let w: Vec<(i32, Vec<i64>)> = p.witnesses.iter().map(|w| (w.index, w.degree.clone())).collect();
    check(w == vec![(1, vec![1])], format!("witnesses {w:?}"))?;
    check(!m.cone().contains(&[-1]), "-a lies in C(M)")?;
    Ok("+M = <1>; only witness i=1, a=1".into())
}

fn duality() -> Outcome {
    let q = FieldSpec::Rationals;
    let mut parts = Vec::new();
    for name in ["normal_n2", "cone_10_12", "paper_example_x2_y_xy"] {
        let m = affine(name);
        let bx = DegreeBox::cube(m.ambient_dim(), -3, 3);
        let r = graded::duality_check(&m, &bx, q, BOUND).map_err(|e| e.to_string())?;
        check(r.unresolved.is_empty(), format!("{name}: unresolved"))?;
        check(r.mismatches.len() <= TOLERANCE, format!("{name}: {:?}", r.mismatches))?;
        parts.push(format!("{name} 0/{}", r.checked));
    }
    let mc = complex("moebius");
    let r = toric::duality_check(&mc, &DegreeBox::cube(1, -3, 3), q, BOUND).map_err(|e| e.to_string())?;
    check(r.unresolved.is_empty(), "moebius: unresolved")?;
    check(r.mismatches.len() <= TOLERANCE, format!("moebius: {:?}", r.mismatches))?;
    parts.push(format!("moebius 0/{}", r.checked));
    let m = affine("numerical_2_3");
    let r = graded::duality_check(&m, &DegreeBox::cube(1, -3, 3), q, BOUND).map_err(|e| e.to_string())?;
    check(!r.mismatches.is_empty(), "<2,3> shows no mismatch")?;
    let at: Vec<Vec<i64>> = r.mismatches.iter().map(|x| x.degree.clone()).collect();
    parts.push(format!("numerical_2_3 mismatches at {at:?}"));
    Ok(parts.join("; "))
}

fn canonical_shape() -> Outcome {
    let mut parts = Vec::new();
    for name in ["normal_n2", "cone_10_12"] {
        let m = affine(name);
        let bx = DegreeBox::cube(2, 0, 4);
        let c = graded::canonical_compare(&m, &bx, FieldSpec::Rationals, BOUND).map_err(|e| e.to_string())?;
        check(c.sets_equal, format!("{name}: top {:?} vs interior {:?}", c.top_cohomology, c.interior))?;
        let p = graded::cm_probe(&m, &bx, FieldSpec::Rationals, BOUND).map_err(|e| e.to_string())?;
        check(p.witnesses.is_empty() && p.unresolved.is_empty(), format!("{name}: cm_probe {:?}", p.witnesses))?;
        parts.push(format!("{name} {} interior degrees", c.interior.len()));
    }
    Ok(parts.join("; "))
}

fn topology() -> Outcome {
    let expected: [(&str, Vec<usize>); 3] =
        [("hollow_triangle", vec![0, 0, 1]), ("solid_triangle", vec![0, 0, 0, 0]), ("moebius", vec![0, 0, 1, 0])];
    for (name, want) in expected {
        let mc = complex(name);
        for field in [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3)] {
            let h = toric::degree_zero_cohomology(&mc, field);
            let got: Vec<usize> = (0..=mc.dim() as i32).map(|i| h.get(&i).copied().unwrap_or(0)).collect();
            check(got == want, format!("{name} over {field}: {got:?}"))?;
        }
    }
    Ok("(0,0,1), (0,0,0,0), (0,0,1,0) over Q, F2, F3".into())
}

fn cm_chain() -> Outcome {
    let q = FieldSpec::Rationals;
    let r =
        toric::cm_chain_report(&complex("bowtie"), &DegreeBox::cube(1, 0, 1), q, BOUND).map_err(|e| e.to_string())?;
    check(r.consistent(), format!("bowtie: {:?}", r.violations))?;
    for ring in &r.rings {
        check(ring.unresolved.is_empty(), format!("bowtie {}: unresolved", ring.ring))?;
        // depth 2: link of the shared vertex is two disjoint edges
        check(ring.indices() == BTreeSet::from([2]), format!("bowtie {}: indices {:?}", ring.ring, ring.indices()))?;
    }
    let r =
        toric::cm_chain_report(&complex("moebius"), &DegreeBox::cube(1, -3, 3), q, BOUND).map_err(|e| e.to_string())?;
    check(r.consistent(), format!("moebius: {:?}", r.violations))?;
    Ok("bowtie: R, +R, R-bar all have witnesses only at i=2; moebius: no violations".into())
}

fn local_comparison() -> Outcome {
    let q = FieldSpec::Rationals;
    let bx = DegreeBox::cube(1, -3, 3);
    let m = affine("numerical_2_3");
    let plus =
        AffineSemigroup::new(m.seminormalization(BOUND).map_err(|e| e.to_string())?, 1).map_err(|e| e.to_string())?;
    let r = graded::scan(&m, SliceKind::Cech, &bx, q, BOUND).map_err(|e| e.to_string())?;
    let p = graded::scan(&plus, SliceKind::Cech, &bx, q, BOUND).map_err(|e| e.to_string())?;
    check(r.is_complete() && p.is_complete(), "unresolved degrees")?;
    for a in [-1, -2, -3] {
        for i in 0..=1 {
            let (x, y) = (r.get(&[a], i), p.get(&[a], i));
            check(x.abs_diff(y) <= TOLERANCE, format!("a={a}, i={i}: {x} vs {y}"))?;
        }
        check(r.get(&[a], 1) == 1, format!("dim H^1 at {a} is {}", r.get(&[a], 1)))?;
    }
    let extra: Vec<i64> =
        r.entries.iter().filter(|e| p.get(&e.degree, e.index) != e.dimension).map(|e| e.degree[0]).collect();
    check(extra == vec![1], format!("extra support {extra:?}"))?;
    check(!m.cone().contains(&[-1]), "+1 lies in -|M|")?;
    let c = toric::local_cohomology_comparison(&toric::from_affine(&m).unwrap(), &bx, q, BOUND)
        .map_err(|e| e.to_string())?;
    check(c.mismatches.is_empty(), format!("toric comparison {:?}", c.mismatches))?;
    Ok("H^1 agrees at -1,-2,-3 (dim 1); extra support only at a=+1".into())
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for k in 0..RANDOM_CONES {
        let m = common::random_semigroup(&mut rng);
        common::cone_properties(&m).map_err(|e| format!("cone {k} {:?}: {e}", m.generators()))?;
    }
    for name in datasets::names() {
        let mc = complex(name);
        common::complex_properties(&mc).map_err(|e| format!("{name}: {e}"))?;
        for c in 1..mc.len() {
            common::two_step_sums_vanish(mc.monoid(c).face_lattice()).map_err(|e| format!("{name}: {e}"))?;
        }
    }
    Ok(format!("{RANDOM_CONES} random cones (seed {SEED:#x}) and {} bundled inputs", datasets::names().len()))
}

fn bmm() -> Outcome {
    let mc = complex("bMM_cell");
    let s = mc.poset().index_of("s").ok_or("no cell s")?;
    check(mc.monoid(s).is_normal(), "M_s not normal as a ring")?;
    let bar = mc.conewise_normalize().map_err(|e| e.to_string())?;
    check(bar.validate().valid, "result does not validate")?;
    let g = sorted(bar.monoid(s).generators().to_vec());
    check(g == vec![vec![0, 1], vec![1, 0]], format!("M-tilde_s = {g:?}"))?;
    check(!mc.monoid(s).contains(&[1, 0]), "(1,0) already in M_s")?;
    Ok("<(2,0),(0,1)> becomes N^2".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("x2, y, xy flags", x2_y_xy_flags),
        ("non-seminormal witness", non_seminormal_witness),
        ("duality", duality),
        ("canonical module shape", canonical_shape),
        ("topology from degree zero", topology),
        ("CM implication chain", cm_chain),
        ("local cohomology comparison", local_comparison),
        ("property suites", properties),
        ("bMM cone-wise normalization", bmm),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = f();
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {} {name}: PASS [tol {TOLERANCE}, {secs:.2}s] {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL [tol {TOLERANCE}, {secs:.2}s] {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
