use std::collections::BTreeMap;

use semitoric::datasets;
use semitoric::graded;
use semitoric::io::{Input, Structure};
use semitoric::toric::{self, add, MonoidalComplex, ToricDegree};
use semitoric::{cohomology, AffineSemigroup, DegreeBox, FieldSpec};

fn complex(name: &str) -> MonoidalComplex {
    match datasets::load(name).unwrap() {
        Structure::Complex(mc) => mc,
        Structure::Affine(m) => toric::from_affine(&m).unwrap(),
    }
}

fn nonzero(h: BTreeMap<i32, usize>) -> BTreeMap<i32, usize> {
    h.into_iter().filter(|&(_, d)| d > 0).collect()
}

#[test]
fn hollow_triangle_degree_zero() {
    let mc = complex("hollow_triangle");
    for field in [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3)] {
        let h = toric::degree_zero_cohomology(&mc, field);
        assert_eq!(nonzero(h), BTreeMap::from([(2, 1)]), "{field}");
    }
}

#[test]
fn solid_triangle_degree_zero_vanishes() {
    let mc = complex("solid_triangle");
    assert!(nonzero(toric::degree_zero_cohomology(&mc, FieldSpec::Rationals)).is_empty());
}

#[test]
fn moebius_degree_zero_and_validity() {
    let mc = complex("moebius");
    let rep = mc.validate();
    assert!(rep.valid, "{:?}", rep.issues);
    assert_eq!(rep.cells, 19);
    // the strip retracts onto a circle
    let h = toric::degree_zero_cohomology(&mc, FieldSpec::Rationals);
    assert_eq!(nonzero(h), BTreeMap::from([(2, 1)]));
    assert!(mc.is_conewise_normal());
}

fn vertex(mc: &MonoidalComplex, name: &str) -> ToricDegree {
    ToricDegree { cell: mc.poset().index_of(name).unwrap(), v: vec![1] }
}

#[test]
fn moebius_presentation_relations() {
    let mc = complex("moebius");
    let prod = |a: &str, b: &str| add(&mc, &vertex(&mc, a), &vertex(&mc, b));
    for (l, r) in [(("x", "v"), ("u", "y")), (("v", "z"), ("y", "w")), (("x", "z"), ("u", "w"))] {
        let p = prod(l.0, l.1).expect("product exists");
        assert_eq!(Some(p), prod(r.0, r.1));
    }
    for (a, b, c) in [("u", "v", "w"), ("u", "v", "z")] {
        assert!(prod(a, b).and_then(|ab| add(&mc, &ab, &vertex(&mc, c))).is_none());
    }
    assert!(prod("x", "y").is_some());
    assert_ne!(prod("x", "y"), prod("y", "v"));
}

#[test]
fn moebius_duality_on_box() {
    let mc = complex("moebius");
    let rep = toric::duality_check(&mc, &DegreeBox::cube(1, 0, 1), FieldSpec::Rationals, 4).unwrap();
    assert!(rep.passed(), "{:?}", rep.mismatches);
    assert!(rep.checked > 0);
}

#[test]
fn add_respects_cells() {
    let mc = complex("hollow_triangle");
    let a = vertex(&mc, "0");
    let b = vertex(&mc, "1");
    let ab = add(&mc, &a, &b).unwrap();
    assert_eq!(mc.poset().name(ab.cell), "0.1");
    assert_eq!(ab.v.iter().sum::<i64>(), 2);
    assert_eq!(add(&mc, &a, &ToricDegree::zero()), Some(a.clone()));
    let c = vertex(&mc, "2");
    assert!(add(&mc, &ab, &c).is_none());
}

#[test]
fn single_cone_matches_affine_slices() {
    let m = AffineSemigroup::new(vec![vec![2, 0], vec![0, 1], vec![1, 1]], 2).unwrap();
    let mc = toric::from_affine(&m).unwrap();
    let bx = DegreeBox::cube(2, -2, 3);
    for a in bx.points() {
        if !m.cone().contains(&a) {
            continue;
        }
        let top = mc.len() - 1;
        let d = ToricDegree::canonical(&mc, top, &a).unwrap();
        let q = FieldSpec::Rationals;
        assert_eq!(
            nonzero(cohomology(&toric::ishida_slice(&mc, &d), q)),
            nonzero(cohomology(&graded::ishida_slice(&m, &a), q)),
            "I at {a:?}"
        );
        assert_eq!(
            nonzero(cohomology(&toric::plus_ishida_slice(&mc, &d), q)),
            nonzero(cohomology(&graded::plus_ishida_slice(&m, &a), q)),
            "+I at {a:?}"
        );
        let neg: Vec<i64> = a.iter().map(|x| -x).collect();
        assert_eq!(
            nonzero(cohomology(&toric::cech_slice(&mc, &d, true, 4).complex, q)),
            nonzero(cohomology(&graded::cech_slice(&m, &neg, 4).complex, q)),
            "C at {neg:?}"
        );
    }
}

#[test]
fn seminormalize_cell_with_gap() {
    let text = r#"{"type":"monoidal_complex",
        "cells":[{"id":"p","dim":0},{"id":"q","dim":0},{"id":"s","dim":1}],
        "covers":[["s","p"],["s","q"]],
        "monoids":{"p":{"generators":[[2],[3]]},"q":{"generators":[[1]]},"s":{"generators":[[2,0],[3,0],[0,1]]}},
        "embeddings":{"s|p":[[1],[0]],"s|q":[[0],[1]]}}"#;
    let mc = Input::from_json(text).unwrap().complex_unchecked().unwrap();
    assert!(mc.validate().valid, "{:?}", mc.validate().issues);
    assert!(!mc.is_seminormal(8).unwrap());
    let plus = mc.seminormalize(8).unwrap();
    assert!(plus.validate().valid);
    let changed: Vec<&str> = mc.changed_cells(&plus).into_iter().map(|c| mc.poset().name(c)).collect();
    assert_eq!(changed, vec!["p", "s"]);
    assert_eq!(plus.monoid(plus.poset().index_of("p").unwrap()).generators(), &[vec![1]]);
    assert!(plus.is_seminormal(8).unwrap());
}

#[test]
fn bmm_conewise_normalization() {
    let mc = complex("bMM_cell");
    assert!(!mc.is_conewise_normal());
    assert!(mc.is_seminormal(8).unwrap());
    let bar = mc.conewise_normalize().unwrap();
    assert!(bar.validate().valid);
    let s = bar.poset().index_of("s").unwrap();
    let mut gens = bar.monoid(s).generators().to_vec();
    gens.sort();
    assert_eq!(gens, vec![vec![0, 1], vec![1, 0]]);
    let changed: Vec<&str> = mc.changed_cells(&bar).into_iter().map(|c| mc.poset().name(c)).collect();
    assert_eq!(changed, vec!["p", "s"]);
}

#[test]
fn invalid_embedding_rejected() {
    let text = r#"{"type":"monoidal_complex",
        "cells":[{"id":"p","dim":0},{"id":"s","dim":1},{"id":"q","dim":0}],
        "covers":[["s","p"],["s","q"]],
        "monoids":{"p":{"generators":[[1]]},"q":{"generators":[[1]]},"s":{"generators":[[1,0],[0,1]]}},
        "embeddings":{"s|p":[[2],[0]],"s|q":[[0],[1]]}}"#;
    let inp = Input::from_json(text).unwrap();
    assert!(matches!(inp.build(), Err(semitoric::Error::Invalid(_))));
}

#[test]
fn bowtie_cm_chain() {
    let mc = complex("bowtie");
    let rep = toric::cm_chain_report(&mc, &DegreeBox::cube(1, 0, 1), FieldSpec::Rationals, 4).unwrap();
    assert!(rep.consistent(), "{:?}", rep.violations);
    assert_eq!(rep.dim, 3);
    for ring in &rep.rings {
        let hits: Vec<_> =
            ring.witnesses.iter().map(|w| (w.index, w.degree.cell.as_str(), w.degree.negative)).collect();
        assert_eq!(hits, vec![(2, "2", true)], "{}", ring.ring);
    }
}

#[test]
fn hollow_triangle_local_cohomology_comparison() {
    let mc = complex("hollow_triangle");
    let cmp = toric::local_cohomology_comparison(&mc, &DegreeBox::cube(1, 0, 1), FieldSpec::Rationals, 4).unwrap();
    assert!(cmp.seminormal);
    assert!(cmp.passed(), "{cmp:?}");
}
