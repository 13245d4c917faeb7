use std::collections::BTreeMap;

use semitoric::graded::{self, SliceKind};
use semitoric::io::{Input, Structure};
use semitoric::toric::{self, MonoidalComplex, SignedDegree, ToricWitness};
use semitoric::{cohomology, AffineSemigroup, DegreeBox, Error, FieldSpec, Result};
use serde_json::{json, Value};

use crate::report::{gens_label, vec_label, Exit, Report, Table};

pub struct Settings {
    pub bx: DegreeBox,
    pub field: FieldSpec,
    pub bound: u32,
}

fn build(input: &Input) -> Result<Structure> {
    input.build()
}

fn as_complex(input: &Input) -> Result<MonoidalComplex> {
    match build(input)? {
        Structure::Complex(mc) => Ok(mc),
        Structure::Affine(m) => toric::from_affine(&m),
    }
}

fn signed_label(d: &SignedDegree) -> String {
    if d.vector.is_empty() {
        return "0".into();
    }
    format!("{}{}:{}", if d.negative { "-" } else { "" }, d.cell, vec_label(&d.vector))
}

fn unresolved_flag(rep: &mut Report, n: usize, bound: u32) {
    rep.flag("unresolved", n);
    if n > 0 {
        rep.flag("unresolved_bound", bound);
        if rep.exit == Exit::Pass {
            rep.exit = Exit::Unresolved;
        }
    }
}

fn witness_table(title: &str, ws: &[ToricWitness]) -> Table {
    let mut t = Table::new(title, &["degree", "i", "dim"]);
    for w in ws {
        t.push(vec![signed_label(&w.degree), w.index.to_string(), w.dimension.to_string()]);
    }
    t
}

pub fn analyze(input: &Input, s: &Settings, rep: &mut Report) -> Result<()> {
    match build(input)? {
        Structure::Affine(m) => {
            let plus = m.seminormalization(s.bound)?;
            let seminormal = plus.iter().all(|g| m.contains(g));
            let normal = m.is_normal();
            let normalization = m.normalization();
            rep.flag("seminormal", seminormal);
            rep.flag("normal", normal);
            let mut t = Table::new("generators", &["monoid", "generators"]);
            t.push(vec!["M".into(), gens_label(m.generators())]);
            t.push(vec!["+M".into(), gens_label(&plus)]);
            t.push(vec!["M-bar".into(), gens_label(&normalization)]);
            rep.tables.push(t);
            rep.result = json!({
                "seminormal": seminormal,
                "normal": normal,
                "generators": m.generators(),
                "seminormalization": plus,
                "normalization": normalization,
            });
        }
        Structure::Complex(mc) => {
            let plus = mc.seminormalize(s.bound)?;
            let bar = mc.conewise_normalize()?;
            let seminormal = plus.changed_cells(&mc).is_empty();
            let normal = mc.is_conewise_normal();
            rep.flag("seminormal", seminormal);
            rep.flag("conewise_normal", normal);
            let mut t = Table::new("cells", &["cell", "dim", "M", "+M", "M-tilde"]);
            let mut cells = Vec::new();
            for c in 1..mc.len() {
                let name = mc.poset().name(c);
                let (g, p, b) = (mc.monoid(c).generators(), plus.monoid(c).generators(), bar.monoid(c).generators());
                t.push(vec![name.into(), mc.poset().dim(c).to_string(), gens_label(g), gens_label(p), gens_label(b)]);
                cells.push(json!({
                    "cell": name,
                    "generators": g,
                    "seminormalization": p,
                    "conewise_normalization": b,
                }));
            }
            rep.tables.push(t);
            rep.result = json!({ "seminormal": seminormal, "conewise_normal": normal, "cells": cells });
        }
    }
    Ok(())
}

pub fn cohomology_cmd(input: &Input, kind: SliceKind, s: &Settings, rep: &mut Report) -> Result<()> {
    rep.config.insert("kind".into(), kind.to_string().into());
    let mut t = Table::new("nonzero cohomology", &["degree", "i", "dim", "flags"]);
    let mut rows = Vec::new();
    let unresolved = match build(input)? {
        Structure::Affine(m) => {
            let scan = graded::scan(&m, kind, &s.bx, s.field, s.bound)?;
            for e in &scan.entries {
                if e.dimension > 0 {
                    t.push(vec![vec_label(&e.degree), e.index.to_string(), e.dimension.to_string(), e.flags.join(",")]);
                    rows.push(json!({"degree": e.degree, "index": e.index, "dimension": e.dimension}));
                }
            }
            scan.unresolved.len()
        }
        Structure::Complex(mc) => {
            let (ws, open) = match kind {
                SliceKind::Cech => toric::local_cohomology_scan(&mc, &s.bx, s.field, s.bound, &[false, true])?,
                _ => (ishida_scan(&mc, kind, s)?, vec![]),
            };
            for w in ws.iter().filter(|w| w.dimension > 0) {
                let flag = if open.contains(&w.degree) { "unresolved" } else { "" };
                t.push(vec![signed_label(&w.degree), w.index.to_string(), w.dimension.to_string(), flag.into()]);
                rows.push(json!({"degree": w.degree, "index": w.index, "dimension": w.dimension}));
            }
            open.len()
        }
    };
    rep.tables.push(t);
    rep.result = json!({ "entries": rows });
    unresolved_flag(rep, unresolved, s.bound);
    Ok(())
}

fn ishida_scan(mc: &MonoidalComplex, kind: SliceKind, s: &Settings) -> Result<Vec<ToricWitness>> {
    let mut out = Vec::new();
    for a in toric::degrees_in_box(mc, &s.bx)? {
        let c = if kind == SliceKind::Ishida { toric::ishida_slice(mc, &a) } else { toric::plus_ishida_slice(mc, &a) };
        for (i, dim) in cohomology(&c, s.field) {
            out.push(ToricWitness { degree: SignedDegree::new(mc, &a, false), index: i, dimension: dim });
        }
    }
    Ok(out)
}

pub fn duality_check(input: &Input, s: &Settings, rep: &mut Report) -> Result<()> {
    let mut t = Table::new("mismatches", &["degree", "i", "+I", "local"]);
    let (checked, n, open) = match build(input)? {
        Structure::Affine(m) => {
            let r = graded::duality_check(&m, &s.bx, s.field, s.bound)?;
            for x in &r.mismatches {
                t.push(vec![vec_label(&x.degree), x.index.to_string(), x.plus_ishida.to_string(), x.local.to_string()]);
            }
            rep.result = serde_json::to_value(&r).expect("serializes");
            (r.checked, r.mismatches.len(), r.unresolved.len())
        }
        Structure::Complex(mc) => {
            rep.flag("degrees", "points of |M-bar M| and their negatives");
            let r = toric::duality_check(&mc, &s.bx, s.field, s.bound)?;
            for x in &r.mismatches {
                t.push(vec![signed_label(&x.degree), x.index.to_string(), x.left.to_string(), x.right.to_string()]);
            }
            rep.result = serde_json::to_value(&r).expect("serializes");
            (r.checked, r.mismatches.len(), r.unresolved.len())
        }
    };
    rep.tables.push(t);
    rep.flag("scope", "mismatches are searched in the box only");
    rep.flag("checked", checked);
    rep.flag("passed", n == 0);
    if n > 0 {
        rep.exit = Exit::Witnesses;
    }
    unresolved_flag(rep, open, s.bound);
    Ok(())
}

pub fn cm_probe(input: &Input, s: &Settings, rep: &mut Report) -> Result<()> {
    let (ws, open): (Vec<(String, i32, usize)>, usize) = match build(input)? {
        Structure::Affine(m) => {
            let p = graded::cm_probe(&m, &s.bx, s.field, s.bound)?;
            rep.result = serde_json::to_value(&p).expect("serializes");
            (p.witnesses.iter().map(|w| (vec_label(&w.degree), w.index, w.dimension)).collect(), p.unresolved.len())
        }
        Structure::Complex(mc) => {
            let e = toric::cm_evidence(&mc, "R", &s.bx, s.field, s.bound)?;
            rep.result = serde_json::to_value(&e).expect("serializes");
            (e.witnesses.iter().map(|w| (signed_label(&w.degree), w.index, w.dimension)).collect(), e.unresolved.len())
        }
    };
    let mut t = Table::new("H^i_m below the top index", &["degree", "i", "dim"]);
    for (d, i, n) in &ws {
        t.push(vec![d.clone(), i.to_string(), n.to_string()]);
    }
    rep.tables.push(t);
    rep.flag("consistent_with_cm", ws.is_empty());
    if !ws.is_empty() {
        rep.exit = Exit::Witnesses;
    }
    unresolved_flag(rep, open, s.bound);
    Ok(())
}

pub fn cm_chain(input: &Input, s: &Settings, rep: &mut Report) -> Result<()> {
    let mc = as_complex(input)?;
    let r = toric::cm_chain_report(&mc, &s.bx, s.field, s.bound)?;
    for ring in &r.rings {
        rep.tables.push(witness_table(&format!("{} below the top index", ring.ring), &ring.witnesses));
        let name = format!("cm_on_box_{}", ring.ring.replace('+', "plus_").replace('-', "_"));
        rep.flag(&name, ring.witnesses.is_empty());
    }
    rep.flag("consistent", r.consistent());
    if !r.consistent() {
        rep.exit = Exit::Witnesses;
    }
    let open: usize = r.rings.iter().map(|x| x.unresolved.len()).sum();
    rep.result = serde_json::to_value(&r).expect("serializes");
    unresolved_flag(rep, open, s.bound);
    Ok(())
}

pub fn compare(input: &Input, s: &Settings, rep: &mut Report) -> Result<()> {
    let built = build(input)?;
    let mc = match &built {
        Structure::Complex(mc) => mc.clone(),
        Structure::Affine(m) => toric::from_affine(m)?,
    };
    let c = toric::local_cohomology_comparison(&mc, &s.bx, s.field, s.bound)?;
    let mut t = Table::new("mismatches at -a", &["degree", "i", "+R", "R"]);
    for x in &c.mismatches {
        t.push(vec![signed_label(&x.degree), x.index.to_string(), x.left.to_string(), x.right.to_string()]);
    }
    rep.tables.push(t);
    rep.tables.push(witness_table("R outside -|M|", &c.off_support));
    rep.tables.push(witness_table("+R outside -|M|", &c.plus_off_support));
    rep.flag("seminormal", c.seminormal);
    rep.flag("passed", c.passed());
    let mut result = json!({ "local_cohomology": c });
    if let Structure::Affine(m) = &built {
        let cc = graded::canonical_compare(m, &s.bx, s.field, s.bound)?;
        rep.flag("canonical_consistent", cc.consistent);
        result["canonical"] = serde_json::to_value(&cc).expect("serializes");
    }
    rep.result = result;
    let open = c.unresolved.len();
    if !c.passed() && open == 0 {
        rep.exit = Exit::Witnesses;
    }
    unresolved_flag(rep, open, s.bound);
    Ok(())
}

pub fn probe(input: &Input, s: &Settings, rep: &mut Report) -> Result<()> {
    let m: AffineSemigroup = input.affine()?;
    let p = graded::seminormality_criterion_probe(&m, &s.bx, s.field, s.bound)?;
    let mut t = Table::new("witnesses with -a outside the cone", &["degree", "i", "dim"]);
    for w in &p.witnesses {
        t.push(vec![vec_label(&w.degree), w.index.to_string(), w.dimension.to_string()]);
    }
    rep.tables.push(t);
    rep.flag("consistent_with_seminormal", p.consistent_with_seminormal());
    if !p.witnesses.is_empty() {
        rep.exit = Exit::Witnesses;
    }
    rep.result = serde_json::to_value(&p).expect("serializes");
    unresolved_flag(rep, p.unresolved.len(), s.bound);
    Ok(())
}

pub fn topology(input: &Input, s: &Settings, rep: &mut Report) -> Result<()> {
    let mc = as_complex(input)?;
    let h = toric::degree_zero_cohomology(&mc, s.field);
    let mut t = Table::new("degree-zero local cohomology", &["i", "dim H^i_m", "dim reduced H^(i-1)(X)"]);
    let mut rows = BTreeMap::new();
    for i in 0..=mc.dim() as i32 {
        let d = h.get(&i).copied().unwrap_or(0);
        t.push(vec![i.to_string(), d.to_string(), d.to_string()]);
        rows.insert(i.to_string(), d);
    }
    rep.tables.push(t);
    rep.flag("dim", mc.dim());
    rep.result = json!({ "local_cohomology_degree_zero": rows });
    Ok(())
}

pub fn validate(input: &Input, rep: &mut Report) -> Result<()> {
    let mc = match input {
        Input::AffineSemigroup { .. } => toric::from_affine(&input.affine()?)?,
        _ => input.complex_unchecked()?,
    };
    let v = mc.validate();
    let mut t = Table::new("issues", &["axiom", "cells", "detail"]);
    for i in &v.issues {
        t.push(vec![i.axiom.clone(), i.cells.join("|"), i.detail.clone()]);
    }
    rep.tables.push(t);
    rep.flag("valid", v.valid);
    rep.flag("cells", v.cells);
    rep.flag("pairs_checked", v.pairs_checked);
    if !v.valid {
        rep.exit = Exit::Invalid;
    }
    rep.result = serde_json::to_value(&v).expect("serializes");
    Ok(())
}

pub fn exit_for(e: &Error) -> Exit {
    match e {
        Error::BoundTooSmall { .. } => Exit::BoundTooSmall,
        _ => Exit::Invalid,
    }
}

pub fn error_value(e: &Error) -> Value {
    json!({ "error": e.to_string() })
}
