//! JSON input formats.
//!
//! ```json
//! {"type": "affine_semigroup", "generators": [[2, 0], [0, 1], [1, 1]]}
//! {"type": "simplicial_complex", "facets": [[0, 1], [1, 2], [0, 2]]}
//! {"type": "fan", "rays": [[1, 0], [0, 1]], "cones": [[0, 1]]}
//! {"type": "monoidal_complex",
//!  "cells": [{"id": "p", "dim": 0}, {"id": "s", "dim": 1}, ...],
//!  "covers": [["s", "p"], ...],
//!  "incidence": {"s|p": -1, ...},
//!  "monoids": {"s": {"generators": [[2, 0], [0, 1]]}, ...},
//!  "embeddings": {"s|p": [[1], [0]], ...}}
//! ```
//!
//! In a monoidal complex the empty cell is implicit; `incidence` may be
//! omitted, in which case signs are derived from the poset.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::AffineSemigroup;
use crate::toric::{from_fan, stanley_reisner, CwPoset, Matrix, MonoidalComplex, EMPTY_CELL};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSpec {
    pub id: String,
    pub dim: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidSpec {
    pub generators: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Input {
    AffineSemigroup {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        generators: Vec<Vec<i64>>,
    },
    MonoidalComplex {
        cells: Vec<CellSpec>,
        covers: Vec<(String, String)>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        incidence: BTreeMap<String, i8>,
        monoids: BTreeMap<String, MonoidSpec>,
        embeddings: BTreeMap<String, Matrix>,
    },
    Fan {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        rays: Vec<Vec<i64>>,
        cones: Vec<Vec<usize>>,
    },
    SimplicialComplex {
        facets: Vec<Vec<usize>>,
    },
}

/// A parsed input: one affine semigroup or a monoidal complex.
#[derive(Clone, Debug)]
pub enum Structure {
    Affine(AffineSemigroup),
    Complex(MonoidalComplex),
}

fn pair_key(key: &str) -> Result<(&str, &str)> {
    key.split_once('|').ok_or_else(|| Error::Malformed(format!("expected \"σ|τ\", got {key:?}")))
}

impl Input {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("inputs serialize")
    }

    /// Builds and validates.
    pub fn build(&self) -> Result<Structure> {
        match self {
            Input::AffineSemigroup { .. } => self.affine().map(Structure::Affine),
            _ => {
                let mc = self.complex_unchecked()?;
                mc.require_valid()?;
                Ok(Structure::Complex(mc))
            }
        }
    }

    pub fn affine(&self) -> Result<AffineSemigroup> {
        match self {
            Input::AffineSemigroup { dim, generators } => {
                let d = dim
                    .or_else(|| generators.first().map(Vec::len))
                    .ok_or_else(|| Error::Malformed("an affine semigroup without generators needs \"dim\"".into()))?;
                AffineSemigroup::new(generators.clone(), d)
            }
            _ => Err(Error::Malformed("not an affine semigroup".into())),
        }
    }

    /// The monoidal complex before its axioms are checked.
    pub fn complex_unchecked(&self) -> Result<MonoidalComplex> {
        match self {
            Input::AffineSemigroup { .. } => crate::toric::from_affine(&self.affine()?),
            Input::SimplicialComplex { facets } => stanley_reisner(facets),
            Input::Fan { dim, rays, cones } => {
                let n = dim.or_else(|| rays.first().map(Vec::len)).unwrap_or(0);
                from_fan(n, rays, cones)
            }
            Input::MonoidalComplex { cells, covers, incidence, monoids, embeddings } => {
                let named: Vec<(String, i32)> = cells.iter().map(|c| (c.id.clone(), c.dim)).collect();
                let index = |name: &str| {
                    cells
                        .iter()
                        .position(|c| c.id == name)
                        .ok_or_else(|| Error::Malformed(format!("unknown cell {name}")))
                };
                let cov = covers.iter().map(|(a, b)| Ok((index(a)?, index(b)?))).collect::<Result<Vec<_>>>()?;
                let mut poset = CwPoset::new(&named, &cov)?;
                if !incidence.is_empty() {
                    let mut inc = HashMap::new();
                    for (k, v) in incidence {
                        let (a, b) = pair_key(k)?;
                        let small = if b.is_empty() || b == "{}" { EMPTY_CELL } else { index(b)? + 1 };
                        inc.insert((index(a)? + 1, small), *v);
                    }
                    for c in 1..poset.len() {
                        if poset.dim(c) == 0 {
                            inc.entry((c, EMPTY_CELL)).or_insert(1);
                        }
                    }
                    poset.set_incidence(inc);
                }
                let mut ms = Vec::new();
                for c in cells {
                    let spec =
                        monoids.get(&c.id).ok_or_else(|| Error::Malformed(format!("no monoid for cell {}", c.id)))?;
                    ms.push(AffineSemigroup::new(spec.generators.clone(), (c.dim + 1) as usize)?);
                }
                let mut emb = HashMap::new();
                for (k, m) in embeddings {
                    let (a, b) = pair_key(k)?;
                    emb.insert((index(a)? + 1, index(b)? + 1), m.clone());
                }
                MonoidalComplex::assemble(poset, ms, &emb)
            }
        }
    }

    /// Explicit description of a monoidal complex, with every cover's
    /// embedding and incidence sign.
    pub fn from_complex(mc: &MonoidalComplex) -> Input {
        let p = mc.poset();
        let cells = (1..mc.len()).map(|c| CellSpec { id: p.name(c).to_string(), dim: p.dim(c) }).collect();
        let mut covers = Vec::new();
        let mut incidence = BTreeMap::new();
        let mut embeddings = BTreeMap::new();
        for &(a, b) in p.covers() {
            if b == EMPTY_CELL {
                continue;
            }
            covers.push((p.name(a).to_string(), p.name(b).to_string()));
            let key = format!("{}|{}", p.name(a), p.name(b));
            if let Some(e) = p.incidence(a, b) {
                incidence.insert(key.clone(), e);
            }
            embeddings.insert(key, mc.embedding(a, b).expect("cover").clone());
        }
        let monoids = (1..mc.len())
            .map(|c| (p.name(c).to_string(), MonoidSpec { generators: mc.monoid(c).generators().to_vec() }))
            .collect();
        Input::MonoidalComplex { cells, covers, incidence, monoids, embeddings }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_roundtrip() {
        let inp = Input::from_json(r#"{"type":"affine_semigroup","generators":[[2],[3]]}"#).unwrap();
        let m = inp.affine().unwrap();
        assert_eq!(m.generators(), &[vec![2], vec![3]]);
        assert_eq!(Input::from_json(&inp.to_json()).unwrap(), inp);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(Input::from_json("{"), Err(Error::Malformed(_))));
        assert!(matches!(Input::from_json(r#"{"type":"bogus"}"#), Err(Error::Malformed(_))));
        let bad =
            r#"{"type":"monoidal_complex","cells":[{"id":"p","dim":0}],"covers":[],"monoids":{},"embeddings":{}}"#;
        assert!(matches!(Input::from_json(bad).unwrap().build(), Err(Error::Malformed(_))));
    }

    #[test]
    fn explicit_complex_roundtrip() {
        let inp = Input::SimplicialComplex { facets: vec![vec![0, 1], vec![1, 2]] };
        let mc = inp.complex_unchecked().unwrap();
        let explicit = Input::from_complex(&mc);
        let again = explicit.complex_unchecked().unwrap();
        assert!(again.validate().valid);
        assert_eq!(again.len(), mc.len());
        assert_eq!(Input::from_complex(&again), explicit);
    }

    #[test]
    fn non_primitive_embedding_fails_lattice_axiom() {
        let text = r#"{"type":"monoidal_complex",
            "cells":[{"id":"p","dim":0},{"id":"q","dim":0},{"id":"s","dim":1}],
            "covers":[["s","p"],["s","q"]],
            "monoids":{"p":{"generators":[[1]]},"q":{"generators":[[1]]},"s":{"generators":[[2,0],[0,1]]}},
            "embeddings":{"s|p":[[2],[0]],"s|q":[[0],[1]]}}"#;
        let mc = Input::from_json(text).unwrap().complex_unchecked().unwrap();
        let rep = mc.validate();
        assert!(!rep.valid);
        assert!(rep.issues.iter().any(|i| i.axiom == "lattice" && i.cells == vec!["s", "p"]));
    }
}
