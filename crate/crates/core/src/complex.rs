//! Finite cochain complexes of vector spaces with signed 0/±1 differentials,
//! and their cohomology over `Q` or a prime field.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::linalg::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum FieldSpec {
    #[default]
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, Error> {
        let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if is_prime {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(Error::Malformed(format!("{p} is not prime")))
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        match t {
            "Q" | "q" | "QQ" | "rationals" | "0" => Ok(FieldSpec::Rationals),
            _ => {
                let digits = t.trim_start_matches(['F', 'f', 'p', 'P']).trim_start_matches('_');
                let p: u64 = digits.parse().map_err(|_| Error::Malformed(format!("unknown field {s:?}")))?;
                FieldSpec::prime(p)
            }
        }
    }
}

/// Rank of an integer matrix over the given field.
pub fn rank_over(m: &IntMatrix, field: FieldSpec) -> usize {
    match field {
        FieldSpec::Rationals => m.rank(),
        FieldSpec::Prime(p) => {
            let p = p as i128;
            let pb = BigInt::from(p);
            let mut a: Vec<Vec<i128>> = (0..m.nrows())
                .map(|i| {
                    m.row(i)
                        .iter()
                        .map(|x| {
                            let r: BigInt = ((x % &pb) + &pb) % &pb;
                            i128::try_from(r).expect("residue fits")
                        })
                        .collect()
                })
                .collect();
            let cols = m.ncols();
            let mut r = 0;
            for c in 0..cols {
                let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
                a.swap(r, piv);
                let inv = mod_pow(a[r][c], p - 2, p);
                for x in a[r].iter_mut() {
                    *x = *x * inv % p;
                }
                let pivot = a[r].clone();
                for (i, row) in a.iter_mut().enumerate() {
                    if i != r && row[c] != 0 {
                        let f = row[c];
                        for (x, y) in row.iter_mut().zip(&pivot) {
                            *x = ((*x - f * y) % p + p) % p;
                        }
                    }
                }
                r += 1;
            }
            r
        }
    }
}

fn mod_pow(mut b: i128, mut e: i128, m: i128) -> i128 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Cochain complex `C^lo -> ... -> C^hi`. `labels[k]` names the basis of
/// `C^{lo+k}`; `maps[k]` is the matrix of `C^{lo+k} -> C^{lo+k+1}` with one
/// row per target basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VectorSpaceComplex {
    lo: i32,
    labels: Vec<Vec<String>>,
    #[serde(skip)]
    maps: Vec<IntMatrix>,
}

impl VectorSpaceComplex {
    /// `labels` must be nonempty; `maps.len() == labels.len() - 1`.
    pub fn new(lo: i32, labels: Vec<Vec<String>>, maps: Vec<IntMatrix>) -> Self {
        assert!(!labels.is_empty());
        assert_eq!(maps.len() + 1, labels.len(), "one differential between consecutive positions");
        for (k, m) in maps.iter().enumerate() {
            assert_eq!(m.ncols(), labels[k].len(), "differential source shape");
            assert_eq!(m.nrows(), labels[k + 1].len(), "differential target shape");
        }
        VectorSpaceComplex { lo, labels, maps }
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.labels.len() as i32 - 1
    }

    pub fn dim_at(&self, i: i32) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.labels[(i - self.lo) as usize].len()
        }
    }

    pub fn labels_at(&self, i: i32) -> &[String] {
        if i < self.lo || i > self.hi() {
            &[]
        } else {
            &self.labels[(i - self.lo) as usize]
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    /// Differential leaving position `i`, if both ends exist.
    pub fn differential(&self, i: i32) -> Option<&IntMatrix> {
        if i < self.lo || i >= self.hi() {
            None
        } else {
            Some(&self.maps[(i - self.lo) as usize])
        }
    }

    pub fn is_zero(&self) -> bool {
        self.labels.iter().all(Vec::is_empty)
    }

    /// `d ∘ d = 0` checked over the integers.
    pub fn squares_to_zero(&self) -> bool {
        self.maps.windows(2).all(|w| {
            let p = w[1].mul(&w[0]);
            (0..p.nrows()).all(|i| p.is_zero_row(i))
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        (self.lo..=self.hi()).map(|i| if i.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim_at(i) as i64).sum()
    }
}

/// Cohomology dimensions, keyed by position; zero entries are omitted.
pub fn cohomology(v: &VectorSpaceComplex, field: FieldSpec) -> BTreeMap<i32, usize> {
    let ranks: Vec<usize> = v.maps.iter().map(|m| rank_over(m, field)).collect();
    let mut out = BTreeMap::new();
    for i in v.lo()..=v.hi() {
        let k = (i - v.lo()) as usize;
        let outgoing = if k < ranks.len() { ranks[k] } else { 0 };
        let incoming = if k > 0 { ranks[k - 1] } else { 0 };
        let h = v.dim_at(i) - outgoing - incoming;
        if h > 0 {
            out.insert(i, h);
        }
    }
    out
}

/// Degree → (index → dimension). Absent entries are zero.
pub type CohomologyTable<D> = BTreeMap<D, BTreeMap<i32, usize>>;
