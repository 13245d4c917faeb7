use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermite_normal_form, IntMatrix};

/// A sublattice of `Z^d`, stored as the nonzero rows of its Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Lattice {
    ambient_dim: usize,
    basis: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, got: v.len() });
        }
        let mut r: Vec<BigInt> = v.iter().map(|x| BigInt::from(*x)).collect();
        for row in &self.basis {
            let c = row.iter().position(|x| *x != 0).expect("basis rows are nonzero");
            let p = BigInt::from(row[c]);
            if !r[..c].iter().all(Zero::is_zero) {
                return Ok(false);
            }
            let (q, rem) = r[c].div_rem(&p);
            if !rem.is_zero() {
                return Ok(false);
            }
            for (x, b) in r.iter_mut().zip(row) {
                *x -= &q * BigInt::from(*b);
            }
        }
        Ok(r.iter().all(Zero::is_zero))
    }
}

/// The integer span of `vs` inside `Z^d`.
pub fn lattice_from_vectors(vs: &[Vec<i64>], d: usize) -> Result<Lattice> {
    for v in vs {
        if v.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: v.len() });
        }
    }
    if vs.is_empty() {
        return Ok(Lattice { ambient_dim: d, basis: vec![] });
    }
    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(d, vs));
    let basis = (0..h.nrows())
        .filter(|&i| !h.is_zero_row(i))
        .map(|i| h.row(i).iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Lattice { ambient_dim: d, basis })
}

pub fn lattice_contains(l: &Lattice, v: &[i64]) -> Result<bool> {
    l.contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_sum_lattice() {
        let l = lattice_from_vectors(&[vec![2, 0], vec![1, 1]], 2).unwrap();
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&[1, -1]).unwrap());
        assert!(!l.contains(&[1, 0]).unwrap());
        assert!(l.contains(&[0, 0]).unwrap());
        assert!(l.contains(&[3, 5]).unwrap());
    }

    #[test]
    fn gcd_lattice_is_z() {
        let l = lattice_from_vectors(&[vec![2], vec![3]], 1).unwrap();
        assert_eq!(l.basis(), &[vec![1]]);
    }

    #[test]
    fn zero_lattice() {
        let l = lattice_from_vectors(&[], 3).unwrap();
        assert!(l.is_zero());
        assert!(l.contains(&[0, 0, 0]).unwrap());
        assert!(!l.contains(&[0, 1, 0]).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let l = lattice_from_vectors(&[vec![1, 0]], 2).unwrap();
        assert!(matches!(l.contains(&[1]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rank_deficient_generators() {
        let l = lattice_from_vectors(&[vec![2, 0], vec![4, 0], vec![0, 0]], 2).unwrap();
        assert_eq!(l.basis(), &[vec![2, 0]]);
        assert!(l.contains(&[-6, 0]).unwrap());
        assert!(!l.contains(&[1, 0]).unwrap());
    }
}
