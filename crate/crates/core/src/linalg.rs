//! Exact integer and rational linear algebra.
//!
//! Public vectors are `i64`; every elimination runs on `BigInt` /
//! `BigRational` so intermediate growth never overflows.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from `i64` rows. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has wrong length");
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(*x);
            }
        }
        m
    }

    pub fn from_columns(rows: usize, cols: &[Vec<i64>]) -> Self {
        Self::from_rows(rows, cols).transpose()
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        (0..self.rows)
            .map(|i| {
                let s: BigInt = self.row(i).iter().zip(v).map(|(a, b)| a * BigInt::from(*b)).sum();
                s.to_i64().ok_or(Error::Overflow)
            })
            .collect()
    }

    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect()).collect()
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.row(i).iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// row[dst] -= q * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j] * q;
            self.data[dst * self.cols + j] -= s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = -std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = x;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(p) => {
                        a.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    /// Rank over the rationals (fraction-free elimination).
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut r = 0;
        let mut prev = BigInt::one();
        for c in 0..a.cols {
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            for i in r + 1..a.rows {
                for j in c + 1..a.cols {
                    let v = (&a[(i, j)] * &a[(r, c)] - &a[(i, c)] * &a[(r, j)]) / &prev;
                    a[(i, j)] = v;
                }
                a[(i, c)] = BigInt::zero();
            }
            prev = a[(r, c)].clone();
            r += 1;
            if r == a.rows {
                break;
            }
        }
        r
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        write!(f, "IntMatrix{:?}", rows)
    }
}

/// Row Hermite normal form: returns `(H, U)` with `U` unimodular and
/// `U * A = H`. Pivots are positive, entries above a pivot lie in
/// `[0, pivot)`, zero rows come last.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.nrows());
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..h.ncols() {
        if r == h.nrows() {
            break;
        }
        loop {
            // smallest nonzero absolute value at or below r
            let best =
                (r..h.nrows()).filter(|&i| !h[(i, c)].is_zero()).min_by(|&i, &j| h[(i, c)].abs().cmp(&h[(j, c)].abs()));
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..h.nrows() {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                h.sub_row(i, r, &q);
                u.sub_row(i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            if !q.is_zero() {
                h.sub_row(i, r, &q);
                u.sub_row(i, r, &q);
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    (h, u)
}

/// Integer basis of `{x in Z^d : A x = 0}` for `A` given by `rows`.
pub fn integer_kernel(d: usize, rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let at = IntMatrix::from_rows(d, rows).transpose();
    let (h, u) = hermite_normal_form(&at);
    (0..d)
        .filter(|&i| h.is_zero_row(i))
        .map(|i| u.row(i).iter().map(|x| x.to_i64().expect("kernel entry overflow")).collect())
        .collect()
}

pub(crate) fn to_rational(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(BigInt::from(*x))).collect()
}

/// Reduced row echelon form over Q; returns the nonzero rows and pivot columns.
pub(crate) fn rref(mut rows: Vec<Vec<BigRational>>, cols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Scales a rational vector to the primitive integer vector on the same ray.
pub(crate) fn primitive_from_rational(v: &[BigRational]) -> Vec<i64> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return vec![0; v.len()];
    }
    ints.iter().map(|x| (x / &g).to_i64().expect("primitive vector overflow")).collect()
}

/// Basis of the rational kernel of `rows`, each scaled to a primitive integer vector.
pub fn rational_kernel(d: usize, rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (r, pivots) = rref(rows.iter().map(|v| to_rational(v)).collect(), d);
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); d];
            v[f] = BigRational::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            primitive_from_rational(&v)
        })
        .collect()
}

pub fn rank_of(d: usize, rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    IntMatrix::from_rows(d, rows).rank()
}

/// Divides by the content; the zero vector is returned unchanged.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, x| acc.gcd(x));
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[i64], k: i64) -> Vec<i64> {
    a.iter().map(|x| x * k).collect()
}

/// Integer basis of the saturated lattice `span(vs) ∩ Z^d`, HNF-ordered.
pub fn saturated_basis(d: usize, vs: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let complement = rational_kernel(d, vs);
    let kernel = integer_kernel(d, &complement);
    if kernel.is_empty() {
        return kernel;
    }
    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(d, &kernel));
    h.to_i64_rows().expect("basis overflow").into_iter().filter(|r| r.iter().any(|x| *x != 0)).collect()
}

/// Solves `sum_i y_i basis_i = v` over Q; `None` when `v` is outside the span.
pub fn solve_in_basis(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<BigRational>> {
    let k = basis.len();
    let d = v.len();
    // augmented system: columns are basis vectors, last column is v
    let rows: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            let mut row: Vec<BigRational> =
                basis.iter().map(|b| BigRational::from_integer(BigInt::from(b[i]))).collect();
            row.push(BigRational::from_integer(BigInt::from(v[i])));
            row
        })
        .collect();
    let (r, pivots) = rref(rows, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    let mut y = vec![BigRational::zero(); k];
    for (row, &p) in r.iter().zip(&pivots) {
        y[p] = row[k].clone();
    }
    Some(y)
}

/// Integer coordinates of `v` in `basis`, if they exist.
pub fn integer_coordinates(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let y = solve_in_basis(basis, v)?;
    // basis must be independent for uniqueness; reject non-unique solutions
    if rank_of(v.len(), basis) != basis.len() {
        return None;
    }
    y.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect()
}

/// Sign of the determinant of the coordinates of `vectors` in `basis`
/// (both spanning the same space). Computed as sign det(Bᵀ V), since
/// det(Bᵀ B) > 0.
pub fn orientation_sign(basis: &[Vec<i64>], vectors: &[Vec<i64>]) -> i8 {
    let k = basis.len();
    assert_eq!(vectors.len(), k, "orientation needs a square system");
    let mut m = IntMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            m[(i, j)] = BigInt::from(dot(&basis[i], &vectors[j]));
        }
    }
    let det = m.determinant();
    if det.is_positive() {
        1
    } else if det.is_negative() {
        -1
    } else {
        0
    }
}
