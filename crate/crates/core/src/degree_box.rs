use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A finite product of integer intervals `[lo, hi]`. Any interval with
/// `lo > hi` makes the box empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeBox {
    pub ranges: Vec<(i64, i64)>,
}

impl DegreeBox {
    pub fn new(ranges: Vec<(i64, i64)>) -> Self {
        DegreeBox { ranges }
    }

    pub fn cube(d: usize, lo: i64, hi: i64) -> Self {
        DegreeBox { ranges: vec![(lo, hi); d] }
    }

    pub fn dim(&self) -> usize {
        self.ranges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.iter().any(|(lo, hi)| lo > hi)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        v.len() == self.ranges.len() && v.iter().zip(&self.ranges).all(|(x, (lo, hi))| lo <= x && x <= hi)
    }

    /// Broadcasts a one-interval box to `d` axes; other boxes must already have `d` axes.
    pub fn fit(&self, d: usize) -> Result<DegreeBox, Error> {
        if self.ranges.len() == d {
            Ok(self.clone())
        } else if self.ranges.len() == 1 {
            Ok(DegreeBox::cube(d, self.ranges[0].0, self.ranges[0].1))
        } else {
            Err(Error::DimensionMismatch { expected: d, got: self.ranges.len() })
        }
    }

    /// All points in lexicographic order.
    pub fn points(&self) -> Vec<Vec<i64>> {
        if self.is_empty() {
            return vec![];
        }
        let mut out: Vec<Vec<i64>> = vec![vec![]];
        for &(lo, hi) in &self.ranges {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (lo..=hi).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for DegreeBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ranges.iter().map(|(lo, hi)| format!("{lo}..{hi}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses `"lo..hi,lo..hi"`; a bare integer `n` means `n..n`.
impl FromStr for DegreeBox {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Malformed(format!("bad box {s:?}"));
        let ranges = s
            .split(',')
            .map(|part| {
                let part = part.trim();
                match part.split_once("..") {
                    Some((a, b)) => {
                        let b = b.trim_start_matches('=');
                        Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
                    }
                    None => {
                        let x: i64 = part.parse().map_err(|_| bad())?;
                        Ok((x, x))
                    }
                }
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(DegreeBox { ranges })
    }
}
