use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

/// Face poset of a regular CW complex, with the empty cell at index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwPoset {
    names: Vec<String>,
    dims: Vec<i32>,
    /// `below[s]`: all cells `t <= s`, including `s`
    below: Vec<BTreeSet<usize>>,
    covers: Vec<(usize, usize)>,
    incidence: HashMap<(usize, usize), i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Issue {
    pub cells: Vec<String>,
    pub axiom: String,
    pub detail: String,
}

pub const EMPTY_CELL: usize = 0;

impl CwPoset {
    /// `cells` are `(name, dim)` of the nonempty cells; `covers` are
    /// `(bigger, smaller)` pairs among them with dimensions differing by
    /// one. Vertices are made to cover the empty cell.
    pub fn new(cells: &[(String, i32)], covers: &[(usize, usize)]) -> Result<Self> {
        let mut names = vec!["{}".to_string()];
        let mut dims = vec![-1];
        for (n, d) in cells {
            if *d < 0 {
                return Err(Error::Malformed(format!("cell {n} has negative dimension")));
            }
            if names.contains(n) {
                return Err(Error::Malformed(format!("duplicate cell {n}")));
            }
            names.push(n.clone());
            dims.push(*d);
        }
        let n = names.len();
        let mut cov: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &(a, b) in covers {
            let (a, b) = (a + 1, b + 1);
            if a >= n || b >= n {
                return Err(Error::Malformed("cover refers to an unknown cell".into()));
            }
            if dims[a] != dims[b] + 1 {
                return Err(Error::Malformed(format!("{} does not cover {}: dimensions", names[a], names[b])));
            }
            cov.insert((a, b));
        }
        for (c, &d) in dims.iter().enumerate().skip(1) {
            if d == 0 {
                cov.insert((c, EMPTY_CELL));
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&c| dims[c]);
        let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &c in &order {
            let mut set = BTreeSet::from([c, EMPTY_CELL]);
            for &(a, b) in &cov {
                if a == c {
                    set.extend(below[b].iter().copied());
                }
            }
            below[c] = set;
        }
        Ok(CwPoset { names, dims, below, covers: cov.into_iter().collect(), incidence: HashMap::new() })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.len() == 1
    }

    pub fn name(&self, c: usize) -> &str {
        &self.names[c]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn dim(&self, c: usize) -> i32 {
        self.dims[c]
    }

    /// Dimension of the complex; `-1` when only the empty cell exists.
    pub fn top_dim(&self) -> i32 {
        self.dims.iter().copied().max().unwrap_or(-1)
    }

    pub fn leq(&self, small: usize, big: usize) -> bool {
        self.below[big].contains(&small)
    }

    pub fn below(&self, c: usize) -> &BTreeSet<usize> {
        &self.below[c]
    }

    pub fn above(&self, c: usize) -> Vec<usize> {
        (0..self.len()).filter(|&s| self.leq(c, s)).collect()
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn facets_of(&self, c: usize) -> Vec<usize> {
        self.covers.iter().filter(|(a, _)| *a == c).map(|(_, b)| *b).collect()
    }

    pub fn cofacets_of(&self, c: usize) -> Vec<usize> {
        self.covers.iter().filter(|(_, b)| *b == c).map(|(a, _)| *a).collect()
    }

    pub fn maximal_cells(&self) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.cofacets_of(c).is_empty()).collect()
    }

    /// Largest common lower bound, if unique.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let common: Vec<usize> = self.below[a].intersection(&self.below[b]).copied().collect();
        let tops: Vec<usize> =
            common.iter().copied().filter(|&c| common.iter().all(|&o| o == c || !self.leq(c, o))).collect();
        (tops.len() == 1).then(|| tops[0])
    }

    /// Smallest common upper bound, if any.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let common: Vec<usize> = (0..self.len()).filter(|&c| self.leq(a, c) && self.leq(b, c)).collect();
        common.iter().copied().find(|&c| common.iter().all(|&o| self.leq(c, o)))
    }

    pub fn incidence(&self, big: usize, small: usize) -> Option<i8> {
        self.incidence.get(&(big, small)).copied()
    }

    pub fn incidence_map(&self) -> &HashMap<(usize, usize), i8> {
        &self.incidence
    }

    pub fn set_incidence(&mut self, values: HashMap<(usize, usize), i8>) {
        self.incidence = values;
    }

    /// Chooses signs cell by cell: across each interval of length two the
    /// two paths must carry opposite products.
    pub fn derive_incidence(&mut self) -> Result<()> {
        let mut eps: HashMap<(usize, usize), i8> = HashMap::new();
        let mut order: Vec<usize> = (1..self.len()).collect();
        order.sort_by_key(|&c| (self.dims[c], c));
        for c in order {
            let facets = self.facets_of(c);
            if self.dims[c] == 0 {
                eps.insert((c, EMPTY_CELL), 1);
                continue;
            }
            if facets.is_empty() {
                return Err(Error::Malformed(format!("cell {} has no facets", self.names[c])));
            }
            let mut sign: HashMap<usize, i8> = HashMap::new();
            let mut queue = VecDeque::new();
            sign.insert(facets[0], 1);
            queue.push_back(facets[0]);
            while let Some(t) = queue.pop_front() {
                for r in self.facets_of(t) {
                    let mids: Vec<usize> = facets.iter().copied().filter(|&m| self.facets_of(m).contains(&r)).collect();
                    if mids.len() != 2 {
                        return Err(Error::Malformed(format!(
                            "interval from {} to {} is not a diamond",
                            self.names[c], self.names[r]
                        )));
                    }
                    let other = if mids[0] == t { mids[1] } else { mids[0] };
                    let want = -sign[&t] * eps[&(t, r)] * eps[&(other, r)];
                    match sign.get(&other) {
                        Some(&s) if s != want => {
                            return Err(Error::Malformed(format!("no consistent signs on {}", self.names[c])));
                        }
                        Some(_) => {}
                        None => {
                            sign.insert(other, want);
                            queue.push_back(other);
                        }
                    }
                }
            }
            if sign.len() != facets.len() {
                return Err(Error::Malformed(format!("boundary of {} is not connected", self.names[c])));
            }
            for (t, s) in sign {
                eps.insert((c, t), s);
            }
        }
        self.incidence = eps;
        Ok(())
    }

    /// Checks the intersection property and the incidence function.
    pub fn check(&self) -> Vec<Issue> {
        let mut out = Vec::new();
        let issue = |cells: Vec<usize>, axiom: &str, detail: String| Issue {
            cells: cells.iter().map(|&c| self.names[c].clone()).collect(),
            axiom: axiom.to_string(),
            detail,
        };
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.meet(a, b).is_none() {
                    out.push(issue(vec![a, b], "intersection", "no unique largest common face".into()));
                }
            }
        }
        for &(a, b) in &self.covers {
            match self.incidence(a, b) {
                Some(1) | Some(-1) => {}
                _ => out.push(issue(vec![a, b], "incidence", "value on a cover must be +1 or -1".into())),
            }
            if self.dims[a] == 0 && self.incidence(a, b) != Some(1) {
                out.push(issue(vec![a, b], "incidence", "a vertex must have incidence +1 with the empty cell".into()));
            }
        }
        for s in 0..self.len() {
            for &u in &self.below[s] {
                if self.dims[s] != self.dims[u] + 2 {
                    continue;
                }
                let sum: i64 = self
                    .facets_of(s)
                    .into_iter()
                    .filter(|&t| self.leq(u, t))
                    .map(|t| {
                        i64::from(self.incidence(s, t).unwrap_or(0)) * i64::from(self.incidence(t, u).unwrap_or(0))
                    })
                    .sum();
                if sum != 0 {
                    out.push(issue(vec![s, u], "incidence", format!("two-step sum is {sum}")));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cells(spec: &[(&str, i32)]) -> Vec<(String, i32)> {
        spec.iter().map(|(n, d)| (n.to_string(), *d)).collect()
    }

    /// boundary of a triangle on vertices a, b, c
    fn circle() -> CwPoset {
        let c = cells(&[("a", 0), ("b", 0), ("c", 0), ("ab", 1), ("bc", 1), ("ac", 1)]);
        CwPoset::new(&c, &[(3, 0), (3, 1), (4, 1), (4, 2), (5, 0), (5, 2)]).unwrap()
    }

    #[test]
    fn order_and_meets() {
        let p = circle();
        assert_eq!(p.len(), 7);
        assert!(p.leq(EMPTY_CELL, 4));
        assert!(p.leq(1, 4));
        assert!(!p.leq(3, 4));
        assert_eq!(p.meet(4, 5), Some(2));
        assert_eq!(p.meet(4, 6), Some(1));
        assert_eq!(p.meet(1, 2), Some(EMPTY_CELL));
        assert_eq!(p.join(1, 2), Some(4));
        assert_eq!(p.join(4, 5), None);
        assert_eq!(p.maximal_cells(), vec![4, 5, 6]);
        assert_eq!(p.top_dim(), 1);
    }

    #[test]
    fn derived_incidence_is_consistent() {
        let mut p = circle();
        assert!(!p.check().is_empty());
        p.derive_incidence().unwrap();
        assert!(p.check().is_empty());
        assert_eq!(p.incidence(4, 1).unwrap(), -p.incidence(4, 2).unwrap());
    }

    #[test]
    fn bad_incidence_is_reported() {
        let mut p = circle();
        p.derive_incidence().unwrap();
        let mut eps = p.incidence_map().clone();
        let v = eps[&(4, 1)];
        eps.insert((4, 1), -v);
        p.set_incidence(eps);
        let issues = p.check();
        assert!(issues.iter().any(|i| i.axiom == "incidence" && i.cells == vec!["ab", "{}"]));
    }

    #[test]
    fn intersection_property_failure() {
        // two edges sharing both endpoints
        let c = cells(&[("a", 0), ("b", 0), ("e", 1), ("f", 1), ("s", 2)]);
        let p = CwPoset::new(&c, &[(2, 0), (2, 1), (3, 0), (3, 1), (4, 2), (4, 3)]).unwrap();
        assert!(p.check().iter().any(|i| i.axiom == "intersection"));
    }
}
