use serde::Serialize;

use crate::degree_box::DegreeBox;
use crate::error::{Error, Result};
use crate::linalg::integer_coordinates;
use crate::toric::monoidal::MonoidalComplex;
use crate::toric::poset::EMPTY_CELL;

/// A point of `|M̄M| = colim (L_σ ∩ C_σ)`, stored in its carrier cell:
/// `v ∈ L_σ` lies in the relative interior of `C_σ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ToricDegree {
    pub cell: usize,
    pub v: Vec<i64>,
}

impl ToricDegree {
    pub fn zero() -> Self {
        ToricDegree { cell: EMPTY_CELL, v: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.cell == EMPTY_CELL
    }

    /// Moves `v ∈ L_cell ∩ C_cell` down to its carrier cell.
    pub fn canonical(mc: &MonoidalComplex, cell: usize, v: &[i64]) -> Result<Self> {
        if v.len() != mc.rank(cell) {
            return Err(Error::DimensionMismatch { expected: mc.rank(cell), got: v.len() });
        }
        let m = mc.monoid(cell);
        let f = m.face_lattice().carrier_face(v)?;
        let t = mc.cell_of_face(cell, f).ok_or(Error::NotAFace)?;
        let cols: Vec<Vec<i64>> = (0..mc.rank(t))
            .map(|j| mc.embedding(cell, t).expect("comparable cells").iter().map(|r| r[j]).collect())
            .collect();
        let w = integer_coordinates(&cols, v).ok_or(Error::NotInCone)?;
        Ok(ToricDegree { cell: t, v: w })
    }

    /// Image in `L_σ` for `σ` at or above the carrier.
    pub fn embed(&self, mc: &MonoidalComplex, s: usize) -> Option<Vec<i64>> {
        if !mc.poset().leq(self.cell, s) {
            return None;
        }
        mc.embed(s, self.cell, &self.v)
    }

    /// `self ∈ |M|`.
    pub fn in_monoid(&self, mc: &MonoidalComplex) -> bool {
        mc.monoid(self.cell).contains(&self.v)
    }

    pub fn label(&self, mc: &MonoidalComplex) -> String {
        let v: Vec<String> = self.v.iter().map(i64::to_string).collect();
        format!("{}:({})", mc.poset().name(self.cell), v.join(","))
    }
}

/// `a + b` in the smallest cell carrying both, or `None` if no cell does.
pub fn add(mc: &MonoidalComplex, a: &ToricDegree, b: &ToricDegree) -> Option<ToricDegree> {
    let s = mc.poset().join(a.cell, b.cell)?;
    let x = a.embed(mc, s)?;
    let y = b.embed(mc, s)?;
    let sum: Vec<i64> = x.iter().zip(&y).map(|(p, q)| p + q).collect();
    Some(ToricDegree::canonical(mc, s, &sum).expect("sum of cone points lies in the cone"))
}

/// Points of `|M̄M|` whose carrier coordinates lie in the box, broadcast to
/// every cell's rank, ordered by cell and then lexicographically.
pub fn degrees_in_box(mc: &MonoidalComplex, bx: &DegreeBox) -> Result<Vec<ToricDegree>> {
    let mut out = vec![ToricDegree::zero()];
    for c in 1..mc.len() {
        let r = mc.rank(c);
        let cbox = if bx.dim() == 1 {
            bx.fit(r)?
        } else if bx.dim() == r {
            bx.clone()
        } else {
            continue;
        };
        let cone = mc.monoid(c).cone();
        out.extend(
            cbox.points().into_iter().filter(|p| cone.in_relative_interior(p)).map(|v| ToricDegree { cell: c, v }),
        );
    }
    Ok(out)
}
