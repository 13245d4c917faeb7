use std::collections::{BTreeSet, HashMap};

use crate::cone::{cone_from_rays, dual_rays, face_lattice};
use crate::error::{Error, Result};
use crate::hilbert::hilbert_basis;
use crate::lattice::lattice_from_vectors;
use crate::linalg::{integer_coordinates, primitive, saturated_basis};
use crate::semigroup::AffineSemigroup;
use crate::toric::degree::ToricDegree;
use crate::toric::monoidal::{Matrix, MonoidalComplex};
use crate::toric::poset::CwPoset;

fn ray_label(rays: &BTreeSet<usize>) -> String {
    format!("<{}>", rays.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
}

/// Coordinates of `small`'s basis vectors in `big`'s basis, as columns.
fn change_of_basis(big: &[Vec<i64>], small: &[Vec<i64>]) -> Result<Matrix> {
    let cols: Vec<Vec<i64>> = small
        .iter()
        .map(|b| integer_coordinates(big, b).ok_or_else(|| Error::Malformed("sublattice basis not integral".into())))
        .collect::<Result<_>>()?;
    Ok((0..big.len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect())
}

fn coordinates_of(basis: &[Vec<i64>], vs: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    vs.iter()
        .map(|v| integer_coordinates(basis, v).ok_or_else(|| Error::Malformed("vector outside the lattice".into())))
        .collect()
}

/// Cells indexed by ray sets, each with a basis of its saturated lattice and
/// its monoid in those coordinates.
fn complex_from_faces(
    faces: &[BTreeSet<usize>],
    bases: &[Vec<Vec<i64>>],
    monoids: Vec<AffineSemigroup>,
    incidence: Option<HashMap<(usize, usize), i8>>,
) -> Result<MonoidalComplex> {
    let cells: Vec<(String, i32)> = faces.iter().zip(bases).map(|(f, b)| (ray_label(f), b.len() as i32 - 1)).collect();
    let mut covers = Vec::new();
    let mut emb = HashMap::new();
    for (i, a) in faces.iter().enumerate() {
        for (j, b) in faces.iter().enumerate() {
            if bases[i].len() == bases[j].len() + 1 && b.is_subset(a) {
                covers.push((i, j));
                emb.insert((i + 1, j + 1), change_of_basis(&bases[i], &bases[j])?);
            }
        }
    }
    let mut poset = CwPoset::new(&cells, &covers)?;
    if let Some(inc) = incidence {
        poset.set_incidence(inc);
    }
    MonoidalComplex::new(poset, monoids, &emb)
}

/// The face complex of `C(M)` with `M_F` on each face, in coordinates of
/// the saturated lattice of the face. Cell `i` is face `i` of `C(M)`.
pub fn from_affine(m: &AffineSemigroup) -> Result<MonoidalComplex> {
    let fl = m.face_lattice();
    let d = m.ambient_dim();
    let mut faces = Vec::new();
    let mut bases = Vec::new();
    let mut monoids = Vec::new();
    for f in 1..fl.len() {
        let basis = saturated_basis(d, &fl.face_rays(f));
        let gens = coordinates_of(&basis, &m.face_generators(f))?;
        monoids.push(AffineSemigroup::new(gens, basis.len())?);
        faces.push(fl.face(f).rays.clone());
        bases.push(basis);
    }
    let inc = fl.incidence_map().clone();
    complex_from_faces(&faces, &bases, monoids, Some(inc))
}

/// Basis of the saturated lattice of face `f` of `C(M)`, as used by [`from_affine`].
pub fn affine_face_basis(m: &AffineSemigroup, f: usize) -> Vec<Vec<i64>> {
    saturated_basis(m.ambient_dim(), &m.face_lattice().face_rays(f))
}

/// A degree of `ZM ∩ C(M)` as a point of `|M̄M|` for `mc = from_affine(m)`.
pub fn affine_degree(m: &AffineSemigroup, mc: &MonoidalComplex, a: &[i64]) -> Result<ToricDegree> {
    let top = m.face_lattice().top();
    let v = integer_coordinates(&affine_face_basis(m, top), a).ok_or(Error::NotInCone)?;
    ToricDegree::canonical(mc, top, &v)
}

/// Stanley–Reisner complex: `M_σ = N^{|σ|}`, coordinates ordered by vertex.
pub fn stanley_reisner(facets: &[Vec<usize>]) -> Result<MonoidalComplex> {
    let mut simplices: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        f.dedup();
        for mask in 1u64..(1 << f.len()) {
            simplices.insert(f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v).collect());
        }
    }
    let mut cells: Vec<Vec<usize>> = simplices.into_iter().collect();
    cells.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let index: HashMap<&Vec<usize>, usize> = cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let named: Vec<(String, i32)> = cells
        .iter()
        .map(|c| (c.iter().map(usize::to_string).collect::<Vec<_>>().join("."), c.len() as i32 - 1))
        .collect();
    let mut covers = Vec::new();
    let mut emb = HashMap::new();
    let mut inc = HashMap::new();
    for (i, c) in cells.iter().enumerate() {
        if c.len() == 1 {
            inc.insert((i + 1, 0), 1);
        }
        for j in 0..c.len() {
            if c.len() == 1 {
                break;
            }
            let mut face = c.clone();
            face.remove(j);
            let k = index[&face];
            covers.push((i, k));
            let m: Matrix = c.iter().map(|v| face.iter().map(|w| i64::from(v == w)).collect()).collect();
            emb.insert((i + 1, k + 1), m);
            inc.insert((i + 1, k + 1), if j % 2 == 0 { 1 } else { -1 });
        }
    }
    let mut poset = CwPoset::new(&named, &covers)?;
    poset.set_incidence(inc);
    let monoids = cells
        .iter()
        .map(|c| {
            let n = c.len();
            AffineSemigroup::new((0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(), n)
        })
        .collect::<Result<Vec<_>>>()?;
    MonoidalComplex::new(poset, monoids, &emb)
}

/// Monoidal complex of a rational fan: `M_σ = Z^n ∩ C_σ` in a basis of the
/// saturated lattice of each cone's span.
pub fn from_fan(n: usize, rays: &[Vec<i64>], cones: &[Vec<usize>]) -> Result<MonoidalComplex> {
    let prim: Vec<Vec<i64>> = rays
        .iter()
        .map(|r| {
            if r.len() != n {
                Err(Error::DimensionMismatch { expected: n, got: r.len() })
            } else if r.iter().all(|x| *x == 0) {
                Err(Error::NotAFan("zero ray".into()))
            } else {
                Ok(primitive(r))
            }
        })
        .collect::<Result<_>>()?;
    let mut all_faces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut cone_faces: Vec<BTreeSet<BTreeSet<usize>>> = Vec::new();
    let mut hcones = Vec::new();
    for (ci, c) in cones.iter().enumerate() {
        if c.iter().any(|&r| r >= prim.len()) {
            return Err(Error::NotAFan(format!("cone {ci} uses an unknown ray")));
        }
        let gens: Vec<Vec<i64>> = c.iter().map(|&r| prim[r].clone()).collect();
        let cone = cone_from_rays(n, &gens).map_err(|_| Error::NotAFan(format!("cone {ci} is not pointed")))?;
        if cone.rays().len() != BTreeSet::from_iter(c.iter()).len() {
            return Err(Error::NotAFan(format!("cone {ci} lists a ray that is not extreme")));
        }
        let fl = face_lattice(&cone);
        let global = |local: usize| prim.iter().position(|p| *p == cone.rays()[local]).expect("ray of the cone");
        let faces: BTreeSet<BTreeSet<usize>> =
            fl.faces().iter().skip(1).map(|f| f.rays.iter().map(|&r| global(r)).collect()).collect();
        all_faces.extend(faces.iter().cloned());
        cone_faces.push(faces);
        hcones.push(cone);
    }
    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            let common: BTreeSet<usize> =
                cone_faces[i].iter().flat_map(|f| f.iter().copied()).filter(|r| cones[j].contains(r)).collect();
            if !common.is_empty() && !(cone_faces[i].contains(&common) && cone_faces[j].contains(&common)) {
                return Err(Error::NotAFan(format!("cones {i} and {j} meet outside a common face")));
            }
            let mut ineq: Vec<Vec<i64>> = Vec::new();
            for c in [&hcones[i], &hcones[j]] {
                ineq.extend(c.facet_normals().iter().cloned());
                for e in c.equations() {
                    ineq.push(e.clone());
                    ineq.push(e.iter().map(|x| -x).collect());
                }
            }
            let meet = dual_rays(n, &ineq);
            let spanned: Vec<Vec<i64>> = common.iter().map(|&r| prim[r].clone()).collect();
            let ok = if spanned.is_empty() {
                meet.is_empty()
            } else {
                let c = cone_from_rays(n, &spanned)?;
                meet.iter().all(|v| c.contains(v))
            };
            if !ok {
                return Err(Error::NotAFan(format!("cones {i} and {j} overlap in their interiors")));
            }
        }
    }
    let mut faces: Vec<BTreeSet<usize>> = all_faces.into_iter().collect();
    let dim_of =
        |f: &BTreeSet<usize>| saturated_basis(n, &f.iter().map(|&r| prim[r].clone()).collect::<Vec<_>>()).len();
    faces.sort_by(|a, b| (dim_of(a), a).cmp(&(dim_of(b), b)));
    let mut bases = Vec::new();
    let mut monoids = Vec::new();
    for f in &faces {
        let gens: Vec<Vec<i64>> = f.iter().map(|&r| prim[r].clone()).collect();
        let basis = saturated_basis(n, &gens);
        let k = basis.len();
        let local = coordinates_of(&basis, &gens)?;
        let cone = cone_from_rays(k, &local)?;
        let z =
            lattice_from_vectors(&(0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect::<Vec<_>>(), k)?;
        monoids.push(AffineSemigroup::new(hilbert_basis(&cone, &z)?, k)?);
        bases.push(basis);
    }
    complex_from_faces(&faces, &bases, monoids, None)
}
