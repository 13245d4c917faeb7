//! Seminormality, normality and degree-wise local cohomology of affine
//! semigroup rings and toric face rings, in exact arithmetic.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`], [`lattice`], [`cone`], [`hilbert`]: integer linear algebra,
//!   pointed cones with face lattices and incidence signs, Hilbert bases.
//! - [`semigroup`]: affine semigroups, their normalization and
//!   seminormalization.
//! - [`complex`], [`graded`]: vector-space slices of the Ishida-type and
//!   Čech complexes of `k[M]` at a single multidegree, and the checks built
//!   on them.
//! - [`toric`]: monoidal complexes, toric face rings and the same checks in
//!   that setting.
//! - [`io`], [`datasets`]: JSON formats and the bundled examples.

pub mod complex;
pub mod cone;
pub mod datasets;
pub mod degree_box;
pub mod error;
pub mod graded;
pub mod hilbert;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod semigroup;
pub mod toric;

pub use complex::{cohomology, FieldSpec, VectorSpaceComplex};
pub use cone::{cone_from_rays, face_lattice, Cone, Face, FaceLattice};
pub use degree_box::DegreeBox;
pub use error::{Error, Result};
pub use lattice::{lattice_from_vectors, Lattice};
pub use semigroup::AffineSemigroup;
