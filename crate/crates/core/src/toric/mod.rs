//! Toric face rings of monoidal complexes: validation, seminormalization,
//! cone-wise normalization, and the slices of `I•`, `⁺I•` and `Č•` over the
//! colimit degrees `|M̄M|` and their formal negatives.

pub mod builders;
pub mod degree;
pub mod monoidal;
pub mod poset;
pub mod slices;

pub use builders::{affine_degree, from_affine, from_fan, stanley_reisner};
pub use degree::{add, degrees_in_box, ToricDegree};
pub use monoidal::{Matrix, MonoidalComplex, ValidationReport};
pub use poset::{CwPoset, Issue, EMPTY_CELL};
pub use slices::{
    cech_slice, cm_chain_report, cm_evidence, degree_zero_cohomology, duality_check, ishida_slice,
    local_cohomology_comparison, local_cohomology_scan, plus_ishida_slice, CmChainReport, LocalCohomologyComparison,
    RingCmEvidence, SignedDegree, ToricDualityReport, ToricWitness,
};
