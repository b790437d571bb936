//! Calculus of quadric systems: prolongation, singular loci, annihilators,
//! quotient systems and the refined third-order bound.

mod prolong;
mod singular;

pub use prolong::{prolongation, prolongation_by_intersection, prolongation_by_partials};
pub use singular::{
    ann, base_locus_member, generic_vector, ii_rank, quotient_system, refined_iii_bound, singloc, GenericCertificate,
    QuotientSystem, RefinedBound, DEFAULT_GENERIC_SEED, GENERIC_SAMPLES,
};
