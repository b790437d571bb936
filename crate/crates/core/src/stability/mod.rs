//! One-parameter degenerations of quadric systems, their flat limits, and
//! invariant fingerprints for comparing a limit with the original system.

mod family;
mod fingerprint;
mod trial;

pub use family::{limit, make_family, random_degeneration, DetCertificate, Degeneration, DeformationFamily, RankCertificate};
pub use fingerprint::{compare_fingerprint, fingerprint, fingerprint_with, Comparison, Fingerprint, SampledRank, FINGERPRINT_SEED, RANK_SAMPLES};
pub use trial::{stability_trial, trial_seed, TrialFailure, TrialMismatch, TrialReport};
