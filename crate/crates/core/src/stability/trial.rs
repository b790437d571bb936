use serde::{Deserialize, Serialize};

use super::family::{limit, make_family, random_degeneration};
use super::fingerprint::{compare_fingerprint, fingerprint_with, Comparison, Fingerprint};
use crate::linalg::Solver;
use crate::symtensor::QuadricSystem;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialMismatch {
    pub trial: usize,
    pub seed: u64,
    pub exponents: Vec<usize>,
    pub invariant: String,
    pub expected: usize,
    pub found: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialFailure {
    pub trial: usize,
    pub seed: u64,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub trials: usize,
    pub seed: u64,
    pub fingerprint: Fingerprint,
    pub matches: usize,
    pub mismatches: Vec<TrialMismatch>,
    pub failures: Vec<TrialFailure>,
}

impl TrialReport {
    /// Every trial ran and every limit had the fingerprint of the original.
    pub fn consistent(&self) -> bool {
        self.matches == self.trials
    }

    pub fn summary(&self) -> String {
        if self.consistent() {
            format!("{}/{} limits consistent with A_0 ≃ A", self.matches, self.trials)
        } else {
            format!(
                "{}/{} limits consistent with A_0 ≃ A; {} fingerprint mismatches, {} failed families",
                self.matches,
                self.trials,
                self.mismatches.len(),
                self.failures.len()
            )
        }
    }
}

/// Seed of trial `index`, split from the run seed.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add((index as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)).rotate_left(17)
}

/// Degenerates `a` along `trials` seeded curves and compares the
/// fingerprint of each flat limit with that of `a`. A mismatch records the
/// first differing invariant.
pub fn stability_trial(a: &QuadricSystem, trials: usize, seed: u64, solver: &Solver) -> Result<TrialReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let base = fingerprint_with(a, solver)?;
    let mut report =
        TrialReport { trials, seed, fingerprint: base.clone(), matches: 0, mismatches: vec![], failures: vec![] };
    for trial in 0..trials {
        let s = trial_seed(seed, trial);
        let deg = random_degeneration(a.nvars(), s);
        let outcome =
            make_family(a, &deg.curve(), s).and_then(|f| limit(&f)).and_then(|a0| compare_fingerprint(&a0, &base, solver));
        match outcome {
            Ok(Comparison::Consistent) => report.matches += 1,
            Ok(Comparison::Differs { invariant, expected, found }) => report.mismatches.push(TrialMismatch {
                trial,
                seed: s,
                exponents: deg.exponents,
                invariant,
                expected,
                found,
            }),
            Err(e) => report.failures.push(TrialFailure { trial, seed: s, error: e.to_string() }),
        }
    }
    Ok(report)
}
