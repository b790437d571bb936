use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::tower::{obstruction, obstruction_f4, residual_f5, Arithmetic, ObstructionReport};
use crate::linalg::{Mode, Solver};
use crate::models::{model_ii, ModelSpec};
use crate::quadcalc::prolongation;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Prolongation,
    H3,
    H4,
    H5,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Prolongation, Check::H3, Check::H4, Check::H5];

    pub fn name(&self) -> &'static str {
        match self {
            Check::Prolongation => "prolongation",
            Check::H3 => "h3",
            Check::H4 => "h4",
            Check::H5 => "h5",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown check `{s}` (expected prolongation, h3, h4, h5)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StageStatus {
    Pass,
    Fail,
    /// Assumed by the theorem being checked rather than computed.
    Hypothesis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Rigid,
    Obstructed,
    /// Rigidity of the model is open; dimensions are reported only.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: Check,
    pub status: StageStatus,
    /// `dim |II|^(1)` for the prolongation check, `dim H_k` otherwise.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<ObstructionReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelVerdict {
    pub model: ModelSpec,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub obstructed_at: Option<usize>,
    pub arithmetic: Arithmetic,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOptions {
    pub checks: Vec<Check>,
    /// `None` picks exact arithmetic, except modular for Spinor5 and Cayley.
    pub mode: Option<Mode>,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { checks: Check::ALL.to_vec(), mode: None, seed: 0 }
    }
}

pub fn default_mode(spec: &ModelSpec) -> Mode {
    match spec {
        ModelSpec::Spinor5 | ModelSpec::Cayley => Mode::Probabilistic,
        _ => Mode::Exact,
    }
}

/// Models whose rigidity is open: `P^1 x P^n` for `n > 1` and `G(2, 5)`.
fn is_open(spec: &ModelSpec) -> bool {
    match *spec {
        ModelSpec::Segre { n, m } => n.min(m) == 1 && n.max(m) > 1,
        ModelSpec::Grass { m } => m == 5,
        _ => false,
    }
}

fn from_report(check: Check, r: ObstructionReport) -> CheckResult {
    let status = if r.dim_h == 0 { StageStatus::Pass } else { StageStatus::Fail };
    CheckResult { check, status, dim: Some(r.dim_h), report: Some(r) }
}

/// Runs the requested checks on the model's `|II|`. For the Veronese the
/// prolongation and order-3 stages are the hypotheses `III = 0`, `F₃ = 0`.
pub fn verify_model(spec: &ModelSpec, opts: &VerifyOptions) -> Result<ModelVerdict> {
    let q = model_ii(spec)?;
    let mode = opts.mode.unwrap_or_else(|| default_mode(spec));
    let solver = Solver::new(mode, opts.seed);
    let veronese = matches!(spec, ModelSpec::Veronese { .. });
    let mut checks = opts.checks.clone();
    checks.sort();
    checks.dedup();
    let mut results = Vec::with_capacity(checks.len());
    for check in checks {
        let res = match check {
            Check::Prolongation | Check::H3 if veronese => {
                CheckResult { check, status: StageStatus::Hypothesis, dim: None, report: None }
            }
            Check::Prolongation => {
                let dim = prolongation(&q.system(), 1)?.dim();
                let status = if dim == 0 { StageStatus::Pass } else { StageStatus::Fail };
                CheckResult { check, status, dim: Some(dim), report: None }
            }
            Check::H3 => from_report(check, obstruction(&q, &solver)?),
            Check::H4 => from_report(check, obstruction_f4(&q, &solver)?),
            Check::H5 => from_report(check, residual_f5(&q, &solver)?),
        };
        results.push(res);
    }
    let failed_at = results
        .iter()
        .filter(|r| r.status == StageStatus::Fail)
        .map(|r| r.report.as_ref().map_or(3, |rep| rep.order))
        .min();
    let verdict = if is_open(spec) {
        Verdict::Unknown
    } else if failed_at.is_some() {
        Verdict::Obstructed
    } else {
        Verdict::Rigid
    };
    Ok(ModelVerdict {
        model: *spec,
        verdict,
        obstructed_at: if verdict == Verdict::Obstructed { failed_at } else { None },
        arithmetic: mode.into(),
        checks: results,
    })
}
