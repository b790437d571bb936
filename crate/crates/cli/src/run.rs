use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use prolongkit::linalg::{scalar_to_string, Mode, Solver};
use prolongkit::models::{build_parameterization, model_system};
use prolongkit::quadcalc::{generic_vector, refined_iii_bound, GenericCertificate, DEFAULT_GENERIC_SEED};
use prolongkit::rigidity::{default_mode, verify_model, Arithmetic, ModelVerdict, StageStatus, VerifyOptions};
use prolongkit::stability::{fingerprint_with, stability_trial, TrialReport};
use prolongkit::symtensor::QuadricSystem;
use prolongkit::ModelSpec;

use crate::config::{CommandName, DumpWhat, Format, RunConfig, UsageError};
use crate::serial::{ParamDoc, SystemDoc};

pub const TOOL: &str = "prolongkit";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelInfo {
    pub model: ModelSpec,
    pub tangent_dim: usize,
    pub ii_dim: usize,
    pub default_arithmetic: Arithmetic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop6Result {
    pub vector: Vec<String>,
    pub certificate: GenericCertificate,
    pub generic: bool,
    pub ii_rank: usize,
    /// Dimension of the carrier `Singloc(Ann(v))` of the quotient system.
    pub carrier_dim: usize,
    pub quotient_dim: usize,
    pub bound_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityResult {
    pub summary: String,
    pub report: TrialReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Payload {
    Models { models: Vec<ModelInfo> },
    Verify(ModelVerdict),
    Prop6(Prop6Result),
    Stability(StabilityResult),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub arithmetic: Option<Arithmetic>,
    /// Every requested check passed; mirrors the exit code.
    pub passed: bool,
    pub result: Payload,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<Timings>,
}

/// What a run produced: the exit code and the bytes to write.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub exit_code: i32,
    pub document: String,
}

#[derive(Debug)]
pub enum RunError {
    Usage(UsageError),
    Failed(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => 2,
            RunError::Failed(_) => 1,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Usage(e) => write!(f, "usage error: {e}"),
            RunError::Failed(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<prolongkit::Error> for RunError {
    fn from(e: prolongkit::Error) -> Self {
        RunError::Failed(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> RunError {
    RunError::Usage(UsageError(msg.into()))
}

fn read_system(path: &str) -> Result<QuadricSystem, RunError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?;
    let doc: SystemDoc = serde_json::from_str(&text).map_err(|e| usage(format!("{path}: {e}")))?;
    let a = doc.to_system().map_err(|e| usage(format!("{path}: {e}")))?;
    if a.degree() != 2 {
        return Err(usage(format!("{path}: expected a quadric system, found degree {}", a.degree())));
    }
    Ok(a)
}

pub fn run(config: &RunConfig) -> Result<Output, RunError> {
    let start = Instant::now();
    if config.command == CommandName::Dump {
        return dump(config);
    }
    let model = config.model;
    let (arithmetic, passed, result) = match config.command {
        CommandName::Models => {
            let models = ModelSpec::catalogue()
                .into_iter()
                .map(|spec| {
                    let a = model_system(&spec)?;
                    Ok(ModelInfo {
                        model: spec,
                        tangent_dim: a.nvars(),
                        ii_dim: a.dim(),
                        default_arithmetic: default_mode(&spec).into(),
                    })
                })
                .collect::<prolongkit::Result<_>>()?;
            (None, true, Payload::Models { models })
        }
        CommandName::Verify => {
            let spec = model.expect("verify has a model");
            let opts = VerifyOptions { checks: config.checks.clone(), mode: config.mode, seed: config.seed };
            let verdict = verify_model(&spec, &opts)?;
            let passed = verdict.checks.iter().all(|c| c.status != StageStatus::Fail);
            (Some(verdict.arithmetic), passed, Payload::Verify(verdict))
        }
        CommandName::Prop6 => {
            let spec = model.expect("prop6 has a model");
            let a = model_system(&spec)?;
            let (v, certificate) = generic_vector(&a, DEFAULT_GENERIC_SEED ^ config.seed)?;
            let bound = refined_iii_bound(&a, &v)?;
            let res = Prop6Result {
                vector: v.iter().map(scalar_to_string).collect(),
                certificate,
                generic: bound.generic,
                ii_rank: bound.ii_rank,
                carrier_dim: bound.quotient.carrier.dim(),
                quotient_dim: bound.quotient.system.dim(),
                bound_dim: bound.bound.dim(),
            };
            (Some(Arithmetic::Exact), res.bound_dim == 0, Payload::Prop6(res))
        }
        CommandName::Stability => {
            let a = match (&model, &config.system) {
                (Some(spec), _) => model_system(spec)?,
                (None, Some(path)) => read_system(path)?,
                (None, None) => return Err(usage("stability needs --model or --system")),
            };
            let mode = config.mode.unwrap_or(Mode::Exact);
            let trials = config.trials.unwrap_or(crate::config::DEFAULT_TRIALS);
            let report = stability_trial(&a, trials, config.seed, &Solver::new(mode, config.seed))?;
            let passed = report.consistent();
            (Some(mode.into()), passed, Payload::Stability(StabilityResult { summary: report.summary(), report }))
        }
        CommandName::Dump => unreachable!(),
    };
    let report = Report {
        tool: TOOL.into(),
        version: VERSION.into(),
        config: config.clone(),
        arithmetic,
        passed,
        result,
        timings: config.timings.then(|| Timings { total_seconds: start.elapsed().as_secs_f64() }),
    };
    let document = match config.format {
        Format::Json => to_json(&report),
        Format::Text => render_text(&report),
    };
    Ok(Output { exit_code: if passed { 0 } else { 1 }, document })
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn dump(config: &RunConfig) -> Result<Output, RunError> {
    let spec = config.model.expect("dump has a model");
    let document = match config.what.expect("dump has --what") {
        DumpWhat::Ii => {
            let a = model_system(&spec)?;
            match config.format {
                Format::Json => to_json(&SystemDoc::from_system(&a)),
                Format::Text => a.basis().iter().map(|q| format!("{}\n", render_form(q))).collect(),
            }
        }
        DumpWhat::Param => {
            let p = build_parameterization(&spec)?;
            match config.format {
                Format::Json => to_json(&ParamDoc::from_param(&p)),
                Format::Text => ParamDoc::from_param(&p)
                    .polys
                    .iter()
                    .enumerate()
                    .map(|(i, terms)| format!("z{i} = {}\n", render_terms(terms)))
                    .collect(),
            }
        }
        DumpWhat::Fingerprint => {
            let fp = fingerprint_with(&model_system(&spec)?, &Solver::new(config.mode.unwrap_or(Mode::Exact), config.seed))?;
            match config.format {
                Format::Json => to_json(&fp),
                Format::Text => format!("{fp:#?}\n"),
            }
        }
    };
    Ok(Output { exit_code: 0, document })
}

fn render_terms(terms: &[crate::serial::Term]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        let (sign, mag) = match t.coeff.strip_prefix('-') {
            Some(m) => ("-", m),
            None => ("+", t.coeff.as_str()),
        };
        if k == 0 {
            if sign == "-" {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        let vars: Vec<String> = t
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
            .collect();
        match (mag, vars.is_empty()) {
            (m, true) => out.push_str(m),
            ("1", false) => out.push_str(&vars.join("*")),
            (m, false) => {
                let _ = write!(out, "{m}*{}", vars.join("*"));
            }
        }
    }
    out
}

fn render_form(q: &prolongkit::SymTensor) -> String {
    let terms: Vec<crate::serial::Term> = q
        .terms()
        .map(|(i, c)| crate::serial::Term { exps: q.basis().exps(i).to_vec(), coeff: scalar_to_string(c) })
        .collect();
    render_terms(&terms)
}

pub fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", r.tool, r.version);
    if let Some(m) = &r.config.model {
        let _ = writeln!(s, "model: {m}");
    }
    if let Some(a) = r.arithmetic {
        let _ = writeln!(s, "arithmetic: {}", serde_json::to_value(a).expect("enum").as_str().unwrap_or(""));
    }
    let _ = writeln!(s, "seed: {}", r.config.seed);
    match &r.result {
        Payload::Models { models } => {
            for m in models {
                let _ = writeln!(s, "{:<14} dim T = {:<3} dim |II| = {}", m.model.to_string(), m.tangent_dim, m.ii_dim);
            }
        }
        Payload::Verify(v) => {
            for c in &v.checks {
                let dim = c.dim.map_or("-".to_string(), |d| d.to_string());
                let _ = writeln!(s, "{:<13} {:<11} dim {}", c.check.name(), format!("{:?}", c.status).to_uppercase(), dim);
            }
            let _ = writeln!(s, "verdict: {}", serde_json::to_value(v.verdict).expect("enum").as_str().unwrap_or(""));
        }
        Payload::Prop6(p) => {
            let _ = writeln!(s, "v = ({})", p.vector.join(", "));
            let _ = writeln!(s, "rank II_v = {} (sampled max {}, generic: {})", p.ii_rank, p.certificate.rank, p.generic);
            let _ = writeln!(s, "carrier dim {}, quotient dim {}, bound dim {}", p.carrier_dim, p.quotient_dim, p.bound_dim);
        }
        Payload::Stability(st) => {
            let _ = writeln!(s, "{}", st.summary);
            for m in &st.report.mismatches {
                let _ = writeln!(s, "  trial {}: {} expected {} found {}", m.trial, m.invariant, m.expected, m.found);
            }
            for f in &st.report.failures {
                let _ = writeln!(s, "  trial {} failed: {}", f.trial, f.error);
            }
        }
    }
    let _ = writeln!(s, "passed: {}", r.passed);
    if let Some(t) = &r.timings {
        let _ = writeln!(s, "total: {:.3} s", t.total_seconds);
    }
    s
}
