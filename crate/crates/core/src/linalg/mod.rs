//! Exact linear algebra over the rationals, modular rank computation, and
//! polynomial families of subspaces in one deformation parameter.

mod domain;
mod flat;
mod mat;
pub mod modular;
mod poly;
mod scalar;
mod sparse;
mod subspace;

pub use flat::flat_limit;
pub use mat::Mat;
pub use poly::{PolyMat, PolyScalar};
pub use scalar::{frac, int, parse_scalar, scalar_to_string, Scalar};
pub use sparse::{Solver, SparseSystem, DEFAULT_EXACT_CELL_LIMIT};
pub use subspace::Subspace;

use serde::{Deserialize, Serialize};

/// Arithmetic used for rank computations.
///
/// `Probabilistic` computes ranks modulo three independent random primes
/// above 2^61 and accepts the result only when all three agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Probabilistic,
}

impl Mode {
    /// Label used in reports: exact runs say `exact`, modular runs say
    /// `modular-verified`.
    pub fn label(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Probabilistic => "modular-verified",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "probabilistic" | "modular" => Ok(Mode::Probabilistic),
            other => Err(crate::Error::Parse(format!("unknown arithmetic mode {other:?}"))),
        }
    }
}
