use std::fmt;

use serde::{Deserialize, Serialize};

use super::builders::{build_grass_ii, build_segre_ii, build_spinor_quadrics, build_veronese_ii};
use super::param::{build_parameterization, fundamental_forms};
use crate::symtensor::{NValuedForm, QuadricSystem};
use crate::{Error, Result};

/// One of the model varieties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "lowercase")]
pub enum ModelSpec {
    Segre { n: usize, m: usize },
    Grass { m: usize },
    Veronese { n: usize },
    Spinor5,
    Cayley,
}

impl ModelSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ModelSpec::Segre { n, m } if n == 0 || m == 0 => {
                Err(Error::InvalidModel(format!("segre({n},{m}) needs n, m >= 1")))
            }
            ModelSpec::Grass { m } if m < 4 => Err(Error::InvalidModel(format!("grass({m}) needs m >= 4"))),
            ModelSpec::Veronese { n } if n == 0 => Err(Error::InvalidModel("veronese(0) needs n >= 1".into())),
            _ => Ok(()),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ModelSpec::Segre { .. } => "segre",
            ModelSpec::Grass { .. } => "grass",
            ModelSpec::Veronese { .. } => "veronese",
            ModelSpec::Spinor5 => "spinor5",
            ModelSpec::Cayley => "cayley",
        }
    }

    /// Every model with small parameters, for listings and sweeps.
    pub fn catalogue() -> Vec<ModelSpec> {
        vec![
            ModelSpec::Segre { n: 2, m: 2 },
            ModelSpec::Grass { m: 6 },
            ModelSpec::Veronese { n: 2 },
            ModelSpec::Spinor5,
            ModelSpec::Cayley,
        ]
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::Segre { n, m } => write!(f, "segre({n},{m})"),
            ModelSpec::Grass { m } => write!(f, "grass({m})"),
            ModelSpec::Veronese { n } => write!(f, "veronese({n})"),
            ModelSpec::Spinor5 => write!(f, "spinor5"),
            ModelSpec::Cayley => write!(f, "cayley"),
        }
    }
}

/// The second fundamental form `|II|` used for rigidity computations.
///
/// Spinor5 stands for the quadrics vanishing on the spinor variety (the
/// `|II|` of the Cayley plane); Cayley is the second fundamental form read
/// off the octonionic chart.
pub fn model_ii(spec: &ModelSpec) -> Result<NValuedForm> {
    spec.validate()?;
    match *spec {
        ModelSpec::Segre { n, m } => Ok(build_segre_ii(n, m)?.1),
        ModelSpec::Grass { m } => Ok(build_grass_ii(m)?.1),
        ModelSpec::Veronese { n } => Ok(build_veronese_ii(n)?.1),
        ModelSpec::Spinor5 => NValuedForm::from_system(&build_spinor_quadrics()),
        ModelSpec::Cayley => {
            let forms = fundamental_forms(&build_parameterization(spec)?, 2)?;
            NValuedForm::from_system(&forms[0].system)
        }
    }
}

pub fn model_system(spec: &ModelSpec) -> Result<QuadricSystem> {
    Ok(model_ii(spec)?.system())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_and_serde() {
        assert!(ModelSpec::Grass { m: 3 }.validate().is_err());
        assert!(ModelSpec::Segre { n: 1, m: 0 }.validate().is_err());
        assert!(ModelSpec::Cayley.validate().is_ok());
        let s = ModelSpec::Segre { n: 2, m: 3 };
        assert_eq!(s.to_string(), "segre(2,3)");
        for spec in ModelSpec::catalogue() {
            assert!(spec.validate().is_ok());
        }
        assert_eq!(model_system(&ModelSpec::Grass { m: 6 }).unwrap().dim(), 6);
    }
}
