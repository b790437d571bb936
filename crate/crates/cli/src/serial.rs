//! JSON documents for quadric systems and parameterizations. Coefficients
//! are exact rational strings, `"p/q"` or `"p"`.

use serde::{Deserialize, Serialize};

use prolongkit::linalg::{parse_scalar, scalar_to_string};
use prolongkit::models::{MvPoly, Parameterization};
use prolongkit::symtensor::{SymTensor, TensorSystem};
use prolongkit::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub exps: Vec<u8>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDoc {
    pub ambient_dim: usize,
    pub degree: usize,
    pub basis: Vec<Vec<Term>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamDoc {
    pub chart_dim: usize,
    pub target_dim: usize,
    pub base: Vec<String>,
    pub polys: Vec<Vec<Term>>,
}

impl SystemDoc {
    pub fn from_system(a: &TensorSystem) -> Self {
        let basis = a
            .basis()
            .iter()
            .map(|q| {
                q.terms().map(|(i, c)| Term { exps: q.basis().exps(i).to_vec(), coeff: scalar_to_string(c) }).collect()
            })
            .collect();
        SystemDoc { ambient_dim: a.nvars(), degree: a.degree(), basis }
    }

    pub fn to_system(&self) -> Result<TensorSystem> {
        let forms: Vec<SymTensor> = self
            .basis
            .iter()
            .map(|terms| {
                let parsed = parse_terms(terms, self.ambient_dim, Some(self.degree))?;
                SymTensor::from_terms(self.ambient_dim, self.degree, &parsed)
            })
            .collect::<Result<_>>()?;
        TensorSystem::new(self.ambient_dim, self.degree, &forms)
    }
}

impl ParamDoc {
    pub fn from_param(p: &Parameterization) -> Self {
        ParamDoc {
            chart_dim: p.chart_dim(),
            target_dim: p.target_dim(),
            base: p.base().iter().map(scalar_to_string).collect(),
            polys: p
                .polys()
                .iter()
                .map(|f| f.terms().map(|(e, c)| Term { exps: e.to_vec(), coeff: scalar_to_string(c) }).collect())
                .collect(),
        }
    }

    pub fn to_param(&self) -> Result<Parameterization> {
        if self.polys.len() != self.target_dim {
            return Err(Error::Parse(format!("expected {} polynomials, found {}", self.target_dim, self.polys.len())));
        }
        let polys = self
            .polys
            .iter()
            .map(|terms| {
                let mut f = MvPoly::zero_in(self.chart_dim);
                for (e, c) in parse_terms(terms, self.chart_dim, None)? {
                    f.add_term(e, c);
                }
                Ok(f)
            })
            .collect::<Result<_>>()?;
        let base = self.base.iter().map(|s| parse_scalar(s)).collect::<Result<_>>()?;
        Parameterization::new(self.chart_dim, polys, base)
    }
}

fn parse_terms(
    terms: &[Term],
    nvars: usize,
    degree: Option<usize>,
) -> Result<Vec<(Vec<u8>, prolongkit::linalg::Scalar)>> {
    terms
        .iter()
        .map(|t| {
            if t.exps.len() != nvars {
                return Err(Error::Parse(format!("exponent vector {:?} has length {}, expected {nvars}", t.exps, t.exps.len())));
            }
            let total: usize = t.exps.iter().map(|&e| e as usize).sum();
            if degree.is_some_and(|d| d != total) {
                return Err(Error::Parse(format!("exponent vector {:?} has degree {total}", t.exps)));
            }
            Ok((t.exps.clone(), parse_scalar(&t.coeff)?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use prolongkit::models::{build_parameterization, build_segre_ii, ModelSpec};

    #[test]
    fn segre_1_1_document() {
        let doc = SystemDoc::from_system(&build_segre_ii(1, 1).unwrap().0);
        assert_eq!(doc.basis, vec![vec![Term { exps: vec![1, 1], coeff: "1".into() }]]);
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(json, r#"{"ambient_dim":2,"degree":2,"basis":[[{"exps":[1,1],"coeff":"1"}]]}"#);
    }

    #[test]
    fn malformed_terms_are_rejected() {
        let doc = SystemDoc { ambient_dim: 2, degree: 2, basis: vec![vec![Term { exps: vec![1, 0], coeff: "1".into() }]] };
        assert!(doc.to_system().is_err());
        let doc = SystemDoc { ambient_dim: 2, degree: 2, basis: vec![vec![Term { exps: vec![2, 0], coeff: "1/0".into() }]] };
        assert!(doc.to_system().is_err());
    }

    #[test]
    fn parameterization_round_trip() {
        let p = build_parameterization(&ModelSpec::Grass { m: 5 }).unwrap();
        assert_eq!(ParamDoc::from_param(&p).to_param().unwrap(), p);
    }
}
