use num_traits::Zero;

use super::system::TensorSystem;
use super::tensor::SymTensor;
use crate::linalg::{Mat, Scalar};
use crate::{Error, Result};

/// An `N`-valued symmetric form: one component `q^mu in S^d T*` for each
/// basis vector of `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NValuedForm {
    n: usize,
    d: usize,
    components: Vec<SymTensor>,
}

impl NValuedForm {
    pub fn new(components: Vec<SymTensor>) -> Result<Self> {
        let first = components.first().ok_or(Error::InvalidModel("form with no components".into()))?;
        let (n, d) = (first.nvars(), first.degree());
        for c in &components {
            if c.nvars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: c.nvars() });
            }
            if c.degree() != d {
                return Err(Error::DegreeMismatch { expected: d, found: c.degree() });
            }
        }
        Ok(NValuedForm { n, d, components })
    }

    /// Any basis of `system`, one component per basis element.
    pub fn from_system(system: &TensorSystem) -> Result<Self> {
        NValuedForm::new(system.basis())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    /// `dim N`.
    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[SymTensor] {
        &self.components
    }

    pub fn component(&self, mu: usize) -> &SymTensor {
        &self.components[mu]
    }

    pub fn system(&self) -> TensorSystem {
        TensorSystem::new(self.n, self.d, &self.components).expect("components share shape")
    }

    /// Polarized arrays `q[mu][alpha][beta]` of a quadratic form.
    pub fn polar_arrays(&self) -> Result<Vec<Mat>> {
        self.components.iter().map(SymTensor::polar_matrix).collect()
    }

    /// `x -> q(g x)` componentwise.
    pub fn pullback(&self, g: &Mat) -> Result<NValuedForm> {
        NValuedForm::new(self.components.iter().map(|q| q.pullback(g)).collect::<Result<_>>()?)
    }

    /// Change of basis on `N`: component `mu` becomes `sum_nu b[mu][nu] q^nu`.
    pub fn mix(&self, b: &Mat) -> Result<NValuedForm> {
        if b.cols() != self.arity() {
            return Err(Error::DimensionMismatch { expected: self.arity(), found: b.cols() });
        }
        let mut out = Vec::with_capacity(b.rows());
        for mu in 0..b.rows() {
            let mut acc = SymTensor::zero(self.n, self.d);
            for (nu, q) in self.components.iter().enumerate() {
                let c: &Scalar = &b[(mu, nu)];
                if !c.is_zero() {
                    acc.add_scaled(c, q)?;
                }
            }
            out.push(acc);
        }
        NValuedForm::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn mixing_keeps_the_span() {
        let q0 = SymTensor::monomial(2, &[0, 0], int(1));
        let q1 = SymTensor::monomial(2, &[0, 1], int(1));
        let f = NValuedForm::new(vec![q0, q1]).unwrap();
        let g = f.mix(&Mat::from_i64(&[&[1, 1], &[0, 2]])).unwrap();
        assert_eq!(f.system(), g.system());
        assert_eq!(f.polar_arrays().unwrap()[1], Mat::from_vec(2, 2, vec![int(0), Scalar::new(1.into(), 2.into()), Scalar::new(1.into(), 2.into()), int(0)]));
        assert!(NValuedForm::new(vec![]).is_err());
        assert!(NValuedForm::new(vec![SymTensor::var(2, 0), SymTensor::var(3, 0)]).is_err());
    }
}
