use num_traits::Zero;

use super::{Mat, Scalar};
use crate::{Error, Result};

/// A linear subspace of `Q^n`, held as the reduced row-echelon basis of its
/// span. The RREF basis is unique, so derived equality is basis independent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Mat::zeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Mat::identity(ambient) }
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let (basis, _) = Mat::from_rows(ambient, vectors).rref();
        Subspace { ambient, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vecs()
    }

    fn check(&self, other: usize) -> Result<()> {
        if self.ambient != other {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        self.check(v.len())?;
        let mut rest = v.to_vec();
        for r in 0..self.dim() {
            let row = self.basis.row(r);
            let pc = row.iter().position(|x| !x.is_zero()).expect("RREF rows are nonzero");
            if rest[pc].is_zero() {
                continue;
            }
            let f = rest[pc].clone();
            for (x, y) in rest.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        Ok(rest.iter().all(Zero::is_zero))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check(other.ambient)?;
        for v in self.basis.row_vecs() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other.ambient)?;
        let mut vs = self.basis.row_vecs();
        vs.extend(other.basis.row_vecs());
        Ok(Subspace::span(self.ambient, vs))
    }

    /// Linear functionals vanishing on the subspace, in the dual coordinates.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.ambient);
        }
        self.basis.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other.ambient)?;
        let mut eqs = self.annihilator().basis_vectors();
        eqs.extend(other.annihilator().basis_vectors());
        if eqs.is_empty() {
            return Ok(Subspace::full(self.ambient));
        }
        Ok(Mat::from_rows(self.ambient, eqs).kernel())
    }

    /// `dim self - dim sub`, requiring `sub` to lie in `self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize> {
        if !sub.is_subspace_of(self)? {
            return Err(Error::NotContained);
        }
        Ok(self.dim() - sub.dim())
    }

    /// Image under the linear map `m` (columns indexed by this ambient space).
    pub fn image(&self, m: &Mat) -> Result<Subspace> {
        self.check(m.cols())?;
        Ok(Subspace::span(m.rows(), self.basis.row_vecs().iter().map(|v| m.mul_vec(v)).collect()))
    }
}
