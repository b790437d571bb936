use num_traits::Zero;

use super::monomial::MonomialBasis;
use super::tensor::SymTensor;
use crate::linalg::{Mat, Scalar, Solver, SparseSystem, Subspace};
use crate::{Error, Result};

/// A linear subspace of `S^d T*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSystem {
    n: usize,
    d: usize,
    space: Subspace,
}

/// A system of quadrics, `A ⊂ S^2 T*`.
pub type QuadricSystem = TensorSystem;

impl TensorSystem {
    pub fn new(n: usize, d: usize, tensors: &[SymTensor]) -> Result<Self> {
        for t in tensors {
            if t.nvars() != n {
                return Err(Error::DimensionMismatch { expected: n, found: t.nvars() });
            }
            if t.degree() != d {
                return Err(Error::DegreeMismatch { expected: d, found: t.degree() });
            }
        }
        let len = MonomialBasis::get(n, d).len();
        Ok(TensorSystem { n, d, space: Subspace::span(len, tensors.iter().map(|t| t.coeffs().to_vec()).collect()) })
    }

    pub fn from_subspace(n: usize, d: usize, space: Subspace) -> Result<Self> {
        let len = MonomialBasis::get(n, d).len();
        if space.ambient_dim() != len {
            return Err(Error::DimensionMismatch { expected: len, found: space.ambient_dim() });
        }
        Ok(TensorSystem { n, d, space })
    }

    pub fn zero(n: usize, d: usize) -> Self {
        TensorSystem { n, d, space: Subspace::zero(MonomialBasis::get(n, d).len()) }
    }

    pub fn full(n: usize, d: usize) -> Self {
        TensorSystem { n, d, space: Subspace::full(MonomialBasis::get(n, d).len()) }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn codim(&self) -> usize {
        self.space.ambient_dim() - self.dim()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    /// Canonical (reduced echelon) basis.
    pub fn basis(&self) -> Vec<SymTensor> {
        self.space
            .basis_vectors()
            .into_iter()
            .map(|c| SymTensor::from_coeffs(self.n, self.d, c).expect("coefficient length"))
            .collect()
    }

    fn check(&self, n: usize, d: usize) -> Result<()> {
        if n != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: n });
        }
        if d != self.d {
            return Err(Error::DegreeMismatch { expected: self.d, found: d });
        }
        Ok(())
    }

    pub fn contains(&self, t: &SymTensor) -> Result<bool> {
        self.check(t.nvars(), t.degree())?;
        self.space.contains(t.coeffs())
    }

    pub fn is_subspace_of(&self, other: &TensorSystem) -> Result<bool> {
        self.check(other.n, other.d)?;
        self.space.is_subspace_of(&other.space)
    }

    pub fn intersect(&self, other: &TensorSystem) -> Result<TensorSystem> {
        self.check(other.n, other.d)?;
        Ok(TensorSystem { n: self.n, d: self.d, space: self.space.intersect(&other.space)? })
    }

    pub fn sum(&self, other: &TensorSystem) -> Result<TensorSystem> {
        self.check(other.n, other.d)?;
        Ok(TensorSystem { n: self.n, d: self.d, space: self.space.sum(&other.space)? })
    }

    /// `{ q(g y) : q in self }` as a system in `g.cols()` variables.
    pub fn pullback(&self, g: &Mat) -> Result<TensorSystem> {
        let moved: Vec<SymTensor> = self.basis().iter().map(|q| q.pullback(g)).collect::<Result<_>>()?;
        TensorSystem::new(g.cols(), self.d, &moved)
    }

    /// The degree `d + 1` piece of the ideal generated by the system.
    pub fn ideal_piece(&self) -> Result<TensorSystem> {
        let mut gens = Vec::with_capacity(self.dim() * self.n);
        for q in self.basis() {
            for l in 0..self.n {
                gens.push(q.mul(&SymTensor::var(self.n, l))?);
            }
        }
        TensorSystem::new(self.n, self.d + 1, &gens)
    }

    /// Dimension of the degree-`target` piece of the generated ideal,
    /// computed by a sparse rank under `solver`.
    pub fn ideal_degree_dim(&self, target: usize, solver: &Solver) -> Result<usize> {
        if target < self.d {
            return Err(Error::DegreeMismatch { expected: self.d, found: target });
        }
        let extra = MonomialBasis::get(self.n, target - self.d);
        let out = MonomialBasis::get(self.n, target);
        let mut sys = SparseSystem::new(out.len());
        let mut e = vec![0u8; self.n];
        for q in self.basis() {
            let terms: Vec<(&[u8], &Scalar)> = q.terms().map(|(i, c)| (q.basis().exps(i), c)).collect();
            for m in extra.iter() {
                let row = terms.iter().map(|(eq, c)| {
                    for k in 0..self.n {
                        e[k] = eq[k] + m[k];
                    }
                    (out.index_of(&e).expect("target degree"), (*c).clone())
                });
                let row: Vec<(usize, Scalar)> = row.filter(|(_, c)| !c.is_zero()).collect();
                sys.push_row(row);
            }
        }
        solver.rank(&sys)
    }
}
