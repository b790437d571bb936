use num_traits::Zero;

use super::builders::{pair_index, sub_pfaffians};
use super::mvpoly::MvPoly;
use super::octonion::Octonion;
use super::spec::ModelSpec;
use crate::linalg::{Mat, Scalar, Subspace};
use crate::symtensor::{MonomialBasis, SymTensor, TensorSystem};
use crate::{Error, Result};

/// A polynomial map `Q^n -> Q^M` with a base point in the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parameterization {
    n: usize,
    polys: Vec<MvPoly>,
    base: Vec<Scalar>,
}

impl Parameterization {
    pub fn new(n: usize, polys: Vec<MvPoly>, base: Vec<Scalar>) -> Result<Self> {
        if base.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: base.len() });
        }
        if let Some(p) = polys.iter().find(|p| p.nvars() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: p.nvars() });
        }
        Ok(Parameterization { n, polys, base })
    }

    pub fn chart_dim(&self) -> usize {
        self.n
    }

    pub fn target_dim(&self) -> usize {
        self.polys.len()
    }

    pub fn polys(&self) -> &[MvPoly] {
        &self.polys
    }

    pub fn base(&self) -> &[Scalar] {
        &self.base
    }

    pub fn with_base(&self, base: Vec<Scalar>) -> Result<Self> {
        Parameterization::new(self.n, self.polys.clone(), base)
    }

    /// Jacobian at the base point, `M x n`.
    pub fn jacobian(&self) -> Result<Mat> {
        let mut j = Mat::zeros(self.polys.len(), self.n);
        for (r, p) in self.polys.iter().enumerate() {
            let lin = p.shift(&self.base)?.homogeneous_part(1);
            for c in 0..self.n {
                j[(r, c)] = lin.coeffs()[c].clone();
            }
        }
        Ok(j)
    }
}

fn vars(n: usize) -> Vec<MvPoly> {
    (0..n).map(|i| MvPoly::var(n, i)).collect()
}

fn octonion_of(v: &[MvPoly]) -> Octonion<MvPoly> {
    Octonion::new(std::array::from_fn(|i| v[i].clone()))
}

/// Affine chart of the model variety with base point `0`.
///
/// Segre: `(u, v) -> (u, v, u_i v_s)`. Veronese: `u -> (u, u_i u_j)`.
/// Grass: a `2 x (m-2)` matrix to itself and its 2x2 minors. Spinor5:
/// `w -> (w, Pf_i(w))`. Cayley: `(x, y) in O^2 -> (x, y, n(x), n(y), conj(x) y)`,
/// the affine chart of the rank-one locus of the exceptional Jordan algebra
/// at `diag(1, 0, 0)`.
pub fn build_parameterization(spec: &ModelSpec) -> Result<Parameterization> {
    spec.validate()?;
    let (n, polys) = match *spec {
        ModelSpec::Segre { n, m } => {
            let x = vars(n + m);
            let mut out = x.clone();
            for i in 0..n {
                for s in 0..m {
                    out.push(&x[i] * &x[n + s]);
                }
            }
            (n + m, out)
        }
        ModelSpec::Veronese { n } => {
            let x = vars(n);
            let mut out = x.clone();
            for i in 0..n {
                for j in i..n {
                    out.push(&x[i] * &x[j]);
                }
            }
            (n, out)
        }
        ModelSpec::Grass { m } => {
            let k = m - 2;
            let x = vars(2 * k);
            let mut out = x.clone();
            for j in 0..k {
                for l in j + 1..k {
                    out.push(&(&x[j] * &x[k + l]) - &(&x[l] * &x[k + j]));
                }
            }
            (2 * k, out)
        }
        ModelSpec::Spinor5 => {
            let w = vars(10);
            debug_assert_eq!(pair_index(3, 4), 9);
            let mut out = w.clone();
            out.extend(sub_pfaffians(&w));
            (10, out)
        }
        ModelSpec::Cayley => {
            let v = vars(16);
            let x = octonion_of(&v[..8]);
            let y = octonion_of(&v[8..]);
            let mut out = v.clone();
            out.push(x.norm());
            out.push(y.norm());
            out.extend((&x.conj() * &y).c);
            (16, out)
        }
    };
    let p = Parameterization::new(n, polys, vec![Scalar::zero(); n])?;
    let rank = p.jacobian()?.rank();
    if rank != n {
        return Err(Error::JacobianRankDeficient { rank, expected: n });
    }
    Ok(p)
}

/// The order-`k` fundamental form of a parameterization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalForm {
    pub order: usize,
    pub dim: usize,
    pub system: TensorSystem,
}

/// `FF^k` for `k = 2..=k_max`: the degree-`k` Taylor coefficients at the
/// base point paired with the normal functionals that kill every lower-order
/// coefficient vector.
pub fn fundamental_forms(p: &Parameterization, k_max: usize) -> Result<Vec<FundamentalForm>> {
    if k_max < 2 {
        return Err(Error::InvalidModel(format!("k_max = {k_max} must be at least 2")));
    }
    let n = p.chart_dim();
    let big_m = p.target_dim();
    let shifted: Vec<MvPoly> = p.polys().iter().map(|f| f.shift(p.base())).collect::<Result<_>>()?;
    let rank = p.jacobian()?.rank();
    if rank != n {
        return Err(Error::JacobianRankDeficient { rank, expected: n });
    }
    let mut flag = Subspace::zero(big_m);
    let mut out = Vec::new();
    for k in 1..=k_max {
        let parts: Vec<SymTensor> = shifted.iter().map(|f| f.homogeneous_part(k)).collect();
        if k >= 2 {
            let normals = flag.annihilator().basis_vectors();
            let forms: Vec<SymTensor> = normals
                .iter()
                .map(|lam| {
                    let mut acc = SymTensor::zero(n, k);
                    for (l, part) in lam.iter().zip(&parts) {
                        acc.add_scaled(l, part).expect("same shape");
                    }
                    acc
                })
                .collect();
            let system = TensorSystem::new(n, k, &forms)?;
            out.push(FundamentalForm { order: k, dim: system.dim(), system });
        }
        let len = MonomialBasis::get(n, k).len();
        let columns: Vec<Vec<Scalar>> =
            (0..len).map(|t| parts.iter().map(|f| f.coeffs()[t].clone()).collect()).collect();
        flag = flag.sum(&Subspace::span(big_m, columns))?;
    }
    Ok(out)
}
