use std::sync::Arc;

use num_traits::{One, Zero};

use crate::linalg::{int, Mat, Scalar, Solver, SparseSystem, Subspace};
use crate::symtensor::{multinomial, MonomialBasis, NValuedForm, SymTensor};
use crate::Result;

/// A linear map `Q^k -> S^d T* ⊗ N`, stored by columns. Codomain index
/// `mu * L + m` with `m` a monomial of degree `d`, polynomial coefficients.
#[derive(Debug, Clone)]
pub struct FormMap {
    n: usize,
    a: usize,
    d: usize,
    basis: Arc<MonomialBasis>,
    cols: Vec<Vec<(usize, Scalar)>>,
}

impl FormMap {
    pub(crate) fn from_columns(n: usize, a: usize, d: usize, columns: Vec<Vec<SymTensor>>) -> Self {
        let basis = MonomialBasis::get(n, d);
        let l = basis.len();
        let cols = columns
            .into_iter()
            .map(|col| {
                debug_assert_eq!(col.len(), a);
                let mut out = Vec::new();
                for (mu, f) in col.iter().enumerate() {
                    for (m, c) in f.terms() {
                        out.push((mu * l + m, c.clone()));
                    }
                }
                out
            })
            .collect();
        FormMap { n, a, d, basis, cols }
    }

    pub fn tangent_dim(&self) -> usize {
        self.n
    }

    pub fn normal_dim(&self) -> usize {
        self.a
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn domain_dim(&self) -> usize {
        self.cols.len()
    }

    pub fn codomain_dim(&self) -> usize {
        self.a * self.basis.len()
    }

    pub fn column(&self, j: usize) -> NValuedForm {
        let mut e = vec![Scalar::zero(); self.domain_dim()];
        e[j] = Scalar::one();
        self.apply(&e)
    }

    pub fn apply(&self, x: &[Scalar]) -> NValuedForm {
        let mut v = vec![Scalar::zero(); self.codomain_dim()];
        for (xj, col) in x.iter().zip(&self.cols) {
            if xj.is_zero() {
                continue;
            }
            for (r, c) in col {
                v[*r] += xj * c;
            }
        }
        let l = self.basis.len();
        let comps = (0..self.a)
            .map(|mu| SymTensor::from_coeffs(self.n, self.d, v[mu * l..(mu + 1) * l].to_vec()).expect("length"))
            .collect();
        NValuedForm::new(comps).expect("at least one component")
    }

    /// Dense matrix, codomain by domain.
    pub fn to_mat(&self) -> Mat {
        let mut m = Mat::zeros(self.codomain_dim(), self.domain_dim());
        for (j, col) in self.cols.iter().enumerate() {
            for (r, c) in col {
                m[(*r, j)] = c.clone();
            }
        }
        m
    }

    fn transpose_system(&self) -> SparseSystem {
        let mut s = SparseSystem::new(self.codomain_dim());
        for col in &self.cols {
            s.push_row(col.iter().cloned());
        }
        s
    }

    pub fn rank(&self, solver: &Solver) -> Result<usize> {
        solver.rank(&self.transpose_system())
    }

    pub fn kernel(&self) -> Result<Subspace> {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.codomain_dim()];
        for (j, col) in self.cols.iter().enumerate() {
            for (r, c) in col {
                rows[*r].push((j, c.clone()));
            }
        }
        let mut s = SparseSystem::new(self.domain_dim());
        for row in rows {
            s.push_row(row);
        }
        Solver::exact().kernel(&s)
    }

    /// Image as a subspace of `S^d T* ⊗ N` (polynomial coordinates).
    pub fn image(&self) -> Subspace {
        let dim = self.codomain_dim();
        let vecs = self
            .cols
            .iter()
            .map(|col| {
                let mut v = vec![Scalar::zero(); dim];
                for (r, c) in col {
                    v[*r] = c.clone();
                }
                v
            })
            .collect();
        Subspace::span(dim, vecs)
    }

    /// Rows in polarized coordinates: for each codomain index, the
    /// `(column, value / multinomial)` entries.
    pub(crate) fn polarized_rows(&self) -> Vec<Vec<(usize, Scalar)>> {
        let l = self.basis.len();
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.codomain_dim()];
        let mults: Vec<Scalar> = (0..l).map(|m| multinomial(self.basis.exps(m))).collect();
        for (j, col) in self.cols.iter().enumerate() {
            for (r, c) in col {
                rows[*r].push((j, c / &mults[r % l]));
            }
        }
        rows
    }
}

/// `dim 𝔥 = n^2 + a^2 + 1`; coordinates `a^δ_β` at `δ n + β`, `b^μ_ν` at
/// `n^2 + μ a + ν`, `λ` last.
pub fn h_dim(n: usize, a: usize) -> usize {
    n * n + a * a + 1
}

fn partials(q: &NValuedForm) -> Vec<Vec<SymTensor>> {
    q.components().iter().map(|f| (0..q.nvars()).map(|i| f.partial(i).expect("degree >= 1")).collect()).collect()
}

/// `σ(a, b, λ)^μ = sum a^δ_β x_β ∂_δ q^μ - sum_ν b^μ_ν q^ν - λ q^μ`, whose
/// polarization is `q^μ_{αδ} a^δ_β + q^μ_{βδ} a^δ_α - b^μ_ν q^ν_{αβ} - λ q^μ_{αβ}`.
pub fn sigma_map(q: &NValuedForm) -> FormMap {
    let (n, a) = (q.nvars(), q.arity());
    let dq = partials(q);
    let mut cols = Vec::with_capacity(h_dim(n, a));
    for delta in 0..n {
        for beta in 0..n {
            let xb = SymTensor::var(n, beta);
            cols.push((0..a).map(|mu| dq[mu][delta].mul(&xb).expect("shape")).collect());
        }
    }
    for mu0 in 0..a {
        for nu in 0..a {
            let mut col = vec![SymTensor::zero(n, 2); a];
            col[mu0] = -q.component(nu);
            cols.push(col);
        }
    }
    cols.push(q.components().iter().map(|f| -f).collect());
    FormMap::from_columns(n, a, 2, cols)
}

/// `σ(h)` from the index formula, as polarized matrices.
pub fn sigma_polarized(q: &NValuedForm, h: &[Scalar]) -> Result<Vec<Mat>> {
    let (n, a) = (q.nvars(), q.arity());
    let qs = q.polar_arrays()?;
    let am = Mat::from_vec(n, n, h[..n * n].to_vec());
    let lambda = &h[n * n + a * a];
    let mut out = Vec::with_capacity(a);
    for mu in 0..a {
        let qa = qs[mu].mul(&am);
        let mut s = Mat::zeros(n, n);
        for al in 0..n {
            for be in 0..n {
                let mut v = &qa[(al, be)] + &qa[(be, al)] - lambda * &qs[mu][(al, be)];
                for nu in 0..a {
                    let b = &h[n * n + mu * a + nu];
                    if !b.is_zero() {
                        v -= b * &qs[nu][(al, be)];
                    }
                }
                s[(al, be)] = v;
            }
        }
        out.push(s);
    }
    Ok(out)
}

/// Kernel of `σ`: infinitesimal symmetries `(a, b, λ)` of `II`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryAlgebra {
    pub tangent_dim: usize,
    pub normal_dim: usize,
    pub space: Subspace,
}

impl SymmetryAlgebra {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

pub fn symmetry_algebra(q: &NValuedForm) -> Result<SymmetryAlgebra> {
    let sigma = sigma_map(q);
    let space = sigma.kernel()?;
    for h in space.basis_vectors() {
        debug_assert!(sigma_polarized(q, &h)?.iter().all(Mat::is_zero));
    }
    Ok(SymmetryAlgebra { tangent_dim: q.nvars(), normal_dim: q.arity(), space })
}

/// Which gauge motion a `GaugeMap` describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaugeOrder {
    /// `Φ : T* ⊕ Hom(N, T) -> S^3 T* ⊗ N`.
    Three,
    /// `Φ₄ : N* -> S^4 T* ⊗ N`.
    Four,
}

#[derive(Debug, Clone)]
pub struct GaugeMap {
    pub order: GaugeOrder,
    pub map: FormMap,
}

/// `Φ(g⁰, g)^μ = 𝔖[g⁰_α q^μ_{βγ}] + 𝔖[g^δ_ν q^ν_{αβ} q^μ_{γδ}]`; columns
/// `g⁰_l` first, then `g^δ_ν` at `n + δ a + ν`. As polynomials the two terms
/// are `6 (g⁰·x) q^μ` and `3 g^δ_ν q^ν ∂_δ q^μ`.
pub fn gauge_f3(q: &NValuedForm) -> GaugeMap {
    let (n, a) = (q.nvars(), q.arity());
    let dq = partials(q);
    let mut cols = Vec::with_capacity(n + n * a);
    for l in 0..n {
        let xl = SymTensor::var(n, l);
        cols.push(q.components().iter().map(|f| f.mul(&xl).expect("shape").scale(&int(6))).collect());
    }
    for delta in 0..n {
        for nu in 0..a {
            cols.push((0..a).map(|mu| q.component(nu).mul(&dq[mu][delta]).expect("shape").scale(&int(3))).collect());
        }
    }
    GaugeMap { order: GaugeOrder::Three, map: FormMap::from_columns(n, a, 3, cols) }
}

/// `Θ(g, g⁰) = -𝔖[q^μ_{αε} q^ν_{βγ} g^ε_ν] + 𝔖[q^μ_{αβ} g⁰_γ]`; columns
/// `g^ε_ν` at `ε a + ν`, then `g⁰_l` at `n a + l`.
pub fn theta_map(q: &NValuedForm) -> FormMap {
    let (n, a) = (q.nvars(), q.arity());
    let dq = partials(q);
    let mut cols = Vec::with_capacity(n * a + n);
    for eps in 0..n {
        for nu in 0..a {
            cols.push((0..a).map(|mu| q.component(nu).mul(&dq[mu][eps]).expect("shape").scale(&int(-3))).collect());
        }
    }
    for l in 0..n {
        let xl = SymTensor::var(n, l);
        cols.push(q.components().iter().map(|f| f.mul(&xl).expect("shape").scale(&int(6))).collect());
    }
    FormMap::from_columns(n, a, 3, cols)
}

/// `Φ₄(g⁰)^μ = 𝔖[q^μ_{αβ} q^ν_{γδ}] g⁰_ν`, i.e. `24 q^μ q^ν` per column `ν`.
pub fn gauge_f4(q: &NValuedForm) -> GaugeMap {
    let a = q.arity();
    let cols = (0..a)
        .map(|nu| (0..a).map(|mu| q.component(mu).mul(q.component(nu)).expect("shape").scale(&int(24))).collect())
        .collect();
    GaugeMap { order: GaugeOrder::Four, map: FormMap::from_columns(q.nvars(), a, 4, cols) }
}

/// The element `(s id_T, t id_N, l)` of `𝔥`.
pub fn h_element(n: usize, a: usize, s: i64, t: i64, l: i64) -> Vec<Scalar> {
    let mut h = vec![Scalar::zero(); h_dim(n, a)];
    for i in 0..n {
        h[i * n + i] = int(s);
    }
    for mu in 0..a {
        h[n * n + mu * a + mu] = int(t);
    }
    h[n * n + a * a] = int(l);
    h
}
