use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::monomial::{multinomial, MonomialBasis};
use crate::linalg::{Mat, Scalar};
use crate::{Error, Result};

/// A homogeneous polynomial of degree `d` in `n` variables, identified with a
/// symmetric tensor in `S^d T*`.
#[derive(Debug, Clone)]
pub struct SymTensor {
    basis: Arc<MonomialBasis>,
    coeffs: Vec<Scalar>,
}

impl PartialEq for SymTensor {
    fn eq(&self, other: &Self) -> bool {
        self.nvars() == other.nvars() && self.degree() == other.degree() && self.coeffs == other.coeffs
    }
}

impl Eq for SymTensor {}

impl SymTensor {
    pub fn zero(n: usize, d: usize) -> Self {
        let basis = MonomialBasis::get(n, d);
        let coeffs = vec![Scalar::zero(); basis.len()];
        SymTensor { basis, coeffs }
    }

    pub fn from_coeffs(n: usize, d: usize, coeffs: Vec<Scalar>) -> Result<Self> {
        let basis = MonomialBasis::get(n, d);
        if coeffs.len() != basis.len() {
            return Err(Error::DimensionMismatch { expected: basis.len(), found: coeffs.len() });
        }
        Ok(SymTensor { basis, coeffs })
    }

    /// Builds `sum c * x^e` from `(exponents, coefficient)` pairs.
    pub fn from_terms(n: usize, d: usize, terms: &[(Vec<u8>, Scalar)]) -> Result<Self> {
        let mut t = SymTensor::zero(n, d);
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: e.len() });
            }
            let deg: usize = e.iter().map(|&k| k as usize).sum();
            if deg != d {
                return Err(Error::DegreeMismatch { expected: d, found: deg });
            }
            let i = t.basis.index_of(e).expect("exponent vector of the right degree");
            t.coeffs[i] += c;
        }
        Ok(t)
    }

    pub fn monomial(n: usize, vars: &[usize], c: Scalar) -> Self {
        let mut t = SymTensor::zero(n, vars.len());
        let i = t.basis.index_of_vars(vars);
        t.coeffs[i] = c;
        t
    }

    pub fn var(n: usize, i: usize) -> Self {
        SymTensor::monomial(n, &[i], Scalar::one())
    }

    /// The linear form `sum v_i x_i`.
    pub fn linear(v: &[Scalar]) -> Self {
        SymTensor { basis: MonomialBasis::get(v.len(), 1), coeffs: v.to_vec() }
    }

    pub fn nvars(&self) -> usize {
        self.basis.nvars()
    }

    pub fn degree(&self) -> usize {
        self.basis.degree()
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Scalar> {
        self.coeffs
    }

    pub fn coeff(&self, exps: &[u8]) -> Scalar {
        self.basis.index_of(exps).map(|i| self.coeffs[i].clone()).unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Nonzero terms as `(monomial index, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    fn same_shape(&self, other: &SymTensor) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: other.nvars() });
        }
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), found: other.degree() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &SymTensor) -> Result<SymTensor> {
        self.same_shape(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(SymTensor { basis: self.basis.clone(), coeffs })
    }

    pub fn scale(&self, c: &Scalar) -> SymTensor {
        SymTensor { basis: self.basis.clone(), coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, c: &Scalar, other: &SymTensor) -> Result<()> {
        self.same_shape(other)?;
        if c.is_zero() {
            return Ok(());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
        Ok(())
    }

    /// Polynomial product; degrees add.
    pub fn mul(&self, other: &SymTensor) -> Result<SymTensor> {
        if self.nvars() != other.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: other.nvars() });
        }
        let n = self.nvars();
        let mut out = SymTensor::zero(n, self.degree() + other.degree());
        let mut e = vec![0u8; n];
        for (i, a) in self.terms() {
            let ea = self.basis.exps(i);
            for (j, b) in other.terms() {
                let eb = other.basis.exps(j);
                for k in 0..n {
                    e[k] = ea[k] + eb[k];
                }
                let idx = out.basis.index_of(&e).expect("product degree");
                out.coeffs[idx] += a * b;
            }
        }
        Ok(out)
    }

    /// `d/dx_i`.
    pub fn partial(&self, i: usize) -> Result<SymTensor> {
        let n = self.nvars();
        if i >= n {
            return Err(Error::DimensionMismatch { expected: n, found: i + 1 });
        }
        if self.degree() == 0 {
            return Err(Error::DegreeZero);
        }
        let mut out = SymTensor::zero(n, self.degree() - 1);
        for (k, c) in self.terms() {
            let e = self.basis.exps(k);
            if e[i] == 0 {
                continue;
            }
            let mut f = e.to_vec();
            f[i] -= 1;
            let idx = out.basis.index_of(&f).expect("lower degree");
            out.coeffs[idx] += c * Scalar::from_integer(e[i].into());
        }
        Ok(out)
    }

    /// Directional derivative `sum v_i d/dx_i`.
    pub fn partial_derivative(&self, v: &[Scalar]) -> Result<SymTensor> {
        let n = self.nvars();
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
        if self.degree() == 0 {
            return Err(Error::DegreeZero);
        }
        let mut out = SymTensor::zero(n, self.degree() - 1);
        for (i, vi) in v.iter().enumerate() {
            if !vi.is_zero() {
                out.add_scaled(vi, &self.partial(i)?)?;
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, v: &[Scalar]) -> Result<Scalar> {
        let n = self.nvars();
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
        let mut total = Scalar::zero();
        for (k, c) in self.terms() {
            let mut term = c.clone();
            for (x, &e) in v.iter().zip(self.basis.exps(k)) {
                for _ in 0..e {
                    term *= x;
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// Multilinear value `q(e_{i1}, ..., e_{id})` of the polarization, for
    /// which `q(x, ..., x)` is the polynomial.
    pub fn polarized(&self, vars: &[usize]) -> Scalar {
        let i = self.basis.index_of_vars(vars);
        &self.coeffs[i] / multinomial(self.basis.exps(i))
    }

    /// Symmetric matrix of the polarized quadric.
    pub fn polar_matrix(&self) -> Result<Mat> {
        if self.degree() != 2 {
            return Err(Error::DegreeMismatch { expected: 2, found: self.degree() });
        }
        let n = self.nvars();
        let mut m = Mat::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                m[(a, b)] = self.polarized(&[a, b]);
            }
        }
        Ok(m)
    }

    pub fn from_polar_matrix(m: &Mat) -> Result<SymTensor> {
        let n = m.rows();
        if m.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: m.cols() });
        }
        let mut t = SymTensor::zero(n, 2);
        for a in 0..n {
            for b in 0..n {
                let idx = t.basis.index_of_vars(&[a, b]);
                t.coeffs[idx] += &m[(a, b)];
            }
        }
        Ok(t)
    }

    /// Polarized bilinear form `q(v, w)` of a quadric.
    pub fn bilinear(&self, v: &[Scalar], w: &[Scalar]) -> Result<Scalar> {
        let m = self.polar_matrix()?;
        if w.len() != m.rows() {
            return Err(Error::DimensionMismatch { expected: m.rows(), found: w.len() });
        }
        let mw = m.mul_vec(w);
        if v.len() != mw.len() {
            return Err(Error::DimensionMismatch { expected: mw.len(), found: v.len() });
        }
        Ok(v.iter().zip(&mw).map(|(a, b)| a * b).sum())
    }

    /// Substitutes `x = g y`: the result is `y -> q(g y)`, a form in
    /// `g.cols()` variables.
    pub fn pullback(&self, g: &Mat) -> Result<SymTensor> {
        let n = self.nvars();
        if g.rows() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.rows() });
        }
        let m = g.cols();
        let rows: Vec<SymTensor> = (0..n).map(|i| SymTensor::linear(g.row(i))).collect();
        let mut out = SymTensor::zero(m, self.degree());
        for (k, c) in self.terms() {
            let mut term = SymTensor::from_coeffs(m, 0, vec![c.clone()])?;
            for v in self.basis.vars_of(k) {
                term = term.mul(&rows[v])?;
            }
            out.add_scaled(&Scalar::one(), &term)?;
        }
        Ok(out)
    }

    /// All polarized values as a full tensor.
    pub fn to_full(&self) -> FullTensor {
        let n = self.nvars();
        FullTensor::from_fn(n, self.degree(), |idx| self.polarized(idx))
    }
}

impl Add for &SymTensor {
    type Output = SymTensor;
    fn add(self, rhs: &SymTensor) -> SymTensor {
        self.try_add(rhs).expect("shape mismatch in tensor sum")
    }
}

impl Sub for &SymTensor {
    type Output = SymTensor;
    fn sub(self, rhs: &SymTensor) -> SymTensor {
        self.try_add(&-rhs).expect("shape mismatch in tensor difference")
    }
}

impl Neg for &SymTensor {
    type Output = SymTensor;
    fn neg(self) -> SymTensor {
        SymTensor { basis: self.basis.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

/// A tensor in `(T*)^{(x) d}` with no symmetry, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullTensor {
    n: usize,
    d: usize,
    values: Vec<Scalar>,
}

impl FullTensor {
    pub fn zero(n: usize, d: usize) -> Self {
        FullTensor { n, d, values: vec![Scalar::zero(); n.pow(d as u32)] }
    }

    pub fn from_fn(n: usize, d: usize, mut f: impl FnMut(&[usize]) -> Scalar) -> Self {
        let mut t = FullTensor::zero(n, d);
        let mut idx = vec![0usize; d];
        for flat in 0..t.values.len() {
            let mut r = flat;
            for k in (0..d).rev() {
                idx[k] = r % n;
                r /= n;
            }
            t.values[flat] = f(&idx);
        }
        t
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.d
    }

    fn flat(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.d, "index length");
        idx.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    pub fn get(&self, idx: &[usize]) -> &Scalar {
        &self.values[self.flat(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: Scalar) {
        let f = self.flat(idx);
        self.values[f] = v;
    }

    pub fn add_at(&mut self, idx: &[usize], v: &Scalar) {
        let f = self.flat(idx);
        self.values[f] += v;
    }
}

/// Sum over all `d!` index permutations, returned as a polynomial: the
/// coefficient of `x^e` is `d!` times the sum of the entries whose index
/// multiset is `e`.
pub fn symmetrize(t: &FullTensor) -> SymTensor {
    let mut out = SymTensor::zero(t.n, t.d);
    let mut idx = vec![0usize; t.d];
    for (flat, v) in t.values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let mut r = flat;
        for k in (0..t.d).rev() {
            idx[k] = r % t.n;
            r /= t.n;
        }
        let i = out.basis.index_of_vars(&idx);
        out.coeffs[i] += v;
    }
    let fact: Scalar = Scalar::from_integer((1..=t.d).product::<usize>().into());
    for c in out.coeffs.iter_mut() {
        *c *= &fact;
    }
    out
}
