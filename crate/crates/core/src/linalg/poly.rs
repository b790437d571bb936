use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Mat, Scalar};

/// Polynomial in the deformation parameter `t`, coefficients lowest degree
/// first. The last stored coefficient is nonzero; zero is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PolyScalar {
    coeffs: Vec<Scalar>,
}

impl PolyScalar {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        PolyScalar { coeffs }
    }

    pub fn constant(c: Scalar) -> Self {
        PolyScalar::new(vec![c])
    }

    /// `c * t^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); k + 1];
        coeffs[k] = c;
        PolyScalar::new(coeffs)
    }

    pub fn t() -> Self {
        PolyScalar::monomial(Scalar::one(), 1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order of vanishing at `t = 0`; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        PolyScalar::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Exact division by `t`; the constant term must vanish.
    pub fn div_t(&self) -> Option<Self> {
        match self.coeffs.first() {
            None => Some(PolyScalar::default()),
            Some(c) if c.is_zero() => Some(PolyScalar::new(self.coeffs[1..].to_vec())),
            Some(_) => None,
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &PolyScalar) -> Option<PolyScalar> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(PolyScalar::default());
        }
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n < dd + 1 {
            return None;
        }
        let mut q = vec![Scalar::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            q[k] = c;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(PolyScalar::new(q))
        } else {
            None
        }
    }
}

impl Zero for PolyScalar {
    fn zero() -> Self {
        PolyScalar::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for PolyScalar {
    fn one() -> Self {
        PolyScalar::constant(Scalar::one())
    }
}

impl Add for &PolyScalar {
    type Output = PolyScalar;
    fn add(self, o: &PolyScalar) -> PolyScalar {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyScalar::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &PolyScalar {
    type Output = PolyScalar;
    fn sub(self, o: &PolyScalar) -> PolyScalar {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyScalar::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &PolyScalar {
    type Output = PolyScalar;
    fn mul(self, o: &PolyScalar) -> PolyScalar {
        if self.is_zero() || o.is_zero() {
            return PolyScalar::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyScalar::new(out)
    }
}

impl Neg for &PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        PolyScalar::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PolyScalar {
            type Output = PolyScalar;
            fn $m(self, o: PolyScalar) -> PolyScalar {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Dense matrix over `Q[t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMat {
    rows: usize,
    cols: usize,
    data: Vec<PolyScalar>,
}

impl PolyMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMat { rows, cols, data: vec![PolyScalar::zero(); rows * cols] }
    }

    pub fn constant(m: &Mat) -> Self {
        let mut out = PolyMat::zeros(m.rows(), m.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                out[(r, c)] = PolyScalar::constant(m[(r, c)].clone());
            }
        }
        out
    }

    pub fn identity(n: usize) -> Self {
        PolyMat::constant(&Mat::identity(n))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn eval(&self, t: &Scalar) -> Mat {
        Mat::from_vec(self.rows, self.cols, self.data.iter().map(|p| p.eval(t)).collect())
    }

    pub fn column(&self, c: usize) -> Vec<PolyScalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn set_column(&mut self, c: usize, col: Vec<PolyScalar>) {
        assert_eq!(col.len(), self.rows);
        for (r, v) in col.into_iter().enumerate() {
            self[(r, c)] = v;
        }
    }

    pub fn from_columns(rows: usize, cols: Vec<Vec<PolyScalar>>) -> Self {
        let mut m = PolyMat::zeros(rows, cols.len());
        for (c, col) in cols.into_iter().enumerate() {
            m.set_column(c, col);
        }
        m
    }

    pub fn mul(&self, o: &PolyMat) -> PolyMat {
        assert_eq!(self.cols, o.rows);
        let mut out = PolyMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        self.data.iter().filter_map(PolyScalar::degree).max().unwrap_or(0)
    }

    /// Determinant by fraction-free (Bareiss) elimination over `Q[t]`.
    pub fn det(&self) -> PolyScalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return PolyScalar::one();
        }
        let mut a = self.clone();
        let mut sign = false;
        let mut prev = PolyScalar::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return PolyScalar::zero();
                };
                for c in 0..n {
                    a.data.swap(k * n + c, swap * n + c);
                }
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[(i, j)] * &a[(k, k)]) - &(&a[(i, k)] * &a[(k, j)]);
                    a[(i, j)] = num.div_exact(&prev).expect("Bareiss quotients are exact");
                }
                a[(i, k)] = PolyScalar::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign {
            -&d
        } else {
            d
        }
    }
}

impl std::ops::Index<(usize, usize)> for PolyMat {
    type Output = PolyScalar;
    fn index(&self, (r, c): (usize, usize)) -> &PolyScalar {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut PolyScalar {
        &mut self.data[r * self.cols + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn p(c: &[i64]) -> PolyScalar {
        PolyScalar::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn trimmed_and_arithmetic() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
        assert_eq!(p(&[-1, 0, 1]).div_exact(&p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[0, 3, 4]).div_t(), Some(p(&[3, 4])));
        assert_eq!(p(&[1, 3]).div_t(), None);
        assert_eq!(p(&[0, 0, 5]).valuation(), Some(2));
        assert_eq!(p(&[2, 0, 1]).eval(&int(3)), int(11));
    }

    #[test]
    fn bareiss_determinant() {
        // [[t, 1], [1, t]] -> t^2 - 1
        let mut m = PolyMat::zeros(2, 2);
        m[(0, 0)] = PolyScalar::t();
        m[(0, 1)] = p(&[1]);
        m[(1, 0)] = p(&[1]);
        m[(1, 1)] = PolyScalar::t();
        assert_eq!(m.det(), p(&[-1, 0, 1]));
        // zero pivot forcing a swap: [[0, t], [t^2, 1]] -> -t^3
        let mut m = PolyMat::zeros(2, 2);
        m[(0, 1)] = PolyScalar::t();
        m[(1, 0)] = p(&[0, 0, 1]);
        m[(1, 1)] = p(&[1]);
        assert_eq!(m.det(), p(&[0, 0, 0, -1]));
    }

    #[test]
    fn determinant_matches_evaluation() {
        let mut m = PolyMat::zeros(3, 3);
        let entries = [[1, 2, 0], [0, 1, 3], [2, 0, 1]];
        for (r, row) in entries.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m[(r, c)] = p(&[v, r as i64 - c as i64, 1]);
            }
        }
        let det = m.det();
        for t in [-2i64, 0, 1, 5] {
            let numeric = m.eval(&int(t));
            // cofactor expansion on the evaluated matrix
            let a = |r: usize, c: usize| numeric[(r, c)].clone();
            let d = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
            assert_eq!(det.eval(&int(t)), d);
        }
    }
}
