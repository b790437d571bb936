use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::linalg::Scalar;
use crate::symtensor::SymTensor;
use crate::{Error, Result};

/// A (not necessarily homogeneous) polynomial in a fixed number of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MvPoly {
    n: usize,
    terms: BTreeMap<Vec<u8>, Scalar>,
}

impl MvPoly {
    pub fn zero_in(n: usize) -> Self {
        MvPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        let mut p = MvPoly::zero_in(n);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0u8; n];
        e[i] = 1;
        let mut p = MvPoly::zero_in(n);
        p.add_term(e, Scalar::one());
        p
    }

    pub fn from_form(f: &SymTensor) -> Self {
        let mut p = MvPoly::zero_in(f.nvars());
        for (i, c) in f.terms() {
            p.add_term(f.basis().exps(i).to_vec(), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &Scalar)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn add_term(&mut self, exps: Vec<u8>, c: Scalar) {
        assert_eq!(exps.len(), self.n, "exponent length");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps).or_insert_with(Scalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&k| k as usize).sum()).max()
    }

    pub fn scale(&self, c: &Scalar) -> MvPoly {
        let mut out = MvPoly::zero_in(self.n);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn evaluate(&self, x: &[Scalar]) -> Result<Scalar> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        let mut total = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitutes `x_i -> subs[i]`; all substitutes share one variable count.
    pub fn compose(&self, subs: &[MvPoly]) -> Result<MvPoly> {
        if subs.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: subs.len() });
        }
        let m = subs.first().map(MvPoly::nvars).unwrap_or(0);
        let mut out = MvPoly::zero_in(m);
        for (e, c) in &self.terms {
            let mut t = MvPoly::constant(m, c.clone());
            for (s, &k) in subs.iter().zip(e) {
                for _ in 0..k {
                    t = &t * s;
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// The polynomial `h -> p(u0 + h)`.
    pub fn shift(&self, u0: &[Scalar]) -> Result<MvPoly> {
        if u0.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: u0.len() });
        }
        if u0.iter().all(Zero::is_zero) {
            return Ok(self.clone());
        }
        let subs: Vec<MvPoly> = (0..self.n)
            .map(|i| &MvPoly::var(self.n, i) + &MvPoly::constant(self.n, u0[i].clone()))
            .collect();
        self.compose(&subs)
    }

    /// Degree-`k` homogeneous part.
    pub fn homogeneous_part(&self, k: usize) -> SymTensor {
        let mut f = SymTensor::zero(self.n, k);
        let terms: Vec<(Vec<u8>, Scalar)> = self
            .terms
            .iter()
            .filter(|(e, _)| e.iter().map(|&x| x as usize).sum::<usize>() == k)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        if !terms.is_empty() {
            f = SymTensor::from_terms(self.n, k, &terms).expect("homogeneous terms");
        }
        f
    }
}

impl Add for &MvPoly {
    type Output = MvPoly;
    fn add(self, rhs: &MvPoly) -> MvPoly {
        assert_eq!(self.n, rhs.n, "variable count");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MvPoly {
    type Output = MvPoly;
    fn sub(self, rhs: &MvPoly) -> MvPoly {
        self + &(-rhs)
    }
}

impl Neg for &MvPoly {
    type Output = MvPoly;
    fn neg(self) -> MvPoly {
        MvPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &MvPoly {
    type Output = MvPoly;
    fn mul(self, rhs: &MvPoly) -> MvPoly {
        assert_eq!(self.n, rhs.n, "variable count");
        let mut acc: BTreeMap<Vec<u8>, Scalar> = BTreeMap::new();
        for (ea, a) in &self.terms {
            for (eb, b) in &rhs.terms {
                let e: Vec<u8> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_insert_with(Scalar::zero) += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        MvPoly { n: self.n, terms: acc }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for MvPoly {
            type Output = MvPoly;
            fn $f(self, rhs: MvPoly) -> MvPoly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for MvPoly {
    type Output = MvPoly;
    fn neg(self) -> MvPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn arithmetic_and_shift() {
        let x = MvPoly::var(2, 0);
        let y = MvPoly::var(2, 1);
        let p = &(&x * &x) - &(&x * &y);
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.evaluate(&[int(3), int(1)]).unwrap(), int(6));
        let s = p.shift(&[int(1), int(2)]).unwrap();
        assert_eq!(s.evaluate(&[int(2), int(-1)]).unwrap(), int(6));
        assert!((&p - &p).terms().next().is_none());
        assert_eq!(p.homogeneous_part(2).coeff(&[1, 1]), int(-1));
        assert!(s.homogeneous_part(1).coeff(&[1, 0]) == int(0));
    }
}
