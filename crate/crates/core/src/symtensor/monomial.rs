use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::linalg::Scalar;

/// All exponent vectors of total degree `d` in `n` variables, in
/// lexicographically descending order (`x1^d` first).
#[derive(Debug)]
pub struct MonomialBasis {
    n: usize,
    d: usize,
    exps: Vec<Vec<u8>>,
    index: HashMap<Vec<u8>, usize>,
}

impl MonomialBasis {
    /// Shared basis for `(n, d)`; bases are built once and cached.
    pub fn get(n: usize, d: usize) -> Arc<MonomialBasis> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<MonomialBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().expect("monomial cache poisoned");
        guard.entry((n, d)).or_insert_with(|| Arc::new(MonomialBasis::build(n, d))).clone()
    }

    fn build(n: usize, d: usize) -> Self {
        assert!(d < 256, "degree too large");
        let mut exps = Vec::new();
        let mut cur = vec![0u8; n];
        fill(&mut exps, &mut cur, 0, d);
        let index = exps.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        MonomialBasis { n, d, exps, index }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exps(&self, i: usize) -> &[u8] {
        &self.exps[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u8]> {
        self.exps.iter().map(|e| e.as_slice())
    }

    pub fn index_of(&self, exps: &[u8]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    /// Index of the monomial `x_{i1} ... x_{id}` given by a list of variable
    /// indices (any order, repeats allowed).
    pub fn index_of_vars(&self, vars: &[usize]) -> usize {
        debug_assert_eq!(vars.len(), self.d);
        let mut e = vec![0u8; self.n];
        for &v in vars {
            e[v] += 1;
        }
        self.index[&e]
    }

    /// Variable indices of monomial `i`, sorted ascending.
    pub fn vars_of(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.d);
        for (v, &k) in self.exps[i].iter().enumerate() {
            out.extend(std::iter::repeat_n(v, k as usize));
        }
        out
    }
}

fn fill(out: &mut Vec<Vec<u8>>, cur: &mut Vec<u8>, pos: usize, left: usize) {
    if pos + 1 == cur.len() {
        cur[pos] = left as u8;
        out.push(cur.clone());
        return;
    }
    if cur.is_empty() {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e as u8;
        fill(out, cur, pos + 1, left - e);
    }
    cur[pos] = 0;
}

/// `d! / (e_1! ... e_n!)` for the exponent vector `e`.
pub fn multinomial(exps: &[u8]) -> Scalar {
    let d: usize = exps.iter().map(|&e| e as usize).sum();
    let mut num = factorial(d);
    for &e in exps {
        num /= factorial(e as usize);
    }
    Scalar::from_integer(num)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::from(1), |acc, i| acc * i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_order() {
        for n in 1..6 {
            for d in 0..5 {
                assert_eq!(MonomialBasis::get(n, d).len(), binomial(n + d - 1, d));
            }
        }
        let b = MonomialBasis::get(2, 2);
        let listed: Vec<&[u8]> = b.iter().collect();
        assert_eq!(listed, vec![&[2u8, 0][..], &[1, 1], &[0, 2]]);
        assert_eq!(b.index_of_vars(&[1, 0]), 1);
        assert_eq!(b.vars_of(1), vec![0, 1]);
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[1, 1, 1]), Scalar::from_integer(6.into()));
        assert_eq!(multinomial(&[2, 1]), Scalar::from_integer(3.into()));
        assert_eq!(multinomial(&[3]), Scalar::from_integer(1.into()));
    }
}
