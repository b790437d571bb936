use num_traits::One;

use super::mvpoly::MvPoly;
use crate::linalg::Scalar;
use crate::symtensor::{NValuedForm, QuadricSystem, SymTensor};
use crate::{Error, Result};

fn pack(components: Vec<SymTensor>) -> Result<(QuadricSystem, NValuedForm)> {
    let form = NValuedForm::new(components)?;
    Ok((form.system(), form))
}

/// Second fundamental form of the Segre variety: components `x_i y_s` on
/// coordinates `(x_1..x_n, y_1..y_m)`.
pub fn build_segre_ii(n: usize, m: usize) -> Result<(QuadricSystem, NValuedForm)> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidModel(format!("segre({n},{m}) needs n, m >= 1")));
    }
    let mut comps = Vec::with_capacity(n * m);
    for i in 0..n {
        for s in 0..m {
            comps.push(SymTensor::monomial(n + m, &[i, n + s], Scalar::one()));
        }
    }
    pack(comps)
}

/// Second fundamental form of `G(2, m)`: the 2x2 minors
/// `x_{1j} x_{2l} - x_{1l} x_{2j}` of a `2 x (m-2)` matrix, variables listed
/// row by row.
pub fn build_grass_ii(m: usize) -> Result<(QuadricSystem, NValuedForm)> {
    if m < 4 {
        return Err(Error::InvalidModel(format!("grass({m}) needs m >= 4")));
    }
    let k = m - 2;
    let mut comps = Vec::new();
    for j in 0..k {
        for l in j + 1..k {
            let a = SymTensor::monomial(2 * k, &[j, k + l], Scalar::one());
            let b = SymTensor::monomial(2 * k, &[l, k + j], Scalar::one());
            comps.push(&a - &b);
        }
    }
    pack(comps)
}

/// Second fundamental form of the quadratic Veronese: all of `S^2 T*`,
/// components `x_i x_j` for `i <= j`.
pub fn build_veronese_ii(n: usize) -> Result<(QuadricSystem, NValuedForm)> {
    if n == 0 {
        return Err(Error::InvalidModel("veronese(0) needs n >= 1".into()));
    }
    let mut comps = Vec::new();
    for i in 0..n {
        for j in i..n {
            comps.push(SymTensor::monomial(n, &[i, j], Scalar::one()));
        }
    }
    pack(comps)
}

/// Index of `w_{ab}`, `a < b < 5`, in lexicographic order.
pub(crate) fn pair_index(a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < 5);
    (0..a).map(|r| 4 - r).sum::<usize>() + (b - a - 1)
}

/// Entry `(a, b)` of the antisymmetric matrix built from `w`.
fn skew(w: &[MvPoly], a: usize, b: usize) -> MvPoly {
    use std::cmp::Ordering::*;
    match a.cmp(&b) {
        Less => w[pair_index(a, b)].clone(),
        Greater => -&w[pair_index(b, a)],
        Equal => MvPoly::zero_in(w[0].nvars()),
    }
}

/// Signed sub-Pfaffians `Pf_i = (-1)^i Pf(w without row/column i)` for
/// `i = 0..5` (the sign `(-1)^{i+1}` in 1-based numbering).
pub(crate) fn sub_pfaffians(w: &[MvPoly]) -> Vec<MvPoly> {
    (0..5)
        .map(|i| {
            let r: Vec<usize> = (0..5).filter(|&x| x != i).collect();
            let (a, b, c, d) = (r[0], r[1], r[2], r[3]);
            let pf = &(&(&skew(w, a, b) * &skew(w, c, d)) - &(&skew(w, a, c) * &skew(w, b, d)))
                + &(&skew(w, a, d) * &skew(w, b, c));
            if i % 2 == 0 {
                pf
            } else {
                -&pf
            }
        })
        .collect()
}

/// Coordinate layout of the spinor quadrics: `s`, then `u_{ij}` for
/// `i < j` in lexicographic order, then `v^1..v^5`.
pub const SPINOR_DIM: usize = 16;

pub(crate) fn spinor_components() -> Vec<SymTensor> {
    let n = SPINOR_DIM;
    let s = MvPoly::var(n, 0);
    let u: Vec<MvPoly> = (0..10).map(|k| MvPoly::var(n, 1 + k)).collect();
    let v: Vec<MvPoly> = (0..5).map(|i| MvPoly::var(n, 11 + i)).collect();
    let pf = sub_pfaffians(&u);
    let mut comps = Vec::with_capacity(10);
    for i in 0..5 {
        comps.push((&(&s * &v[i]) - &pf[i]).homogeneous_part(2));
    }
    for j in 0..5 {
        let mut acc = MvPoly::zero_in(n);
        for (i, vi) in v.iter().enumerate() {
            acc = &acc + &(&skew(&u, i, j) * vi);
        }
        comps.push(acc.homogeneous_part(2));
    }
    comps
}

/// The ten quadrics cutting out the spinor variety in `P^15`.
pub fn build_spinor_quadrics() -> QuadricSystem {
    QuadricSystem::new(SPINOR_DIM, 2, &spinor_components()).expect("spinor quadrics share shape")
}
