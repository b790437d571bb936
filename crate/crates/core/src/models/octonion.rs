use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::mvpoly::MvPoly;
use crate::linalg::Scalar;

/// Coefficient rings for octonion and Jordan arithmetic.
pub trait Ring:
    Clone + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
}

impl Ring for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

impl Ring for MvPoly {
    fn zero_like(&self) -> Self {
        MvPoly::zero_in(self.nvars())
    }
    fn is_zero_elem(&self) -> bool {
        self.terms().next().is_none()
    }
}

/// Oriented lines of the Fano plane: `e_i e_j = e_k` for each `(i, j, k)`
/// and its cyclic shifts.
pub const FANO_TRIPLES: [(usize, usize, usize); 7] =
    [(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3)];

/// `MUL[i][j] = (sign, k)` with `e_i e_j = sign * e_k`; `e_0 = 1`.
pub fn multiplication_table() -> [[(i8, usize); 8]; 8] {
    let mut t = [[(0i8, 0usize); 8]; 8];
    for i in 0..8 {
        t[0][i] = (1, i);
        t[i][0] = (1, i);
    }
    for i in 1..8 {
        t[i][i] = (-1, 0);
    }
    for &(a, b, c) in &FANO_TRIPLES {
        for (i, j, k) in [(a, b, c), (b, c, a), (c, a, b)] {
            t[i][j] = (1, k);
            t[j][i] = (-1, k);
        }
    }
    t
}

fn table() -> &'static [[(i8, usize); 8]; 8] {
    static T: std::sync::OnceLock<[[(i8, usize); 8]; 8]> = std::sync::OnceLock::new();
    T.get_or_init(multiplication_table)
}

/// An octonion `sum x_i e_i` over a coefficient ring.
#[derive(Debug, Clone, PartialEq)]
pub struct Octonion<T> {
    pub c: [T; 8],
}

impl<T: Ring> Octonion<T> {
    pub fn new(c: [T; 8]) -> Self {
        Octonion { c }
    }

    pub fn zero_like(x: &T) -> Self {
        Octonion { c: std::array::from_fn(|_| x.zero_like()) }
    }

    pub fn conj(&self) -> Self {
        Octonion { c: std::array::from_fn(|i| if i == 0 { self.c[0].clone() } else { -self.c[i].clone() }) }
    }

    /// `x conj(x) = n(x)`, the sum of squares of the coordinates.
    pub fn norm(&self) -> T {
        let mut acc = self.c[0].zero_like();
        for v in &self.c {
            acc = acc + v.clone() * v.clone();
        }
        acc
    }

    pub fn scale(&self, s: &T) -> Self {
        Octonion { c: std::array::from_fn(|i| s.clone() * self.c[i].clone()) }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Ring::is_zero_elem)
    }
}

impl<T: Ring> Add for &Octonion<T> {
    type Output = Octonion<T>;
    fn add(self, rhs: &Octonion<T>) -> Octonion<T> {
        Octonion { c: std::array::from_fn(|i| self.c[i].clone() + rhs.c[i].clone()) }
    }
}

impl<T: Ring> Sub for &Octonion<T> {
    type Output = Octonion<T>;
    fn sub(self, rhs: &Octonion<T>) -> Octonion<T> {
        Octonion { c: std::array::from_fn(|i| self.c[i].clone() - rhs.c[i].clone()) }
    }
}

impl<T: Ring> Mul for &Octonion<T> {
    type Output = Octonion<T>;
    fn mul(self, rhs: &Octonion<T>) -> Octonion<T> {
        let mut out = Octonion::zero_like(&self.c[0]);
        let t = table();
        for i in 0..8 {
            if self.c[i].is_zero_elem() {
                continue;
            }
            for j in 0..8 {
                if rhs.c[j].is_zero_elem() {
                    continue;
                }
                let (s, k) = t[i][j];
                let p = self.c[i].clone() * rhs.c[j].clone();
                out.c[k] = if s > 0 { out.c[k].clone() + p } else { out.c[k].clone() - p };
            }
        }
        out
    }
}

impl Octonion<Scalar> {
    pub fn from_i64(v: [i64; 8]) -> Self {
        Octonion { c: v.map(|x| Scalar::from_integer(x.into())) }
    }

    pub fn one() -> Self {
        let mut c: [Scalar; 8] = std::array::from_fn(|_| Scalar::zero());
        c[0] = Scalar::one();
        Octonion { c }
    }
}

/// A Hermitian 3x3 octonion matrix
/// `[[a1, c3, conj c2], [conj c3, a2, c1], [c2, conj c1, a3]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanElement<T> {
    pub alpha: [T; 3],
    pub c: [Octonion<T>; 3],
}

impl<T: Ring> JordanElement<T> {
    pub fn new(alpha: [T; 3], c: [Octonion<T>; 3]) -> Self {
        JordanElement { alpha, c }
    }

    /// Full matrix of octonion entries.
    pub fn matrix(&self) -> [[Octonion<T>; 3]; 3] {
        let z = &self.alpha[0];
        let real = |a: &T| {
            let mut o = Octonion::zero_like(z);
            o.c[0] = a.clone();
            o
        };
        let [c1, c2, c3] = &self.c;
        [
            [real(&self.alpha[0]), c3.clone(), c2.conj()],
            [c3.conj(), real(&self.alpha[1]), c1.clone()],
            [c2.clone(), c1.conj(), real(&self.alpha[2])],
        ]
    }

    /// The adjugate: `a_i# = a_j a_k - n(c_i)`, `c_i# = conj(c_j c_k) - a_i c_i`
    /// for cyclic `(i, j, k)`.
    pub fn sharp(&self) -> Self {
        let alpha = std::array::from_fn(|i| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            self.alpha[j].clone() * self.alpha[k].clone() - self.c[i].norm()
        });
        let c = std::array::from_fn(|i| {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            &(&self.c[j] * &self.c[k]).conj() - &self.c[i].scale(&self.alpha[i])
        });
        JordanElement { alpha, c }
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.iter().all(Ring::is_zero_elem) && self.c.iter().all(Octonion::is_zero)
    }

    /// Rank at most one: the adjugate vanishes.
    pub fn is_rank_one(&self) -> bool {
        self.sharp().is_zero()
    }
}

impl JordanElement<Scalar> {
    pub fn diag(a: [i64; 3]) -> Self {
        JordanElement {
            alpha: a.map(|x| Scalar::from_integer(x.into())),
            c: std::array::from_fn(|_| Octonion::from_i64([0; 8])),
        }
    }

    /// `X o Y = (XY + YX) / 2`.
    pub fn jordan_product(&self, other: &Self) -> Self {
        let a = self.matrix();
        let b = other.matrix();
        let prod = |x: &[[Octonion<Scalar>; 3]; 3], y: &[[Octonion<Scalar>; 3]; 3], r: usize, s: usize| {
            (0..3).fold(Octonion::from_i64([0; 8]), |acc, k| &acc + &(&x[r][k] * &y[k][s]))
        };
        let half = Scalar::new(1.into(), 2.into());
        let entry = |r: usize, s: usize| (&prod(&a, &b, r, s) + &prod(&b, &a, r, s)).scale(&half);
        JordanElement {
            alpha: [entry(0, 0).c[0].clone(), entry(1, 1).c[0].clone(), entry(2, 2).c[0].clone()],
            c: [entry(1, 2), entry(2, 0), entry(0, 1)],
        }
    }
}

/// Structure constants and operations backing the Cayley-plane chart.
pub struct AlgebraTables {
    pub octonion: [[(i8, usize); 8]; 8],
    pub jordan_product: fn(&JordanElement<Scalar>, &JordanElement<Scalar>) -> JordanElement<Scalar>,
    pub rank_one: fn(&JordanElement<Scalar>) -> bool,
}

pub fn algebra_tables() -> AlgebraTables {
    AlgebraTables {
        octonion: multiplication_table(),
        jordan_product: JordanElement::jordan_product,
        rank_one: JordanElement::is_rank_one,
    }
}
