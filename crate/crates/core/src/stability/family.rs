use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{flat_limit, int, Mat, PolyMat, PolyScalar, Scalar};
use crate::symtensor::{MonomialBasis, QuadricSystem};
use crate::{Error, Result};

/// `det g(t) = coeff * t^exponent` with `coeff != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetCertificate {
    pub coeff: Scalar,
    pub exponent: usize,
}

/// Rank of the family at a sampled nonzero parameter value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankCertificate {
    pub t0: Scalar,
    pub rank: usize,
}

/// The family `A_t = { q(g(t) y) : q in A }`, stored as the polynomial
/// coefficient columns of the pulled-back basis quadrics.
#[derive(Debug, Clone)]
pub struct DeformationFamily {
    pub n: usize,
    pub dim: usize,
    pub columns: PolyMat,
    pub curve: PolyMat,
    pub det: DetCertificate,
    pub rank: RankCertificate,
}

impl DeformationFamily {
    /// The member `A_t` at a given parameter value.
    pub fn at(&self, t: &Scalar) -> Result<QuadricSystem> {
        QuadricSystem::from_subspace(self.n, 2, self.columns.eval(t).column_space())
    }
}

fn transpose(m: &PolyMat) -> PolyMat {
    let mut out = PolyMat::zeros(m.cols(), m.rows());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out[(c, r)] = m[(r, c)].clone();
        }
    }
    out
}

pub fn make_family(a: &QuadricSystem, g: &PolyMat, seed: u64) -> Result<DeformationFamily> {
    if a.degree() != 2 {
        return Err(Error::DegreeMismatch { expected: 2, found: a.degree() });
    }
    let n = a.nvars();
    if g.rows() != n || g.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: if g.rows() != n { g.rows() } else { g.cols() } });
    }
    let det = g.det();
    let (Some(low), Some(high)) = (det.valuation(), det.degree()) else {
        return Err(Error::SingularCurve);
    };
    if low != high {
        return Err(Error::NotMonomialDeterminant);
    }
    let det = DetCertificate { coeff: det.coeff(low), exponent: low };

    let monomials = MonomialBasis::get(n, 2);
    let gt = transpose(g);
    let mut cols = Vec::with_capacity(a.dim());
    for q in a.basis() {
        let p = gt.mul(&PolyMat::constant(&q.polar_matrix()?)).mul(g);
        let mut col = vec![PolyScalar::zero(); monomials.len()];
        for i in 0..n {
            for j in i..n {
                let k = monomials.index_of_vars(&[i, j]);
                col[k] = if i == j { p[(i, i)].clone() } else { p[(i, j)].scale(&int(2)) };
            }
        }
        cols.push(col);
    }
    let columns = PolyMat::from_columns(monomials.len(), cols);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t0 = Scalar::new(BigInt::from(rng.gen_range(1i64..10_000)), BigInt::from(rng.gen_range(1i64..10_000)));
    let rank = columns.eval(&t0).rank();
    if rank != a.dim() {
        return Err(Error::GenericRankDeficient { rank, expected: a.dim() });
    }
    Ok(DeformationFamily { n, dim: a.dim(), columns, curve: g.clone(), det, rank: RankCertificate { t0, rank } })
}

/// `A_0`, the flat limit of the family at `t = 0`.
pub fn limit(f: &DeformationFamily) -> Result<QuadricSystem> {
    let space = flat_limit(&f.columns, f.dim)?;
    QuadricSystem::from_subspace(f.n, 2, space)
}

/// `g(t) = lower * diag(t^e) * upper` with unitriangular integer factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Degeneration {
    pub lower: Mat,
    pub exponents: Vec<usize>,
    pub upper: Mat,
}

impl Degeneration {
    pub fn curve(&self) -> PolyMat {
        let n = self.exponents.len();
        let mut d = PolyMat::zeros(n, n);
        for (i, &e) in self.exponents.iter().enumerate() {
            d[(i, i)] = PolyScalar::monomial(Scalar::one(), e);
        }
        PolyMat::constant(&self.lower).mul(&d).mul(&PolyMat::constant(&self.upper))
    }

    pub fn det_exponent(&self) -> usize {
        self.exponents.iter().sum()
    }
}

fn unitriangular(n: usize, rng: &mut ChaCha8Rng, lower: bool) -> Mat {
    let mut m = Mat::identity(n);
    for i in 0..n {
        for j in 0..i {
            if rng.gen_bool(0.5) {
                let v: i64 = rng.gen_range(-2..=2);
                let (r, c) = if lower { (i, j) } else { (j, i) };
                m[(r, c)] = int(v);
            }
        }
    }
    m
}

/// Seeded degeneration with diagonal exponents in `0..=2`.
pub fn random_degeneration(n: usize, seed: u64) -> Degeneration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lower = unitriangular(n, &mut rng, true);
    let exponents = (0..n).map(|_| rng.gen_range(0..=2usize)).collect();
    let upper = unitriangular(n, &mut rng, false);
    Degeneration { lower, exponents, upper }
}
