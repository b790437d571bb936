use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::prolong::prolongation;
use crate::linalg::{int, Mat, Scalar, Subspace};
use crate::symtensor::{QuadricSystem, SymTensor, TensorSystem};
use crate::{Error, Result};

fn check_vector(a: &QuadricSystem, v: &[Scalar]) -> Result<()> {
    if v.len() != a.nvars() {
        return Err(Error::DimensionMismatch { expected: a.nvars(), found: v.len() });
    }
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    Ok(())
}

/// Vectors singular for every quadric of `A`.
pub fn singloc(a: &QuadricSystem) -> Result<Subspace> {
    let n = a.nvars();
    let mut rows = Vec::new();
    for q in a.basis() {
        rows.extend(q.polar_matrix()?.row_vecs());
    }
    if rows.is_empty() {
        return Ok(Subspace::full(n));
    }
    Ok(Mat::from_rows(n, rows).kernel())
}

/// Columns `B_k v`, one per basis quadric: the matrix of `II_v : N* -> T`.
fn contraction(basis: &[SymTensor], v: &[Scalar]) -> Result<Mat> {
    let n = v.len();
    let mut m = Mat::zeros(n, basis.len());
    for (k, q) in basis.iter().enumerate() {
        let bv = q.polar_matrix()?.mul_vec(v);
        for (r, x) in bv.into_iter().enumerate() {
            m[(r, k)] = x;
        }
    }
    Ok(m)
}

/// `Ann(v)`: the quadrics of `A` singular at `v`.
pub fn ann(a: &QuadricSystem, v: &[Scalar]) -> Result<QuadricSystem> {
    check_vector(a, v)?;
    let basis = a.basis();
    if basis.is_empty() {
        return Ok(a.clone());
    }
    let kernel = contraction(&basis, v)?.kernel();
    let forms: Vec<SymTensor> = kernel
        .basis_vectors()
        .iter()
        .map(|y| {
            let mut q = SymTensor::zero(a.nvars(), 2);
            for (c, b) in y.iter().zip(&basis) {
                q.add_scaled(c, b).expect("same shape");
            }
            q
        })
        .collect();
    TensorSystem::new(a.nvars(), 2, &forms)
}

/// `A / Ann(v)` realized on `Singloc(Ann(v))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSystem {
    pub carrier: Subspace,
    /// Carrier basis as columns, `n x dim carrier`.
    pub embedding: Mat,
    /// Restricted quadrics in the carrier's coordinates.
    pub system: QuadricSystem,
}

pub fn quotient_system(a: &QuadricSystem, v: &[Scalar]) -> Result<QuotientSystem> {
    check_vector(a, v)?;
    let carrier = singloc(&ann(a, v)?)?;
    let embedding = carrier.basis().transpose();
    let system = if carrier.dim() == 0 { TensorSystem::zero(0, 2) } else { a.pullback(&embedding)? };
    Ok(QuotientSystem { carrier, embedding, system })
}

/// Rank of `II_v : T -> N`, `w -> II(v, w)`.
pub fn ii_rank(a: &QuadricSystem, v: &[Scalar]) -> Result<usize> {
    let basis = a.basis();
    if basis.is_empty() {
        return Ok(0);
    }
    Ok(contraction(&basis, v)?.rank())
}

/// Record of how a generic vector was chosen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericCertificate {
    pub rank: usize,
    pub samples: usize,
    pub seed: u64,
}

pub const GENERIC_SAMPLES: usize = 64;
pub const DEFAULT_GENERIC_SEED: u64 = 0x5eed;

/// Seeded integer vector maximizing `rank II_v` over a fixed number of
/// samples.
pub fn generic_vector(a: &QuadricSystem, seed: u64) -> Result<(Vec<Scalar>, GenericCertificate)> {
    let n = a.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(Vec<Scalar>, usize)> = None;
    for _ in 0..GENERIC_SAMPLES {
        let mut v: Vec<Scalar> = (0..n).map(|_| int(rng.gen_range(-9..=9))).collect();
        if v.iter().all(Zero::is_zero) {
            v[0] = int(1);
        }
        let r = ii_rank(a, &v)?;
        if best.as_ref().map_or(true, |(_, b)| r > *b) {
            best = Some((v, r));
        }
    }
    let (v, rank) = best.unwrap_or((vec![], 0));
    Ok((v, GenericCertificate { rank, samples: GENERIC_SAMPLES, seed }))
}

/// Bound on the refined third fundamental form at `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedBound {
    pub quotient: QuotientSystem,
    /// `(A / Ann(v))^(1)`, cubics on the carrier.
    pub bound: TensorSystem,
    pub ii_rank: usize,
    pub certificate: GenericCertificate,
    /// `ii_rank` reaches the sampled maximum; otherwise the bound is
    /// reported with a warning.
    pub generic: bool,
}

pub fn refined_iii_bound(a: &QuadricSystem, v: &[Scalar]) -> Result<RefinedBound> {
    check_vector(a, v)?;
    let quotient = quotient_system(a, v)?;
    let bound = prolongation(&quotient.system, 1)?;
    let rank = ii_rank(a, v)?;
    let (_, certificate) = generic_vector(a, DEFAULT_GENERIC_SEED)?;
    let generic = rank >= certificate.rank;
    Ok(RefinedBound { quotient, bound, ii_rank: rank, certificate, generic })
}

/// `q(v) = 0` for every `q` in `A`.
pub fn base_locus_member(a: &QuadricSystem, v: &[Scalar]) -> Result<bool> {
    check_vector(a, v)?;
    for q in a.basis() {
        if !q.evaluate(v)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
