use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{int, Mat, Scalar, Solver, SparseSystem};
use crate::quadcalc::prolongation;
use crate::symtensor::{SymTensor, TensorSystem};
use crate::{Error, Result};

pub const FINGERPRINT_SEED: u64 = 0xf1_9e55;
pub const RANK_SAMPLES: usize = 6;

/// Largest rank of `v -> d_v q` over seeded random elements `q` of the
/// system; for quadrics this is the rank of the symmetric matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SampledRank {
    pub rank: usize,
    pub samples: usize,
    pub seed: u64,
}

/// Invariants of a system under linear changes of coordinates on `T`.
/// Equal fingerprints are necessary, not sufficient, for two systems to be
/// equivalent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub ambient_dim: usize,
    pub degree: usize,
    pub dim: usize,
    pub singloc_dim: usize,
    pub prolongation_dim: usize,
    /// Dimensions of the ideal pieces in degrees `d + 1` and `d + 2`.
    pub ideal_dims: [usize; 2],
    pub generic_rank: SampledRank,
    /// Dimension of `{ a in gl(T) : a.A ⊂ A }`.
    pub stabilizer_dim: usize,
}

pub fn fingerprint(a: &TensorSystem) -> Result<Fingerprint> {
    fingerprint_with(a, &Solver::exact())
}

pub fn fingerprint_with(a: &TensorSystem, solver: &Solver) -> Result<Fingerprint> {
    let n = a.nvars();
    let d = a.degree();
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    let basis = a.basis();
    let partials = all_partials(&basis, n)?;
    let sing = solver.kernel(&partial_system(n, &partials))?;
    let s = sing.dim();
    if s == 0 || s == n {
        return direct(a, &basis, &partials, s, solver);
    }
    // Every form factors through T / Singloc: restrict to a complement and
    // lift the invariants back.
    let pivots = sing.basis().pivot_columns();
    let keep: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let mut c = Mat::zeros(n, keep.len());
    for (col, &j) in keep.iter().enumerate() {
        c[(j, col)] = Scalar::one();
    }
    let reduced = fingerprint_with(&a.pullback(&c)?, solver)?;
    let lifted = |k: usize| -> usize {
        let piece = |deg: usize| match deg.cmp(&d) {
            std::cmp::Ordering::Less => 0,
            std::cmp::Ordering::Equal => reduced.dim,
            std::cmp::Ordering::Greater => reduced.ideal_dims[deg - d - 1],
        };
        (0..=k - d).map(|j| piece(k - j) * count_monomials(s, j)).sum()
    };
    Ok(Fingerprint {
        ambient_dim: n,
        degree: d,
        dim: reduced.dim,
        singloc_dim: s,
        prolongation_dim: reduced.prolongation_dim,
        ideal_dims: [lifted(d + 1), lifted(d + 2)],
        generic_rank: reduced.generic_rank,
        stabilizer_dim: reduced.stabilizer_dim + s * n,
    })
}

#[cfg(test)]
/// Fingerprint computed directly in the given coordinates, without the
/// reduction modulo the singular locus.
pub(crate) fn fingerprint_direct(a: &TensorSystem, solver: &Solver) -> Result<Fingerprint> {
    let n = a.nvars();
    if a.degree() == 0 {
        return Err(Error::DegreeZero);
    }
    let basis = a.basis();
    let partials = all_partials(&basis, n)?;
    let s = n - solver.rank(&partial_system(n, &partials))?;
    direct(a, &basis, &partials, s, solver)
}

fn direct(
    a: &TensorSystem,
    basis: &[SymTensor],
    partials: &[Vec<SymTensor>],
    singloc_dim: usize,
    solver: &Solver,
) -> Result<Fingerprint> {
    let n = a.nvars();
    let d = a.degree();
    Ok(Fingerprint {
        ambient_dim: n,
        degree: d,
        dim: a.dim(),
        singloc_dim,
        prolongation_dim: prolongation(a, 1)?.dim(),
        ideal_dims: [a.ideal_degree_dim(d + 1, solver)?, a.ideal_degree_dim(d + 2, solver)?],
        generic_rank: sampled_rank(n, partials, solver)?,
        stabilizer_dim: stabilizer_dim(a, basis, partials, solver)?,
    })
}

/// Outcome of comparing a system against a reference fingerprint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum Comparison {
    /// Every invariant agrees.
    Consistent,
    /// The first invariant, in order of cost, that differs.
    Differs { invariant: String, expected: usize, found: usize },
}

/// Compares `a` with `reference`, computing invariants in order of cost and
/// stopping at the first one that differs.
pub fn compare_fingerprint(a: &TensorSystem, reference: &Fingerprint, solver: &Solver) -> Result<Comparison> {
    let n = a.nvars();
    let d = a.degree();
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    let basis = a.basis();
    let partials = all_partials(&basis, n)?;
    type Stage<'s> = (&'static str, usize, Box<dyn Fn() -> Result<usize> + 's>);
    let stages: Vec<Stage> = vec![
        ("ambient_dim", reference.ambient_dim, Box::new(|| Ok(n))),
        ("degree", reference.degree, Box::new(|| Ok(d))),
        ("dim", reference.dim, Box::new(|| Ok(a.dim()))),
        ("singloc_dim", reference.singloc_dim, Box::new(|| Ok(n - solver.rank(&partial_system(n, &partials))?))),
        ("generic_rank", reference.generic_rank.rank, Box::new(|| Ok(sampled_rank(n, &partials, solver)?.rank))),
        ("stabilizer_dim", reference.stabilizer_dim, Box::new(|| stabilizer_dim(a, &basis, &partials, solver))),
        ("prolongation_dim", reference.prolongation_dim, Box::new(|| Ok(prolongation(a, 1)?.dim()))),
        ("ideal_dims[0]", reference.ideal_dims[0], Box::new(|| a.ideal_degree_dim(d + 1, solver))),
        ("ideal_dims[1]", reference.ideal_dims[1], Box::new(|| a.ideal_degree_dim(d + 2, solver))),
    ];
    for (name, expected, compute) in stages {
        let found = compute()?;
        if found != expected {
            return Ok(Comparison::Differs { invariant: name.to_string(), expected, found });
        }
    }
    Ok(Comparison::Consistent)
}

/// Number of monomials of degree `j` in `s` variables.
fn count_monomials(s: usize, j: usize) -> usize {
    (1..=j).fold(1, |acc, i| acc * (s + i - 1) / i)
}

fn all_partials(basis: &[SymTensor], n: usize) -> Result<Vec<Vec<SymTensor>>> {
    basis.iter().map(|q| (0..n).map(|i| q.partial(i)).collect()).collect()
}

/// Rows of the stacked map `v -> (d_v q_k)_k`.
fn partial_system(n: usize, partials: &[Vec<SymTensor>]) -> SparseSystem {
    let mut sys = SparseSystem::new(n);
    for ps in partials {
        let len = ps.first().map_or(0, |p| p.coeffs().len());
        for m in 0..len {
            sys.push_row((0..n).map(|i| (i, ps[i].coeffs()[m].clone())));
        }
    }
    sys
}

fn sampled_rank(n: usize, partials: &[Vec<SymTensor>], solver: &Solver) -> Result<SampledRank> {
    let mut rng = ChaCha8Rng::seed_from_u64(FINGERPRINT_SEED);
    let mut best = 0;
    for _ in 0..RANK_SAMPLES {
        if partials.is_empty() {
            break;
        }
        let weights: Vec<Scalar> = partials.iter().map(|_| int(rng.gen_range(-50..=50))).collect();
        let combined: Vec<SymTensor> = (0..n)
            .map(|i| {
                let mut acc = partials[0][i].scale(&weights[0]);
                for (w, ps) in weights.iter().zip(partials).skip(1) {
                    acc.add_scaled(w, &ps[i])?;
                }
                Ok(acc)
            })
            .collect::<Result<_>>()?;
        best = best.max(solver.rank(&partial_system(n, &[combined]))?);
    }
    Ok(SampledRank { rank: best, samples: RANK_SAMPLES, seed: FINGERPRINT_SEED })
}

/// `n^2` minus the rank of `a -> (a.q_k mod A)_k`, where
/// `a.q = sum a^d_b x_b d_d q`. Classes mod `A` are represented by the
/// non-pivot coordinates after reduction against the echelon basis.
fn stabilizer_dim(a: &TensorSystem, basis: &[SymTensor], partials: &[Vec<SymTensor>], solver: &Solver) -> Result<usize> {
    let n = a.nvars();
    let echelon: Vec<(usize, &[Scalar])> = basis
        .iter()
        .map(|b| (b.coeffs().iter().position(|c| !c.is_zero()).expect("basis vector is nonzero"), b.coeffs()))
        .collect();
    let mut is_pivot = vec![false; a.subspace().ambient_dim()];
    for (p, _) in &echelon {
        is_pivot[*p] = true;
    }
    let reduce = |mut v: Vec<Scalar>| {
        for (p, b) in &echelon {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(b.iter()) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    };

    let mut sys = SparseSystem::new(n * n);
    for ps in partials {
        let images: Vec<Vec<Scalar>> = (0..n * n)
            .map(|u| {
                let (delta, beta) = (u / n, u % n);
                Ok(reduce(SymTensor::var(n, beta).mul(&ps[delta])?.into_coeffs()))
            })
            .collect::<Result<_>>()?;
        for (c, _) in is_pivot.iter().enumerate().filter(|(_, p)| !**p) {
            sys.push_row(images.iter().enumerate().map(|(u, im)| (u, im[c].clone())));
        }
    }
    Ok(n * n - solver.rank(&sys)?)
}
