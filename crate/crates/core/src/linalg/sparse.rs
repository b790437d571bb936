use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::domain::{dense_rank_mod, echelon, Integers, Row};
use super::modular::{random_primes, PrimeField};
use super::{Mat, Mode, Scalar, Subspace};
use crate::{Error, Result};

/// Default cap on `rows * cols` of a single connected block in exact mode.
pub const DEFAULT_EXACT_CELL_LIMIT: usize = 400_000_000;

/// A sparse linear system with rational coefficients, stored by rows.
#[derive(Debug, Clone, Default)]
pub struct SparseSystem {
    ncols: usize,
    rows: Vec<Vec<(u32, Scalar)>>,
}

impl SparseSystem {
    pub fn new(ncols: usize) -> Self {
        SparseSystem { ncols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row given as `(column, value)` pairs. Repeated columns are
    /// summed and zeros dropped; an all-zero row is not stored.
    pub fn push_row<I: IntoIterator<Item = (usize, Scalar)>>(&mut self, entries: I) {
        let mut acc: BTreeMap<u32, Scalar> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.ncols, "column {c} out of range {}", self.ncols);
            if v.is_zero() {
                continue;
            }
            let slot = acc.entry(c as u32).or_insert_with(Scalar::zero);
            *slot += v;
        }
        let row: Vec<(u32, Scalar)> = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = &[(u32, Scalar)]> {
        self.rows.iter().map(|r| r.as_slice())
    }

    /// Keeps only the columns mapped by `map`, renumbered into `new_ncols`.
    pub fn restrict_columns(&self, new_ncols: usize, map: impl Fn(usize) -> Option<usize>) -> SparseSystem {
        let mut out = SparseSystem::new(new_ncols);
        for row in &self.rows {
            out.push_row(row.iter().filter_map(|(c, v)| map(*c as usize).map(|nc| (nc, v.clone()))));
        }
        out
    }

    /// Splits rows into blocks that share no column. Each block lists its
    /// row indices and its sorted global columns.
    fn components(&self) -> Vec<(Vec<usize>, Vec<u32>)> {
        let mut parent: Vec<u32> = (0..self.ncols as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        for row in &self.rows {
            let a = find(&mut parent, row[0].0);
            for &(c, _) in &row[1..] {
                let b = find(&mut parent, c);
                if a != b {
                    parent[b as usize] = a;
                }
            }
        }
        let mut by_root: BTreeMap<u32, (Vec<usize>, Vec<u32>)> = BTreeMap::new();
        for (i, row) in self.rows.iter().enumerate() {
            let r = find(&mut parent, row[0].0);
            by_root.entry(r).or_default().0.push(i);
        }
        let mut used = vec![false; self.ncols];
        for row in &self.rows {
            for &(c, _) in row {
                used[c as usize] = true;
            }
        }
        for c in 0..self.ncols as u32 {
            if used[c as usize] {
                let r = find(&mut parent, c);
                if let Some(block) = by_root.get_mut(&r) {
                    block.1.push(c);
                }
            }
        }
        by_root.into_values().collect()
    }
}

/// Rank computations under a chosen arithmetic mode.
#[derive(Debug, Clone)]
pub struct Solver {
    pub mode: Mode,
    /// Seeds the choice of primes in probabilistic mode.
    pub seed: u64,
    /// Exact elimination refuses blocks with more cells than this.
    pub exact_cell_limit: usize,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::exact()
    }
}

impl Solver {
    pub fn exact() -> Self {
        Solver { mode: Mode::Exact, seed: 0, exact_cell_limit: DEFAULT_EXACT_CELL_LIMIT }
    }

    pub fn new(mode: Mode, seed: u64) -> Self {
        Solver { mode, seed, exact_cell_limit: DEFAULT_EXACT_CELL_LIMIT }
    }

    pub fn rank(&self, sys: &SparseSystem) -> Result<usize> {
        if sys.rows.is_empty() {
            return Ok(0);
        }
        let blocks = sys.components();
        match self.mode {
            Mode::Exact => {
                let mut total = 0;
                for (rows, cols) in &blocks {
                    let cells = rows.len().saturating_mul(cols.len());
                    if cells > self.exact_cell_limit {
                        return Err(Error::ResourceGuard { cells, limit: self.exact_cell_limit });
                    }
                    total += exact_block_rank(sys, rows, cols);
                }
                Ok(total)
            }
            Mode::Probabilistic => {
                let primes = random_primes(self.seed, 3);
                let mut ranks = Vec::with_capacity(3);
                for p in primes {
                    let f = PrimeField::new(p);
                    let mut total = 0;
                    for (rows, cols) in &blocks {
                        total += modular_block_rank(&f, sys, rows, cols)?;
                    }
                    ranks.push(total);
                }
                if ranks.iter().all(|&r| r == ranks[0]) {
                    Ok(ranks[0])
                } else {
                    Err(Error::ModularDisagreement(ranks))
                }
            }
        }
    }
}

impl Solver {
    /// Exact null space `{x : sys x = 0}`, whatever the mode.
    pub fn kernel(&self, sys: &SparseSystem) -> Result<Subspace> {
        let mut used = vec![false; sys.ncols];
        let mut basis: Vec<Vec<Scalar>> = Vec::new();
        for (rows, cols) in sys.components() {
            let cells = rows.len().saturating_mul(cols.len());
            if cells > self.exact_cell_limit {
                return Err(Error::ResourceGuard { cells, limit: self.exact_cell_limit });
            }
            for &c in &cols {
                used[c as usize] = true;
            }
            let local = local_index(&cols);
            let pivots = echelon(&Integers, integer_rows(sys, &rows, &local), cols.len());
            let dense: Vec<Vec<Scalar>> = pivots
                .iter()
                .map(|row| {
                    let mut v = vec![Scalar::zero(); cols.len()];
                    for (c, x) in row {
                        v[*c as usize] = Scalar::from_integer(x.clone());
                    }
                    v
                })
                .collect();
            let local_kernel = if dense.is_empty() {
                Subspace::full(cols.len())
            } else {
                Mat::from_rows(cols.len(), dense).kernel()
            };
            for v in local_kernel.basis_vectors() {
                let mut g = vec![Scalar::zero(); sys.ncols];
                for (x, &c) in v.into_iter().zip(&cols) {
                    g[c as usize] = x;
                }
                basis.push(g);
            }
        }
        for (c, &u) in used.iter().enumerate() {
            if !u {
                let mut g = vec![Scalar::zero(); sys.ncols];
                g[c] = Scalar::one();
                basis.push(g);
            }
        }
        Ok(Subspace::span(sys.ncols, basis))
    }
}

fn integer_rows(sys: &SparseSystem, rows: &[usize], local: &impl Fn(u32) -> u32) -> Vec<Row<BigInt>> {
    rows.iter()
        .map(|&i| {
            let row = &sys.rows[i];
            let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
            row.iter().map(|(c, v)| (local(*c), v.numer() * (&lcm / v.denom()))).collect()
        })
        .collect()
}

fn local_index(cols: &[u32]) -> impl Fn(u32) -> u32 + '_ {
    move |c| cols.binary_search(&c).expect("column belongs to its block") as u32
}

fn exact_block_rank(sys: &SparseSystem, rows: &[usize], cols: &[u32]) -> usize {
    let local = local_index(cols);
    echelon(&Integers, integer_rows(sys, rows, &local), cols.len()).len()
}

/// Blocks denser than this fraction after loading are eliminated densely.
const DENSE_FILL_THRESHOLD: f64 = 0.05;

fn modular_block_rank(f: &PrimeField, sys: &SparseSystem, rows: &[usize], cols: &[u32]) -> Result<usize> {
    let local = local_index(cols);
    let mut mod_rows: Vec<Row<u64>> = Vec::with_capacity(rows.len());
    let mut nnz = 0usize;
    for &i in rows {
        let mut r = Vec::with_capacity(sys.rows[i].len());
        for (c, v) in &sys.rows[i] {
            let x = f.from_scalar(v).ok_or(Error::BadPrime(f.modulus()))?;
            if x != 0 {
                r.push((local(*c), x));
            }
        }
        nnz += r.len();
        mod_rows.push(r);
    }
    let cells = rows.len() as f64 * cols.len() as f64;
    if cells > 0.0 && (nnz as f64 / cells) > DENSE_FILL_THRESHOLD && cells < 5.0e7 {
        return Ok(dense_rank_mod(f, &mod_rows, cols.len()));
    }
    Ok(echelon(f, mod_rows, cols.len()).len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};

    #[test]
    fn block_splitting_preserves_rank() {
        let mut s = SparseSystem::new(6);
        s.push_row([(0, int(1)), (1, int(2))]);
        s.push_row([(0, int(2)), (1, int(4))]);
        s.push_row([(3, frac(1, 2)), (5, int(1))]);
        s.push_row([(4, int(1))]);
        s.push_row([(2, int(0))]);
        assert_eq!(s.nrows(), 4);
        assert_eq!(s.components().len(), 3);
        assert_eq!(Solver::exact().rank(&s).unwrap(), 3);
        assert_eq!(Solver::new(Mode::Probabilistic, 1).rank(&s).unwrap(), 3);
    }

    #[test]
    fn duplicate_columns_are_summed() {
        let mut s = SparseSystem::new(2);
        s.push_row([(0, int(1)), (0, int(-1)), (1, int(0))]);
        assert_eq!(s.nrows(), 0);
    }

    #[test]
    fn kernel_matches_dense_kernel() {
        let mut s = SparseSystem::new(5);
        s.push_row([(0, int(1)), (1, int(2))]);
        s.push_row([(3, frac(1, 3)), (4, int(-1))]);
        s.push_row([(3, int(1)), (4, int(-3))]);
        let dense = Mat::from_rows(
            5,
            vec![
                vec![int(1), int(2), int(0), int(0), int(0)],
                vec![int(0), int(0), int(0), frac(1, 3), int(-1)],
            ],
        );
        let k = Solver::exact().kernel(&s).unwrap();
        assert_eq!(k, dense.kernel());
        assert_eq!(k.dim(), 3);
        assert_eq!(Solver::exact().kernel(&SparseSystem::new(2)).unwrap(), Subspace::full(2));
    }

    #[test]
    fn guard_trips() {
        let mut s = SparseSystem::new(3);
        s.push_row([(0, int(1)), (1, int(1)), (2, int(1))]);
        let mut solver = Solver::exact();
        solver.exact_cell_limit = 2;
        assert!(matches!(solver.rank(&s), Err(Error::ResourceGuard { .. })));
    }
}
