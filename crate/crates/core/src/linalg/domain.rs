//! Sparse row echelon over an elimination domain.
//!
//! Two domains are provided: integers with fraction-free elimination (rows
//! kept primitive, i.e. divided by their content) and a prime field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modular::PrimeField;

pub(crate) type Row<E> = Vec<(u32, E)>;

pub(crate) trait Domain {
    type E: Clone;

    /// Canonical form of a nonzero row: leading entry 1 over a field,
    /// primitive with positive leading entry over the integers.
    fn normalize(&self, row: &mut Row<Self::E>);

    /// Clears the leading entry of `row` against `pivot`, which shares the
    /// same leading column and is normalized.
    fn eliminate(&self, row: &Row<Self::E>, pivot: &Row<Self::E>) -> Row<Self::E>;
}

pub(crate) struct Integers;

impl Domain for Integers {
    type E = BigInt;

    fn normalize(&self, row: &mut Row<BigInt>) {
        let mut g = BigInt::zero();
        for (_, v) in row.iter() {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        let flip = row.first().is_some_and(|(_, v)| v.is_negative());
        if !g.is_one() && !g.is_zero() {
            for (_, v) in row.iter_mut() {
                *v = &*v / &g;
            }
        }
        if flip {
            for (_, v) in row.iter_mut() {
                *v = -&*v;
            }
        }
    }

    fn eliminate(&self, row: &Row<BigInt>, pivot: &Row<BigInt>) -> Row<BigInt> {
        let a = &row[0].1;
        let b = &pivot[0].1;
        let g = a.gcd(b);
        let row_mul = b / &g;
        let piv_mul = a / &g;
        let mut out = Vec::with_capacity(row.len() + pivot.len());
        let (mut i, mut j) = (1, 1);
        while i < row.len() || j < pivot.len() {
            let ci = row.get(i).map_or(u32::MAX, |e| e.0);
            let cj = pivot.get(j).map_or(u32::MAX, |e| e.0);
            if ci < cj {
                out.push((ci, &row[i].1 * &row_mul));
                i += 1;
            } else if cj < ci {
                out.push((cj, -(&pivot[j].1 * &piv_mul)));
                j += 1;
            } else {
                let v = &row[i].1 * &row_mul - &pivot[j].1 * &piv_mul;
                if !v.is_zero() {
                    out.push((ci, v));
                }
                i += 1;
                j += 1;
            }
        }
        self.normalize(&mut out);
        out
    }
}

impl Domain for PrimeField {
    type E = u64;

    fn normalize(&self, row: &mut Row<u64>) {
        if let Some(&(_, lead)) = row.first() {
            if lead != 1 {
                let inv = self.inv(lead);
                for (_, v) in row.iter_mut() {
                    *v = self.mul(*v, inv);
                }
            }
        }
    }

    fn eliminate(&self, row: &Row<u64>, pivot: &Row<u64>) -> Row<u64> {
        let f = row[0].1;
        let mut out = Vec::with_capacity(row.len() + pivot.len());
        let (mut i, mut j) = (1, 1);
        while i < row.len() || j < pivot.len() {
            let ci = row.get(i).map_or(u32::MAX, |e| e.0);
            let cj = pivot.get(j).map_or(u32::MAX, |e| e.0);
            if ci < cj {
                out.push(row[i]);
                i += 1;
            } else if cj < ci {
                out.push((cj, self.neg(self.mul(f, pivot[j].1))));
                j += 1;
            } else {
                let v = self.sub(row[i].1, self.mul(f, pivot[j].1));
                if v != 0 {
                    out.push((ci, v));
                }
                i += 1;
                j += 1;
            }
        }
        self.normalize(&mut out);
        out
    }
}

/// Incremental row echelon form. Returns the pivot rows; their number is the
/// rank. Columns are local indices below `ncols`.
pub(crate) fn echelon<D: Domain>(d: &D, mut rows: Vec<Row<D::E>>, ncols: usize) -> Vec<Row<D::E>> {
    rows.retain(|r| !r.is_empty());
    rows.sort_by_key(|r| (r[0].0, r.len()));
    let mut slot: Vec<u32> = vec![u32::MAX; ncols];
    let mut pivots: Vec<Row<D::E>> = Vec::new();
    for mut row in rows {
        d.normalize(&mut row);
        while let Some(&(c, _)) = row.first() {
            let s = slot[c as usize];
            if s == u32::MAX {
                slot[c as usize] = pivots.len() as u32;
                pivots.push(row);
                break;
            }
            row = d.eliminate(&row, &pivots[s as usize]);
        }
    }
    pivots
}

/// Dense elimination modulo a prime, for components where fill-in makes the
/// sparse representation pointless. Returns the rank.
pub(crate) fn dense_rank_mod(f: &PrimeField, rows: &[Row<u64>], ncols: usize) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut dense = vec![0u64; ncols];
            for &(c, v) in r {
                dense[c as usize] = v;
            }
            dense
        })
        .collect();
    let p = f.modulus() as u128;
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pr) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = f.inv(m[rank][col]);
        for v in m[rank][col..].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for r in rest.iter_mut() {
            let factor = r[col];
            if factor == 0 {
                continue;
            }
            let neg = (p - factor as u128) as u128;
            for (x, &y) in r[col..].iter_mut().zip(&pivot[col..]) {
                if y != 0 {
                    *x = ((*x as u128 + neg * y as u128) % p) as u64;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_rows(rows: &[&[i64]]) -> Vec<Row<BigInt>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(c, &v)| (c as u32, BigInt::from(v)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn integer_echelon_rank() {
        let rows = int_rows(&[&[2, 4, 6], &[1, 2, 3], &[0, 3, 3], &[4, 11, 15]]);
        assert_eq!(echelon(&Integers, rows, 3).len(), 2);
    }

    #[test]
    fn sparse_and_dense_modular_agree() {
        let f = PrimeField::new(1_000_003);
        let rows: Vec<Row<u64>> = vec![
            vec![(0, 1), (2, 5)],
            vec![(1, 3), (2, 1)],
            vec![(0, 2), (1, 6), (2, 12)],
            vec![(2, 7)],
        ];
        let sparse = echelon(&f, rows.clone(), 3).len();
        assert_eq!(sparse, dense_rank_mod(&f, &rows, 3));
        assert_eq!(sparse, 3);
    }
}
