use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PolyMat, PolyScalar, Scalar, Subspace};
use crate::{Error, Result};

/// Limit at `t = 0` of the column span of a polynomial matrix.
///
/// Local-ring column reduction: while the columns at `t = 0` are dependent,
/// an integral dependency among them is applied to the polynomial columns
/// and the result, which vanishes at `t = 0`, is divided by `t`. Each step
/// lowers the `t`-adic valuation of the Plucker vector by one, so the loop is
/// bounded by the total column degree.
pub fn flat_limit(columns: &PolyMat, expected_dim: usize) -> Result<Subspace> {
    let k = columns.cols();
    let m = columns.rows();
    if expected_dim != k {
        return Err(Error::DimensionMismatch { expected: expected_dim, found: k });
    }
    let generic = generic_rank(columns);
    if generic != k {
        return Err(Error::GenericRankDeficient { rank: generic, expected: k });
    }
    let degree_sum: usize = (0..k)
        .map(|c| columns.column(c).iter().filter_map(PolyScalar::degree).max().unwrap_or(0))
        .sum();
    let guard = degree_sum + k + 1;
    let mut cols = columns.clone();
    for _ in 0..=guard {
        let at_zero = cols.eval(&Scalar::zero());
        let kernel = at_zero.kernel();
        if kernel.is_zero() {
            return Ok(at_zero.column_space());
        }
        let lambda = integral(&kernel.basis_vectors()[0]);
        let target = lambda.iter().rposition(|v| !v.is_zero()).expect("kernel vector is nonzero");
        let mut combo = vec![PolyScalar::zero(); m];
        for (j, l) in lambda.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            for (r, entry) in combo.iter_mut().enumerate() {
                *entry = &*entry + &cols[(r, j)].scale(l);
            }
        }
        let reduced: Vec<PolyScalar> =
            combo.iter().map(|p| p.div_t().expect("dependency vanishes at t = 0")).collect();
        cols.set_column(target, reduced);
    }
    Err(Error::NonTermination(guard))
}

/// Maximum rank over a few reproducible nonzero rational sample points.
pub(crate) fn generic_rank(columns: &PolyMat) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7_1a7 ^ columns.rows() as u64);
    let mut best = 0;
    for _ in 0..3 {
        let num: i64 = rng.gen_range(1..10_000);
        let den: i64 = rng.gen_range(1..10_000);
        let t0 = Scalar::new(BigInt::from(num), BigInt::from(den));
        best = best.max(columns.eval(&t0).rank());
        if best == columns.cols() {
            break;
        }
    }
    best
}

fn integral(v: &[Scalar]) -> Vec<Scalar> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    v.iter().map(|x| Scalar::from_integer(x.numer() * (&lcm / x.denom()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::linalg::Mat;
    use num_traits::Signed;

    fn p(c: &[i64]) -> PolyScalar {
        PolyScalar::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn constant_family_is_its_span() {
        let m = Mat::from_i64(&[&[1, 0], &[2, 1], &[0, 3]]);
        let lim = flat_limit(&PolyMat::constant(&m), 2).unwrap();
        assert_eq!(lim, m.column_space());
    }

    #[test]
    fn common_factor_t() {
        let cols = PolyMat::from_columns(2, vec![vec![p(&[0, 1]), p(&[0, 1])]]);
        let lim = flat_limit(&cols, 1).unwrap();
        assert_eq!(lim, Subspace::span(2, vec![vec![int(1), int(1)]]));
    }

    #[test]
    fn difference_quotient_fills_the_plane() {
        let cols = PolyMat::from_columns(2, vec![vec![p(&[1]), p(&[0, 1])], vec![p(&[1]), p(&[0])]]);
        assert_eq!(flat_limit(&cols, 2).unwrap(), Subspace::full(2));
    }

    /// Brute-force limit along t = 1/k: the RREF of span(columns(1/k))
    /// converges entrywise; for these rational families it is eventually
    /// constant, so the value at a large k equals the limit.
    fn limit_along_sequence(cols: &PolyMat) -> Subspace {
        let big = Scalar::new(BigInt::from(1), BigInt::from(10).pow(40));
        let (rref, _) = cols.eval(&big).transpose().rref();
        // round each entry to the nearest rational with small denominator
        let rounded: Vec<Vec<Scalar>> = rref
            .row_vecs()
            .into_iter()
            .map(|row| row.into_iter().map(|x| round_small(&x)).collect())
            .collect();
        Subspace::span(cols.rows(), rounded)
    }

    fn round_small(x: &Scalar) -> Scalar {
        for d in 1..50i64 {
            let scaled = x * Scalar::from_integer(d.into());
            let nearest = scaled.round();
            if (&scaled - &nearest).abs() < Scalar::new(1.into(), BigInt::from(10).pow(20)) {
                return nearest / Scalar::from_integer(d.into());
            }
        }
        panic!("no small-denominator approximation");
    }

    #[test]
    fn matches_sequence_limit() {
        // span{(1, t, t^2), (1, 2t, 4t^2)} -> span{(1,0,0), (0,1,0)}
        let cols = PolyMat::from_columns(
            3,
            vec![vec![p(&[1]), p(&[0, 1]), p(&[0, 0, 1])], vec![p(&[1]), p(&[0, 2]), p(&[0, 0, 4])]],
        );
        let lim = flat_limit(&cols, 2).unwrap();
        assert_eq!(lim, limit_along_sequence(&cols));
        assert_eq!(lim, Subspace::span(3, vec![vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]]));

        let cols = PolyMat::from_columns(2, vec![vec![p(&[1]), p(&[0, 1])], vec![p(&[1]), p(&[0])]]);
        assert_eq!(flat_limit(&cols, 2).unwrap(), limit_along_sequence(&cols));
    }

    #[test]
    fn rank_deficient_family_is_rejected() {
        let cols = PolyMat::from_columns(2, vec![vec![p(&[1]), p(&[0, 1])], vec![p(&[2]), p(&[0, 2])]]);
        assert!(matches!(flat_limit(&cols, 2), Err(Error::GenericRankDeficient { rank: 1, expected: 2 })));
        assert!(matches!(flat_limit(&cols, 1), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn commutes_with_constant_base_change() {
        let cols = PolyMat::from_columns(
            3,
            vec![vec![p(&[1]), p(&[0, 1]), p(&[0, 0, 1])], vec![p(&[1]), p(&[0, 2]), p(&[0, 0, 4])]],
        );
        let g = Mat::from_i64(&[&[1, 2, 0], &[0, 1, -1], &[3, 0, 1]]);
        let moved = PolyMat::constant(&g).mul(&cols);
        let lhs = flat_limit(&moved, 2).unwrap();
        let rhs = flat_limit(&cols, 2).unwrap().image(&g).unwrap();
        assert_eq!(lhs, rhs);
    }
}
