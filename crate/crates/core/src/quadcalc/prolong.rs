use num_traits::Zero;

use crate::linalg::{Scalar, Solver, SparseSystem};
use crate::symtensor::{MonomialBasis, SymTensor, TensorSystem};
use crate::Result;

/// `A^(k)`: degree `d + k` forms all of whose `k`-th partial derivatives lie
/// in `A`.
pub fn prolongation(a: &TensorSystem, steps: usize) -> Result<TensorSystem> {
    let mut cur = a.clone();
    for _ in 0..steps {
        cur = prolong_once(&cur)?;
    }
    Ok(cur)
}

/// One prolongation step, choosing the cheaper of the two formulations.
fn prolong_once(a: &TensorSystem) -> Result<TensorSystem> {
    let n = a.nvars();
    let next = MonomialBasis::get(n, a.degree() + 1).len();
    if a.dim() == 0 {
        return Ok(TensorSystem::zero(n, a.degree() + 1));
    }
    if n * a.dim() <= next {
        prolongation_by_intersection(a)
    } else {
        prolongation_by_partials(a)
    }
}

/// `{C : dC/dx_i in A for all i}`, solved for the coefficients of `C`
/// against the annihilator of `A`.
pub fn prolongation_by_partials(a: &TensorSystem) -> Result<TensorSystem> {
    let n = a.nvars();
    let d = a.degree();
    let low = MonomialBasis::get(n, d);
    let high = MonomialBasis::get(n, d + 1);
    let ann = a.subspace().annihilator().basis_vectors();
    let mut sys = SparseSystem::new(high.len());
    let mut e = vec![0u8; n];
    for i in 0..n {
        for lam in &ann {
            let row = lam.iter().enumerate().filter(|(_, l)| !l.is_zero()).map(|(t, l)| {
                e.copy_from_slice(low.exps(t));
                e[i] += 1;
                let idx = high.index_of(&e).expect("raised degree");
                (idx, l * Scalar::from_integer(e[i].into()))
            });
            let row: Vec<(usize, Scalar)> = row.collect();
            sys.push_row(row);
        }
    }
    let kernel = Solver::exact().kernel(&sys)?;
    TensorSystem::from_subspace(n, d + 1, kernel)
}

/// `S^{d+1} T* ∩ (A ⊗ T*)`: unknown elements `a_i = sum_k y_{ik} A_k`
/// subject to `d a_i / dx_j = d a_j / dx_i`, mapped to `C = sum_i x_i a_i`.
pub fn prolongation_by_intersection(a: &TensorSystem) -> Result<TensorSystem> {
    let n = a.nvars();
    let d = a.degree();
    let basis = a.basis();
    let k = basis.len();
    if k == 0 {
        return Ok(TensorSystem::zero(n, d + 1));
    }
    let unknown = |i: usize, j: usize| i * k + j;
    let mut sys = SparseSystem::new(n * k);
    if d > 0 {
        let parts: Vec<Vec<SymTensor>> =
            basis.iter().map(|q| (0..n).map(|j| q.partial(j)).collect::<Result<_>>()).collect::<Result<_>>()?;
        let lower = MonomialBasis::get(n, d - 1).len();
        for i in 0..n {
            for j in i + 1..n {
                for t in 0..lower {
                    let mut row = Vec::new();
                    for (kk, pq) in parts.iter().enumerate() {
                        let v = &pq[j].coeffs()[t];
                        if !v.is_zero() {
                            row.push((unknown(i, kk), v.clone()));
                        }
                        let w = &pq[i].coeffs()[t];
                        if !w.is_zero() {
                            row.push((unknown(j, kk), -w.clone()));
                        }
                    }
                    sys.push_row(row);
                }
            }
        }
    }
    let kernel = Solver::exact().kernel(&sys)?;
    let mut forms = Vec::with_capacity(kernel.dim());
    for y in kernel.basis_vectors() {
        let mut c = SymTensor::zero(n, d + 1);
        for i in 0..n {
            let mut ai = SymTensor::zero(n, d);
            for (kk, q) in basis.iter().enumerate() {
                ai.add_scaled(&y[unknown(i, kk)], q)?;
            }
            if !ai.is_zero() {
                c.add_scaled(&Scalar::from_integer(1.into()), &ai.mul(&SymTensor::var(n, i))?)?;
            }
        }
        forms.push(c);
    }
    TensorSystem::new(n, d + 1, &forms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, Mat};
    use crate::models::{build_grass_ii, build_segre_ii, build_spinor_quadrics};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_system(rng: &mut ChaCha8Rng, n: usize, d: usize, dim: usize) -> TensorSystem {
        let len = MonomialBasis::get(n, d).len();
        let forms: Vec<SymTensor> = (0..dim)
            .map(|_| {
                // sparse entries so that prolongations are often nonzero
                let coeffs = (0..len)
                    .map(|_| if rng.gen_bool(0.3) { int(rng.gen_range(-3..=3)) } else { int(0) })
                    .collect();
                SymTensor::from_coeffs(n, d, coeffs).unwrap()
            })
            .collect();
        TensorSystem::new(n, d, &forms).unwrap()
    }

    #[test]
    fn full_space_prolongs_to_full_space() {
        let p = prolongation(&TensorSystem::full(2, 2), 1).unwrap();
        assert_eq!(p, TensorSystem::full(2, 3));
        assert_eq!(p.dim(), 4);
        assert_eq!(prolongation_by_partials(&TensorSystem::full(3, 2)).unwrap().dim(), 10);
    }

    #[test]
    fn model_prolongations_vanish() {
        assert_eq!(prolongation(&build_segre_ii(2, 2).unwrap().0, 1).unwrap().dim(), 0);
        assert_eq!(prolongation(&build_grass_ii(6).unwrap().0, 1).unwrap().dim(), 0);
        assert_eq!(prolongation(&build_spinor_quadrics(), 1).unwrap().dim(), 0);
    }

    #[test]
    fn routes_agree_on_random_systems() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let n = rng.gen_range(1..=5);
            let len = MonomialBasis::get(n, 2).len();
            let dim = rng.gen_range(0..=len.min(6));
            let a = random_system(&mut rng, n, 2, dim);
            assert_eq!(prolongation_by_partials(&a).unwrap(), prolongation_by_intersection(&a).unwrap());
        }
    }

    #[test]
    fn monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..10 {
            let a = random_system(&mut rng, 3, 2, 2);
            let b = a.sum(&random_system(&mut rng, 3, 2, 2)).unwrap();
            let pa = prolongation(&a, 1).unwrap();
            assert!(pa.is_subspace_of(&prolongation(&b, 1).unwrap()).unwrap());
        }
    }

    #[test]
    fn equivariant_under_coordinate_change() {
        let a = TensorSystem::new(
            3,
            2,
            &[SymTensor::monomial(3, &[0, 0], int(1)), SymTensor::monomial(3, &[0, 1], int(1))],
        )
        .unwrap();
        let g = Mat::from_i64(&[&[1, 2, 0], &[0, 1, 1], &[1, 0, 1]]);
        let lhs = prolongation(&a.pullback(&g).unwrap(), 1).unwrap();
        let rhs = prolongation(&a, 1).unwrap().pullback(&g).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.dim(), 2);
    }

    #[test]
    fn iterated_steps() {
        let a = TensorSystem::new(2, 2, &[SymTensor::monomial(2, &[0, 0], int(1))]).unwrap();
        let p2 = prolongation(&a, 2).unwrap();
        assert_eq!(p2.basis(), vec![SymTensor::monomial(2, &[0, 0, 0, 0], int(1))]);
    }
}
