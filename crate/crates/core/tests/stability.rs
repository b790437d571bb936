use num_traits::{One, Zero};
use prolongkit::linalg::{int, Mat, PolyMat, PolyScalar, Scalar, Solver};
use prolongkit::models::*;
use prolongkit::quadcalc::singloc;
use prolongkit::stability::*;
use prolongkit::symtensor::{QuadricSystem, SymTensor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn seg22() -> QuadricSystem {
    build_segre_ii(2, 2).unwrap().0
}

fn quadrics(n: usize, forms: &[&[(&[u8], i64)]]) -> QuadricSystem {
    let tensors: Vec<SymTensor> = forms
        .iter()
        .map(|terms| {
            let t: Vec<(Vec<u8>, Scalar)> = terms.iter().map(|(e, c)| (e.to_vec(), int(*c))).collect();
            SymTensor::from_terms(n, 2, &t).unwrap()
        })
        .collect();
    QuadricSystem::new(n, 2, &tensors).unwrap()
}

/// `x = g(t) y` with `g = id + t * e_{ij}` style entries given explicitly.
fn curve(n: usize, entries: &[(usize, usize, PolyScalar)]) -> PolyMat {
    let mut g = PolyMat::zeros(n, n);
    for &(r, c, ref p) in entries {
        g[(r, c)] = p.clone();
    }
    g
}

fn random_invertible(n: usize, rng: &mut ChaCha8Rng) -> Mat {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| int(rng.gen_range(-3..=3))).collect()).collect();
        let g = Mat::from_rows(n, rows);
        if g.rank() == n {
            return g;
        }
    }
}

fn leibniz(m: &PolyMat) -> PolyScalar {
    fn go(m: &PolyMat, row: usize, used: &mut Vec<bool>, sign: bool, acc: &PolyScalar, out: &mut PolyScalar) {
        let n = m.rows();
        if row == n {
            *out = if sign { &*out - acc } else { &*out + acc };
            return;
        }
        let mut flips = false;
        for c in 0..n {
            if used[c] {
                continue;
            }
            if !m[(row, c)].is_zero() {
                used[c] = true;
                go(m, row + 1, used, sign ^ flips, &(acc * &m[(row, c)]), out);
                used[c] = false;
            }
            flips = !flips;
        }
    }
    let mut out = PolyScalar::zero();
    go(m, 0, &mut vec![false; m.rows()], false, &PolyScalar::one(), &mut out);
    out
}

#[test]
fn constant_and_rescaling_families_have_the_original_limit() {
    let a = seg22();
    let f = make_family(&a, &PolyMat::identity(4), 0).unwrap();
    assert_eq!(limit(&f).unwrap(), a);

    let mut g = PolyMat::identity(4);
    g[(3, 3)] = PolyScalar::t();
    let f = make_family(&a, &g, 0).unwrap();
    assert_eq!(f.det, DetCertificate { coeff: int(1), exponent: 1 });
    assert_eq!(f.at(&int(5)).unwrap(), a);
    assert_eq!(limit(&f).unwrap(), a);
}

#[test]
fn shear_family_on_segre() {
    // coordinates (x1, x2, y1, y2); y2 -> y1 + t y2
    let a = seg22();
    let one = PolyScalar::one();
    let g = curve(
        4,
        &[(0, 0, one.clone()), (1, 1, one.clone()), (2, 2, one.clone()), (3, 2, one.clone()), (3, 3, PolyScalar::t())],
    );
    let a0 = limit(&make_family(&a, &g, 1).unwrap()).unwrap();
    assert_eq!(a0.dim(), 4);
    assert_eq!(fingerprint(&a0).unwrap(), fingerprint(&a).unwrap());
    assert_eq!(a0, a);
}

#[test]
fn colliding_blocks_leave_the_orbit() {
    // y1 -> x1 + t y1: A_t = <x1(x1 + t y1), x2(x1 + t y1), x1 y2, x2 y2>
    let a = seg22();
    let one = PolyScalar::one();
    let g = curve(
        4,
        &[(0, 0, one.clone()), (1, 1, one.clone()), (2, 0, one.clone()), (2, 2, PolyScalar::t()), (3, 3, one.clone())],
    );
    let a0 = limit(&make_family(&a, &g, 2).unwrap()).unwrap();
    let expected = quadrics(4, &[&[(&[2, 0, 0, 0], 1)], &[(&[1, 1, 0, 0], 1)], &[(&[1, 0, 0, 1], 1)], &[(&[0, 1, 0, 1], 1)]]);
    assert_eq!(a0, expected);
    assert_eq!(singloc(&a0).unwrap().dim(), 1);
    let base = fingerprint(&a).unwrap();
    assert_eq!(
        compare_fingerprint(&a0, &base, &Solver::exact()).unwrap(),
        Comparison::Differs { invariant: "singloc_dim".into(), expected: 0, found: 1 }
    );
}

#[test]
fn rank_two_quadric_degenerates() {
    let a = quadrics(2, &[&[(&[2, 0], 1), (&[0, 2], -1)]]);
    let mut g = PolyMat::identity(2);
    g[(1, 1)] = PolyScalar::t();
    let a0 = limit(&make_family(&a, &g, 0).unwrap()).unwrap();
    let (fa, f0) = (fingerprint(&a).unwrap(), fingerprint(&a0).unwrap());
    assert_eq!((fa.generic_rank.rank, f0.generic_rank.rank), (2, 1));
    assert_ne!(fa, f0);

    let report = stability_trial(&a, 20, 7, &Solver::exact()).unwrap();
    assert!(!report.mismatches.is_empty());
    assert!(!report.consistent());
}

#[test]
fn grass6_degeneration_determinant_matches_expansion() {
    let (a, _) = build_grass_ii(6).unwrap();
    for seed in [3, 11, 29] {
        let deg = random_degeneration(8, seed);
        let g = deg.curve();
        let f = make_family(&a, &g, seed).unwrap();
        let det = leibniz(&g);
        assert_eq!(det, PolyScalar::monomial(f.det.coeff.clone(), f.det.exponent));
        assert_eq!(f.det.exponent, deg.det_exponent());
        assert!(!f.det.coeff.is_zero());
    }
}

#[test]
fn limits_are_flat_and_commute_with_base_change() {
    let (a, _) = build_segre_ii(2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..8 {
        let g = random_degeneration(5, seed).curve();
        let a0 = limit(&make_family(&a, &g, seed).unwrap()).unwrap();
        assert_eq!(a0.dim(), a.dim());
        let h = random_invertible(5, &mut rng);
        let gh = g.mul(&PolyMat::constant(&h));
        let moved = limit(&make_family(&a, &gh, seed).unwrap()).unwrap();
        assert_eq!(moved, a0.pullback(&h).unwrap());
    }
}

#[test]
fn fingerprint_is_invariant_under_change_of_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for a in [seg22(), build_veronese_ii(2).unwrap().0] {
        let base = fingerprint(&a).unwrap();
        for _ in 0..20 {
            let g = random_invertible(a.nvars(), &mut rng);
            assert_eq!(fingerprint(&a.pullback(&g).unwrap()).unwrap(), base);
        }
    }
    let (gr, _) = build_grass_ii(6).unwrap();
    let base = fingerprint(&gr).unwrap();
    for _ in 0..3 {
        let g = random_invertible(8, &mut rng);
        assert_eq!(fingerprint(&gr.pullback(&g).unwrap()).unwrap(), base);
    }
}

#[test]
fn fundamental_forms_do_not_depend_on_base_point() {
    let specs = [ModelSpec::Segre { n: 2, m: 2 }, ModelSpec::Veronese { n: 2 }, ModelSpec::Grass { m: 5 }];
    for spec in specs {
        let p0 = build_parameterization(&spec).unwrap();
        let base: Vec<Scalar> = (0..p0.chart_dim()).map(|i| int(i as i64 % 3 - 1)).collect();
        let p1 = p0.with_base(base).unwrap();
        let f0 = fundamental_forms(&p0, 3).unwrap();
        let f1 = fundamental_forms(&p1, 3).unwrap();
        assert_eq!(f0.len(), f1.len());
        for (x, y) in f0.iter().zip(&f1) {
            assert_eq!(fingerprint(&x.system).unwrap(), fingerprint(&y.system).unwrap(), "{spec} order {}", x.order);
        }
    }
}

#[test]
fn trial_reports_are_reproducible() {
    let a = seg22();
    let r1 = stability_trial(&a, 10, 42, &Solver::exact()).unwrap();
    let r2 = stability_trial(&a, 10, 42, &Solver::exact()).unwrap();
    assert_eq!(r1, r2);
    assert_eq!(r1.matches + r1.mismatches.len() + r1.failures.len(), 10);
    assert!(r1.failures.is_empty());
    assert!(stability_trial(&a, 0, 42, &Solver::exact()).is_err());
}
