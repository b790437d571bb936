use prolongkit::linalg::Scalar;
use prolongkit::models::*;
use prolongkit::symtensor::TensorSystem;
use num_traits::One;

fn ff2(spec: ModelSpec) -> TensorSystem {
    let p = build_parameterization(&spec).unwrap();
    fundamental_forms(&p, 2).unwrap().remove(0).system
}

#[test]
fn spinor_quadrics_vanish_on_pure_spinors() {
    let chart = build_parameterization(&ModelSpec::Spinor5).unwrap();
    let mut subs = vec![MvPoly::constant(10, Scalar::one())];
    subs.extend(chart.polys().iter().cloned());
    assert_eq!(subs.len(), SPINOR_DIM);
    let sys = build_spinor_quadrics();
    for q in sys.basis() {
        let pulled = MvPoly::from_form(&q).compose(&subs).unwrap();
        assert!(pulled.terms().next().is_none(), "quadric does not vanish: {pulled:?}");
    }
}

#[test]
fn second_fundamental_forms_match_constructors() {
    for (n, m) in [(1, 1), (2, 2), (2, 3), (3, 3)] {
        assert_eq!(ff2(ModelSpec::Segre { n, m }), build_segre_ii(n, m).unwrap().0);
    }
    for m in [4, 5, 6, 7] {
        assert_eq!(ff2(ModelSpec::Grass { m }), build_grass_ii(m).unwrap().0);
    }
    for n in [1, 2, 3] {
        assert_eq!(ff2(ModelSpec::Veronese { n }), build_veronese_ii(n).unwrap().0);
    }
}

#[test]
fn dimensions_equal_codimensions() {
    for spec in [
        ModelSpec::Segre { n: 2, m: 3 },
        ModelSpec::Grass { m: 6 },
        ModelSpec::Veronese { n: 3 },
        ModelSpec::Spinor5,
        ModelSpec::Cayley,
    ] {
        let p = build_parameterization(&spec).unwrap();
        let codim = p.target_dim() - p.chart_dim();
        assert_eq!(ff2(spec).dim(), codim, "{spec}");
    }
    assert_eq!(build_spinor_quadrics().dim(), 10);
}

#[test]
fn cayley_series_stops_at_two() {
    let p = build_parameterization(&ModelSpec::Cayley).unwrap();
    let ff = fundamental_forms(&p, 3).unwrap();
    assert_eq!(ff[0].dim, 10);
    assert_eq!(ff[1].dim, 0);
}

#[test]
fn cayley_chart_lands_in_rank_one_locus() {
    let p = build_parameterization(&ModelSpec::Cayley).unwrap();
    let c = p.polys();
    let oct = |k: usize| Octonion::new(std::array::from_fn(|i| c[k + i].clone()));
    let one = MvPoly::constant(16, Scalar::one());
    let x = oct(0);
    let y = oct(8);
    let e = JordanElement::new([one, c[16].clone(), c[17].clone()], [oct(18), y.conj(), x]);
    assert!(e.is_rank_one());
}
