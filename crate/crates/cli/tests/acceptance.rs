//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if
//! any criterion fails. Run with
//! `cargo test -p prolongkit-cli --test acceptance -- --nocapture`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use prolongkit::linalg::{int, Mat, Mode, Scalar, Solver};
use prolongkit::models::*;
use prolongkit::quadcalc::{
    generic_vector, prolongation, prolongation_by_intersection, prolongation_by_partials, refined_iii_bound,
    DEFAULT_GENERIC_SEED,
};
use prolongkit::rigidity::{obstruction, obstruction_f4, residual_f5, Arithmetic};
use prolongkit::stability::{fingerprint, stability_trial};
use prolongkit::symtensor::{MonomialBasis, NValuedForm, QuadricSystem, SymTensor, TensorSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn within(start: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    if t > budget {
        Err(format!("{what} took {:.1} s, budget {:.0} s", t.as_secs_f64(), budget.as_secs_f64()))
    } else {
        Ok(())
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn ii(spec: ModelSpec) -> NValuedForm {
    model_ii(&spec).unwrap()
}

fn conic() -> NValuedForm {
    NValuedForm::new(vec![&SymTensor::monomial(2, &[0, 0], int(1)) + &SymTensor::monomial(2, &[1, 1], int(1))])
        .unwrap()
}

fn ff2(spec: &ModelSpec) -> QuadricSystem {
    fundamental_forms(&build_parameterization(spec).unwrap(), 2).unwrap().remove(0).system
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_1() -> Outcome {
    let mut dims = Vec::new();
    for spec in [
        ModelSpec::Segre { n: 2, m: 2 },
        ModelSpec::Segre { n: 2, m: 3 },
        ModelSpec::Segre { n: 3, m: 2 },
        ModelSpec::Segre { n: 3, m: 3 },
        ModelSpec::Grass { m: 6 },
        ModelSpec::Grass { m: 7 },
        ModelSpec::Spinor5,
    ] {
        let start = Instant::now();
        let d = prolongation(&model_system(&spec).unwrap(), 1).unwrap().dim();
        within(start, secs(5), &spec.to_string())?;
        ensure(d == 0, || format!("{spec}: dim |II|^(1) = {d}"))?;
        dims.push(format!("{spec}=0"));
    }
    Ok(dims.join(" "))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    for (n, m) in [(1, 1), (2, 2), (2, 3), (3, 3)] {
        let spec = ModelSpec::Segre { n, m };
        let a = model_system(&spec).unwrap();
        ensure(a.dim() == n * m, || format!("{spec}: dim {}", a.dim()))?;
        ensure(ff2(&spec) == a, || format!("{spec}: FF2 differs from constructor"))?;
    }
    for m in [4, 5, 6, 7] {
        let spec = ModelSpec::Grass { m };
        let a = model_system(&spec).unwrap();
        ensure(a.dim() == binomial(m - 2, 2), || format!("{spec}: dim {}", a.dim()))?;
        ensure(ff2(&spec) == a, || format!("{spec}: FF2 differs from constructor"))?;
    }
    for n in [1, 2, 3] {
        let spec = ModelSpec::Veronese { n };
        let a = model_system(&spec).unwrap();
        ensure(a.dim() == n * (n + 1) / 2, || format!("{spec}: dim {}", a.dim()))?;
        ensure(ff2(&spec) == a, || format!("{spec}: FF2 differs from constructor"))?;
    }
    let spinor = build_spinor_quadrics();
    ensure(spinor.dim() == 10 && spinor.nvars() == 16, || format!("spinor5: dim {}", spinor.dim()))?;
    let chart = build_parameterization(&ModelSpec::Cayley).unwrap();
    let cayley = ff2(&ModelSpec::Cayley);
    let codim = chart.target_dim() - chart.chart_dim();
    ensure(cayley.dim() == 10 && codim == 10, || format!("cayley: dim {} codim {codim}", cayley.dim()))?;
    within(start, secs(30), "criterion 2")?;
    Ok(format!("all dims match, FF2 = constructors; {:.1} s", start.elapsed().as_secs_f64()))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let spinor = build_spinor_quadrics();
    let a = fingerprint(&ff2(&ModelSpec::Cayley)).unwrap();
    let b = fingerprint(&spinor).unwrap();
    ensure(a == b, || format!("fingerprints differ: {a:?} vs {b:?}"))?;
    let chart = build_parameterization(&ModelSpec::Spinor5).unwrap();
    let mut subs = vec![MvPoly::constant(chart.chart_dim(), Scalar::from_integer(1.into()))];
    subs.extend(chart.polys().iter().cloned());
    for q in spinor.basis() {
        let pulled = MvPoly::from_form(&q).compose(&subs).unwrap();
        ensure(pulled.terms().next().is_none(), || "a spinor quadric does not vanish on pure spinors".into())?;
    }
    within(start, secs(60), "criterion 3")?;
    Ok(format!("fingerprints equal, 10 quadrics vanish; {:.1} s", start.elapsed().as_secs_f64()))
}

fn criterion_4() -> Outcome {
    let exact = Solver::exact();
    let mut parts = Vec::new();
    for (spec, zero) in [
        (ModelSpec::Segre { n: 2, m: 2 }, true),
        (ModelSpec::Segre { n: 2, m: 3 }, true),
        (ModelSpec::Segre { n: 3, m: 3 }, true),
        (ModelSpec::Grass { m: 6 }, true),
        (ModelSpec::Grass { m: 4 }, false),
        (ModelSpec::Segre { n: 1, m: 1 }, false),
    ] {
        let start = Instant::now();
        let r = obstruction(&ii(spec), &exact).unwrap();
        within(start, secs(120), &spec.to_string())?;
        ensure((r.dim_h == 0) == zero, || format!("{spec}: dim H3 = {}", r.dim_h))?;
        parts.push(format!("{spec}={}", r.dim_h));
    }
    let start = Instant::now();
    for spec in [ModelSpec::Spinor5, ModelSpec::Cayley] {
        let r = obstruction(&ii(spec), &Solver::new(Mode::Probabilistic, 1)).unwrap();
        ensure(r.arithmetic == Arithmetic::ModularVerified, || format!("{spec}: not modular"))?;
        ensure(r.dim_h == 0, || format!("{spec}: dim H3 = {}", r.dim_h))?;
        parts.push(format!("{spec}=0(mod)"));
    }
    within(start, secs(600), "spinor5/cayley H3")?;
    Ok(parts.join(" "))
}

fn criterion_5() -> Outcome {
    let solver = Solver::exact();
    let mut parts = Vec::new();
    for spec in [
        ModelSpec::Segre { n: 2, m: 2 },
        ModelSpec::Grass { m: 6 },
        ModelSpec::Veronese { n: 2 },
        ModelSpec::Veronese { n: 3 },
    ] {
        let q = ii(spec);
        let h4 = obstruction_f4(&q, &solver).unwrap().dim_h;
        let h5 = residual_f5(&q, &solver).unwrap().dim_h;
        ensure(h4 == 0 && h5 == 0, || format!("{spec}: H4 = {h4}, H5 = {h5}"))?;
        parts.push(format!("{spec}=(0,0)"));
    }
    let h4 = obstruction_f4(&conic(), &solver).unwrap().dim_h;
    ensure(h4 > 0, || format!("{}; negative control: conic dim H4 = {h4}, expected > 0", parts.join(" ")))?;
    parts.push(format!("conic H4={h4}"));
    Ok(parts.join(" "))
}

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    for (spec, zero) in [
        (ModelSpec::Segre { n: 2, m: 2 }, true),
        (ModelSpec::Grass { m: 6 }, true),
        (ModelSpec::Spinor5, true),
        (ModelSpec::Veronese { n: 2 }, false),
    ] {
        let start = Instant::now();
        let a = model_system(&spec).unwrap();
        let (v, _) = generic_vector(&a, DEFAULT_GENERIC_SEED).unwrap();
        let r = refined_iii_bound(&a, &v).unwrap();
        within(start, secs(10), &spec.to_string())?;
        ensure(r.generic, || format!("{spec}: sampled vector not certified generic"))?;
        let d = r.bound.dim();
        ensure((d == 0) == zero, || format!("{spec}: refined bound dim {d}"))?;
        parts.push(format!("{spec}={d}"));
    }
    Ok(parts.join(" "))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let solver = Solver::exact();
    let mut parts = Vec::new();
    let mut failed = false;
    for (name, a) in [
        ("segre(2,2)", model_system(&ModelSpec::Segre { n: 2, m: 2 }).unwrap()),
        ("grass(6)", model_system(&ModelSpec::Grass { m: 6 }).unwrap()),
        ("spinor5", build_spinor_quadrics()),
    ] {
        let r = stability_trial(&a, 100, 42, &solver).unwrap();
        failed |= !r.consistent();
        parts.push(format!("{name} {}/{}", r.matches, r.trials));
    }
    let control = TensorSystem::new(
        2,
        2,
        &[&SymTensor::monomial(2, &[0, 0], int(1)) - &SymTensor::monomial(2, &[1, 1], int(1))],
    )
    .unwrap();
    let r = stability_trial(&control, 20, 42, &solver).unwrap();
    parts.push(format!("control mismatches {}", r.mismatches.len()));
    failed |= r.mismatches.is_empty();
    within(start, secs(300), "criterion 7")?;
    let msg = format!("{}; {:.1} s", parts.join(", "), start.elapsed().as_secs_f64());
    if failed {
        Err(msg)
    } else {
        Ok(msg)
    }
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Mat {
    loop {
        let m = Mat::from_vec(n, n, (0..n * n).map(|_| int(rng.gen_range(-2..=2))).collect());
        if m.rank() == n {
            return m;
        }
    }
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let n = rng.gen_range(1..=5);
        let len = MonomialBasis::get(n, 2).len();
        let dim = rng.gen_range(0..=len.min(6));
        let forms: Vec<SymTensor> = (0..dim)
            .map(|_| {
                let c = (0..len).map(|_| if rng.gen_bool(0.3) { int(rng.gen_range(-3..=3)) } else { int(0) }).collect();
                SymTensor::from_coeffs(n, 2, c).unwrap()
            })
            .collect();
        let a = TensorSystem::new(n, 2, &forms).unwrap();
        ensure(prolongation_by_partials(&a).unwrap() == prolongation_by_intersection(&a).unwrap(), || {
            "prolongation routes disagree".into()
        })?;
    }
    let s = Solver::exact();
    let h = |q: &NValuedForm| {
        [obstruction(q, &s).unwrap().dim_h, obstruction_f4(q, &s).unwrap().dim_h, residual_f5(q, &s).unwrap().dim_h]
    };
    let mut checked = 0;
    for q in [
        ii(ModelSpec::Segre { n: 1, m: 1 }),
        ii(ModelSpec::Segre { n: 2, m: 2 }),
        ii(ModelSpec::Grass { m: 4 }),
        ii(ModelSpec::Veronese { n: 2 }),
        conic(),
    ] {
        let base = h(&q);
        for _ in 0..20 {
            let g = random_invertible(&mut rng, q.nvars());
            let b = random_invertible(&mut rng, q.arity());
            let moved = q.pullback(&g).unwrap().mix(&b).unwrap();
            let got = h(&moved);
            ensure(got == base, || format!("H dims {got:?} after base change, expected {base:?}"))?;
            checked += 1;
        }
    }
    within(start, secs(300), "criterion 8")?;
    Ok(format!("50 random systems, {checked} base changes; {:.1} s", start.elapsed().as_secs_f64()))
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_prolongkit")).args(args).env_remove("PROLONGKIT_MODE").output().unwrap()
}

fn criterion_9() -> Outcome {
    let verify = ["verify", "--model", "segre", "--n", "2", "--m", "2", "--checks", "prolongation,h3,h4,h5"];
    let (a, b) = (cli(&verify), cli(&verify));
    ensure(a.stdout == b.stdout && !a.stdout.is_empty(), || "reports differ between identical runs".into())?;
    ensure(a.status.code() == Some(0), || format!("segre verify exit {:?}", a.status.code()))?;
    let report: prolongkit_cli::Report = serde_json::from_slice(&a.stdout).map_err(|e| e.to_string())?;
    ensure((serde_json::to_string_pretty(&report).unwrap() + "\n").as_bytes() == &a.stdout[..], || {
        "report does not round-trip".into()
    })?;

    for flags in [
        &["--model", "segre", "--n", "2", "--m", "3"][..],
        &["--model", "grass", "--m", "6"],
        &["--model", "veronese", "--n", "2"],
        &["--model", "spinor5"],
        &["--model", "cayley"],
    ] {
        let mut args = vec!["dump"];
        args.extend_from_slice(flags);
        args.extend(["--what", "ii"]);
        let o = cli(&args);
        let doc: prolongkit_cli::serial::SystemDoc = serde_json::from_slice(&o.stdout).map_err(|e| e.to_string())?;
        let back = prolongkit_cli::serial::SystemDoc::from_system(&doc.to_system().map_err(|e| e.to_string())?);
        ensure(back == doc, || format!("dump {flags:?} does not round-trip"))?;
    }

    let obstructed = cli(&["verify", "--model", "grass", "--m", "4", "--checks", "h3"]);
    ensure(obstructed.status.code() == Some(1), || format!("grass(4) h3 exit {:?}", obstructed.status.code()))?;
    let bad = cli(&["verify", "--model", "grass", "--m", "3"]);
    ensure(bad.status.code() == Some(2), || format!("grass(3) exit {:?}", bad.status.code()))?;
    Ok("deterministic reports, JSON round-trip, exit codes 0/1/2".into())
}

#[test]
fn acceptance() {
    let criteria: [(u32, &str, fn() -> Outcome); 9] = [
        (1, "prolongation vanishing", criterion_1),
        (2, "model dimension identities", criterion_2),
        (3, "cross-construction", criterion_3),
        (4, "order-3 verdicts", criterion_4),
        (5, "order-4/5 verdicts", criterion_5),
        (6, "refined third-order bound", criterion_6),
        (7, "degeneration stability", criterion_7),
        (8, "oracle equivalence", criterion_8),
        (9, "CLI contract", criterion_9),
    ];
    let mut lines = Vec::new();
    let mut all = true;
    for (id, name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let line = match &outcome {
            Ok(detail) => format!("PASS  {id}  {name}: {detail}"),
            Err(detail) => format!("FAIL  {id}  {name}: {detail}"),
        };
        println!("{line}");
        all &= outcome.is_ok();
        lines.push(line);
    }
    assert!(all, "acceptance criteria failed:\n{}", lines.join("\n"));
}
