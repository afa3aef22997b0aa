//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use common::*;
use modegen::algebra::{intertwines, Representation};
use modegen::certificate::{
    codim, compose_certificates, hom_defect, push_submodule, RiedtmannCertificate,
};
use modegen::enumerate::enum_submodules;
use modegen::fixtures::{self, DualNumbers, Kronecker, Truncated, TwoCycle};
use modegen::io::{self, Document};
use modegen::iso::{is_isomorphic, SearchOptions};
use modegen::ladder::{
    build_family, evaluate_family, make_monic, orbit_dim_ud, verify_ladder, LadderCertificate,
};
use modegen::matrix::Matrix;
use modegen::module::{quotient_module, Submodule};
use modegen::oracle::rank_condition_degenerates;
use modegen::scalar::FieldSpec;
use modegen::series::{
    composition_series, composition_vector, series_isomorphic, series_to_triangular,
    simultaneous_triangularize, triangular_to_series, CompositionSeries, TriangularRep,
};
use modegen::Error;

const Q: FieldSpec = FieldSpec::Rationals;
const F2: FieldSpec = FieldSpec::PrimeField(2);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

fn iso(a: &Representation, b: &Representation) -> bool {
    is_isomorphic(a, b, SearchOptions::default())
        .map(|v| v.is_isomorphic())
        .unwrap_or(false)
}

fn load(name: &str) -> Document {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"));
    io::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn tri(r: Representation) -> TriangularRep {
    TriangularRep::new(r).unwrap()
}

fn criterion_1() -> Outcome {
    let d = DualNumbers::new(Q);
    let c = codim(&d.lambda2(), &d.lambda_s2()).map_err(|e| e.to_string())?;
    ensure!(c == 2, "codim(Λ², Λ⊕S²) = {c}");
    let sub = d.lambda_s_in_lambda2();
    let eta = load("eta").into_certificate().map_err(|e| e.to_string())?;
    ensure!(eta.verify().is_valid(), "eta does not verify");
    let pe = push_submodule(&eta, &sub).map_err(|e| e.to_string())?;
    let ne = pe.nprime.representation();
    ensure!(iso(&ne, &d.s3()), "pushed module through eta is not S³");
    let ce = codim(&sub.representation(), &ne).unwrap();
    ensure!(ce == 4, "codim through eta = {ce}");
    let pt = push_submodule(&d.theta(), &sub).map_err(|e| e.to_string())?;
    let nt = pt.nprime.representation();
    ensure!(
        iso(&nt, &d.lambda_s()),
        "pushed module through theta is not Λ⊕S"
    );
    let ct = codim(&sub.representation(), &nt).unwrap();
    ensure!(ct == 0, "codim through theta = {ct}");
    Ok("codim 2; eta gives S³ with codim 4; theta gives Λ⊕S with codim 0".into())
}

fn criterion_2() -> Outcome {
    let k = Kronecker::new(Q);
    let a = hom_defect(&k.i2(), &k.r_plus_s1(), &[k.dtr_s1()])
        .unwrap()
        .values;
    let b = hom_defect(&k.r_prime(), &k.s1_plus_s2(), &[k.dtr_s1()])
        .unwrap()
        .values;
    ensure!(a == [1], "defect for I₂ = {a:?}");
    ensure!(b == [3], "defect for R' = {b:?}");
    let cert = load("i2_to_r_plus_s1")
        .into_certificate()
        .map_err(|e| e.to_string())?;
    ensure!(cert.verify().is_valid(), "shipped I₂ certificate fails");
    ensure!(
        cert.m() == &k.i2() && cert.n() == &k.r_plus_s1(),
        "shipped certificate has the wrong ends"
    );
    Ok("defects [1] and [3]; shipped certificate verifies".into())
}

/// Exactness and commutativity recomputed from raw matrices.
fn ladder_is_legal(lc: &LadderCertificate) -> bool {
    let d = lc.len();
    let (ms, ns) = (lc.m_series(), lc.n_series());
    if !ms.ambient().is_valid()
        || !ns.ambient().is_valid()
        || !ms.validate().is_valid()
        || !ns.validate().is_valid()
    {
        return false;
    }
    for i in 1..=d {
        let x = &lc.x()[i - 1];
        let (m, n) = (ms.stage(i), ns.stage(i));
        let (fg, q) = (&lc.fg()[i - 1], &lc.q()[i - 1]);
        let Ok(mid) = x.oplus(&m) else { return false };
        if !x.is_valid()
            || fg.rows() != mid.dim()
            || fg.cols() != x.dim()
            || q.rows() != n.dim()
            || q.cols() != mid.dim()
            || !intertwines(x, &mid, fg)
            || !intertwines(&mid, &n, q)
            || fg.rank() != x.dim()
            || q.rank() != n.dim()
            || !(q * fg).is_zero()
        {
            return false;
        }
        if i < d {
            let h = &lc.h()[i - 1];
            let x2 = &lc.x()[i];
            if h.rows() != x2.dim() || h.cols() != x.dim() || !intertwines(x, x2, h) {
                return false;
            }
            let rung = h.block_diag(&ms.inclusion(i));
            if &lc.fg()[i] * h != &rung * fg || &lc.q()[i] * &rung != &ns.inclusion(i) * q {
                return false;
            }
        }
    }
    true
}

fn bump(m: &Matrix, i: usize, j: usize) -> Matrix {
    let mut out = m.clone();
    out.set(i, j, m.get(i, j) + &m.field().one());
    out
}

fn bump_rep(r: &Representation, g: usize, i: usize, j: usize) -> Representation {
    let mut mats = r.mats().to_vec();
    mats[g] = bump(&mats[g], i, j);
    Representation::new(r.algebra().clone(), r.dim(), mats).unwrap()
}

fn reseries(s: &CompositionSeries, ambient: Representation) -> Option<CompositionSeries> {
    let flags = s.flags().iter().map(|f| f.space().clone()).collect();
    CompositionSeries::new(ambient, flags).ok()
}

/// Every ladder obtained by adding one to a single matrix entry; `None` if it cannot be assembled.
fn mutants(lc: &LadderCertificate) -> Vec<Option<LadderCertificate>> {
    let build = |ms: Option<CompositionSeries>,
                 ns: Option<CompositionSeries>,
                 x: Vec<Representation>,
                 h,
                 fg,
                 q| { LadderCertificate::new(ms?, ns?, x, h, fg, q).ok() };
    let (ms, ns) = (lc.m_series(), lc.n_series());
    let (x, h, fg, q) = (
        lc.x().to_vec(),
        lc.h().to_vec(),
        lc.fg().to_vec(),
        lc.q().to_vec(),
    );
    let mut out = Vec::new();
    for (series, is_m) in [(ms, true), (ns, false)] {
        let amb = series.ambient();
        for g in 0..amb.mats().len() {
            for i in 0..amb.dim() {
                for j in 0..amb.dim() {
                    let s = reseries(series, bump_rep(amb, g, i, j));
                    let (a, b) = if is_m {
                        (s, Some(ns.clone()))
                    } else {
                        (Some(ms.clone()), s)
                    };
                    out.push(build(a, b, x.clone(), h.clone(), fg.clone(), q.clone()));
                }
            }
        }
    }
    for k in 0..x.len() {
        for g in 0..x[k].mats().len() {
            for i in 0..x[k].dim() {
                for j in 0..x[k].dim() {
                    let mut xs = x.clone();
                    xs[k] = bump_rep(&x[k], g, i, j);
                    out.push(build(
                        Some(ms.clone()),
                        Some(ns.clone()),
                        xs,
                        h.clone(),
                        fg.clone(),
                        q.clone(),
                    ));
                }
            }
        }
    }
    let maps = [&h, &fg, &q];
    for which in 0..3 {
        for k in 0..maps[which].len() {
            let m = &maps[which][k];
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let mut parts = [h.clone(), fg.clone(), q.clone()];
                    parts[which][k] = bump(m, i, j);
                    let [h2, fg2, q2] = parts;
                    out.push(build(
                        Some(ms.clone()),
                        Some(ns.clone()),
                        x.clone(),
                        h2,
                        fg2,
                        q2,
                    ));
                }
            }
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let t = Truncated::new(Q, 3);
    let (mut total, mut rejected) = (0usize, 0usize);
    for (name, lc) in [("chi", t.chi()), ("chi_prime", t.chi_prime())] {
        let shipped = load(name).into_ladder().map_err(|e| e.to_string())?;
        ensure!(shipped == lc, "{name} file differs from the library ladder");
        ensure!(verify_ladder(&lc).is_valid(), "{name} is rejected");
        ensure!(ladder_is_legal(&lc), "{name} fails the independent check");
        for m in mutants(&lc) {
            total += 1;
            match m {
                None => rejected += 1,
                Some(m) if !verify_ladder(&m).is_valid() => rejected += 1,
                Some(m) => ensure!(
                    ladder_is_legal(&m),
                    "an accepted mutant of {name} is not a legal ladder"
                ),
            }
        }
    }
    ensure!(rejected * 100 >= total * 95, "only {rejected}/{total} mutants rejected");
    Ok(format!(
        "both ladders verify; {rejected}/{total} single-entry mutants rejected, the rest are legal"
    ))
}

fn x_matrix(t: &TriangularRep) -> Matrix {
    t.rep().mat_by_name("X").unwrap().clone()
}

/// Support of a 3x3 matrix as a list of nonzero positions.
fn support(m: &Matrix) -> Vec<(usize, usize)> {
    (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| !m.get(i, j).is_zero())
        .collect()
}

fn criterion_4() -> Outcome {
    let t = Truncated::new(Q, 3);
    let chi = load("chi").into_ladder().map_err(|e| e.to_string())?;
    let chi = if chi.is_monic() {
        chi
    } else {
        make_monic(&chi).map_err(|e| e.to_string())?
    };
    let fam = build_family(&chi, None).map_err(|e| e.to_string())?;
    let (mu, nu) = (tri(t.mu()), tri(t.nu()));
    for s in 1..=3 {
        let v = evaluate_family(&fam, &Q.from_i64(s)).map_err(|e| e.to_string())?;
        ensure!(
            series_isomorphic(&v, &nu, true).unwrap().is_isomorphic(),
            "t = {s} is not in the orbit of ν"
        );
        let x = x_matrix(&v);
        let sup = support(&x);
        ensure!(
            sup.iter().all(|&(i, j)| i == 0 && j >= 1) && !x.get(0, 1).is_zero(),
            "t = {s}: X = {x} is not of the form (0,a,b) with a ≠ 0"
        );
    }
    let v0 = evaluate_family(&fam, &Q.zero()).map_err(|e| e.to_string())?;
    ensure!(
        series_isomorphic(&v0, &mu, true).unwrap().is_isomorphic(),
        "t = 0 is not in the orbit of μ"
    );
    let sup = support(&x_matrix(&v0));
    ensure!(
        sup.iter().all(|&p| p == (0, 2)),
        "t = 0: X is not a corner matrix"
    );
    Ok("t = 1,2,3 land in ν's orbit with X = (0,a,b), a ≠ 0; t = 0 lands in μ's orbit with X = (0,0,a)".into())
}

fn criterion_5() -> Outcome {
    let t = Truncated::new(Q, 3);
    let mu = tri(load("mu")
        .into_representation()
        .map_err(|e| e.to_string())?);
    let nu = tri(load("nu")
        .into_representation()
        .map_err(|e| e.to_string())?);
    ensure!(
        !series_isomorphic(&mu, &nu, true).unwrap().is_isomorphic(),
        "μ and ν are series isomorphic"
    );
    let (dm, dn) = (orbit_dim_ud(&mu).unwrap(), orbit_dim_ud(&nu).unwrap());
    ensure!(dm == 1 && dn == 2, "orbit dims μ = {dm}, ν = {dn}");
    let sup = support(&x_matrix(&nu));
    ensure!(
        !sup.iter().all(|&p| p == (0, 2)),
        "ν(X) lies in the corner set"
    );
    ensure!(tri(t.mu()) == mu, "fixture μ differs");
    Ok("μ, ν not series isomorphic; orbit dims 2 > 1; ν(X) outside the corner set".into())
}

fn criterion_6() -> Outcome {
    let certs = fixtures::certificates(F2);
    let mut algebras = Vec::new();
    let mut checked = 0;
    for (name, c) in &certs {
        ensure!(c.verify().is_valid(), "{name} does not verify over F2");
        if !algebras.contains(c.m().algebra()) {
            algebras.push(c.m().algebra().clone());
        }
        ensure!(c.m().dim() <= 10, "{name} too large to sweep");
        for sub in enum_submodules(c.m()).map_err(|e| e.to_string())? {
            let p = push_submodule(c, &sub).map_err(|e| format!("{name}: {e}"))?;
            ensure!(
                p.certificate.verify().is_valid(),
                "{name}: pushed certificate fails"
            );
            ensure!(
                p.nprime.dim() == sub.dim(),
                "{name}: dim N' = {} vs dim M' = {}",
                p.nprime.dim(),
                sub.dim()
            );
            ensure!(p.alpha.is_injective(), "{name}: α not injective");
            checked += 1;
        }
    }
    ensure!(
        algebras.len() >= 3,
        "only {} algebras covered",
        algebras.len()
    );
    Ok(format!(
        "{checked} submodules across {} certificates and {} algebras",
        certs.len(),
        algebras.len()
    ))
}

/// `outer / inner` where `inner ⊆ outer` are submodules of the same module.
fn factor(outer: &Submodule, inner: &Submodule) -> Representation {
    let rep = outer.representation();
    let coords = outer.space().coords_matrix(inner.space().basis()).unwrap();
    let space = modegen::subspace::Subspace::span(rep.field(), rep.dim(), &coords.columns());
    let sub = Submodule::new(rep.clone(), space).unwrap();
    quotient_module(&rep, &sub).unwrap().0
}

fn flag_sweep(name: &str, c: &RiedtmannCertificate) -> Result<(), String> {
    let series = composition_series(c.m()).map_err(|e| e.to_string())?;
    let mut flags_m = vec![Submodule::zero(c.m())];
    let mut flags_n = vec![Submodule::zero(c.n())];
    for f in series.flags() {
        let p = push_submodule(c, f).map_err(|e| format!("{name}: {e}"))?;
        flags_m.push(f.clone());
        flags_n.push(p.nprime);
    }
    for i in 1..flags_n.len() {
        ensure!(
            flags_n[i].dim() == i,
            "{name}: N_{i} has dim {}",
            flags_n[i].dim()
        );
        ensure!(
            flags_n[i - 1].is_submodule_of(&flags_n[i]),
            "{name}: N_{} ⊄ N_{i}",
            i - 1
        );
        let qm = factor(&flags_m[i], &flags_m[i - 1]);
        let qn = factor(&flags_n[i], &flags_n[i - 1]);
        ensure!(iso(&qm, &qn), "{name}: factor {i} differs");
    }
    ensure!(
        flags_n.last().unwrap().space().is_full(),
        "{name}: top of the flag is not N"
    );
    Ok(())
}

fn criterion_7() -> Outcome {
    let certs = fixtures::certificates(Q);
    for (name, c) in &certs {
        flag_sweep(name, c)?;
    }
    Ok(format!(
        "{} certificates give flags of N with matching factors",
        certs.len()
    ))
}

fn criterion_8() -> Outcome {
    let k = Kronecker::new(Q);
    let (mu, nu) = (k.r2_mu(), k.r2_nu());
    let sm = load("r2_mu_series")
        .into_series()
        .map_err(|e| e.to_string())?;
    let names = composition_vector(&sm).names(mu.algebra()).join(",");
    ensure!(names == "e2,e2,e1,e1", "composition vector ({names})");
    ensure!(iso(&mu, &nu), "R₂ modules not isomorphic");
    ensure!(
        !series_isomorphic(&tri(mu), &tri(nu), true)
            .unwrap()
            .is_isomorphic(),
        "R₂ series are isomorphic"
    );
    let c = TwoCycle::new(Q);
    let (m, n) = (c.m(), c.n());
    let (sm, sn) = (
        composition_series(&m).unwrap(),
        composition_series(&n).unwrap(),
    );
    match simultaneous_triangularize(&m, &n, &sm, &sn) {
        Err(Error::VectorMismatch(_)) => {}
        other => return Err(format!("two-cycle pair gave {other:?}")),
    }
    for s in [&sm, &sn] {
        let t = series_to_triangular(s).map_err(|e| e.to_string())?;
        ensure!(
            triangular_to_series(&t).is_ok(),
            "single module does not triangularize"
        );
    }
    Ok("vector (e2,e2,e1,e1); isomorphic but not series isomorphic; two-cycle pair is a vector mismatch".into())
}

/// A verified certificate for `a <=deg b` built from the shipped covering certificates.
fn certificate_between(t: &Truncated, a: usize, b: usize) -> Option<RiedtmannCertificate> {
    let ty = t.nilpotent_types();
    let shipped = |name: &str| load(name).into_certificate().ok();
    let c = match (a, b) {
        _ if a == b => RiedtmannCertificate::trivial(&ty[a].1),
        (0, 1) => shipped("nilp_3_to_21")?,
        (1, 2) => shipped("nilp_21_to_111")?,
        (0, 2) => shipped("nilp_3_to_111")?,
        _ => return None,
    };
    (c.verify().is_valid() && c.m() == &ty[a].1 && c.n() == &ty[b].1).then_some(c)
}

fn criterion_9() -> Outcome {
    let t = Truncated::new(Q, 3);
    let ty = t.nilpotent_types();
    let s = t.s();
    let mut pairs = 0;
    for a in 0..3 {
        for b in 0..3 {
            let (m, n) = (&ty[a].1, &ty[b].1);
            let oracle = rank_condition_degenerates(m, n).map_err(|e| e.to_string())?;
            let cert = certificate_between(&t, a, b);
            let refuted = hom_defect(m, n, std::slice::from_ref(&s))
                .unwrap()
                .refutes();
            ensure!(
                oracle == cert.is_some() && oracle != refuted,
                "({}) vs ({}): oracle {oracle}, certificate {}, refuted {refuted}",
                ty[a].0,
                ty[b].0,
                cert.is_some()
            );
            pairs += 1;
        }
    }
    let composed = compose_certificates(
        &load("nilp_3_to_21").into_certificate().unwrap(),
        &load("nilp_21_to_111").into_certificate().unwrap(),
    );
    ensure!(
        matches!(composed, Err(Error::NoLift)),
        "composing the covers gave {composed:?}"
    );
    for name in ["nilp_3_to_21", "nilp_21_to_111", "nilp_3_to_111"] {
        ensure!(
            load(name).into_certificate().unwrap().verify().is_valid(),
            "{name} fails"
        );
    }
    Ok(format!(
        "oracle and certificates agree on {pairs} ordered pairs"
    ))
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    run_property("rank-nullity", any_matrix(), |m| check_rank_nullity(&m))?;
    run_property("modular law", subspace_pair(), |(a, b)| {
        check_modular_law(&a, &b)
    })?;
    let alg = kronecker(fp());
    let triple = (
        kronecker_module(alg.clone()),
        kronecker_module(alg.clone()),
        kronecker_module(alg.clone()),
    );
    run_property("hom bilinearity", triple, |(a, b, c)| {
        check_hom_bilinear(&a, &b, &c)
    })?;
    let docs = (
        kronecker_module(alg.clone()),
        kronecker_module(alg),
        matrix_in(fp(), 4, 4),
        rational_module(),
    );
    run_property("round trip", docs, |(a, b, seed, r)| {
        check_round_trip(&Document::Representation(a.clone()))?;
        check_round_trip(&Document::Representation(r))?;
        check_round_trip(&map_document(a, b, &seed))
    })?;
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(10), "took {took:?}");
    Ok(format!(
        "4 properties x 1000 cases in {:.2}s",
        took.as_secs_f64()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("codimensions and pushes through eta and theta", criterion_1),
        ("hom defects and the Kronecker certificate", criterion_2),
        ("ladder fixtures and mutation rejection", criterion_3),
        ("deformation family lands in the right orbits", criterion_4),
        ("series asymmetry of μ and ν", criterion_5),
        ("push soundness over F2", criterion_6),
        ("pushed composition series", criterion_7),
        (
            "composition vectors and simultaneous triangularization",
            criterion_8,
        ),
        ("rank oracle against certificates", criterion_9),
        ("linear algebra property suite", criterion_10),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
