//! The five verbs. Each returns a report, or a usage error for input that
//! cannot be run at all.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reltwist_core::ext::relative_r;
use reltwist_core::lie::{LeviDecomposition, LieAlgebra, Subdiagram};
use reltwist_core::tensor::json::{tensor_from_json, tensor_to_json, to_canonical_string};
use reltwist_core::tensor::{hc_project, Enveloping, HcVariant, TensorElement};
use reltwist_core::twist::json::{
    associator_from_json, twist_from_json, twist_to_json, witness_to_json, ArtifactContext,
};
use reltwist_core::twist::{
    adapt_form, build_relative_twist, builtin_phi, gauge_transform, gauge_witness, hc_associator, is_hc_normalized,
    is_theta_symmetric, pentagon_residual, satisfies_theta_constraint, twist_residual, BuildOptions, GaugeOptions,
    Invariance, Ladder,
};
use reltwist_core::verify::{self, Check};
use reltwist_core::Error;
use serde_json::{json, Map, Value};

use crate::report::Report;
use crate::{LadderArg, Target, VariantArg};

pub type Usage = String;

fn algebra(t: &str) -> Result<LieAlgebra, Usage> {
    LieAlgebra::from_str_type(t).map_err(|e| e.to_string())
}

fn rank_of(t: &str) -> reltwist_core::Result<usize> {
    Ok(LieAlgebra::from_str_type(t)?.rank)
}

fn setup(target: &Target) -> Result<(Arc<LieAlgebra>, LeviDecomposition), Usage> {
    let g = algebra(&target.cartan_type)?;
    let d = Subdiagram::parse(&target.subdiagram, g.rank).map_err(|e| e.to_string())?;
    let l = LeviDecomposition::new(&g, &d).map_err(|e| e.to_string())?;
    Ok((Arc::new(g), l))
}

fn target_config(g: &LieAlgebra, l: &LeviDecomposition) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("cartan_type".into(), json!(g.cartan_type.to_string()));
    m.insert("subdiagram".into(), json!(l.d.to_cli()));
    m
}

fn read_json(p: &Path) -> Result<Value, Usage> {
    let s = fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
    serde_json::from_str(&s).map_err(|e| format!("{}: {e}", p.display()))
}

fn write_artifact(p: &Path, v: &Value) -> Result<String, Usage> {
    let mut s = to_canonical_string(v);
    s.push('\n');
    fs::write(p, s).map_err(|e| format!("{}: {e}", p.display()))?;
    Ok(p.display().to_string())
}

fn single(name: &str, ok: bool, detail: impl FnOnce() -> String) -> Check {
    let mut c = Check::new(name);
    if ok {
        c.cases = 1;
    } else {
        c.fail(detail);
    }
    c
}

type Task = Box<dyn FnOnce() -> Vec<Check> + Send>;

/// Run `tasks` on up to `jobs` threads; results keep task order.
fn run_tasks(tasks: Vec<Task>, jobs: usize) -> Vec<Check> {
    let n = tasks.len();
    let queue: Mutex<Vec<Option<Task>>> = Mutex::new(tasks.into_iter().map(Some).collect());
    let results: Mutex<Vec<Vec<Check>>> = Mutex::new(vec![Vec::new(); n]);
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, n.max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= n {
                    break;
                }
                let task = queue.lock().expect("queue")[i].take().expect("task taken once");
                let out = task();
                results.lock().expect("results")[i] = out;
            });
        }
    });
    results.into_inner().expect("results").into_iter().flatten().collect()
}

pub fn verify(target: &Target, order: usize, samples: usize, seed: u64, jobs: usize) -> Result<Report, Usage> {
    let (g, l) = setup(target)?;
    if order > 3 {
        return Err(Error::BuiltinOrder(order).to_string());
    }
    let mut cfg = target_config(&g, &l);
    cfg.insert("order".into(), json!(order));
    cfg.insert("samples".into(), json!(samples));
    cfg.insert("seed".into(), json!(seed));
    let mut report = Report::new("verify", cfg);
    let rng = move |k: u64| ChaCha8Rng::seed_from_u64(seed.wrapping_mul(1_000_003).wrapping_add(k));
    let mut tasks: Vec<Task> = Vec::new();
    {
        let g = g.clone();
        tasks.push(Box::new(move || vec![verify::mcybe(&Enveloping::new(g))]));
    }
    {
        let (g, l) = (g.clone(), l.clone());
        tasks.push(Box::new(move || verify::relative_r_suite(&Enveloping::new(g), &l)));
    }
    {
        let (g, l) = (g.clone(), l.clone());
        tasks.push(Box::new(move || vec![verify::schouten_is_ce(&g, &l, 2)]));
    }
    {
        let (g, l) = (g.clone(), l.clone());
        tasks.push(Box::new(move || {
            let mut v = verify::homotopy_identity(&g, &l, 3);
            v.push(verify::casimir_kernel(&g, &l, 3));
            v
        }));
    }
    {
        let (g, l) = (g.clone(), l.clone());
        tasks.push(Box::new(move || vec![verify::cohomology_check(&g, &l, 3)]));
    }
    {
        let (g, l) = (g.clone(), l.clone());
        tasks.push(Box::new(move || verify::hc_suite(&Enveloping::new(g), &l, 2 * samples, 3, 3, &mut rng(1))));
    }
    {
        let g = g.clone();
        tasks.push(Box::new(move || verify::lemma_suite(&Enveloping::new(g), samples, 3, &mut rng(2))));
    }
    {
        let (g, l) = (g.clone(), l.clone());
        tasks.push(Box::new(move || vec![verify::gd_commutes_with_invariants(&g, &l, samples, &mut rng(3))]));
    }
    {
        let (g, l) = (g.clone(), l.clone());
        tasks.push(Box::new(move || {
            vec![verify::alt_kills_invariant_coboundaries(&Enveloping::new(g), &l, samples, 2, &mut rng(4))]
        }));
    }
    {
        let (g, l) = (g.clone(), l.clone());
        tasks.push(Box::new(move || associator_checks(&Enveloping::new(g), &l, order)));
    }
    for c in run_tasks(tasks, jobs) {
        report.check(c);
    }
    report.lap("checks");
    Ok(report)
}

fn associator_checks(env: &Enveloping, l: &LeviDecomposition, order: usize) -> Vec<Check> {
    let phi = builtin_phi(env, order).expect("order checked");
    let mut pent = Check::new("builtin_phi_pentagon");
    let res = pentagon_residual(env, &phi.series, None);
    pent.record(res.term_count(), || format!("order {:?}", res.valuation()));
    let theta = single("builtin_phi_theta_constraint", satisfies_theta_constraint(env, &phi.series), String::new);
    let mut proj = Check::new("hc_associator_pentagon");
    match hc_associator(env, &phi, &l.d) {
        Ok(p) => {
            let res = pentagon_residual(env, &p.series, None);
            proj.record(res.term_count(), || format!("order {:?}", res.valuation()));
        }
        Err(e) => proj.fail(|| e.to_string()),
    }
    vec![pent, theta, proj]
}

pub fn cohomology(target: &Target, max_degree: usize) -> Result<Report, Usage> {
    let (g, l) = setup(target)?;
    if max_degree > g.dim() {
        return Err(format!("--max-degree {max_degree} exceeds dim g = {}", g.dim()));
    }
    let mut cfg = target_config(&g, &l);
    cfg.insert("max_degree".into(), json!(max_degree));
    let mut report = Report::new("cohomology", cfg);
    let t = verify::cohomology_table(&g, &l, max_degree);
    report.lap("ranks");
    report.check(single("cohomology_matches_prediction", t.matches(), || {
        format!("computed {:?}, predicted {:?}", t.computed, t.predicted)
    }));
    report.result("computed", json!(t.computed));
    report.result("predicted", json!(t.predicted));
    report.result("small_degree_formula", json!(t.small_degrees));
    Ok(report)
}

pub struct BuildArgs {
    pub order: usize,
    pub degree_cap: Option<u32>,
    pub degree_ceiling: Option<u32>,
    pub theta: bool,
    pub ladder: LadderArg,
    pub phi: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

pub fn build(target: &Target, a: &BuildArgs) -> Result<Report, Usage> {
    let (g, l) = setup(target)?;
    let base = Enveloping::new(g.clone());
    let phi = match &a.phi {
        None => builtin_phi(&base, a.order).map_err(|e| e.to_string())?,
        Some(p) => {
            let (phi, ctx) = associator_from_json(&read_json(p)?, rank_of).map_err(|e| e.to_string())?;
            if algebra(&ctx.cartan_type)?.cartan_type != g.cartan_type {
                return Err(format!("{}: associator is for {}, not {}", p.display(), ctx.cartan_type, g.cartan_type));
            }
            if phi.invariance != Invariance::G {
                return Err(format!("{}: associator must be g-invariant", p.display()));
            }
            let mut phi = phi;
            phi.series = phi.series.truncate(a.order.min(phi.order()));
            phi
        }
    };
    let (env, phi) = adapt_form(&Enveloping::new(Arc::new(g.with_form_scaling(&phi.form_scaling))), &phi)
        .map_err(|e| e.to_string())?;
    let ladder = match a.ladder {
        LadderArg::Pairs => Ladder::Pairs,
        LadderArg::Single => Ladder::Single,
        LadderArg::Off => Ladder::Off,
    };
    let mut cfg = target_config(&g, &l);
    cfg.insert("order".into(), json!(phi.order()));
    cfg.insert("theta".into(), json!(a.theta));
    cfg.insert("ladder".into(), json!(ladder));
    cfg.insert("degree_cap".into(), json!(a.degree_cap));
    cfg.insert("degree_ceiling".into(), json!(a.degree_ceiling));
    cfg.insert("phi".into(), json!(a.phi.as_ref().map_or("builtin".to_string(), |p| p.display().to_string())));
    let mut report = Report::new("build", cfg);
    report.result("form_scaling", json!(phi.form_scaling.iter().map(ToString::to_string).collect::<Vec<_>>()));
    let opts = BuildOptions {
        theta_mode: a.theta,
        ladder,
        degree_cap: a.degree_cap,
        degree_ceiling: a.degree_ceiling,
        ..Default::default()
    };
    let (twist, build_report) = match build_relative_twist(&env, &phi, &l.d, &opts) {
        Ok(x) => x,
        Err(e) => {
            report.lap("build");
            report.error = Some(e.to_string());
            return Ok(report);
        }
    };
    report.lap("build");
    report.result("build", serde_json::to_value(&build_report).expect("serializable"));
    report.result("term_counts", json!(twist.series.term_counts()));

    let ctx = ArtifactContext::new(&env.alg, &l.d);
    let text = to_canonical_string(&twist_to_json(&twist, &ctx, env.dim()));
    if let Some(p) = &a.out {
        let parsed: Value = serde_json::from_str(&text).expect("own output parses");
        report.artifacts.push(write_artifact(p, &parsed)?);
    }
    // Every claim below is re-derived from the serialized artifact.
    let (back, bctx) = twist_from_json(&serde_json::from_str(&text).expect("own output parses"), rank_of)
        .map_err(|e| e.to_string())?;
    let genv = Enveloping::new(Arc::new(algebra(&bctx.cartan_type)?.with_form_scaling(&bctx.form_scaling)));
    let bl = LeviDecomposition::new(&genv.alg, &bctx.d).map_err(|e| e.to_string())?;
    let phi_d = hc_associator(&genv, &phi, &bl.d).map_err(|e| e.to_string())?;
    let mut residual = Check::new("artifact_twist_residual");
    let res = twist_residual(&genv, &phi.series, &phi_d.series, &back.series);
    residual.record(res.term_count(), || format!("first nonzero order {:?}", res.valuation()));
    report.check(residual);
    let hc = is_hc_normalized(&genv, &bl, &back.series).unwrap_or(false);
    report.check(single("artifact_hc_normalized", hc && back.hc_normalized, || "π̄²_D(F) ≠ 1⊗1".into()));
    if back.series.order() >= 1 {
        let expected = relative_r(&genv.alg, &bl).embed();
        let ok = *back.series.coeff(1) == expected;
        report.check(single("artifact_order_one", ok, || "order-1 coefficient differs from r_g − r_D".into()));
    }
    let sym = is_theta_symmetric(&genv, &back.series);
    if a.theta {
        report.check(single("artifact_theta_symmetric", sym && back.theta_symmetric, || "F^Θ ≠ F^{21}".into()));
    }
    report.lap("reverify");
    Ok(report)
}

pub fn gauge_check(f1: &Path, f2: &Path, theta: bool, hc: bool, out: Option<&Path>) -> Result<Report, Usage> {
    let (t1, c1) = twist_from_json(&read_json(f1)?, rank_of).map_err(|e| format!("{}: {e}", f1.display()))?;
    let (t2, c2) = twist_from_json(&read_json(f2)?, rank_of).map_err(|e| format!("{}: {e}", f2.display()))?;
    if c1 != c2 {
        return Err(format!("context mismatch: {c1:?} vs {c2:?}"));
    }
    let g = Arc::new(algebra(&c1.cartan_type)?.with_form_scaling(&c1.form_scaling));
    let env = Enveloping::new(g.clone());
    let l = LeviDecomposition::new(&g, &c1.d).map_err(|e| e.to_string())?;
    let mut cfg = target_config(&g, &l);
    cfg.insert("f1".into(), json!(f1.display().to_string()));
    cfg.insert("f2".into(), json!(f2.display().to_string()));
    cfg.insert("theta".into(), json!(theta));
    cfg.insert("hc_normalized".into(), json!(hc));
    let mut report = Report::new("gauge-check", cfg);
    let opts = GaugeOptions { theta_mode: theta, require_hc_normalized: hc, ..Default::default() };
    let n = t1.series.order().min(t2.series.order());
    match gauge_witness(&env, &l, &t1.series, &t2.series, &opts) {
        Ok(w) => {
            report.lap("witness");
            let reproduced = gauge_transform(&env, &t1.series.truncate(n), &w).map(|f| f == t2.series.truncate(n)).unwrap_or(false);
            report.check(single("witness_reproduces_f2", reproduced, || "exp(λ)·u⊗u·F₁·Δ(u)⁻¹ ≠ F₂".into()));
            report.result("order", json!(n));
            report.result("u_term_counts", json!(w.u.term_counts()));
            report.result("lambda_zero", json!(w.lambda.iter().all(|x| x.is_zero())));
            report.result("trivial", json!(w.is_trivial()));
            if let Some(p) = out {
                report.artifacts.push(write_artifact(p, &witness_to_json(&w, &c1, env.dim()))?);
            }
        }
        Err(Error::NotEquivalent(m)) => {
            report.lap("witness");
            report.check(single("gauge_equivalent", false, || format!("not equivalent: obstruction at order {m}")));
            report.result("obstruction_order", json!(m));
        }
        Err(e) => {
            report.lap("witness");
            report.error = Some(e.to_string());
        }
    }
    Ok(report)
}

pub fn project(input: &Path, target: &Target, variant: VariantArg, out: Option<&Path>) -> Result<Report, Usage> {
    let (g, l) = setup(target)?;
    let x: TensorElement = tensor_from_json(&read_json(input)?).map_err(|e| format!("{}: {e}", input.display()))?;
    if let Some(b) = x.terms.keys().flat_map(|m| m.0.iter()).flat_map(|s| s.letters()).find(|&b| b >= g.dim()) {
        return Err(format!("{}: basis index {b} out of range for {}", input.display(), g.cartan_type));
    }
    let hv = match variant {
        VariantArg::Pi => HcVariant::Pi,
        VariantArg::Pibar => HcVariant::PiBar,
    };
    let mut cfg = target_config(&g, &l);
    cfg.insert("input".into(), json!(input.display().to_string()));
    cfg.insert("variant".into(), json!(if hv == HcVariant::Pi { "pi" } else { "pibar" }));
    cfg.insert("k".into(), json!(x.k));
    let mut report = Report::new("project", cfg);
    let p = match hc_project(&g, &l, &x, hv) {
        Ok(p) => p,
        Err(e) => {
            report.error = Some(e.to_string());
            return Ok(report);
        }
    };
    report.lap("project");
    let in_letters = |t: &TensorElement, letters: &[usize]| {
        t.terms.keys().flat_map(|m| m.0.iter()).flat_map(|s| s.letters()).all(|b| letters.contains(&b))
    };
    let twice = hc_project(&g, &l, &p, hv).map(|q| q == p).unwrap_or(false);
    report.check(single("idempotent", twice, || "projection of the image differs from the image".into()));
    let fixed_letters = if hv == HcVariant::Pi { &l.ld_basis } else { &l.gd_basis };
    if in_letters(&x, fixed_letters) {
        report.check(single("identity_on_subalgebra", p == x, || "input in the fixed subalgebra was changed".into()));
    }
    report.result("input_terms", json!(x.len()));
    report.result("output_terms", json!(p.len()));
    report.result("output", tensor_to_json(&p, g.dim()));
    if let Some(path) = out {
        report.artifacts.push(write_artifact(path, &tensor_to_json(&p, g.dim()))?);
    }
    Ok(report)
}
