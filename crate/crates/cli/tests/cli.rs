use std::fs;
use std::path::Path;
use std::process::{Command, Output};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reltwist_core::lie::{AlgElement, LeviDecomposition, LieAlgebra, Subdiagram};
use reltwist_core::tensor::json::{tensor_to_json, to_canonical_string};
use reltwist_core::tensor::{hc_project, Enveloping, HcVariant, TensorElement};
use reltwist_core::twist::json::{associator_to_json, twist_from_json, twist_to_json, ArtifactContext};
use reltwist_core::twist::{builtin_phi, gauge_transform, random_witness, Twist};
use reltwist_core::Rat;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value, String) {
    let out: Output = Command::new(env!("CARGO_BIN_EXE_reltwist")).args(args).output().unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    let v = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v, stderr)
}

fn rank_of(t: &str) -> reltwist_core::Result<usize> {
    Ok(LieAlgebra::from_str_type(t)?.rank)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn failed_checks(v: &Value) -> Vec<String> {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] != "pass")
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect()
}

fn env(t: &str) -> Enveloping {
    Enveloping::new(Arc::new(LieAlgebra::from_str_type(t).unwrap()))
}

#[test]
fn verify_passes_for_small_targets() {
    for (t, d) in [("A2", "1"), ("A1", "1"), ("A1", "")] {
        let (code, v, _) = run(&["verify", "--type", t, "--subdiagram", d, "--samples", "4", "--jobs", "2"]);
        assert_eq!(code, 0, "{t} {{{d}}}: {:?}", failed_checks(&v));
        assert_eq!(v["status"], "pass");
        assert!(v["checks"].as_array().unwrap().len() >= 20);
        assert!(v["timings_ms"].is_object());
    }
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = run(&["verify", "--type", "Z9"]);
    assert_eq!(code, 2);
    assert!(err.contains("unsupported Cartan datum"), "{err}");
    let (code, _, err) = run(&["cohomology", "--type", "A2", "--subdiagram", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("3"), "{err}");
    let (code, _, err) = run(&["build", "--type", "A2", "--order", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("N <= 3"), "{err}");
}

#[test]
fn cohomology_tables() {
    for (t, d, expected) in [
        ("A2", "", vec![1, 2, 1, 0]),
        ("A2", "1", vec![1, 1, 0, 1]),
        ("A2", "1,2", vec![1, 0, 0, 1]),
        ("A3", "2", vec![1, 2, 1, 1]),
    ] {
        let (code, v, _) = run(&["cohomology", "--type", t, "--subdiagram", d, "--no-timings"]);
        assert_eq!(code, 0, "{t} {{{d}}}");
        let computed: Vec<usize> = serde_json::from_value(v["results"]["computed"].clone()).unwrap();
        assert_eq!(computed, expected, "{t} {{{d}}}");
        assert_eq!(v["results"]["predicted"], v["results"]["computed"]);
        assert!(v.get("timings_ms").is_none());
    }
}

#[test]
fn builds_and_reverifies_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    for (t, d, n, extra) in [("A1", "", "2", None), ("A2", "1", "2", Some("--theta")), ("A2", "", "2", None)] {
        let out = dir.path().join(format!("{t}_{d}.json"));
        let mut args = vec!["build", "--type", t, "--subdiagram", d, "--order", n, "--out", path(&out)];
        args.extend(extra);
        let (code, v, _) = run(&args);
        assert_eq!(code, 0, "{t} {{{d}}}: {:?}", failed_checks(&v));
        assert!(v["results"]["build"]["hc_normalized"].as_bool().unwrap());
        let (tw, ctx) = twist_from_json(&serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap(), rank_of)
            .unwrap();
        assert_eq!(ctx.cartan_type, t);
        assert_eq!(tw.order(), 2);
        assert!(extra.is_none() || tw.theta_symmetric);
    }
    // D = Δ: the twist is 1⊗1.
    let (code, v, _) = run(&["build", "--type", "A2", "--subdiagram", "1,2", "--order", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["term_counts"], serde_json::json!([1, 0, 0, 0]));
}

#[test]
fn build_reads_associator_files() {
    let dir = tempfile::tempdir().unwrap();
    let u = env("A2");
    let phi = builtin_phi(&u, 2).unwrap();
    let ctx = ArtifactContext::new(&u.alg, &Subdiagram(vec![]));
    let file = dir.path().join("phi.json");
    fs::write(&file, to_canonical_string(&associator_to_json(&phi, &ctx, u.dim()))).unwrap();
    let (code, v, _) = run(&["build", "--type", "A2", "--subdiagram", "1", "--phi", path(&file), "--no-timings"]);
    assert_eq!(code, 0, "{:?}", failed_checks(&v));
    assert_eq!(v["config"]["order"], 2);
    let (code, _, err) = run(&["build", "--type", "B2", "--phi", path(&file)]);
    assert_eq!(code, 2);
    assert!(err.contains("associator is for A2"), "{err}");
}

#[test]
fn ladder_off_is_refused_at_high_corank() {
    let (code, v, _) = run(&["build", "--type", "A3", "--ladder", "off", "--no-timings"]);
    assert_eq!(code, 1);
    assert!(v["error"].as_str().unwrap().contains("laddering"));
}

#[test]
fn gauge_check_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let f1 = dir.path().join("f1.json");
    let (code, _, _) = run(&["build", "--type", "A2", "--subdiagram", "1", "--order", "2", "--out", path(&f1)]);
    assert_eq!(code, 0);
    let (code, v, _) = run(&["gauge-check", path(&f1), path(&f1)]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["trivial"], true);

    let (t1, ctx) = twist_from_json(&serde_json::from_str(&fs::read_to_string(&f1).unwrap()).unwrap(), rank_of).unwrap();
    let u = env("A2");
    let l = LeviDecomposition::new(&u.alg, &ctx.d).unwrap();
    let w = random_witness(&u, &l, 2, 2, &mut ChaCha8Rng::seed_from_u64(5));
    let moved = Twist { series: gauge_transform(&u, &t1.series, &w).unwrap(), hc_normalized: false, ..t1.clone() };
    let f2 = dir.path().join("f2.json");
    fs::write(&f2, to_canonical_string(&twist_to_json(&moved, &ctx, u.dim()))).unwrap();
    let wout = dir.path().join("w.json");
    let (code, v, _) = run(&["gauge-check", path(&f1), path(&f2), "--out", path(&wout)]);
    assert_eq!(code, 0, "{:?}", failed_checks(&v));
    assert_eq!(v["results"]["trivial"], false);
    assert!(wout.exists());

    let mut bad = t1.clone();
    let (e1, f1b) = (AlgElement::basis(u.alg.e_index(0)), AlgElement::basis(u.alg.f_index(0)));
    let wedge = TensorElement::lie_tensor(&[&e1, &f1b]).sub(&TensorElement::lie_tensor(&[&f1b, &e1]));
    bad.series.coeffs[2].add_assign(&wedge);
    let f3 = dir.path().join("f3.json");
    fs::write(&f3, to_canonical_string(&twist_to_json(&bad, &ctx, u.dim()))).unwrap();
    let (code, v, _) = run(&["gauge-check", path(&f1), path(&f3)]);
    assert_eq!(code, 1, "{v}");

    let other = dir.path().join("other.json");
    let (code, _, _) = run(&["build", "--type", "A2", "--order", "2", "--out", path(&other)]);
    assert_eq!(code, 0);
    let (code, _, err) = run(&["gauge-check", path(&f1), path(&other)]);
    assert_eq!(code, 2);
    assert!(err.contains("context mismatch"), "{err}");
}

#[test]
fn project_casimir_and_domain_errors() {
    let dir = tempfile::tempdir().unwrap();
    let u = env("A2");
    let l = LeviDecomposition::new(&u.alg, &Subdiagram(vec![0])).unwrap();
    let omega = u.casimir(2, 0, 1);
    let input = dir.path().join("omega.json");
    fs::write(&input, to_canonical_string(&tensor_to_json(&omega, u.dim()))).unwrap();
    let out = dir.path().join("omega_d.json");
    let (code, v, _) = run(&["project", path(&input), "--type", "A2", "--subdiagram", "1", "--out", path(&out)]);
    assert_eq!(code, 0, "{:?}", failed_checks(&v));
    let expected = hc_project(&u.alg, &l, &omega, HcVariant::PiBar).unwrap();
    assert_eq!(v["results"]["output"], tensor_to_json(&expected, u.dim()));
    assert!(out.exists());
    // Ω_D = e1⊗f1 + f1⊗e1 + ½h1⊗h1.
    assert_eq!(expected.len(), 3);

    // e1 ⊗ e2 has nonzero c_D-weight.
    let (e1, e2) = (AlgElement::basis(u.alg.e_index(0)), AlgElement::basis(u.alg.e_index(1)));
    let x = TensorElement::lie_tensor(&[&e1, &e2]).scale(&Rat::from_int(3));
    let bad = dir.path().join("bad.json");
    fs::write(&bad, to_canonical_string(&tensor_to_json(&x, u.dim()))).unwrap();
    let (code, v, _) = run(&["project", path(&bad), "--type", "A2", "--subdiagram", "1"]);
    assert_eq!(code, 1);
    assert!(v["error"].as_str().unwrap().contains("e"), "{v}");
}

#[test]
fn output_is_deterministic_without_timings() {
    let args = ["build", "--type", "A2", "--subdiagram", "1", "--order", "2", "--no-timings"];
    let a = Command::new(env!("CARGO_BIN_EXE_reltwist")).args(args).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_reltwist")).args(args).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let args = ["verify", "--type", "A1", "--samples", "3", "--seed", "7", "--jobs", "3", "--no-timings", "--format", "text"];
    let a = Command::new(env!("CARGO_BIN_EXE_reltwist")).args(args).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_reltwist")).args(args).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8(a.stdout).unwrap().contains("time "));
}
