use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

const WORKED_Q: &str = "[[0,-1,0,0],[0,0,0,-1],[-1,0,0,0],[0,0,1,0]]";

fn run(args: &[&str], stdin: &[u8], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_locconvex"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).env_remove("LOCCONVEX_SEED");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    // The binary may exit before reading stdin, e.g. on a bad seed.
    let _ = child.stdin.take().unwrap().write_all(stdin);
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &[u8]) -> Vec<u8> {
    let out = run(args, stdin, &[]);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).expect("valid JSON")
}

fn points(samples: &Value) -> Vec<Vec<f64>> {
    samples["samples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["gamma"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect())
        .collect()
}

fn matrix(v: &Value) -> Vec<Vec<f64>> {
    serde_json::from_value(v.clone()).unwrap()
}

#[test]
fn classify_and_chop_the_worked_example() {
    let cell = json(&ok(&["classify"], WORKED_Q.as_bytes()));
    let q: Vec<Vec<f64>> = serde_json::from_str(WORKED_Q).unwrap();
    assert_eq!(matrix(&cell["matrix"]), q);
    assert_eq!(cell["dimension"], 3);
    // The cell name parses back to the same cell.
    let again = json(&ok(&["classify"], cell["cell"].as_str().unwrap().as_bytes()));
    assert_eq!(again["cell"], cell["cell"]);

    let minus = json(&ok(&["chop"], WORKED_Q.as_bytes()));
    let plus = json(&ok(&["chop", "--plus"], WORKED_Q.as_bytes()));
    let expect_minus = vec![vec![0.0, 0.0, 0.0, -1.0], vec![0.0, 0.0, 1.0, 0.0], vec![0.0, -1.0, 0.0, 0.0], vec![1.0, 0.0, 0.0, 0.0]];
    let expect_plus = vec![vec![0.0, 0.0, 0.0, -1.0], vec![0.0, 0.0, -1.0, 0.0], vec![0.0, 1.0, 0.0, 0.0], vec![1.0, 0.0, 0.0, 0.0]];
    assert_eq!(matrix(&minus["matrix"]), expect_minus);
    assert_eq!(matrix(&plus["matrix"]), expect_plus);
}

#[test]
fn spin_chops_of_the_identity() {
    let one = br#"{"left":[1,0,0,0],"right":[1,0,0,0]}"#;
    let minus = json(&ok(&["chop"], one));
    let plus = json(&ok(&["chop", "--plus"], one));
    let spin = |v: &Value, side: &str| -> Vec<f64> { serde_json::from_value(v["spin"][side].clone()).unwrap() };
    assert_eq!(spin(&minus, "left"), [-1.0, 0.0, 0.0, 0.0]);
    assert_eq!(spin(&minus, "right"), [0.0, 0.0, 0.0, -1.0]);
    assert_eq!(spin(&plus, "left"), [-1.0, 0.0, 0.0, 0.0]);
    assert_eq!(spin(&plus, "right"), [0.0, 0.0, 0.0, 1.0]);
}

#[test]
fn convex_table_verifies() {
    let report = json(&ok(&["convex-table", "--verify"], b""));
    assert_eq!(report["passed"], 24);
    assert_eq!(report["total"], 24);
    assert_eq!(report["dimensions"], serde_json::json!([1, 3, 5, 6, 5, 3, 1]));
    let listing = json(&ok(&["convex-table"], b""));
    assert!(listing.get("passed").is_none());
    assert_eq!(listing["rows"].as_array().unwrap().len(), 24);
}

#[test]
fn gamma1_fifth_power_gets_a_certificate() {
    let samples = ok(&["example", "gamma1", "--m", "5"], b"");
    let cert = json(&ok(&["convexity", "--certificate"], &samples));
    assert_eq!(cert["verdict"], "not_convex");
    assert!(cert["total"].as_u64().unwrap() >= 4);
    let roots: Vec<f64> = cert["roots"].as_array().unwrap().iter().map(|r| r["t"].as_f64().unwrap()).collect();
    for t in [0.2, 0.6] {
        assert!(roots.iter().any(|r| (r - t).abs() < 1e-6), "{roots:?}");
    }
    let verdict = json(&ok(&["convexity"], &samples));
    assert_eq!(verdict["verdict"], "not_convex");
}

#[test]
fn gamma1_is_convex_and_strict_flags_inconclusive_searches() {
    let samples = ok(&["example", "gamma1"], b"");
    let verdict = json(&ok(&["convexity"], &samples));
    assert_eq!(verdict["verdict"], "convex");
    assert_eq!(verdict["cells"]["holds"], true);
    // No hyperplane certificate exists for a convex curve.
    let out = run(&["convexity", "--certificate", "--strict"], &samples, &[]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out.stdout)["verdict"], "inconclusive");
    assert_eq!(run(&["convexity", "--certificate"], &samples, &[]).status.code(), Some(0));
}

#[test]
fn example_decompose_fuse_round_trip() {
    for name in ["gamma1", "gamma2", "gamma3", "gamma4"] {
        let samples = ok(&["example", name, "--steps", "512"], b"");
        let pair = ok(&["decompose"], &samples);
        let pair_json = json(&pair);
        assert!(pair_json["speed_residual"].as_f64().unwrap() < 1e-6);
        let fused = json(&ok(&["fuse"], &pair));
        let (a, b) = (points(&json(&samples)), points(&fused));
        assert_eq!(a.len(), b.len());
        let err = a.iter().zip(&b).flat_map(|(p, q)| p.iter().zip(q).map(|(x, y)| (x - y).abs())).fold(0.0, f64::max);
        assert!(err < 1e-6, "{name}: {err:e}");
        assert!(fused["residuals"]["endpoint_distance"].as_f64().unwrap() < 1e-6);
    }
}

#[test]
fn integrate_reproduces_gamma1() {
    let c = std::f64::consts::PI * 3f64.sqrt() / 2.0;
    let pi = std::f64::consts::PI;
    let input = serde_json::json!({ "n": 3, "grid": [0.0, 1.0], "c": [[c, c], [pi, pi], [c, c]] });
    let out = json(&ok(&["integrate", "--samples", "64"], input.to_string().as_bytes()));
    let pts = points(&out);
    assert_eq!(pts.len(), 65);
    let end = pts.last().unwrap();
    for (x, y) in end.iter().zip([0.0, 0.0, 0.0, 1.0]) {
        assert!((x - y).abs() < 1e-8, "{end:?}");
    }
    assert!(out["residuals"]["max_step_distance"].as_f64().unwrap() > 0.0);
    assert_eq!(out["residuals"]["integration_steps"], 4096.0);

    let bad = serde_json::json!({ "n": 2, "grid": [0.0, 1.0], "c": [[1.0, 1.0], [-1.0, -1.0]] });
    assert_eq!(run(&["integrate"], bad.to_string().as_bytes(), &[]).status.code(), Some(1));
    assert!(run(&["integrate", "--quasi"], bad.to_string().as_bytes(), &[]).status.success());
}

#[test]
fn csv_output_and_file_input() {
    let csv = String::from_utf8(ok(&["example", "sigma", "--c", "2", "--steps", "8", "--format", "csv"], b"")).unwrap();
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("t,x1,x2,x3,speed,kappa,tau,f11"));
    assert_eq!(lines.count(), 9);

    let path = std::env::temp_dir().join(format!("locconvex-cli-{}.json", std::process::id()));
    std::fs::write(&path, WORKED_Q).unwrap();
    let from_file = ok(&["classify", path.to_str().unwrap()], b"");
    let from_stdin = ok(&["classify", "-"], WORKED_Q.as_bytes());
    std::fs::remove_file(&path).ok();
    assert_eq!(from_file, from_stdin);
}

#[test]
fn output_is_deterministic_and_seed_is_overridable() {
    let samples = ok(&["example", "gamma1", "--m", "3"], b"");
    let a = ok(&["convexity", "--certificate", "--seed", "5"], &samples);
    let b = ok(&["convexity", "--certificate", "--seed", "5"], &samples);
    assert_eq!(a, b);
    let env = run(&["convexity", "--certificate", "--seed", "99"], &samples, &[("LOCCONVEX_SEED", "5")]);
    assert_eq!(env.stdout, a);
    let bad = run(&["convexity", "--certificate", "--seed", "3"], &samples, &[("LOCCONVEX_SEED", "five")]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn errors_are_json_on_stderr() {
    for (args, input, kind) in [
        (vec!["classify"], "not json", "Json"),
        (vec!["classify"], "[[1,0],[0,2]]", "InvalidInput"),
        (vec!["example", "gamma9"], "", "InvalidInput"),
        (vec!["example", "sigma", "--c", "7"], "", "BadLength"),
        (vec!["classify"], "P_(15);0", "ParseError"),
        (vec!["convex-table", "--format", "csv"], "", "InvalidInput"),
    ] {
        let out = run(&args, input.as_bytes(), &[]);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
        let err = json(&out.stderr);
        assert_eq!(err["error"]["kind"], kind, "{args:?}: {err}");
        assert!(err["error"]["message"].as_str().is_some_and(|m| !m.is_empty()));
    }
}
