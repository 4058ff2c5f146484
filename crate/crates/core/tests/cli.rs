use std::path::Path;
use std::process::Command;

use mollifier::cli::{load_preset, preset_names, preset_text, run, OptimizeSettings, RunConfig};
use mollifier::functional::eval_bound;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("mollifier").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn value(out: &str, key: &str) -> f64 {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no {key} in {out}"))
        .parse()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn edited(preset: &str, from: &str, to: &str) -> String {
    let text = preset_text(preset).unwrap();
    assert!(text.contains(from), "{from}");
    text.replace(from, to)
}

#[test]
fn bundled_presets_validate() {
    for name in preset_names() {
        let cfg = load_preset(name).unwrap();
        cfg.mollifier.validate().unwrap();
    }
}

#[test]
fn eval_reproduces_reference_values() {
    for (preset, key, target) in [
        ("thm1", "kappa", 0.369927),
        ("thm2", "kappa", 0.410725),
        ("thm1_star", "kappa_star", 0.359991),
    ] {
        let (code, out, _) = call(&["eval", "--preset", preset]);
        assert_eq!(code, 0);
        assert!((value(&out, key) - target).abs() <= 5e-4, "{out}");
        assert!(out.lines().all(|l| l.split(" = ").nth(1).is_none_or(|v| v
            .split('.')
            .nth(1)
            .unwrap()
            .len()
            == 6)));
    }
}

#[test]
fn eval_from_file_with_breakdown() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "base.toml",
        &edited(
            "thm1",
            "p2 = { basis = \"monomial\", coeffs = [0.0, 1.05138, 0.284201] }\n",
            "",
        ),
    );
    let cfg_text = std::fs::read_to_string(&cfg).unwrap().replace(
        "p3 = { basis = \"monomial\", coeffs = [0.0, 0.222032, -0.13254] }\n",
        "",
    );
    std::fs::write(&cfg, cfg_text).unwrap();
    let csv = dir.path().join("terms.csv");
    let (code, out, err) = call(&[
        "eval",
        "--config",
        &cfg,
        "--breakdown",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(
        out.contains("c12 = 0.000000") && out.contains("c22 = 0.000000"),
        "{out}"
    );
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next().unwrap(), "term,l1,l2,k,value");
    assert_eq!(text.lines().count(), 2);

    let (code, _, _) = call(&[
        "eval",
        "--preset",
        "thm2",
        "--breakdown",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.lines().any(|l| l.starts_with("c22,2,3,")));
    assert!(text.lines().any(|l| l.starts_with("c12,1,3,")));
}

#[test]
fn exit_codes_follow_the_documented_mapping() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let cases: Vec<(Vec<String>, i32, &str)> = vec![
        (
            vec![
                "eval".into(),
                "--config".into(),
                write(d, "bad.toml", "[params\nk = 3"),
            ],
            2,
            "parse",
        ),
        (
            vec![
                "eval".into(),
                "--config".into(),
                d.join("missing.toml").to_str().unwrap().into(),
            ],
            2,
            "missing.toml",
        ),
        (
            vec!["eval".into(), "--preset".into(), "nope".into()],
            2,
            "unknown preset",
        ),
        (
            vec!["verify".into(), "--suite".into(), "everything".into()],
            2,
            "everything",
        ),
        (vec!["eval".into()], 2, "required"),
        (
            vec![
                "eval".into(),
                "--config".into(),
                write(
                    d,
                    "typo.toml",
                    &edited("thm1", "theta2 = 0.5", "theta2 = 0.5\nthetaa = 1"),
                ),
            ],
            2,
            "thetaa",
        ),
        (
            vec![
                "eval".into(),
                "--config".into(),
                write(
                    d,
                    "theta.toml",
                    &edited("thm1", "theta1 = 0.5", "theta1 = 0.7"),
                ),
            ],
            3,
            "params.theta1",
        ),
        (
            vec![
                "eval".into(),
                "--config".into(),
                write(
                    d,
                    "p1.toml",
                    &edited("thm1", "[1.0, 0.225339", "[1.5, 0.225339"),
                ),
            ],
            3,
            "polynomials.p1",
        ),
        (
            vec![
                "eval".into(),
                "--config".into(),
                write(d, "k.toml", &edited("thm1", "k = 3", "k = 1")),
            ],
            3,
            "params.k",
        ),
        (
            vec![
                "eval".into(),
                "--config".into(),
                write(
                    d,
                    "order.toml",
                    &edited("thm1", "theta1 = 0.5", "theta1 = 0.45"),
                ),
            ],
            4,
            "theta",
        ),
        (
            vec![
                "eval".into(),
                "--config".into(),
                write(
                    d,
                    "star.toml",
                    &edited(
                        "thm1",
                        "theta2 = 0.5",
                        "theta2 = 0.5\nbound = \"kappa_star\"",
                    ),
                ),
            ],
            4,
            "degree <= 1",
        ),
        (
            vec![
                "verify".into(),
                "--suite".into(),
                "summation".into(),
                "--limit".into(),
                "1000".into(),
            ],
            5,
            "",
        ),
    ];
    for (args, want, needle) in cases {
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out, err) = call(&refs);
        assert_eq!(code, want, "{args:?}\n{out}\n{err}");
        assert!(
            err.contains(needle) || out.contains(needle),
            "{args:?}: {err}"
        );
    }
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_mollifier");
    let ok = Command::new(bin)
        .args(["eval", "--preset", "thm1"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("kappa = 0.3699"));
    let bad = Command::new(bin)
        .args(["eval", "--preset", "missing"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_suites_pass() {
    for suite in ["combinatorics", "residue", "arith-factor"] {
        let (code, out, _) = call(&["verify", "--suite", suite]);
        assert_eq!(code, 0, "{out}");
    }
    let (code, out, _) = call(&["verify", "--suite", "vonmangoldt", "--limit", "10000"]);
    assert_eq!(code, 0);
    assert!(out.contains("max_dev"));
    assert_eq!(out.lines().last(), Some("PASS"));
}

#[test]
fn single_iteration_returns_warm_start() {
    let (code, out, _) = call(&[
        "optimize",
        "--preset",
        "thm2",
        "--iters",
        "1",
        "--restarts",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(value(&out, "kappa"), 0.410531);
}

#[test]
fn optimized_config_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let best = dir.path().join("best.toml");
    let (code, out, err) = call(&[
        "optimize",
        "--preset",
        "thm1",
        "--iters",
        "150",
        "--restarts",
        "2",
        "--out",
        best.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let reparsed = RunConfig::from_path(&best).unwrap();
    let kappa = eval_bound(&reparsed.mollifier, reparsed.bound)
        .unwrap()
        .kappa;
    assert!((kappa - value(&out, "kappa")).abs() <= 5e-7);
    let (code, again, _) = call(&["eval", "--config", best.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(value(&again, "kappa"), value(&out, "kappa"));
    let expected = OptimizeSettings {
        iters: 150,
        restarts: 2,
        ..load_preset("thm1").unwrap().optimize
    };
    assert_eq!(reparsed.optimize, expected);
}

#[test]
fn seeded_traces_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<String> = (0..2)
        .map(|i| {
            dir.path()
                .join(format!("t{i}.csv"))
                .to_str()
                .unwrap()
                .to_string()
        })
        .collect();
    for p in &paths {
        let (code, _, _) = call(&[
            "optimize",
            "--preset",
            "thm1_star",
            "--iters",
            "120",
            "--restarts",
            "3",
            "--seed",
            "9",
            "--trace",
            p,
        ]);
        assert_eq!(code, 0);
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    let text = String::from_utf8(a).unwrap();
    assert_eq!(text.lines().next(), Some("restart,evaluation,kappa"));
    let rows = text.lines().count() - 1;
    assert!((3..=3 * 120).contains(&rows), "{rows}");
}

#[test]
fn table_reports_nonnegative_increment() {
    let (code, out, _) = call(&[
        "table",
        "--preset",
        "four-sevenths",
        "--iters",
        "60",
        "--restarts",
        "1",
    ]);
    assert_eq!(code, 0);
    let inc: f64 = out
        .lines()
        .find_map(|l| l.strip_prefix("increment = "))
        .unwrap()
        .trim_end_matches('%')
        .parse()
        .unwrap();
    assert!(inc >= 0.0, "{out}");
}
