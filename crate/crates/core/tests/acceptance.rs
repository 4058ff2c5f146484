//! Acceptance criteria A1–A9, one line each.

mod common;

use std::time::{Duration, Instant};

use mollifier::cli::{load_preset, run_optimize, table_row, trace_csv, verify, CheckRow};
use mollifier::functional::{eval_bound, eval_total, Formula};
use mollifier::nt::build_table;
use mollifier::optimize::{optimize, OptimizeOptions, SearchSpace};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn eval_preset(name: &str) -> (f64, Duration) {
    let start = Instant::now();
    let cfg = load_preset(name).expect("bundled preset");
    let kappa = eval_bound(&cfg.mollifier, cfg.bound)
        .expect("evaluates")
        .kappa;
    (kappa, start.elapsed())
}

fn a1() -> Outcome {
    let (kappa, t) = eval_preset("thm1");
    let err = (kappa - 0.369927).abs();
    outcome(
        err <= 5e-4 && t < Duration::from_secs(1),
        format!(
            "kappa = {kappa:.6} (|diff| = {err:.2e} <= 5e-4), runtime {:.1} ms < 1 s",
            t.as_secs_f64() * 1e3
        ),
    )
}

fn a2() -> Outcome {
    let cfg = load_preset("thm2").expect("bundled preset");
    let kappa = eval_bound(&cfg.mollifier, cfg.bound)
        .expect("evaluates")
        .kappa;
    let err = (kappa - 0.410725).abs();
    outcome(
        err <= 5e-4,
        format!(
            "kappa = {kappa:.6} (|diff| = {err:.2e} <= 5e-4) with formula = {:?}, c12_variant = {:?}",
            cfg.mollifier.formula, cfg.mollifier.c12_variant
        ),
    )
}

fn a3() -> Outcome {
    let (k1, _) = eval_preset("thm1_star");
    let (k2, _) = eval_preset("thm2_star");
    let (e1, e2) = ((k1 - 0.359991).abs(), (k2 - 0.403211).abs());
    outcome(
        e1 <= 1e-3 && e2 <= 1e-3,
        format!(
            "kappa* = {k1:.6} (|diff| = {e1:.2e}), {k2:.6} (|diff| = {e2:.2e}), tol 1e-3, linear Q"
        ),
    )
}

fn base_space(preset: &str) -> SearchSpace {
    let cfg = load_preset(preset).expect("bundled preset");
    SearchSpace {
        pl_degrees: Vec::new(),
        ..cfg.search_space()
    }
}

fn a4() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (preset, floor) in [("thm1", 0.3655), ("thm2", 0.4085)] {
        let space = base_space(preset);
        let start = Instant::now();
        let res = optimize(
            &space,
            &OptimizeOptions {
                budget: 2000,
                restarts: 8,
                seed: 1,
                warm_start: None,
                extra_starts: Vec::new(),
            },
        )
        .expect("optimizer runs");
        let t = start.elapsed();
        let ok = res.best_kappa >= floor && t < Duration::from_secs(120);
        pass &= ok;
        parts.push(format!(
            "theta1 = {:.4}: kappa = {:.6} >= {floor} in {:.1} s",
            space.theta1,
            res.best_kappa,
            t.as_secs_f64()
        ));
    }
    outcome(
        pass,
        format!("{} (P_l = 0, 2000 x 8, no warm start)", parts.join("; ")),
    )
}

fn a5() -> Outcome {
    let mut parts = Vec::new();
    let mut pass = true;
    for (preset, base, inc) in [("thm1", 36.58, 0.4127), ("thm2", 40.88, 0.1925)] {
        let cfg = load_preset(preset).expect("bundled preset");
        let row = table_row(&cfg).expect("table row");
        let (b, i) = (100.0 * row.base, 100.0 * row.increment());
        let ok = (b - base).abs() <= 0.05 && (i - inc).abs() <= 0.05;
        pass &= ok;
        parts.push(format!(
            "theta1 = {:.4}: base {b:.4}% (vs {base}%), increment {i:.4}% (vs {inc}%) {}",
            cfg.mollifier.theta1,
            if ok { "ok" } else { "off" }
        ));
    }
    outcome(pass, format!("{}; tol 0.05 pp", parts.join("; ")))
}

fn a6() -> Outcome {
    let mut rng = common::rng(20);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let mut c = common::random_config(&mut rng);
        c.formula = Formula::Reduced;
        let report = eval_total(&c).map(|r| (r.c11, r.c12, r.c22));
        let (c11, c12, c22) = match report {
            Ok(v) => v,
            Err(_) => {
                let c11 = mollifier::functional::eval_c11(&c.p1, &c.q, c.r, c.theta1).expect("c11");
                let c12 = mollifier::functional::eval_c12(&c).expect("c12");
                let c22 = mollifier::functional::eval_c22(&c).expect("c22");
                (c11, c12, c22)
            }
        };
        let o = common::oracle(&c);
        for (a, b) in [(c11, o.c11), (c12, o.c12), (c22, o.c22)] {
            worst = worst.max((a - b).abs() / b.abs());
        }
    }
    outcome(
        worst <= 1e-6,
        format!("20 random configs, max relative error {worst:.2e} <= 1e-6"),
    )
}

fn rows_ok(rows: &[CheckRow]) -> bool {
    rows.iter().all(|r| r.pass)
}

fn a7() -> Outcome {
    let comb = verify::combinatorics(210).expect("combinatorics");
    let vm = verify::vonmangoldt(10_000).expect("von Mangoldt");
    let res = verify::residue().expect("residue");
    let af = verify::arith_factor().expect("arithmetic factor");
    let worst = |rows: &[CheckRow]| rows.iter().map(|r| r.value).fold(0.0, f64::max);
    let trend = af
        .iter()
        .find(|r| r.check.contains("|S(1000)-1|"))
        .map(|r| r.check.clone())
        .unwrap_or_default();
    outcome(
        rows_ok(&comb) && rows_ok(&vm) && rows_ok(&res) && rows_ok(&af),
        format!(
            "tuple identity {:.1e} <= 1e-12; Lambda_2 {:.1e} <= 1e-9; residue {:.1e} <= 1e-10; \
             arithmetic factor oracle {:.1e} <= 1e-12; {trend}",
            worst(&comb),
            vm[0].value,
            worst(&res),
            af[0].value
        ),
    )
}

fn a8() -> Outcome {
    let start = Instant::now();
    let table = build_table(1_000_000).expect("sieve");
    let sieve = start.elapsed();
    let rows = verify::summation_with(&table, 1_000_000).expect("summation");
    let pass = rows_ok(&rows) && sieve < Duration::from_secs(60);
    let parts: Vec<String> = rows
        .iter()
        .map(|r| format!("{:.2e} < {:.2e}", r.value, r.tolerance))
        .collect();
    outcome(
        pass,
        format!(
            "rel_err(1e6) < rel_err(1e3) for 6 families [{}]; sieve {:.2} s",
            parts.join(", "),
            sieve.as_secs_f64()
        ),
    )
}

fn a9() -> Outcome {
    let mut cfg = load_preset("thm1").expect("bundled preset");
    cfg.optimize.iters = 300;
    cfg.optimize.restarts = 4;
    cfg.optimize.seed = 7;
    let a = trace_csv(&run_optimize(&cfg).expect("run")).expect("csv");
    let b = trace_csv(&run_optimize(&cfg).expect("run")).expect("csv");
    outcome(
        a == b && !a.is_empty(),
        format!(
            "two seeded runs, trace CSV {} bytes each, byte-equal = {}",
            a.len(),
            a == b
        ),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("A1", a1),
        ("A2", a2),
        ("A3", a3),
        ("A4", a4),
        ("A5", a5),
        ("A6", a6),
        ("A7", a7),
        ("A8", a8),
        ("A9", a9),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let o = f();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{name} {} {} [{:.1} s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
