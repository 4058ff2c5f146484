use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::nt::{
    arithmetic_factor_naive, build_table, dirichlet_convolve_int, verify_arithmetic_factor,
    verify_combinatorial_identity, verify_lambda2_identity, verify_lambda_k_recursion,
    verify_residue_formula, verify_summation_lemma, ArithTable, ConvSpec, Leading,
};
use crate::poly::Polynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Suite {
    Combinatorics,
    Vonmangoldt,
    ArithFactor,
    Summation,
    Residue,
    All,
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub suite: &'static str,
    pub check: String,
    /// Measured deviation (or the quantity compared against `tolerance`).
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRow {
    fn below(suite: &'static str, check: impl Into<String>, value: f64, tolerance: f64) -> Self {
        CheckRow {
            suite,
            check: check.into(),
            value,
            tolerance,
            pass: value <= tolerance,
        }
    }
}

/// Square-free integers up to `n`.
fn square_free(t: &ArithTable, n: usize) -> Vec<usize> {
    (1..=n).filter(|&h| t.mu[h] != 0).collect()
}

pub fn combinatorics(h_max: usize) -> Result<Vec<CheckRow>> {
    let t = build_table(h_max.max(2))?;
    let hs = square_free(&t, h_max);
    let mut worst = 0.0f64;
    let mut cases = 0usize;
    for &h1 in &hs {
        for &h2 in &hs {
            for l1 in 0..=3 {
                for l2 in 0..=3 {
                    let s = verify_combinatorial_identity(&t, h1, h2, l1, l2)?;
                    let scale = s.lhs.abs().max(s.rhs.abs());
                    let dev = if scale == 0.0 {
                        0.0
                    } else {
                        (s.lhs - s.rhs).abs() / scale
                    };
                    worst = worst.max(dev);
                    cases += 1;
                }
            }
        }
    }
    Ok(vec![CheckRow::below(
        "combinatorics",
        format!(
            "prime-log tuple identity, {cases} cases, square-free h <= {h_max}, l <= 3 (relative)"
        ),
        worst,
        1e-12,
    )])
}

pub fn vonmangoldt(limit: usize) -> Result<Vec<CheckRow>> {
    let limit = limit.max(2);
    let t = build_table(limit)?;
    let mut rows = vec![CheckRow::below(
        "vonmangoldt",
        format!("Lambda_2 = Lambda log + Lambda * Lambda, n <= {limit}"),
        verify_lambda2_identity(&t, limit)?,
        1e-9,
    )];
    for k in 1..=3 {
        rows.push(CheckRow::below(
            "vonmangoldt",
            format!("recursive Lambda_{k} = mu * log^{k}, n <= {limit}"),
            verify_lambda_k_recursion(&t, limit, k)?,
            1e-8,
        ));
    }
    let mu: Vec<i64> = t.mu.iter().map(|&m| m as i64).collect();
    let mut one = vec![1i64; mu.len()];
    one[0] = 0;
    let e = dirichlet_convolve_int(&one, &mu)?;
    let bad = e
        .iter()
        .enumerate()
        .skip(1)
        .filter(|&(n, &v)| v != i64::from(n == 1))
        .count();
    rows.push(CheckRow::below(
        "vonmangoldt",
        format!("1 * mu = e, n <= {limit} (mismatches)"),
        bad as f64,
        0.0,
    ));
    Ok(rows)
}

pub fn arith_factor() -> Result<Vec<CheckRow>> {
    let t = build_table(1000)?;
    let mut worst = 0.0f64;
    for &z in &[0.25, 0.5, 1.0] {
        for n in [1, 2, 10, 30, 60] {
            let a = verify_arithmetic_factor(&t, z, n)?;
            let b = arithmetic_factor_naive(&t, z, n)?;
            worst = worst.max((a - b).abs());
        }
    }
    let mut rows = vec![CheckRow::below(
        "arith-factor",
        "grouped sum vs quadruple loop, N <= 60",
        worst,
        1e-12,
    )];
    let s10 = verify_arithmetic_factor(&t, 0.5, 10)?;
    let s1000 = verify_arithmetic_factor(&t, 0.5, 1000)?;
    rows.push(CheckRow {
        suite: "arith-factor",
        check: format!(
            "|S(1000)-1| = {:.3e} < |S(10)-1| = {:.3e} at z = 0.5",
            (s1000 - 1.0).abs(),
            (s10 - 1.0).abs()
        ),
        value: (s1000 - 1.0).abs(),
        tolerance: (s10 - 1.0).abs(),
        pass: (s1000 - 1.0).abs() < (s10 - 1.0).abs(),
    });
    rows.push(CheckRow::below(
        "arith-factor",
        "|S(100)-1| at z = 1",
        (verify_arithmetic_factor(&t, 1.0, 100)? - 1.0).abs(),
        0.01,
    ));
    rows.push(CheckRow::below(
        "arith-factor",
        "S(1) = 1",
        (verify_arithmetic_factor(&t, 0.5, 1)? - 1.0).abs(),
        0.0,
    ));
    Ok(rows)
}

/// The convolution families checked for asymptotic agreement.
pub fn summation_specs() -> Vec<(&'static str, ConvSpec)> {
    vec![
        ("Lambda log", ConvSpec::new(Leading::Unit, 0, 0, 1)),
        ("d_2", ConvSpec::new(Leading::Dk(2), 0, 0, 0)),
        ("d_2 * Lambda", ConvSpec::new(Leading::Dk(2), 1, 0, 0)),
        ("1 * Lambda log", ConvSpec::new(Leading::One, 0, 0, 1)),
        (
            "1 * Lambda * Lambda log",
            ConvSpec::new(Leading::One, 1, 0, 1),
        ),
        ("1 * Lambda_2", ConvSpec::new(Leading::One, 0, 1, 0)),
    ]
}

/// Relative error must shrink from `z = 10³` to `z = limit` (`x = z²`, `s = 0`, `F = H = u`).
pub fn summation_with(table: &ArithTable, limit: usize) -> Result<Vec<CheckRow>> {
    let u = Polynomial::identity();
    let big = limit as f64;
    summation_specs()
        .into_iter()
        .map(|(name, spec)| {
            let small = verify_summation_lemma(table, spec, 1e3, 1e6, 0.0, &u, &u)?;
            let large = verify_summation_lemma(table, spec, big, big * big, 0.0, &u, &u)?;
            Ok(CheckRow {
                suite: "summation",
                check: format!(
                    "{name}: rel_err(z={big:.0e}) = {:.4e} < rel_err(z=1e3) = {:.4e}",
                    large.rel_err, small.rel_err
                ),
                value: large.rel_err,
                tolerance: small.rel_err,
                pass: large.rel_err < small.rel_err,
            })
        })
        .collect()
}

/// With `limit ≤ 10³` there is no trend to observe and every check fails.
pub fn summation(limit: usize) -> Result<Vec<CheckRow>> {
    let limit = limit.max(1000);
    let t = build_table(limit)?;
    summation_with(&t, limit)
}

pub fn residue() -> Result<Vec<CheckRow>> {
    let mut worst = 0.0f64;
    let mut n = 0;
    for m in 0..=1 {
        for &beta in &[-0.5, 0.0, 0.3] {
            for j in 1..=3 {
                for &q in &[1.0, std::f64::consts::E, 10.0] {
                    let r = verify_residue_formula(beta, m, j, q)?;
                    worst = worst.max((r.contour_value - r.closed_form).abs());
                    n += 1;
                }
            }
        }
    }
    Ok(vec![CheckRow::below(
        "residue",
        format!("contour vs closed form, {n} cases (beta x j x q for m = 0, 1)"),
        worst,
        1e-10,
    )])
}

pub fn run_suite(suite: Suite, limit: Option<usize>) -> Result<Vec<CheckRow>> {
    Ok(match suite {
        Suite::Combinatorics => combinatorics(210)?,
        Suite::Vonmangoldt => vonmangoldt(limit.unwrap_or(10_000))?,
        Suite::ArithFactor => arith_factor()?,
        Suite::Summation => summation(limit.unwrap_or(1_000_000))?,
        Suite::Residue => residue()?,
        Suite::All => {
            let mut rows = combinatorics(210)?;
            rows.extend(vonmangoldt(limit.unwrap_or(10_000))?);
            rows.extend(arith_factor()?);
            rows.extend(summation(limit.unwrap_or(1_000_000))?);
            rows.extend(residue()?);
            rows
        }
    })
}
