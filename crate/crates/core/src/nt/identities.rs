use serde::{Deserialize, Serialize};

use super::table::{dirichlet_convolve, ArithTable};
use crate::error::{Error, Result};
use crate::functional::{binomial, factorial};

fn check_limit(table: &ArithTable, n: usize) -> Result<()> {
    if n > table.limit {
        return Err(Error::Precondition(format!(
            "N = {n} exceeds the table limit {}",
            table.limit
        )));
    }
    Ok(())
}

/// `max_{n ≤ N} |Λ₂(n) − Λ(n) log n − (Λ ∗ Λ)(n)|` with `Λ₂ = μ ∗ log²` summed directly.
pub fn verify_lambda2_identity(table: &ArithTable, n_max: usize) -> Result<f64> {
    check_limit(table, n_max)?;
    let lambda = &table.lambda[..=n_max];
    let direct = mu_log_power(table, n_max, 2);
    let ll = dirichlet_convolve(lambda, lambda)?;
    Ok((1..=n_max)
        .map(|n| (direct[n] - lambda[n] * (n as f64).ln() - ll[n]).abs())
        .fold(0.0, f64::max))
}

/// `(μ ∗ log^k)(n)` for `n ≤ N` by direct divisor sums.
pub fn mu_log_power(table: &ArithTable, n_max: usize, k: u32) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    for d in 1..=n_max {
        let m = table.mu[d];
        if m == 0 {
            continue;
        }
        for (j, dm) in (d..=n_max).step_by(d).enumerate() {
            out[dm] += m as f64 * ((j + 1) as f64).ln().powi(k as i32);
        }
    }
    out
}

/// Largest deviation between the stored recursive `Λ_k` and `μ ∗ log^k`, over `n ≤ N`.
pub fn verify_lambda_k_recursion(table: &ArithTable, n_max: usize, k: usize) -> Result<f64> {
    check_limit(table, n_max)?;
    let stored = table
        .lambda_k
        .get(&k)
        .ok_or_else(|| Error::Precondition(format!("Λ_{k} is not stored in the table")))?;
    let direct = mu_log_power(table, n_max, k as u32);
    Ok((1..=n_max)
        .map(|n| (stored[n] - direct[n]).abs())
        .fold(0.0, f64::max))
}

/// Sum of `Π w(t)` over ordered tuples of `len` distinct entries of `pool`
/// avoiding `used`, multiplied into `acc` and recursing with `rest`.
fn ordered_tuples(
    pool: &[usize],
    len: usize,
    used: &mut Vec<usize>,
    weight: &dyn Fn(usize) -> f64,
    then: &mut dyn FnMut(&mut Vec<usize>) -> f64,
) -> f64 {
    if len == 0 {
        return then(used);
    }
    let mut total = 0.0;
    for &p in pool {
        if used.contains(&p) {
            continue;
        }
        used.push(p);
        let w = weight(p);
        total += w * ordered_tuples(pool, len - 1, used, weight, then);
        used.pop();
    }
    total
}

/// Both sides of the prime-log product identity for square-free `h₁, h₂`.
///
/// The left side is the product of the two sums over ordered tuples of distinct
/// primes; the right side splits the tuples by the `k` primes they share.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentitySides {
    pub lhs: f64,
    pub rhs: f64,
}

pub fn verify_combinatorial_identity(
    table: &ArithTable,
    h1: usize,
    h2: usize,
    l1: usize,
    l2: usize,
) -> Result<IdentitySides> {
    for (name, h) in [("h1", h1), ("h2", h2)] {
        if !table.is_square_free(h) {
            return Err(Error::Precondition(format!(
                "{name} = {h} is not square-free (or exceeds the table)"
            )));
        }
    }
    let ln = |p: usize| (p as f64).ln();
    let ln2 = |p: usize| (p as f64).ln().powi(2);
    let f1 = table.prime_factors(h1);
    let f2 = table.prime_factors(h2);
    let common: Vec<usize> = f1.iter().copied().filter(|p| f2.contains(p)).collect();

    let side = |f: &[usize], l: usize| ordered_tuples(f, l, &mut Vec::new(), &ln, &mut |_| 1.0);
    let lhs = side(&f1, l1) * side(&f2, l2);

    let mut rhs = 0.0;
    for k in 0..=l1.min(l2) {
        let c = factorial(k) * binomial(l1, k) * binomial(l2, k);
        let s = ordered_tuples(&common, k, &mut Vec::new(), &ln2, &mut |used| {
            ordered_tuples(&f1, l1 - k, used, &ln, &mut |used| {
                ordered_tuples(&f2, l2 - k, used, &ln, &mut |_| 1.0)
            })
        });
        rhs += c * s;
    }
    Ok(IdentitySides { lhs, rhs })
}

/// `Σ μ(h)μ(k) (hkmn)^{−1/2−z}` over `h, k, m, n ≤ N` with `hm = kn`.
///
/// Grouping by the common product `P = hm = kn` turns this into
/// `Σ_P P^{−1−2z} A(P)²` with `A(P) = Σ_{hm = P} μ(h)`.
pub fn verify_arithmetic_factor(table: &ArithTable, z: f64, n_max: usize) -> Result<f64> {
    check_limit(table, n_max)?;
    if z.is_nan() || z <= 0.0 {
        return Err(Error::Precondition(format!("z = {z} must be positive")));
    }
    let top = n_max * n_max;
    let mut a = vec![0i64; top + 1];
    for h in 1..=n_max {
        let m = table.mu[h] as i64;
        if m == 0 {
            continue;
        }
        for mm in 1..=n_max {
            a[h * mm] += m;
        }
    }
    Ok(a.iter()
        .enumerate()
        .skip(1)
        .filter(|(_, &v)| v != 0)
        .map(|(p, &v)| (v * v) as f64 * (p as f64).powf(-1.0 - 2.0 * z))
        .sum())
}

/// Direct quadruple loop, for cross-checking [`verify_arithmetic_factor`] at small `N`.
pub fn arithmetic_factor_naive(table: &ArithTable, z: f64, n_max: usize) -> Result<f64> {
    check_limit(table, n_max)?;
    let e = -0.5 - z;
    let mut s = 0.0;
    for h in 1..=n_max {
        let mh = table.mu[h] as f64;
        if mh == 0.0 {
            continue;
        }
        for k in 1..=n_max {
            let mk = table.mu[k] as f64;
            if mk == 0.0 {
                continue;
            }
            for m in 1..=n_max {
                for n in 1..=n_max {
                    if h * m == k * n {
                        s += mh * mk * ((h * k * m * n) as f64).powf(e);
                    }
                }
            }
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nt::build_table;

    #[test]
    fn identity_examples() {
        let t = build_table(1000).unwrap();
        let s = verify_combinatorial_identity(&t, 6, 6, 1, 1).unwrap();
        let want = 6f64.ln().powi(2);
        assert!((s.lhs - want).abs() < 1e-13 && (s.rhs - want).abs() < 1e-13);
        assert!((want - 3.210402).abs() < 1e-6);

        let s = verify_combinatorial_identity(&t, 30, 6, 0, 2).unwrap();
        assert!((s.lhs - s.rhs).abs() < 1e-13);
        assert!((s.lhs - 2.0 * 2f64.ln() * 3f64.ln()).abs() < 1e-13);

        let s = verify_combinatorial_identity(&t, 30, 6, 2, 2).unwrap();
        assert!(((s.lhs - s.rhs) / s.lhs).abs() < 1e-12);

        assert!(matches!(
            verify_combinatorial_identity(&t, 12, 6, 1, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn lambda2_examples() {
        let t = build_table(10_000).unwrap();
        assert!(verify_lambda2_identity(&t, 10_000).unwrap() <= 1e-9);
        let direct = mu_log_power(&t, 12, 2);
        assert_eq!(direct[1], 0.0);
        assert!((direct[12] - 1.523000).abs() < 1e-6);
    }

    #[test]
    fn arithmetic_factor_examples() {
        let t = build_table(1000).unwrap();
        assert_eq!(verify_arithmetic_factor(&t, 0.5, 1).unwrap(), 1.0);
        let s10 = verify_arithmetic_factor(&t, 0.5, 10).unwrap();
        let s1000 = verify_arithmetic_factor(&t, 0.5, 1000).unwrap();
        assert!((s1000 - 1.0).abs() < (s10 - 1.0).abs());
        let s = verify_arithmetic_factor(&t, 1.0, 100).unwrap();
        assert!((s - 1.0).abs() < 0.01, "{s}");
        for n in [1, 7, 30] {
            let a = verify_arithmetic_factor(&t, 0.3, n).unwrap();
            let b = arithmetic_factor_naive(&t, 0.3, n).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }
}
