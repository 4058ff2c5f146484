use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest sieve limit accepted by [`build_table`].
pub const MAX_LIMIT: usize = 100_000_000;

/// Default highest order stored for `Λ_k` and `d_k`.
pub const DEFAULT_MAX_K: usize = 3;

/// Sieved arithmetic functions on `1..=limit`. Index 0 is unused and holds zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArithTable {
    pub limit: usize,
    pub mu: Vec<i8>,
    /// Von Mangoldt function `Λ(n)`.
    pub lambda: Vec<f64>,
    /// Generalized von Mangoldt functions `Λ_k = μ ∗ log^k`, keyed by `k ≥ 1`.
    pub lambda_k: BTreeMap<usize, Vec<f64>>,
    /// `k`-fold divisor functions, keyed by `k ≥ 1`.
    pub d_k: BTreeMap<usize, Vec<u64>>,
    /// Smallest prime factor, `spf[1] = 1`.
    pub spf: Vec<u32>,
}

/// `(f ∗ g)(n) = Σ_{d|n} f(d) g(n/d)` for `n < len`.
pub fn dirichlet_convolve(f: &[f64], g: &[f64]) -> Result<Vec<f64>> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch {
            expected: f.len(),
            got: g.len(),
        });
    }
    let n = f.len();
    let mut out = vec![0.0; n];
    for (d, &fd) in f.iter().enumerate().skip(1) {
        if fd == 0.0 {
            continue;
        }
        for (m, dm) in (d..n).step_by(d).enumerate() {
            out[dm] += fd * g[m + 1];
        }
    }
    Ok(out)
}

/// Integer Dirichlet convolution.
pub fn dirichlet_convolve_int(f: &[i64], g: &[i64]) -> Result<Vec<i64>> {
    if f.len() != g.len() {
        return Err(Error::LengthMismatch {
            expected: f.len(),
            got: g.len(),
        });
    }
    let n = f.len();
    let mut out = vec![0i64; n];
    for (d, &fd) in f.iter().enumerate().skip(1) {
        if fd == 0 {
            continue;
        }
        for (m, dm) in (d..n).step_by(d).enumerate() {
            out[dm] += fd * g[m + 1];
        }
    }
    Ok(out)
}

pub fn build_table(limit: usize) -> Result<ArithTable> {
    build_table_with(limit, DEFAULT_MAX_K)
}

/// Linear sieve for `μ`, `Λ` and smallest prime factors, followed by
/// `Λ_{k+1} = Λ_k·log + Λ ∗ Λ_k` and `d_{k+1} = d_k ∗ 1`.
pub fn build_table_with(limit: usize, max_k: usize) -> Result<ArithTable> {
    if limit < 2 {
        return Err(Error::Precondition(format!(
            "sieve limit {limit} must be at least 2"
        )));
    }
    if limit > MAX_LIMIT {
        return Err(Error::Resource(format!(
            "sieve limit {limit} exceeds {MAX_LIMIT}"
        )));
    }
    let n = limit + 1;
    let mut spf = vec![0u32; n];
    let mut mu = vec![0i8; n];
    let mut lambda = vec![0.0; n];
    let mut primes: Vec<usize> = Vec::new();
    spf[1] = 1;
    mu[1] = 1;
    for i in 2..n {
        if spf[i] == 0 {
            spf[i] = i as u32;
            mu[i] = -1;
            primes.push(i);
        }
        for &p in &primes {
            let ip = i * p;
            if p > spf[i] as usize || ip >= n {
                break;
            }
            spf[ip] = p as u32;
            mu[ip] = if p == spf[i] as usize { 0 } else { -mu[i] };
        }
    }
    for &p in &primes {
        let lp = (p as f64).ln();
        let mut q = p;
        while q < n {
            lambda[q] = lp;
            q = match q.checked_mul(p) {
                Some(v) => v,
                None => break,
            };
        }
    }

    let mut lambda_k = BTreeMap::new();
    let mut d_k = BTreeMap::new();
    if max_k >= 1 {
        lambda_k.insert(1, lambda.clone());
        d_k.insert(1, {
            let mut v = vec![1u64; n];
            v[0] = 0;
            v
        });
    }
    for k in 2..=max_k {
        let prev = &lambda_k[&(k - 1)];
        let mut next = dirichlet_convolve(&lambda, prev)?;
        for (i, v) in next.iter_mut().enumerate().skip(2) {
            *v += prev[i] * (i as f64).ln();
        }
        lambda_k.insert(k, next);

        let prev = &d_k[&(k - 1)];
        let mut next = vec![0u64; n];
        for d in 1..n {
            for (m, dm) in (d..n).step_by(d).enumerate() {
                next[dm] += prev[m + 1];
            }
        }
        d_k.insert(k, next);
    }

    Ok(ArithTable {
        limit,
        mu,
        lambda,
        lambda_k,
        d_k,
        spf,
    })
}

impl ArithTable {
    /// Distinct prime factors of `n ≤ limit`, ascending.
    pub fn prime_factors(&self, mut n: usize) -> Vec<usize> {
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf[n] as usize;
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        out
    }

    pub fn is_square_free(&self, n: usize) -> bool {
        n >= 1 && n <= self.limit && self.mu[n] != 0
    }

    /// `d_k` on `0..=len−1`, from the table when stored and by repeated convolution otherwise.
    pub fn divisor_k(&self, k: usize, len: usize) -> Vec<f64> {
        if let Some(v) = self.d_k.get(&k) {
            if v.len() >= len {
                return v[..len].iter().map(|&x| x as f64).collect();
            }
        }
        let mut one = vec![1.0; len];
        one[0] = 0.0;
        let mut out = identity(len);
        for _ in 0..k {
            out = dirichlet_convolve(&out, &one).expect("equal lengths");
        }
        out
    }
}

/// The convolution identity `e(n) = [n = 1]` on `0..len`.
pub fn identity(len: usize) -> Vec<f64> {
    let mut e = vec![0.0; len];
    if len > 1 {
        e[1] = 1.0;
    }
    e
}
