use serde::{Deserialize, Serialize};

use super::table::{dirichlet_convolve, identity, ArithTable};
use crate::error::{Error, Result};
use crate::functional::factorial;
use crate::poly::{integrate_exp_poly, Polynomial};

/// Leading factor of a convolution family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Leading {
    /// No leading factor (the convolution identity).
    Unit,
    /// The constant function `1`.
    One,
    /// The `k`-fold divisor function.
    Dk(usize),
}

/// `leading ∗ Λ^{∗a} ∗ Λ₂^{∗b} ∗ (Λ·log)^{∗c}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvSpec {
    pub leading: Leading,
    pub lambda_power: usize,
    pub lambda2_power: usize,
    pub lambda_log_power: usize,
}

impl ConvSpec {
    pub const fn new(leading: Leading, a: usize, b: usize, c: usize) -> Self {
        ConvSpec {
            leading,
            lambda_power: a,
            lambda2_power: b,
            lambda_log_power: c,
        }
    }

    /// Order of the pole at `s = 1` of the generating Dirichlet series.
    pub fn pole_order(&self) -> usize {
        let lead = match self.leading {
            Leading::Unit => 0,
            Leading::One => 1,
            Leading::Dk(k) => k,
        };
        lead + self.lambda_power + 2 * self.lambda2_power + 2 * self.lambda_log_power
    }

    /// Leading Laurent coefficient of the generating series.
    pub fn residue_factor(&self) -> f64 {
        2f64.powi(self.lambda2_power as i32)
    }

    /// The coefficient sequence on `0..len`.
    pub fn sequence(&self, table: &ArithTable, len: usize) -> Result<Vec<f64>> {
        let mut out = match self.leading {
            Leading::Unit => identity(len),
            Leading::One => {
                let mut v = vec![1.0; len];
                v[0] = 0.0;
                v
            }
            Leading::Dk(k) => table.divisor_k(k, len),
        };
        let lambda = &table.lambda[..len];
        for _ in 0..self.lambda_power {
            out = dirichlet_convolve(&out, lambda)?;
        }
        if self.lambda2_power > 0 {
            let l2 = match table.lambda_k.get(&2) {
                Some(v) => v[..len].to_vec(),
                None => {
                    let mut v = dirichlet_convolve(lambda, lambda)?;
                    for (i, x) in v.iter_mut().enumerate().skip(2) {
                        *x += lambda[i] * (i as f64).ln();
                    }
                    v
                }
            };
            for _ in 0..self.lambda2_power {
                out = dirichlet_convolve(&out, &l2)?;
            }
        }
        if self.lambda_log_power > 0 {
            let ll: Vec<f64> = lambda
                .iter()
                .enumerate()
                .map(|(i, l)| if i > 1 { l * (i as f64).ln() } else { 0.0 })
                .collect();
            for _ in 0..self.lambda_log_power {
                out = dirichlet_convolve(&out, &ll)?;
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummationCheck {
    pub lhs: f64,
    pub rhs_main: f64,
    pub rel_err: f64,
}

/// Exact weighted sum against the main term of its asymptotic formula.
///
/// `lhs = Σ_{n≤z} c(n) n^{−1−s} F(log(x/n)/log x) H(log(z/n)/log z)` and, with `D` the
/// pole order and `A` its coefficient,
/// `rhs = A (log z)^D / ((D−1)! z^s) ∫₀¹ (1−u)^{D−1} F(1 − (1−u) log z/log x) H(u) z^{us} du`.
pub fn verify_summation_lemma(
    table: &ArithTable,
    spec: ConvSpec,
    z: f64,
    x: f64,
    s: f64,
    f: &Polynomial,
    h: &Polynomial,
) -> Result<SummationCheck> {
    if !(3.0 <= z && z <= x) {
        return Err(Error::Precondition(format!(
            "need 3 <= z <= x, got z = {z}, x = {x}"
        )));
    }
    let (lz, lx) = (z.ln(), x.ln());
    if s.abs() > 1.0 / lx {
        return Err(Error::Precondition(format!(
            "|s| = {} exceeds 1/log x = {}",
            s.abs(),
            1.0 / lx
        )));
    }
    let top = z.floor() as usize;
    if top > table.limit {
        return Err(Error::Precondition(format!(
            "z = {z} exceeds the table limit {}",
            table.limit
        )));
    }
    let d = spec.pole_order();
    if d == 0 {
        return Err(Error::Precondition(
            "the convolution family has no pole at s = 1".into(),
        ));
    }

    let c = spec.sequence(table, top + 1)?;
    let lhs: f64 = (1..=top)
        .filter(|&n| c[n] != 0.0)
        .map(|n| {
            let ln = (n as f64).ln();
            c[n] * (-(1.0 + s) * ln).exp() * f.eval((lx - ln) / lx) * h.eval((lz - ln) / lz)
        })
        .sum();

    let ratio = lz / lx;
    let integrand =
        &(&Polynomial::affine_power(1.0, -1.0, d - 1) * &f.compose_affine(1.0 - ratio, ratio)) * h;
    let rhs_main = spec.residue_factor() * lz.powi(d as i32) / (factorial(d - 1) * (s * lz).exp())
        * integrate_exp_poly(&integrand, s * lz);
    Ok(SummationCheck {
        lhs,
        rhs_main,
        rel_err: ((lhs - rhs_main) / rhs_main).abs(),
    })
}
