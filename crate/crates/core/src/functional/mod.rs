//! Evaluation of `c = c₁₁ + 2c₁₂ + c₂₂` and the zero-proportion bounds
//! `κ = 1 − log(c)/R`.

pub mod complete;
mod config;
mod reduced;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use config::{
    BoundKind, C12Variant, Formula, MollifierConfig, BOUNDARY_TOL, THETA1_MAX, THETA2_MAX,
};
pub use reduced::{c22_weight, eval_c11, eval_c_shifted, ShiftedConstants};

use crate::error::{Error, Result};

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Index of one contribution in a [`FunctionalReport`] breakdown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "term", rename_all = "snake_case")]
pub enum TermKey {
    C11,
    C12 { ell: usize },
    C22 { l1: usize, l2: usize, k: usize },
}

impl fmt::Display for TermKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermKey::C11 => write!(f, "c11"),
            TermKey::C12 { ell } => write!(f, "c12[l={ell}]"),
            TermKey::C22 { l1, l2, k } => write!(f, "c22[l1={l1},l2={l2},k={k}]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub key: TermKey,
    pub value: f64,
}

impl Term {
    pub fn new(key: TermKey, value: f64) -> Self {
        Term { key, value }
    }
}

/// Everything computed for one configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionalReport {
    pub c11: f64,
    pub c12: f64,
    pub c22: f64,
    pub c_total: f64,
    pub kappa: f64,
    pub bound: BoundKind,
    pub formula: Formula,
    pub term_breakdown: Vec<Term>,
}

fn sum(terms: &[Term]) -> f64 {
    terms.iter().map(|t| t.value).sum()
}

fn c12_terms(c: &MollifierConfig) -> Result<Vec<Term>> {
    match c.formula {
        Formula::Complete => complete::c12_terms(c),
        Formula::Reduced => reduced::c12_terms(c),
    }
}

fn c22_terms(c: &MollifierConfig) -> Result<Vec<Term>> {
    match c.formula {
        Formula::Complete => complete::c22_terms(c),
        Formula::Reduced => reduced::c22_terms(c),
    }
}

/// Cross term between the two mollifier pieces.
pub fn eval_c12(c: &MollifierConfig) -> Result<f64> {
    c.validate()?;
    Ok(sum(&c12_terms(c)?))
}

/// Diagonal term of the second mollifier piece.
pub fn eval_c22(c: &MollifierConfig) -> Result<f64> {
    c.validate()?;
    Ok(sum(&c22_terms(c)?))
}

fn evaluate(c: &MollifierConfig, bound: BoundKind) -> Result<FunctionalReport> {
    c.validate()?;
    if c.r.is_nan() || c.r <= 0.0 {
        return Err(Error::Domain(format!(
            "kappa needs R > 0 (got R = {})",
            c.r
        )));
    }
    let c11 = eval_c11(&c.p1, &c.q, c.r, c.theta1)?;
    let t12 = c12_terms(c)?;
    let t22 = c22_terms(c)?;
    let (c12, c22) = (sum(&t12), sum(&t22));
    let c_total = c11 + 2.0 * c12 + c22;
    if !c_total.is_finite() || c_total <= 0.0 {
        return Err(Error::Evaluation(format!(
            "c = {c_total} is not positive; the configuration is outside the method's range"
        )));
    }
    let mut term_breakdown = vec![Term::new(TermKey::C11, c11)];
    term_breakdown.extend(t12);
    term_breakdown.extend(t22);
    Ok(FunctionalReport {
        c11,
        c12,
        c22,
        c_total,
        kappa: 1.0 - c_total.ln() / c.r,
        bound,
        formula: c.formula,
        term_breakdown,
    })
}

/// `c₁₁, c₁₂, c₂₂`, their combination and the bound `κ`.
pub fn eval_total(c: &MollifierConfig) -> Result<FunctionalReport> {
    evaluate(c, BoundKind::Kappa)
}

/// Same functional as [`eval_total`] restricted to linear `Q`, reported as the
/// simple-zero bound `κ*`.
pub fn eval_kappa_star(c: &MollifierConfig) -> Result<FunctionalReport> {
    if c.q.degree() > 1 {
        return Err(Error::Precondition(format!(
            "the simple-zero bound needs Q of degree <= 1, got degree {}",
            c.q.degree()
        )));
    }
    evaluate(c, BoundKind::KappaStar)
}

/// Dispatch on the bound kind.
pub fn eval_bound(c: &MollifierConfig, bound: BoundKind) -> Result<FunctionalReport> {
    match bound {
        BoundKind::Kappa => eval_total(c),
        BoundKind::KappaStar => eval_kappa_star(c),
    }
}
