use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Boundary-condition tolerance for printed, rounded coefficients.
pub const BOUNDARY_TOL: f64 = 1e-6;

/// Largest admissible `θ₁`.
pub const THETA1_MAX: f64 = 4.0 / 7.0;

/// Largest admissible `θ₂`.
pub const THETA2_MAX: f64 = 0.5;

const THETA_SLACK: f64 = 1e-12;

/// Exponent used in the second term of the printed cross-term formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum C12Variant {
    /// `(1 − u)^ℓ`
    #[default]
    ExpEll,
    /// `(1 − u)^{ℓ−1}`
    ExpEllMinus1,
}

/// Which closed form evaluates the cross terms `c₁₂` and `c₂₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    /// Full pair expansion of the mollifier pieces, including every
    /// antiderivative term. Reproduces the reference bounds of the bundled presets.
    #[default]
    Complete,
    /// The abbreviated three-term / two-term expressions as printed.
    Reduced,
}

/// Whether a report bounds all zeros or simple zeros only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    #[default]
    Kappa,
    KappaStar,
}

/// Complete parameter bundle for one evaluation of the functional.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MollifierConfig {
    /// Largest `ℓ` in the second mollifier piece.
    pub k: usize,
    /// Shift parameter `R`.
    pub r: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub p1: Polynomial,
    /// `pl[0]` is `P₂`, `pl[1]` is `P₃`, and so on. Entries past `K` are ignored,
    /// missing entries count as zero.
    pub pl: Vec<Polynomial>,
    pub q: Polynomial,
    #[serde(default)]
    pub c12_variant: C12Variant,
    #[serde(default)]
    pub formula: Formula,
}

impl MollifierConfig {
    /// Conrey's single-piece mollifier: `P₁ = x`, no second piece, `Q = 1`.
    pub fn conrey_degenerate(k: usize, r: f64, theta1: f64, theta2: f64) -> Self {
        MollifierConfig {
            k,
            r,
            theta1,
            theta2,
            p1: Polynomial::identity(),
            pl: vec![Polynomial::zero(); k.saturating_sub(1)],
            q: Polynomial::constant(1.0),
            c12_variant: C12Variant::default(),
            formula: Formula::default(),
        }
    }

    /// `P_ℓ` for `ℓ ≥ 2`.
    pub fn p_ell(&self, ell: usize) -> Option<&Polynomial> {
        if ell < 2 || ell > self.k {
            return None;
        }
        self.pl.get(ell - 2).filter(|p| !p.is_zero())
    }

    /// Nonzero `(ℓ, P_ℓ)` pairs with `2 ≤ ℓ ≤ K`.
    pub fn active_pl(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        (2..=self.k).filter_map(move |ell| self.p_ell(ell).map(|p| (ell, p)))
    }

    /// Scale every `P_ℓ` by `t`.
    pub fn with_pl_scaled(&self, t: f64) -> Self {
        let mut c = self.clone();
        c.pl = c.pl.iter().map(|p| p.scale(t)).collect();
        c
    }

    /// Check every structural constraint; the error names the offending key.
    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::validation(
                "params.k",
                format!("K = {} must be at least 2", self.k),
            ));
        }
        if !self.r.is_finite() || self.r < 0.0 {
            return Err(Error::validation(
                "params.r",
                format!("R = {} must be finite and >= 0", self.r),
            ));
        }
        if !(self.theta1 > 0.0 && self.theta1 <= THETA1_MAX + THETA_SLACK) {
            return Err(Error::validation(
                "params.theta1",
                format!("theta1 = {} must lie in (0, 4/7]", self.theta1),
            ));
        }
        if !(self.theta2 > 0.0 && self.theta2 <= THETA2_MAX + THETA_SLACK) {
            return Err(Error::validation(
                "params.theta2",
                format!("theta2 = {} must lie in (0, 1/2]", self.theta2),
            ));
        }
        if self.theta1 + self.theta2 > 1.0 + THETA_SLACK {
            return Err(Error::validation(
                "params.theta2",
                format!(
                    "theta1 + theta2 = {} must not exceed 1",
                    self.theta1 + self.theta2
                ),
            ));
        }
        check_finite("polynomials.p1", &self.p1)?;
        check_finite("polynomials.q", &self.q)?;
        let p0 = self.p1.eval(0.0);
        if p0.abs() > BOUNDARY_TOL {
            return Err(Error::validation(
                "polynomials.p1",
                format!("P1(0) = {p0} violates |P1(0)| <= 1e-6"),
            ));
        }
        let p1 = self.p1.eval(1.0);
        if (p1 - 1.0).abs() > BOUNDARY_TOL {
            return Err(Error::validation(
                "polynomials.p1",
                format!("P1(1) = {p1} violates |P1(1) - 1| <= 1e-6"),
            ));
        }
        for (i, p) in self.pl.iter().enumerate() {
            let key = format!("polynomials.p{}", i + 2);
            check_finite(&key, p)?;
            let v = p.eval(0.0);
            if v.abs() > BOUNDARY_TOL {
                return Err(Error::validation(
                    key,
                    format!("P{}(0) = {v} violates |P(0)| <= 1e-6", i + 2),
                ));
            }
        }
        let q0 = self.q.eval(0.0);
        if (q0 - 1.0).abs() > BOUNDARY_TOL {
            return Err(Error::validation(
                "polynomials.q",
                format!("Q(0) = {q0} violates |Q(0) - 1| <= 1e-6"),
            ));
        }
        let sym = q0 + self.q.eval(1.0);
        for i in 0..=10 {
            let x = i as f64 / 10.0;
            let dev = (self.q.eval(x) + self.q.eval(1.0 - x) - sym).abs();
            if dev > BOUNDARY_TOL {
                return Err(Error::validation(
                    "polynomials.q",
                    format!("Q(x) + Q(1-x) is not constant: deviation {dev:e} at x = {x}"),
                ));
            }
        }
        Ok(())
    }
}

fn check_finite(key: &str, p: &Polynomial) -> Result<()> {
    if p.is_finite() {
        Ok(())
    } else {
        Err(Error::validation(key, "coefficients must be finite"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_config_is_valid() {
        MollifierConfig::conrey_degenerate(3, 1.3, 0.5, 0.5)
            .validate()
            .unwrap();
    }

    #[test]
    fn validation_names_keys() {
        let mut c = MollifierConfig::conrey_degenerate(3, 1.3, 0.5, 0.5);
        c.q = Polynomial::new(vec![1.0, 0.0, 1.0]);
        match c.validate() {
            Err(Error::Validation { key, .. }) => assert_eq!(key, "polynomials.q"),
            other => panic!("unexpected {other:?}"),
        }
        let mut c = MollifierConfig::conrey_degenerate(3, 1.3, 0.5, 0.5);
        c.pl[1] = Polynomial::new(vec![0.1, 1.0]);
        match c.validate() {
            Err(Error::Validation { key, .. }) => assert_eq!(key, "polynomials.p3"),
            other => panic!("unexpected {other:?}"),
        }
        let c = MollifierConfig::conrey_degenerate(3, 1.3, 0.6, 0.5);
        assert!(matches!(c.validate(), Err(Error::Validation { .. })));
    }

    #[test]
    fn four_sevenths_is_admissible() {
        MollifierConfig::conrey_degenerate(3, 1.3, 4.0 / 7.0, 3.0 / 7.0)
            .validate()
            .unwrap();
    }
}
