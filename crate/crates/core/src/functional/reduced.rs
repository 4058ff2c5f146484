//! The closed forms for `c₁₁`, `c₁₂`, `c₂₂` exactly as printed, together with
//! their shifted counterparts (before the `Q` operator is applied).

use serde::{Deserialize, Serialize};

use super::config::{C12Variant, MollifierConfig};
use super::{factorial, Term, TermKey};
use crate::error::{Error, Result};
use crate::poly::{
    integrate_unit_square_jet, poly_shift_jet, poly_shift_jet_scaled, Affine, Jet2, JetPoly,
    JetVar, Polynomial,
};

fn one_minus_u_pow(n: usize) -> Polynomial {
    Polynomial::affine_power(1.0, -1.0, n)
}

fn sign(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn q_jet(q: &Polynomial, var: JetVar, scale: f64) -> Result<JetPoly> {
    poly_shift_jet_scaled(q, Affine::identity(), var, scale)
}

/// `1 + (1/θ₁) ∂²/∂x∂y [e^{Rθ₁(x+y)} ∫∫ e^{2Rv} P₁(x+u)P₁(y+u) Q(v+θ₁x)Q(v+θ₁y) du dv]`.
pub fn eval_c11(p1: &Polynomial, q: &Polynomial, r: f64, theta1: f64) -> Result<f64> {
    if theta1.is_nan() || theta1 <= 0.0 {
        return Err(Error::Domain(format!("theta1 = {theta1} must be positive")));
    }
    let fu = &poly_shift_jet(p1, Affine::identity(), JetVar::X)?
        * &poly_shift_jet(p1, Affine::identity(), JetVar::Y)?;
    let gv = &q_jet(q, JetVar::X, theta1)? * &q_jet(q, JetVar::Y, theta1)?;
    let jet =
        Jet2::exp_linear(r * theta1, r * theta1) * integrate_unit_square_jet(&fu, &gv, 2.0 * r);
    Ok(1.0 + jet.dxdy / theta1)
}

pub(crate) fn check_theta_order(c: &MollifierConfig) -> Result<()> {
    if c.theta2 > c.theta1 {
        return Err(Error::Domain(format!(
            "theta2 = {} exceeds theta1 = {}; the cross term requires theta1 >= theta2",
            c.theta2, c.theta1
        )));
    }
    Ok(())
}

/// Printed three-term cross term, with a per-`ℓ` breakdown.
pub(crate) fn c12_terms(c: &MollifierConfig) -> Result<Vec<Term>> {
    check_theta_order(c)?;
    let ratio = c.theta2 / c.theta1;
    let p1_shift = Affine::new(1.0 - ratio, ratio);
    let p1_prime_at = c.p1.derivative().compose_affine(1.0 - ratio, ratio);
    let gv = &q_jet(&c.q, JetVar::Y, c.theta2)? * &q_jet(&c.q, JetVar::X, c.theta1)?;
    let gv_int = gv.integrate_exp(2.0 * c.r);
    let exp = Jet2::exp_linear(c.r * c.theta1, c.r * c.theta2);
    let p1x = poly_shift_jet(&c.p1, p1_shift, JetVar::X)?;

    let mut out = Vec::new();
    for (ell, pl) in c.active_pl() {
        let s = sign(ell);
        let t1 =
            s / factorial(ell - 1) * (&(&one_minus_u_pow(ell - 1) * &c.p1) * pl).integrate_unit();

        let e = match c.c12_variant {
            C12Variant::ExpEll => ell,
            C12Variant::ExpEllMinus1 => ell - 1,
        };
        let t2 = -(c.theta1 - c.theta2) / c.theta1 * s / factorial(ell)
            * (&(&one_minus_u_pow(e) * &p1_prime_at) * pl).integrate_unit();

        let fu = (&p1x * &poly_shift_jet(pl, Affine::identity(), JetVar::Y)?)
            .mul_poly(&one_minus_u_pow(ell));
        let jet = exp * (fu.integrate_exp(0.0) * gv_int);
        let t3 = s / factorial(ell) * jet.dxdy / c.theta1;

        out.push(Term::new(TermKey::C12 { ell }, t1 + t2 + t3));
    }
    Ok(out)
}

/// Weight `(−1)^{ℓ₁+ℓ₂−2k} C(ℓ₁,k) (ℓ₂)_k 2^{ℓ₁+ℓ₂−2k}` with the falling factorial.
pub fn c22_weight(l1: usize, l2: usize, k: usize) -> f64 {
    let e = l1 + l2 - 2 * k;
    let falling: f64 = (0..k).map(|i| (l2 - i) as f64).product();
    sign(e) * super::binomial(l1, k) * falling * 2f64.powi(e as i32)
}

/// Printed double sum, broken down per `(ℓ₁, ℓ₂, k)`.
pub(crate) fn c22_terms(c: &MollifierConfig) -> Result<Vec<Term>> {
    let gv = &q_jet(&c.q, JetVar::X, c.theta2)? * &q_jet(&c.q, JetVar::Y, c.theta2)?;
    let gv_int = gv.integrate_exp(2.0 * c.r);
    let exp = Jet2::exp_linear(c.r * c.theta2, c.r * c.theta2);
    let active: Vec<_> = c.active_pl().collect();
    let mut bracket = std::collections::BTreeMap::new();
    for (i, &(l1, pa)) in active.iter().enumerate() {
        let pax = poly_shift_jet(pa, Affine::identity(), JetVar::X)?;
        for &(l2, pb) in &active[i..] {
            let n = l1 + l2;
            let plain = (&(&one_minus_u_pow(n - 1) * pa) * pb).integrate_unit() / factorial(n - 1);
            let fu = (&pax * &poly_shift_jet(pb, Affine::identity(), JetVar::Y)?)
                .mul_poly(&one_minus_u_pow(n));
            let jet = exp * (fu.integrate_exp(0.0) * gv_int);
            bracket.insert((l1, l2), plain + jet.dxdy / (factorial(n) * c.theta2));
        }
    }
    let mut out = Vec::new();
    for &(l1, _) in &active {
        for &(l2, _) in &active {
            let b = bracket[&(l1.min(l2), l1.max(l2))];
            for k in 0..=l1.min(l2) {
                out.push(Term::new(
                    TermKey::C22 { l1, l2, k },
                    c22_weight(l1, l2, k) * b,
                ));
            }
        }
    }
    Ok(out)
}

/// The three shifted constants at `α, β` for a given `log T`, without the `Q` operator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftedConstants {
    pub c11: f64,
    pub c12: f64,
    pub c22: f64,
}

/// Shifted constants `c₁₁(α,β)`, `c₁₂(α,β)`, `c₂₂(α,β)` with `y_i = T^{θ_i}`.
///
/// At `α = β = −R/log T` and `Q = 1` these coincide with the unshifted values.
pub fn eval_c_shifted(
    c: &MollifierConfig,
    alpha: f64,
    beta: f64,
    log_t: f64,
) -> Result<ShiftedConstants> {
    if !(log_t.is_finite() && log_t > 0.0) {
        return Err(Error::Domain(format!(
            "log T = {log_t} must be positive and finite"
        )));
    }
    check_theta_order(c)?;
    let (a, b) = (alpha * log_t, beta * log_t);
    let rate = -(a + b);
    let v_int = JetPoly::constant(Jet2::ONE).integrate_exp(rate);

    let fu = &poly_shift_jet(&c.p1, Affine::identity(), JetVar::X)?
        * &poly_shift_jet(&c.p1, Affine::identity(), JetVar::Y)?;
    let j11 = Jet2::exp_linear(-c.theta1 * b, -c.theta1 * a) * (fu.integrate_exp(0.0) * v_int);
    let c11 = 1.0 + j11.dxdy / c.theta1;

    let ratio = c.theta2 / c.theta1;
    let p1_prime_at = c.p1.derivative().compose_affine(1.0 - ratio, ratio);
    let p1x = poly_shift_jet(&c.p1, Affine::new(1.0 - ratio, ratio), JetVar::X)?;
    let exp12 = Jet2::exp_linear(-c.theta1 * b, -c.theta2 * a);
    let mut c12 = 0.0;
    for (ell, pl) in c.active_pl() {
        let s = sign(ell);
        c12 +=
            s / factorial(ell - 1) * (&(&one_minus_u_pow(ell - 1) * &c.p1) * pl).integrate_unit();
        let e = match c.c12_variant {
            C12Variant::ExpEll => ell,
            C12Variant::ExpEllMinus1 => ell - 1,
        };
        c12 -= (c.theta1 - c.theta2) / c.theta1 * s / factorial(ell)
            * (&(&one_minus_u_pow(e) * &p1_prime_at) * pl).integrate_unit();
        let fu = (&p1x * &poly_shift_jet(pl, Affine::identity(), JetVar::Y)?)
            .mul_poly(&one_minus_u_pow(ell));
        let jet = exp12 * (fu.integrate_exp(0.0) * v_int);
        c12 += s / factorial(ell) * jet.dxdy / c.theta1;
    }

    let exp22 = Jet2::exp_linear(-c.theta2 * b, -c.theta2 * a);
    let active: Vec<_> = c.active_pl().collect();
    let mut c22 = 0.0;
    for &(l1, pa) in &active {
        for &(l2, pb) in &active {
            let n = l1 + l2;
            let w: f64 = (0..=l1.min(l2)).map(|k| c22_weight(l1, l2, k)).sum();
            let plain = (&(&one_minus_u_pow(n - 1) * pa) * pb).integrate_unit() / factorial(n - 1);
            let fu = (&poly_shift_jet(pa, Affine::identity(), JetVar::X)?
                * &poly_shift_jet(pb, Affine::identity(), JetVar::Y)?)
                .mul_poly(&one_minus_u_pow(n));
            let jet = exp22 * (fu.integrate_exp(0.0) * v_int);
            c22 += w * (plain + jet.dxdy / (factorial(n) * c.theta2));
        }
    }
    Ok(ShiftedConstants { c11, c12, c22 })
}
