//! Polynomials, first-order bivariate jets and closed-form integrals of
//! polynomial × exponential weights over the unit interval.

mod integrate;
mod jet;
mod polynomial;
pub mod quadrature;

pub use integrate::{exp_moments, integrate_exp_poly, SMALL_RATE};
pub use jet::{
    integrate_unit_square_jet, poly_shift_jet, poly_shift_jet_scaled, Affine, Jet2, JetPoly,
    JetVar, MAX_SHIFT_DEGREE,
};
pub use polynomial::Polynomial;

/// Horner evaluation, free-function form.
pub fn poly_eval(p: &Polynomial, t: f64) -> f64 {
    p.eval(t)
}
