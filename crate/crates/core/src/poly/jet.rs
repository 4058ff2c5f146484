use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::integrate::exp_moments;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// Largest polynomial degree accepted by [`poly_shift_jet`].
pub const MAX_SHIFT_DEGREE: usize = 64;

/// Truncated bivariate expansion `v + dx·x + dy·y + dxdy·xy` at `x = y = 0`.
///
/// Only the terms that survive a single application of `∂²/∂x∂y` are kept,
/// so `x²` and `y²` are identified with zero.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Jet2 {
    pub v: f64,
    pub dx: f64,
    pub dy: f64,
    pub dxdy: f64,
}

impl Jet2 {
    pub const ZERO: Jet2 = Jet2::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Jet2 = Jet2::new(1.0, 0.0, 0.0, 0.0);

    pub const fn new(v: f64, dx: f64, dy: f64, dxdy: f64) -> Self {
        Jet2 { v, dx, dy, dxdy }
    }

    pub const fn constant(c: f64) -> Self {
        Jet2::new(c, 0.0, 0.0, 0.0)
    }

    /// The jet of `x`.
    pub const fn x() -> Self {
        Jet2::new(0.0, 1.0, 0.0, 0.0)
    }

    /// The jet of `y`.
    pub const fn y() -> Self {
        Jet2::new(0.0, 0.0, 1.0, 0.0)
    }

    /// The jet of `exp(cx·x + cy·y)`.
    pub fn exp_linear(cx: f64, cy: f64) -> Self {
        Jet2::new(1.0, cx, cy, cx * cy)
    }

    pub fn scale(self, s: f64) -> Self {
        Jet2::new(self.v * s, self.dx * s, self.dy * s, self.dxdy * s)
    }

    pub fn is_constant(&self) -> bool {
        self.dx == 0.0 && self.dy == 0.0 && self.dxdy == 0.0
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2::new(
            self.v + o.v,
            self.dx + o.dx,
            self.dy + o.dy,
            self.dxdy + o.dxdy,
        )
    }
}

impl AddAssign for Jet2 {
    fn add_assign(&mut self, o: Jet2) {
        *self = *self + o;
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        Jet2::new(
            self.v - o.v,
            self.dx - o.dx,
            self.dy - o.dy,
            self.dxdy - o.dxdy,
        )
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        Jet2::new(
            self.v * o.v,
            self.v * o.dx + self.dx * o.v,
            self.v * o.dy + self.dy * o.v,
            self.v * o.dxdy + self.dx * o.dy + self.dy * o.dx + self.dxdy * o.v,
        )
    }
}

/// Which jet variable a shifted argument carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum JetVar {
    None,
    X,
    Y,
}

/// The affine form `a + b·u` in the integration variable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Affine {
    pub a: f64,
    pub b: f64,
}

impl Affine {
    pub const fn new(a: f64, b: f64) -> Self {
        Affine { a, b }
    }

    /// The form `u` itself.
    pub const fn identity() -> Self {
        Affine::new(0.0, 1.0)
    }
}

/// Polynomial in one integration variable whose coefficients are [`Jet2`]s.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct JetPoly {
    pub coeffs_u: Vec<Jet2>,
}

impl JetPoly {
    pub fn new(coeffs_u: Vec<Jet2>) -> Self {
        JetPoly { coeffs_u }
    }

    pub fn constant(j: Jet2) -> Self {
        JetPoly::new(vec![j])
    }

    /// Lift a plain polynomial to constant jet coefficients.
    pub fn from_poly(p: &Polynomial) -> Self {
        JetPoly::new(p.coeffs().iter().map(|&c| Jet2::constant(c)).collect())
    }

    /// Value at `x = y = 0` as an ordinary polynomial.
    pub fn value(&self) -> Polynomial {
        self.component(|j| j.v)
    }

    pub fn component(&self, f: impl Fn(&Jet2) -> f64) -> Polynomial {
        Polynomial::new(self.coeffs_u.iter().map(f).collect())
    }

    pub fn scale(&self, j: Jet2) -> JetPoly {
        JetPoly::new(self.coeffs_u.iter().map(|&c| c * j).collect())
    }

    pub fn mul_poly(&self, p: &Polynomial) -> JetPoly {
        self * &JetPoly::from_poly(p)
    }

    /// `∫₀¹ e^{λu} f(u) du`, one closed form per jet component.
    pub fn integrate_exp(&self, rate: f64) -> Jet2 {
        if self.coeffs_u.is_empty() {
            return Jet2::ZERO;
        }
        let m = exp_moments(self.coeffs_u.len() - 1, rate);
        self.coeffs_u
            .iter()
            .zip(m.iter())
            .fold(Jet2::ZERO, |acc, (&c, &w)| acc + c.scale(w))
    }
}

impl Add for &JetPoly {
    type Output = JetPoly;
    fn add(self, o: &JetPoly) -> JetPoly {
        let n = self.coeffs_u.len().max(o.coeffs_u.len());
        let get = |p: &JetPoly, i: usize| p.coeffs_u.get(i).copied().unwrap_or_default();
        JetPoly::new((0..n).map(|i| get(self, i) + get(o, i)).collect())
    }
}

impl Mul for &JetPoly {
    type Output = JetPoly;
    fn mul(self, o: &JetPoly) -> JetPoly {
        if self.coeffs_u.is_empty() || o.coeffs_u.is_empty() {
            return JetPoly::default();
        }
        let mut out = vec![Jet2::ZERO; self.coeffs_u.len() + o.coeffs_u.len() - 1];
        for (i, &a) in self.coeffs_u.iter().enumerate() {
            for (j, &b) in o.coeffs_u.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        JetPoly::new(out)
    }
}

/// `p(var + a + b·u)` as a polynomial in `u` with jet coefficients.
pub fn poly_shift_jet(p: &Polynomial, offset: Affine, var: JetVar) -> Result<JetPoly> {
    poly_shift_jet_scaled(p, offset, var, 1.0)
}

/// `p(s·var + a + b·u)`; the first-order expansion `p(a+bu) + s·var·p'(a+bu)` is exact
/// under the jet truncation.
pub fn poly_shift_jet_scaled(
    p: &Polynomial,
    offset: Affine,
    var: JetVar,
    s: f64,
) -> Result<JetPoly> {
    if p.degree() > MAX_SHIFT_DEGREE {
        return Err(Error::Domain(format!(
            "polynomial degree {} exceeds the supported maximum {MAX_SHIFT_DEGREE}",
            p.degree()
        )));
    }
    let value = p.compose_affine(offset.a, offset.b);
    let slope = match var {
        JetVar::None => Polynomial::zero(),
        _ => p.derivative().compose_affine(offset.a, offset.b).scale(s),
    };
    let n = value.coeffs().len().max(slope.coeffs().len());
    let coeffs = (0..n)
        .map(|i| {
            let (v, d) = (value.coeff(i), slope.coeff(i));
            match var {
                JetVar::X => Jet2::new(v, d, 0.0, 0.0),
                JetVar::Y => Jet2::new(v, 0.0, d, 0.0),
                JetVar::None => Jet2::constant(v),
            }
        })
        .collect();
    Ok(JetPoly::new(coeffs))
}

/// `∫₀¹∫₀¹ f(u)·g(v)·e^{λv} du dv` for separable jet integrands.
pub fn integrate_unit_square_jet(f_u: &JetPoly, g_v: &JetPoly, rate: f64) -> Jet2 {
    f_u.integrate_exp(0.0) * g_v.integrate_exp(rate)
}
