//! Pair expansion of the mollified second moment.
//!
//! Each mollifier piece is described by a polynomial `F`, a length exponent `θ`
//! and a log-power `ℓ` (`ℓ = 0` for the `μ(h)P₁` piece). For two pieces the shifted
//! mean value is
//!
//! ```text
//! I(a, b) = [K(a, b) − e^{−a−b} K(−b, −a)] / (a + b)
//! ```
//!
//! where `K` is a finite sum of one-dimensional integrals over `t ∈ [0, min θ]`
//! of products `S^F_{1−q}(θ_A − t; b) · S^G_{1−r}(θ_B − t; a)` weighted by
//! `t^{N−1}/(N−1)!`. Here `S_1` is the derivative term `F′(τ/θ)/θ + c·F(τ/θ)`,
//! `S_0 = F(τ/θ)` and `S_{−m}` the `m`-fold exponentially weighted
//! antiderivative. The `Q(−∂_a)Q(−∂_b)` operator is applied to a truncated
//! Taylor expansion of `I` about `a = b = −R`, so only `deg Q + 1` coefficients
//! per variable are ever formed.

use super::config::MollifierConfig;
use super::{binomial, factorial, Term, TermKey};
use crate::error::{Error, Result};
use crate::poly::quadrature::{unit_rule, UnitRule};
use crate::poly::{exp_moments, Polynomial};

/// Gauss–Legendre order of the outer `t` integral.
pub const T_NODES: usize = 48;

#[derive(Debug, Clone, Copy)]
struct Piece<'a> {
    f: &'a Polynomial,
    theta: f64,
    ell: usize,
}

/// Square array of Taylor coefficients `m[i][j]` of `δa^i δb^j`, flattened.
#[derive(Debug, Clone, PartialEq)]
struct Series2 {
    n: usize,
    c: Vec<f64>,
}

impl Series2 {
    fn zeros(n: usize) -> Self {
        Series2 {
            n,
            c: vec![0.0; n * n],
        }
    }

    fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut s = Series2::zeros(n);
        for i in 0..n {
            for j in 0..n {
                s.c[i * n + j] = f(i, j);
            }
        }
        s
    }

    fn at(&self, i: usize, j: usize) -> f64 {
        self.c[i * self.n + j]
    }

    /// `self += w · (left ⊗ right)` with `left` indexing `δa` and `right` indexing `δb`.
    fn add_outer(&mut self, w: f64, left: &[f64], right: &[f64]) {
        for (i, &l) in left.iter().enumerate() {
            let lw = w * l;
            let row = &mut self.c[i * self.n..(i + 1) * self.n];
            for (x, &r) in row.iter_mut().zip(right) {
                *x += lw * r;
            }
        }
    }

    fn mul(&self, o: &Series2) -> Series2 {
        let n = self.n;
        Series2::from_fn(n, |i, j| {
            let mut s = 0.0;
            for i1 in 0..=i {
                for j1 in 0..=j {
                    s += self.at(i1, j1) * o.at(i - i1, j - j1);
                }
            }
            s
        })
    }

    fn sub(&self, o: &Series2) -> Series2 {
        Series2 {
            n: self.n,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Shift `c = c0 + sc·δ` of an `S` function, expanded in `δ`.
#[derive(Debug, Clone, Copy)]
struct Shift {
    c0: f64,
    sc: f64,
}

/// Taylor coefficients in `δ` of `S_p(τ; c0 + sc·δ)` up to order `n − 1`.
fn s_series(piece: &Piece, fp: &Polynomial, p: i64, tau: f64, shift: Shift, n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n];
    let th = piece.theta;
    match p {
        1 => {
            let fv = piece.f.eval(tau / th);
            out[0] = fp.eval(tau / th) / th + shift.c0 * fv;
            if n > 1 {
                out[1] = shift.sc * fv;
            }
        }
        0 => out[0] = piece.f.eval(tau / th),
        _ => {
            let m = (-p) as usize;
            let g = piece.f.compose_affine(tau / th, -1.0 / th);
            let top = g.degree() + m - 1 + n - 1;
            let mom = exp_moments(top, -shift.c0 * tau);
            let mut tpow = vec![tau; top + 1];
            for j in 1..=top {
                tpow[j] = tpow[j - 1] * tau;
            }
            let base = 1.0 / factorial(m - 1);
            let mut coef = base;
            for (k, o) in out.iter_mut().enumerate() {
                if k > 0 {
                    coef *= -shift.sc / k as f64;
                }
                let s: f64 = g
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(j, gj)| {
                        let e = j + m - 1 + k;
                        gj * tpow[e] * mom[e]
                    })
                    .sum();
                *o = coef * s;
            }
        }
    }
    out
}

fn term_weight(la: usize, lb: usize, n: usize, q: usize, r: usize) -> f64 {
    let lead =
        factorial(la) * factorial(lb) / (factorial(n) * factorial(la - n) * factorial(lb - n));
    let s = if (q + r).is_multiple_of(2) { 1.0 } else { -1.0 };
    lead * binomial(la - n, q) * binomial(lb - n, r) * s
}

/// Taylor expansions of `I(a, b)` about `(−R, −R)`, one per shared-prime count `n`.
fn pair_series(a: &Piece, b: &Piece, r: f64, n: usize, rule: &UnitRule) -> Vec<Series2> {
    let nk = a.ell.min(b.ell) + 1;
    let mut k1 = vec![Series2::zeros(n); nk];
    let mut k2 = vec![Series2::zeros(n); nk];
    let fa = a.f.derivative();
    let fb = b.f.derivative();
    let toward = Shift { c0: -r, sc: 1.0 };
    let mirrored = Shift { c0: r, sc: -1.0 };
    let tm = a.theta.min(b.theta);

    for (t, w) in rule.scaled(0.0, tm) {
        let (ta, tb) = (a.theta - t, b.theta - t);
        let sa1: Vec<_> = (0..=a.ell)
            .map(|q| s_series(a, &fa, 1 - q as i64, ta, toward, n))
            .collect();
        let sa2: Vec<_> = (0..=a.ell)
            .map(|q| s_series(a, &fa, 1 - q as i64, ta, mirrored, n))
            .collect();
        let sb1: Vec<_> = (0..=b.ell)
            .map(|q| s_series(b, &fb, 1 - q as i64, tb, toward, n))
            .collect();
        let sb2: Vec<_> = (0..=b.ell)
            .map(|q| s_series(b, &fb, 1 - q as i64, tb, mirrored, n))
            .collect();
        for kk in 0..nk {
            for q in 0..=a.ell - kk {
                for rr in 0..=b.ell - kk {
                    let big_n = 1 + a.ell + b.ell - q - rr;
                    let wt = w * term_weight(a.ell, b.ell, kk, q, rr) * t.powi(big_n as i32 - 1)
                        / factorial(big_n - 1);
                    k1[kk].add_outer(wt, &sb1[rr], &sa1[q]);
                    k2[kk].add_outer(wt, &sa2[q], &sb2[rr]);
                }
            }
        }
    }

    let pref = 1.0 / (a.theta.powi(a.ell as i32) * b.theta.powi(b.ell as i32));
    let e2r = (2.0 * r).exp();
    let exp = Series2::from_fn(n, |i, j| {
        let s = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
        e2r * s / (factorial(i) * factorial(j))
    });
    let inv = Series2::from_fn(n, |i, j| {
        -binomial(i + j, i) / (2.0 * r).powi(i as i32 + j as i32 + 1)
    });
    k1.iter()
        .zip(&k2)
        .map(|(x, y)| {
            let mut s = x.sub(&exp.mul(y)).mul(&inv);
            s.c.iter_mut().for_each(|v| *v *= pref);
            s
        })
        .collect()
}

fn apply_q(q: &Polynomial, s: &Series2) -> f64 {
    let mut total = 0.0;
    for i in 0..s.n {
        let qi = q.coeff(i) * if i % 2 == 0 { 1.0 } else { -1.0 } * factorial(i);
        if qi == 0.0 {
            continue;
        }
        for j in 0..s.n {
            let qj = q.coeff(j) * if j % 2 == 0 { 1.0 } else { -1.0 } * factorial(j);
            total += qi * qj * s.at(i, j);
        }
    }
    total
}

fn piece<'a>(c: &'a MollifierConfig, id: usize) -> Option<Piece<'a>> {
    if id == 1 {
        Some(Piece {
            f: &c.p1,
            theta: c.theta1,
            ell: 0,
        })
    } else {
        c.p_ell(id).map(|f| Piece {
            f,
            theta: c.theta2,
            ell: id,
        })
    }
}

fn check_shift(c: &MollifierConfig) -> Result<()> {
    if c.r.is_nan() || c.r <= 0.0 {
        return Err(Error::Domain(format!(
            "the complete formula needs R > 0 (got R = {})",
            c.r
        )));
    }
    Ok(())
}

/// Contribution of the ordered piece pair `(id_a, id_b)`, split by the number
/// of shared prime factors. Id `1` is the `P₁` piece, `ℓ ≥ 2` the `P_ℓ` piece.
/// A zero or inactive piece yields an empty list.
pub fn pair_constants(c: &MollifierConfig, id_a: usize, id_b: usize) -> Result<Vec<f64>> {
    check_shift(c)?;
    let (Some(a), Some(b)) = (piece(c, id_a), piece(c, id_b)) else {
        return Ok(Vec::new());
    };
    let rule = unit_rule(T_NODES);
    let n = c.q.degree() + 1;
    Ok(pair_series(&a, &b, c.r, n, &rule)
        .iter()
        .map(|s| apply_q(&c.q, s))
        .collect())
}

pub(crate) fn c12_terms(c: &MollifierConfig) -> Result<Vec<Term>> {
    super::reduced::check_theta_order(c)?;
    check_shift(c)?;
    c.active_pl()
        .map(|(ell, _)| {
            let v: f64 = pair_constants(c, 1, ell)?.iter().sum();
            Ok(Term::new(TermKey::C12 { ell }, v))
        })
        .collect()
}

pub(crate) fn c22_terms(c: &MollifierConfig) -> Result<Vec<Term>> {
    check_shift(c)?;
    let ells: Vec<usize> = c.active_pl().map(|(l, _)| l).collect();
    let mut out = Vec::new();
    for &l1 in &ells {
        for &l2 in &ells {
            for (k, v) in pair_constants(c, l1, l2)?.into_iter().enumerate() {
                out.push(Term::new(TermKey::C22 { l1, l2, k }, v));
            }
        }
    }
    Ok(out)
}
