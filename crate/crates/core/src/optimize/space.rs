use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::{BoundKind, C12Variant, Formula, MollifierConfig};
use crate::poly::Polynomial;

const FIT_TOL: f64 = 1e-9;

/// Shape of the coefficient search.
///
/// A packed vector is laid out as `[a₁..a_d, P₂ coefficients, P₃ coefficients, …, q₁..q_m, R]`
/// where
/// * `P₁(x) = x + Σ aᵢ x(1−x)ⁱ`,
/// * `P_ℓ(x) = Σ_{j≥1} bⱼ xʲ`,
/// * `Q(x) = q₀ + Σ qᵢ (1−2x)^{2i−1}` with `q₀ = 1 − Σ qᵢ`.
///
/// Every packed vector therefore maps to a configuration satisfying the boundary
/// conditions exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchSpace {
    pub k: usize,
    pub theta1: f64,
    pub theta2: f64,
    pub p1_degree: usize,
    /// Free coefficients of `P₂, P₃, …` in order.
    pub pl_degrees: Vec<usize>,
    pub q_odd_terms: usize,
    pub r_bounds: (f64, f64),
    #[serde(default)]
    pub bound: BoundKind,
    #[serde(default)]
    pub formula: Formula,
    #[serde(default)]
    pub c12_variant: C12Variant,
}

impl SearchSpace {
    /// Number of `qᵢ`; the simple-zero bound always uses linear `Q`.
    pub fn q_terms(&self) -> usize {
        match self.bound {
            BoundKind::KappaStar => 1,
            BoundKind::Kappa => self.q_odd_terms,
        }
    }

    pub fn dim(&self) -> usize {
        self.p1_degree + self.pl_degrees.iter().sum::<usize>() + self.q_terms() + 1
    }

    /// Human-readable name of each packed coordinate.
    pub fn coordinate_names(&self) -> Vec<String> {
        let mut names: Vec<String> = (1..=self.p1_degree).map(|i| format!("a{i}")).collect();
        for (i, &d) in self.pl_degrees.iter().enumerate() {
            names.extend((1..=d).map(|j| format!("p{}_b{j}", i + 2)));
        }
        names.extend((1..=self.q_terms()).map(|i| format!("q{i}")));
        names.push("R".to_string());
        names
    }

    pub fn clamp_r(&self, r: f64) -> f64 {
        r.clamp(self.r_bounds.0, self.r_bounds.1)
    }

    /// Packed vector of the Conrey-degenerate point, `R` at the middle of its range.
    pub fn degenerate_point(&self) -> Vec<f64> {
        let mut v = vec![0.0; self.dim()];
        *v.last_mut().expect("dimension is at least one") =
            0.5 * (self.r_bounds.0 + self.r_bounds.1);
        v
    }

    pub fn unpack(&self, v: &[f64]) -> Result<MollifierConfig> {
        if v.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        let mut it = v.iter().copied();
        let mut p1c = vec![1.0];
        p1c.extend(it.by_ref().take(self.p1_degree));
        let p1 = Polynomial::from_x_one_minus_x(&p1c);
        let pl = self
            .pl_degrees
            .iter()
            .map(|&d| {
                let mut c = vec![0.0];
                c.extend(it.by_ref().take(d));
                Polynomial::new(c)
            })
            .collect();
        let qs: Vec<f64> = it.by_ref().take(self.q_terms()).collect();
        let mut qc = vec![1.0 - qs.iter().sum::<f64>()];
        for (i, &qi) in qs.iter().enumerate() {
            if i > 0 {
                qc.push(0.0);
            }
            qc.push(qi);
        }
        let q = Polynomial::from_one_minus_2x(&qc);
        let r = self.clamp_r(it.next().expect("length checked above"));
        Ok(MollifierConfig {
            k: self.k,
            r,
            theta1: self.theta1,
            theta2: self.theta2,
            p1,
            pl,
            q,
            c12_variant: self.c12_variant,
            formula: self.formula,
        })
    }

    /// Inverse of [`unpack`](Self::unpack) on configurations that fit the space.
    ///
    /// `q₀` is not stored; it is recomputed from the `qᵢ` on unpacking.
    pub fn pack(&self, c: &MollifierConfig) -> Result<Vec<f64>> {
        let mut v = Vec::with_capacity(self.dim());

        let p1 = &c.p1;
        if p1.coeff(0).abs() > FIT_TOL {
            return Err(Error::validation(
                "polynomials.p1",
                "P1(0) must vanish to be packed",
            ));
        }
        // (P₁(x) − x)/x = Σ aᵢ (1−x)ⁱ, read off in powers of y = 1 − x.
        let mut g: Vec<f64> = p1.coeffs().iter().skip(1).copied().collect();
        if g.is_empty() {
            g.push(0.0);
        }
        g[0] -= 1.0;
        let a = Polynomial::new(g).compose_affine(1.0, -1.0);
        if a.coeff(0).abs() > FIT_TOL {
            return Err(Error::validation(
                "polynomials.p1",
                "P1(1) must equal 1 to be packed",
            ));
        }
        fits("polynomials.p1", a.coeffs(), self.p1_degree + 1)?;
        v.extend((1..=self.p1_degree).map(|i| a.coeff(i)));

        for (i, &d) in self.pl_degrees.iter().enumerate() {
            let key = format!("polynomials.p{}", i + 2);
            let zero = Polynomial::zero();
            let p = c.pl.get(i).unwrap_or(&zero);
            fits(&key, p.coeffs(), d + 1)?;
            v.extend((1..=d).map(|j| p.coeff(j)));
        }

        let y = c.q.compose_affine(0.5, -0.5);
        fits("polynomials.q", y.coeffs(), 2 * self.q_terms())?;
        for (j, &cj) in y.coeffs().iter().enumerate().skip(2).step_by(2) {
            if cj.abs() > FIT_TOL {
                return Err(Error::validation(
                    "polynomials.q",
                    format!("even power {j} of (1-2x) is nonzero"),
                ));
            }
        }
        v.extend((1..=self.q_terms()).map(|i| y.coeff(2 * i - 1)));

        v.push(c.r);
        Ok(v)
    }
}

fn fits(key: &str, coeffs: &[f64], len: usize) -> Result<()> {
    match coeffs.iter().skip(len).find(|c| c.abs() > FIT_TOL) {
        Some(_) => Err(Error::validation(
            key,
            format!(
                "needs more than {} coefficients for this search space",
                len.saturating_sub(1)
            ),
        )),
        None => Ok(()),
    }
}
