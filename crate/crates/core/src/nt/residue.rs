use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::factorial;

/// Trapezoid nodes on the unit circle.
pub const CONTOUR_NODES: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidueCheck {
    pub contour_value: f64,
    pub closed_form: f64,
}

/// `(1/2πi) ∮_{|u|=1} (β+u)^m q^u u^{−j−1} du` against
/// `(1/j!) d^m/dy^m [e^{βy} (y + log q)^j]` at `y = 0`.
pub fn verify_residue_formula(beta: f64, m: u32, j: u32, q: f64) -> Result<ResidueCheck> {
    if m >= 2 {
        return Err(Error::Unsupported(format!(
            "order m = {m}; only m = 0 and m = 1 are implemented"
        )));
    }
    if beta.is_nan() || beta.abs() >= 1.0 {
        return Err(Error::Precondition(format!(
            "|beta| = {} must be below the contour radius 1",
            beta.abs()
        )));
    }
    if !(q >= 1.0 && q.is_finite()) {
        return Err(Error::Precondition(format!("q = {q} must be >= 1")));
    }
    let lq = q.ln();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..CONTOUR_NODES {
        let phi = std::f64::consts::TAU * i as f64 / CONTOUR_NODES as f64;
        let u = Complex64::from_polar(1.0, phi);
        acc += (u + beta).powu(m) * (u * lq).exp() * u.powi(-(j as i32));
    }
    let contour_value = acc.re / CONTOUR_NODES as f64;

    let jf = j as f64;
    let closed_form = match m {
        0 => lq.powi(j as i32) / factorial(j as usize),
        _ => {
            let lower = if j == 0 {
                0.0
            } else {
                jf * lq.powi(j as i32 - 1)
            };
            (beta * lq.powi(j as i32) + lower) / factorial(j as usize)
        }
    };
    Ok(ResidueCheck {
        contour_value,
        closed_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = verify_residue_formula(0.0, 1, 2, std::f64::consts::E).unwrap();
        assert!((r.contour_value - 1.0).abs() < 1e-12 && (r.closed_form - 1.0).abs() < 1e-12);
        let r = verify_residue_formula(0.4, 0, 1, std::f64::consts::E.powi(2)).unwrap();
        assert!((r.contour_value - 2.0).abs() < 1e-12 && (r.closed_form - 2.0).abs() < 1e-12);
        let r = verify_residue_formula(0.3, 1, 3, 10.0).unwrap();
        assert!((r.contour_value - r.closed_form).abs() < 1e-10);
        let l = 10f64.ln();
        assert!((r.closed_form - (0.3 * l.powi(3) + 3.0 * l * l) / 6.0).abs() < 1e-13);
    }

    #[test]
    fn rejects_out_of_scope_inputs() {
        assert!(matches!(
            verify_residue_formula(0.0, 2, 1, 2.0),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            verify_residue_formula(1.0, 1, 1, 2.0),
            Err(Error::Precondition(_))
        ));
    }
}
