use super::polynomial::Polynomial;

/// Below this `|λ|` the moments are taken from their Taylor series in `λ`.
pub const SMALL_RATE: f64 = 1e-8;

/// `∫₀¹ e^{λv} p(v) dv` in closed form.
pub fn integrate_exp_poly(p: &Polynomial, rate: f64) -> f64 {
    if p.is_zero() {
        return 0.0;
    }
    exp_moments(p.degree(), rate)
        .iter()
        .zip(p.coeffs())
        .map(|(m, c)| m * c)
        .sum()
}

/// Moments `I_n = ∫₀¹ e^{λv} vⁿ dv` for `n = 0..=degree`.
///
/// The forward recurrence `I_n = (e^λ − n·I_{n−1})/λ` amplifies rounding by `n/|λ|`
/// per step, so it is only used once `|λ|` exceeds the degree. Between
/// [`SMALL_RATE`] and that point, positive-term series are summed instead.
pub fn exp_moments(degree: usize, rate: f64) -> Vec<f64> {
    if rate.abs() < SMALL_RATE {
        (0..=degree).map(|n| small_rate_moment(n, rate)).collect()
    } else if rate.abs() > degree as f64 + 1.0 {
        recurrence_moments(degree, rate)
    } else {
        (0..=degree).map(|n| series_moment(n, rate)).collect()
    }
}

fn recurrence_moments(degree: usize, rate: f64) -> Vec<f64> {
    let e = rate.exp();
    let mut out = Vec::with_capacity(degree + 1);
    let mut prev = (e - 1.0) / rate;
    out.push(prev);
    for n in 1..=degree {
        prev = (e - n as f64 * prev) / rate;
        out.push(prev);
    }
    out
}

fn small_rate_moment(n: usize, rate: f64) -> f64 {
    let n = n as f64;
    1.0 / (n + 1.0) + rate / (n + 2.0) + rate * rate / (2.0 * (n + 3.0))
}

/// Sum a series of positive terms `t_0, t_0·r_1, t_0·r_1·r_2, …` to machine precision.
fn positive_series(first: f64, ratio: impl Fn(f64) -> f64) -> f64 {
    let mut term = first;
    let mut sum = first;
    let mut k = 1.0;
    while term > f64::EPSILON * 1e-3 * sum && k < 10_000.0 {
        term *= ratio(k);
        sum += term;
        k += 1.0;
    }
    sum
}

fn series_moment(n: usize, rate: f64) -> f64 {
    let n = n as f64;
    if rate >= 0.0 {
        // Σ_k λ^k / (k! (n+k+1))
        let mut term = 1.0;
        let mut sum = 1.0 / (n + 1.0);
        let mut k = 1.0;
        loop {
            term *= rate / k;
            let add = term / (n + k + 1.0);
            sum += add;
            if add <= f64::EPSILON * 1e-3 * sum || k > 10_000.0 {
                break;
            }
            k += 1.0;
        }
        sum
    } else {
        // e^λ · n! Σ_k |λ|^k / (n+k+1)!
        let mu = -rate;
        rate.exp() / (n + 1.0) * positive_series(1.0, |k| mu / (n + k + 1.0))
    }
}
