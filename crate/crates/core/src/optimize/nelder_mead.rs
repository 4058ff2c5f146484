use serde::{Deserialize, Serialize};

/// Simplex coefficients and stopping rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NelderMeadOptions {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
    /// Stop once every vertex lies within this sup-norm distance of the best one.
    pub diameter_tol: f64,
    /// Maximum number of objective evaluations.
    pub max_evals: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            initial_step: 0.05,
            diameter_tol: 1e-7,
            max_evals: 2000,
        }
    }
}

/// Outcome of one minimization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    /// `(evaluation index, best value so far)` recorded at each improvement.
    pub history: Vec<(usize, f64)>,
}

struct Counter<F> {
    f: F,
    used: usize,
    max: usize,
    best: f64,
    best_x: Vec<f64>,
    history: Vec<(usize, f64)>,
}

impl<F: FnMut(&[f64]) -> f64> Counter<F> {
    fn eval(&mut self, x: &[f64]) -> Option<f64> {
        if self.used >= self.max {
            return None;
        }
        self.used += 1;
        let mut v = (self.f)(x);
        if v.is_nan() {
            v = f64::INFINITY;
        }
        if v < self.best || self.history.is_empty() {
            self.best = v;
            self.best_x = x.to_vec();
            self.history.push((self.used, v));
        }
        Some(v)
    }
}

fn lerp(from: &[f64], to: &[f64], t: f64) -> Vec<f64> {
    from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect()
}

/// Minimize `f` starting from `x0`. NaN values are treated as `+∞`.
pub fn minimize<F: FnMut(&[f64]) -> f64>(f: F, x0: &[f64], opts: &NelderMeadOptions) -> Minimum {
    let n = x0.len();
    let mut c = Counter {
        f,
        used: 0,
        max: opts.max_evals.max(1),
        best: f64::INFINITY,
        best_x: x0.to_vec(),
        history: Vec::new(),
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    'run: {
        let Some(f0) = c.eval(x0) else { break 'run };
        simplex.push((x0.to_vec(), f0));
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += opts.initial_step;
            let Some(fx) = c.eval(&x) else { break 'run };
            simplex.push((x, fx));
        }

        loop {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let best = simplex[0].0.clone();
            let diameter = simplex
                .iter()
                .flat_map(|(x, _)| x.iter().zip(&best).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            if diameter < opts.diameter_tol {
                break 'run;
            }
            let mut centroid = vec![0.0; n];
            for (x, _) in &simplex[..n] {
                for (c, xi) in centroid.iter_mut().zip(x) {
                    *c += xi / n as f64;
                }
            }
            let (worst, f_worst) = simplex[n].clone();
            let f_best = simplex[0].1;
            let f_second = simplex[n - 1].1;

            let xr = lerp(&centroid, &worst, -opts.reflection);
            let Some(fr) = c.eval(&xr) else { break 'run };

            if fr < f_best {
                let xe = lerp(&centroid, &xr, opts.expansion);
                let Some(fe) = c.eval(&xe) else { break 'run };
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < f_second {
                simplex[n] = (xr, fr);
                continue;
            }
            let accepted = if fr < f_worst {
                let xc = lerp(&centroid, &xr, opts.contraction);
                let Some(fc) = c.eval(&xc) else { break 'run };
                (fc <= fr).then_some((xc, fc))
            } else {
                let xc = lerp(&centroid, &worst, opts.contraction);
                let Some(fc) = c.eval(&xc) else { break 'run };
                (fc < f_worst).then_some((xc, fc))
            };
            if let Some(v) = accepted {
                simplex[n] = v;
                continue;
            }
            for vertex in simplex.iter_mut().skip(1) {
                let x = lerp(&best, &vertex.0, opts.shrink);
                let Some(fx) = c.eval(&x) else { break 'run };
                *vertex = (x, fx);
            }
        }
    }

    Minimum {
        x: c.best_x,
        value: c.best,
        evaluations: c.used,
        history: c.history,
    }
}
