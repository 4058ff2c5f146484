//! Derivative-free maximization of `κ` over admissible mollifier coefficients.

mod nelder_mead;
mod space;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use nelder_mead::{minimize, Minimum, NelderMeadOptions};
pub use space::SearchSpace;

use crate::error::{Error, Result};
use crate::functional::{eval_bound, MollifierConfig};

/// Default number of restarts.
pub const DEFAULT_RESTARTS: usize = 8;

/// Half-width of the uniform perturbation applied to random restarts.
pub const PERTURBATION: f64 = 0.1;

/// Objective value of a packed point; failures map to `−∞`.
pub fn kappa_at(space: &SearchSpace, v: &[f64]) -> f64 {
    space
        .unpack(v)
        .and_then(|c| eval_bound(&c, space.bound))
        .map(|r| r.kappa)
        .unwrap_or(f64::NEG_INFINITY)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub restart: usize,
    /// Evaluation index within the restart, starting at 1.
    pub evaluation: usize,
    /// Best `κ` seen over all restarts up to this point.
    pub kappa: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimResult {
    pub best_config: MollifierConfig,
    pub best_kappa: f64,
    pub best_restart: usize,
    pub trace: Vec<TracePoint>,
    pub restarts_used: usize,
    pub evaluations: usize,
}

/// Knobs for [`optimize`].
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeOptions {
    /// Objective evaluations per restart.
    pub budget: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Tried first when present.
    pub warm_start: Option<MollifierConfig>,
    /// Further packed starting points, tried after the warm start.
    pub extra_starts: Vec<Vec<f64>>,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        OptimizeOptions {
            budget: 2000,
            restarts: DEFAULT_RESTARTS,
            seed: 1,
            warm_start: None,
            extra_starts: Vec::new(),
        }
    }
}

fn starting_points(space: &SearchSpace, o: &OptimizeOptions) -> Result<Vec<Vec<f64>>> {
    let mut starts = Vec::new();
    if let Some(w) = &o.warm_start {
        let mut v = space.pack(w)?;
        let last = v.len() - 1;
        v[last] = space.clamp_r(v[last]);
        starts.push(v);
    }
    for v in &o.extra_starts {
        if v.len() != space.dim() {
            return Err(Error::LengthMismatch {
                expected: space.dim(),
                got: v.len(),
            });
        }
        starts.push(v.clone());
    }
    starts.push(space.degenerate_point());
    let centre = starts[0].clone();
    let mut i = 0u64;
    while starts.len() < o.restarts.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed.wrapping_add(i));
        starts.push(
            centre
                .iter()
                .map(|c| c + rng.gen_range(-PERTURBATION..=PERTURBATION))
                .collect(),
        );
        i += 1;
    }
    starts.truncate(o.restarts.max(1));
    Ok(starts)
}

/// Run Nelder–Mead from every starting point and keep the best.
///
/// Restarts run in parallel; the reduction is by `κ` then restart index, so the
/// result does not depend on scheduling.
pub fn optimize(space: &SearchSpace, o: &OptimizeOptions) -> Result<OptimResult> {
    if o.budget < 1 {
        return Err(Error::Precondition("budget must be at least 1".into()));
    }
    let starts = starting_points(space, o)?;
    let opts = NelderMeadOptions {
        max_evals: o.budget,
        ..Default::default()
    };
    let runs: Vec<Minimum> = starts
        .par_iter()
        .map(|x0| minimize(|v| -kappa_at(space, v), x0, &opts))
        .collect();

    let mut best = 0;
    for (i, m) in runs.iter().enumerate() {
        if m.value < runs[best].value {
            best = i;
        }
    }
    let mut trace = Vec::new();
    let mut so_far = f64::NEG_INFINITY;
    for (restart, m) in runs.iter().enumerate() {
        for &(evaluation, v) in &m.history {
            so_far = so_far.max(-v);
            trace.push(TracePoint {
                restart,
                evaluation,
                kappa: so_far,
            });
        }
    }

    let best_config = space.unpack(&runs[best].x)?;
    let report = eval_bound(&best_config, space.bound)?;
    let best_kappa = report.kappa;
    if best_kappa != -runs[best].value {
        return Err(Error::Evaluation(format!(
            "re-evaluation of the best point gave {best_kappa}, search reported {}",
            -runs[best].value
        )));
    }
    Ok(OptimResult {
        best_config,
        best_kappa,
        best_restart: best,
        trace,
        restarts_used: runs.len(),
        evaluations: runs.iter().map(|m| m.evaluations).sum(),
    })
}

/// Search without a warm start: the degenerate point plus seeded perturbations.
pub fn optimize_kappa(
    space: &SearchSpace,
    budget: usize,
    restarts: usize,
    seed: u64,
) -> Result<OptimResult> {
    optimize(
        space,
        &OptimizeOptions {
            budget,
            restarts,
            seed,
            ..Default::default()
        },
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sensitivity {
    pub coordinate: String,
    pub gradient: f64,
}

/// Central-difference gradient of `κ` with respect to each packed coordinate.
pub fn sensitivity_table(
    space: &SearchSpace,
    config: &MollifierConfig,
    h: f64,
) -> Result<Vec<Sensitivity>> {
    if !(h != 0.0 && h.is_finite()) {
        return Err(Error::Precondition(format!(
            "step h = {h} must be nonzero and finite"
        )));
    }
    let x = space.pack(config)?;
    let names = space.coordinate_names();
    (0..x.len())
        .map(|i| {
            let mut up = x.clone();
            let mut down = x.clone();
            up[i] += h;
            down[i] -= h;
            let up = eval_bound(&space.unpack(&up)?, space.bound)?.kappa;
            let down = eval_bound(&space.unpack(&down)?, space.bound)?.kappa;
            Ok(Sensitivity {
                coordinate: names[i].clone(),
                gradient: (up - down) / (2.0 * h),
            })
        })
        .collect()
}
