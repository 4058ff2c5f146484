//! Command-line driver: `eval`, `optimize`, `verify` and `table`.

mod config;
mod presets;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

pub use config::{
    Basis, ConfigFile, OptimizeSection, OptimizeSettings, ParamsSection, PolyEntry, RunConfig,
};
pub use presets::{load_preset, preset_names, preset_text, PRESETS};
pub use verify::{CheckRow, Suite};

use crate::error::{Error, Result};
use crate::functional::{eval_bound, FunctionalReport, MollifierConfig, TermKey};
use crate::optimize::{optimize, OptimResult, OptimizeOptions, SearchSpace};

#[derive(Debug, Parser)]
#[command(
    name = "mollifier",
    version,
    about = "Mollifier functional, zero-proportion bounds and identity checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Configuration file (TOML).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Bundled configuration: thm1, thm1_star, thm2, thm2_star.
    #[arg(long)]
    pub preset: Option<String>,
}

impl Source {
    fn load(&self) -> Result<RunConfig> {
        match (&self.config, &self.preset) {
            (Some(p), _) => RunConfig::from_path(p),
            (None, Some(name)) => load_preset(name),
            (None, None) => Err(Error::Parse(
                "either --config or --preset is required".into(),
            )),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate c11, c12, c22, c and the bound for one configuration.
    Eval {
        #[command(flatten)]
        source: Source,
        /// Write the per-term breakdown as CSV.
        #[arg(long)]
        breakdown: Option<PathBuf>,
    },
    /// Maximize the bound over the configured search space.
    Optimize {
        #[command(flatten)]
        source: Source,
        /// Objective evaluations per restart.
        #[arg(long)]
        iters: Option<usize>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the best configuration here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the best-so-far trace as CSV.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Do not start from the configuration's own coefficients.
        #[arg(long)]
        no_warm_start: bool,
    },
    /// Run brute-force identity checks.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Sieve limit for the von Mangoldt and summation suites.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Reproduce the base and increment percentages for one choice of lengths.
    Table {
        #[arg(long, value_enum)]
        preset: TablePreset,
        #[arg(long)]
        iters: Option<usize>,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum TablePreset {
    /// `θ₁ = θ₂ = 1/2`
    HalfHalf,
    /// `θ₁ = 4/7`, `θ₂ = 3/7`
    FourSevenths,
}

impl TablePreset {
    fn preset(self) -> &'static str {
        match self {
            TablePreset::HalfHalf => "thm1",
            TablePreset::FourSevenths => "thm2",
        }
    }
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Eval { source, breakdown } => {
            let cfg = source.load()?;
            let report = eval_bound(&cfg.mollifier, cfg.bound)?;
            write_report(out, &report)?;
            if let Some(path) = breakdown {
                write_breakdown(&path, &report)?;
            }
            Ok(0)
        }
        Command::Optimize {
            source,
            iters,
            restarts,
            seed,
            out: best_path,
            trace,
            no_warm_start,
        } => {
            let mut cfg = source.load()?;
            if let Some(v) = iters {
                cfg.optimize.iters = v;
            }
            if let Some(v) = restarts {
                cfg.optimize.restarts = v;
            }
            if let Some(v) = seed {
                cfg.optimize.seed = v;
            }
            if no_warm_start {
                cfg.optimize.warm_start = false;
            }
            let result = run_optimize(&cfg)?;
            writeln!(out, "restarts = {}", result.restarts_used)?;
            writeln!(out, "evaluations = {}", result.evaluations)?;
            writeln!(out, "best restart = {}", result.best_restart)?;
            let report = eval_bound(&result.best_config, cfg.bound)?;
            write_report(out, &report)?;
            if let Some(path) = best_path {
                std::fs::write(
                    &path,
                    cfg.with_mollifier(result.best_config.clone()).to_toml()?,
                )?;
            }
            if let Some(path) = trace {
                write_trace(&path, &result)?;
            }
            Ok(0)
        }
        Command::Verify { suite, limit } => {
            let rows = verify::run_suite(suite, limit)?;
            let all = rows.iter().all(|r| r.pass);
            for r in &rows {
                writeln!(
                    out,
                    "{:<5} {:<13} max_dev = {:.3e}  tol = {:.1e}  {}",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.suite,
                    r.value,
                    r.tolerance,
                    r.check
                )?;
            }
            writeln!(out, "{}", if all { "PASS" } else { "FAIL" })?;
            Ok(if all { 0 } else { 5 })
        }
        Command::Table {
            preset,
            iters,
            restarts,
            seed,
        } => {
            let mut cfg = load_preset(preset.preset())?;
            if let Some(v) = iters {
                cfg.optimize.iters = v;
            }
            if let Some(v) = restarts {
                cfg.optimize.restarts = v;
            }
            if let Some(v) = seed {
                cfg.optimize.seed = v;
            }
            let row = table_row(&cfg)?;
            writeln!(
                out,
                "theta1 = {:.6}, theta2 = {:.6}",
                cfg.mollifier.theta1, cfg.mollifier.theta2
            )?;
            writeln!(out, "base = {:.4}%", 100.0 * row.base)?;
            writeln!(out, "increment = {:.4}%", 100.0 * row.increment())?;
            writeln!(out, "total = {:.4}%", 100.0 * row.full)?;
            Ok(0)
        }
    }
}

/// Run the configured optimization, warm-started from the configuration's coefficients
/// unless disabled.
pub fn run_optimize(cfg: &RunConfig) -> Result<OptimResult> {
    let space = cfg.search_space();
    let o = &cfg.optimize;
    optimize(
        &space,
        &OptimizeOptions {
            budget: o.iters,
            restarts: o.restarts,
            seed: o.seed,
            warm_start: o.warm_start.then(|| cfg.mollifier.clone()),
            extra_starts: Vec::new(),
        },
    )
}

/// Optimized bounds without and with the second mollifier piece.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub base: f64,
    pub full: f64,
    pub base_config: MollifierConfig,
    pub full_config: MollifierConfig,
}

impl TableRow {
    pub fn increment(&self) -> f64 {
        self.full - self.base
    }
}

/// Optimize with `P_ℓ ≡ 0`, then over the full space. The full search is also
/// started from the base optimum, so the increment cannot be negative.
pub fn table_row(cfg: &RunConfig) -> Result<TableRow> {
    let full_space = cfg.search_space();
    let base_space = SearchSpace {
        pl_degrees: Vec::new(),
        ..full_space.clone()
    };
    let o = &cfg.optimize;
    let mut warm = cfg.mollifier.clone();
    warm.pl
        .iter_mut()
        .for_each(|p| *p = crate::poly::Polynomial::zero());
    let base = optimize(
        &base_space,
        &OptimizeOptions {
            budget: o.iters,
            restarts: o.restarts,
            seed: o.seed,
            warm_start: Some(warm),
            extra_starts: Vec::new(),
        },
    )?;
    let base_start = full_space.pack(&base.best_config)?;
    let full = optimize(
        &full_space,
        &OptimizeOptions {
            budget: o.iters,
            restarts: o.restarts,
            seed: o.seed,
            warm_start: Some(cfg.mollifier.clone()),
            extra_starts: vec![base_start],
        },
    )?;
    Ok(TableRow {
        base: base.best_kappa,
        full: full.best_kappa,
        base_config: base.best_config,
        full_config: full.best_config,
    })
}

pub fn write_report(out: &mut dyn Write, r: &FunctionalReport) -> Result<()> {
    let name = match r.bound {
        crate::functional::BoundKind::Kappa => "kappa",
        crate::functional::BoundKind::KappaStar => "kappa_star",
    };
    writeln!(out, "c11 = {:.6}", r.c11 + 0.0)?;
    writeln!(out, "c12 = {:.6}", r.c12 + 0.0)?;
    writeln!(out, "c22 = {:.6}", r.c22 + 0.0)?;
    writeln!(out, "c = {:.6}", r.c_total + 0.0)?;
    writeln!(out, "{name} = {:.6}", r.kappa)?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

pub fn write_breakdown(path: &Path, r: &FunctionalReport) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(["term", "l1", "l2", "k", "value"])
        .map_err(csv_err)?;
    for t in &r.term_breakdown {
        let (name, l1, l2, k) = match t.key {
            TermKey::C11 => ("c11", 1, 1, 0),
            TermKey::C12 { ell } => ("c12", 1, ell, 0),
            TermKey::C22 { l1, l2, k } => ("c22", l1, l2, k),
        };
        w.write_record([
            name.to_string(),
            l1.to_string(),
            l2.to_string(),
            k.to_string(),
            format!("{:.12e}", t.value),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn trace_csv(result: &OptimResult) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["restart", "evaluation", "kappa"])
        .map_err(csv_err)?;
    for p in &result.trace {
        w.write_record([
            p.restart.to_string(),
            p.evaluation.to_string(),
            format!("{:.15e}", p.kappa),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

pub fn write_trace(path: &Path, result: &OptimResult) -> Result<()> {
    std::fs::write(path, trace_csv(result)?)?;
    Ok(())
}
