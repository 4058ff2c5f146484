use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functional::{BoundKind, C12Variant, Formula, MollifierConfig};
use crate::optimize::{SearchSpace, DEFAULT_RESTARTS};
use crate::poly::Polynomial;

/// Coefficient basis of a polynomial entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// `Σ cᵢ xⁱ`
    Monomial,
    /// `Σ cᵢ x(1−x)ⁱ`
    XOneMinusX,
    /// `Σ cᵢ (1−2x)ⁱ`
    #[serde(rename = "one_minus_2x")]
    OneMinus2x,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolyEntry {
    Monomial(Vec<f64>),
    Tagged { basis: Basis, coeffs: Vec<f64> },
}

impl PolyEntry {
    pub fn to_polynomial(&self) -> Polynomial {
        match self {
            PolyEntry::Monomial(c) => Polynomial::new(c.clone()),
            PolyEntry::Tagged {
                basis: Basis::Monomial,
                coeffs,
            } => Polynomial::new(coeffs.clone()),
            PolyEntry::Tagged {
                basis: Basis::XOneMinusX,
                coeffs,
            } => Polynomial::from_x_one_minus_x(coeffs),
            PolyEntry::Tagged {
                basis: Basis::OneMinus2x,
                coeffs,
            } => Polynomial::from_one_minus_2x(coeffs),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    pub k: usize,
    pub r: f64,
    pub theta1: f64,
    pub theta2: f64,
    #[serde(default)]
    pub bound: BoundKind,
    #[serde(default)]
    pub formula: Formula,
    #[serde(default)]
    pub c12_variant: C12Variant,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizeSection {
    pub iters: Option<usize>,
    pub restarts: Option<usize>,
    pub seed: Option<u64>,
    pub r_bounds: Option<[f64; 2]>,
    pub p1_degree: Option<usize>,
    pub pl_degrees: Option<Vec<usize>>,
    pub q_odd_terms: Option<usize>,
    pub warm_start: Option<bool>,
}

/// On-disk layout of a run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub params: ParamsSection,
    pub polynomials: BTreeMap<String, PolyEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optimize: Option<OptimizeSection>,
}

/// Optimizer settings after defaults are filled in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeSettings {
    pub iters: usize,
    pub restarts: usize,
    pub seed: u64,
    pub r_bounds: (f64, f64),
    pub p1_degree: usize,
    pub pl_degrees: Vec<usize>,
    pub q_odd_terms: usize,
    pub warm_start: bool,
}

/// A parsed and validated run configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub mollifier: MollifierConfig,
    pub bound: BoundKind,
    pub optimize: OptimizeSettings,
}

impl RunConfig {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Parse, then validate. Syntax and type problems are parse errors, broken
    /// constraints are validation errors naming the key.
    pub fn from_toml(text: &str) -> Result<Self> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(file)
    }

    pub fn from_file(file: ConfigFile) -> Result<Self> {
        let p = &file.params;
        if p.k < 2 {
            return Err(Error::validation(
                "params.k",
                format!("K = {} must be at least 2", p.k),
            ));
        }
        let mut polys = file.polynomials.clone();
        let p1 = polys
            .remove("p1")
            .ok_or_else(|| Error::validation("polynomials.p1", "missing"))?
            .to_polynomial();
        let q = polys
            .remove("q")
            .ok_or_else(|| Error::validation("polynomials.q", "missing"))?
            .to_polynomial();
        let mut pl = vec![Polynomial::zero(); p.k.saturating_sub(1)];
        for (key, entry) in polys {
            let ell = key
                .strip_prefix('p')
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&l| l >= 2 && l <= p.k)
                .ok_or_else(|| {
                    Error::validation(
                        format!("polynomials.{key}"),
                        format!("unknown key; expected p1, q or p2..p{}", p.k),
                    )
                })?;
            pl[ell - 2] = entry.to_polynomial();
        }
        let mollifier = MollifierConfig {
            k: p.k,
            r: p.r,
            theta1: p.theta1,
            theta2: p.theta2,
            p1,
            pl,
            q,
            c12_variant: p.c12_variant,
            formula: p.formula,
        };
        mollifier.validate()?;

        let o = file.optimize.clone().unwrap_or_default();
        let r_bounds = o.r_bounds.map(|[a, b]| (a, b)).unwrap_or((0.8, 1.6));
        if !(r_bounds.0 > 0.0 && r_bounds.0 <= r_bounds.1 && r_bounds.1.is_finite()) {
            return Err(Error::validation(
                "optimize.r_bounds",
                format!(
                    "[{}, {}] must satisfy 0 < lo <= hi < inf",
                    r_bounds.0, r_bounds.1
                ),
            ));
        }
        let iters = o.iters.unwrap_or(2000);
        if iters == 0 {
            return Err(Error::validation("optimize.iters", "must be at least 1"));
        }
        let restarts = o.restarts.unwrap_or(DEFAULT_RESTARTS);
        if restarts == 0 {
            return Err(Error::validation("optimize.restarts", "must be at least 1"));
        }
        let optimize = OptimizeSettings {
            iters,
            restarts,
            seed: o.seed.unwrap_or(1),
            r_bounds,
            p1_degree: o.p1_degree.unwrap_or(4),
            pl_degrees: o
                .pl_degrees
                .unwrap_or_else(|| vec![2; p.k.saturating_sub(1)]),
            q_odd_terms: o.q_odd_terms.unwrap_or(match p.bound {
                BoundKind::Kappa => 3,
                BoundKind::KappaStar => 1,
            }),
            warm_start: o.warm_start.unwrap_or(true),
        };
        Ok(RunConfig {
            mollifier,
            bound: p.bound,
            optimize,
        })
    }

    pub fn search_space(&self) -> SearchSpace {
        let m = &self.mollifier;
        SearchSpace {
            k: m.k,
            theta1: m.theta1,
            theta2: m.theta2,
            p1_degree: self.optimize.p1_degree,
            pl_degrees: self.optimize.pl_degrees.clone(),
            q_odd_terms: self.optimize.q_odd_terms,
            r_bounds: self.optimize.r_bounds,
            bound: self.bound,
            formula: m.formula,
            c12_variant: m.c12_variant,
        }
    }

    /// Replace the polynomials and `R` by those of `c`, keeping everything else.
    pub fn with_mollifier(&self, c: MollifierConfig) -> Self {
        RunConfig {
            mollifier: c,
            ..self.clone()
        }
    }

    /// Serialize with monomial coefficients written at full precision.
    pub fn to_toml(&self) -> Result<String> {
        let m = &self.mollifier;
        let mut polynomials = BTreeMap::new();
        polynomials.insert(
            "p1".to_string(),
            PolyEntry::Monomial(m.p1.coeffs().to_vec()),
        );
        polynomials.insert("q".to_string(), PolyEntry::Monomial(m.q.coeffs().to_vec()));
        for (i, p) in m.pl.iter().enumerate().take(m.k.saturating_sub(1)) {
            polynomials.insert(
                format!("p{}", i + 2),
                PolyEntry::Monomial(p.coeffs().to_vec()),
            );
        }
        let o = &self.optimize;
        let file = ConfigFile {
            params: ParamsSection {
                k: m.k,
                r: m.r,
                theta1: m.theta1,
                theta2: m.theta2,
                bound: self.bound,
                formula: m.formula,
                c12_variant: m.c12_variant,
            },
            polynomials,
            optimize: Some(OptimizeSection {
                iters: Some(o.iters),
                restarts: Some(o.restarts),
                seed: Some(o.seed),
                r_bounds: Some([o.r_bounds.0, o.r_bounds.1]),
                p1_degree: Some(o.p1_degree),
                pl_degrees: Some(o.pl_degrees.clone()),
                q_odd_terms: Some(o.q_odd_terms),
                warm_start: Some(o.warm_start),
            }),
        };
        toml::to_string(&file).map_err(|e| Error::Parse(e.to_string()))
    }
}
