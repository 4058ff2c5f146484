use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::GaussLegendre;

/// Gauss–Legendre nodes and weights mapped to `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl UnitRule {
    fn build(n: usize) -> Self {
        let gl = GaussLegendre::new(n.max(2)).expect("rule order is at least 2");
        let (nodes, weights) = gl
            .as_node_weight_pairs()
            .iter()
            .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
            .unzip();
        UnitRule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `∫₀¹ f`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Nodes and weights rescaled to `[a, b]`.
    pub fn scaled(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let h = b - a;
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (a + h * x, h * w))
    }
}

/// Shared, lazily built rule of order `n`.
pub fn unit_rule(n: usize) -> Arc<UnitRule> {
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Arc<UnitRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(UnitRule::build(n)))
        .clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let r = unit_rule(8);
        assert!((r.integrate(|x| x.powi(15)) - 1.0 / 16.0).abs() < 1e-15);
        let s: f64 = r.scaled(1.0, 3.0).map(|(x, w)| w * x * x).sum();
        assert!((s - 26.0 / 3.0).abs() < 1e-13);
    }
}
