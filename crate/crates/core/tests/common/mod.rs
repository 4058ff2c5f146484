//! Brute-force oracle for the printed closed forms: tensor Gauss–Legendre quadrature for
//! the double integrals and a Richardson-extrapolated central difference for `∂²/∂x∂y`.

#![allow(dead_code)]

use gauss_quad::GaussLegendre;
use mollifier::functional::{C12Variant, Formula, MollifierConfig};
use mollifier::optimize::SearchSpace;
use mollifier::poly::Polynomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Rule {
    nodes: Vec<(f64, f64)>,
}

impl Rule {
    pub fn new(n: usize) -> Self {
        let gl = GaussLegendre::new(n).expect("valid node count");
        let nodes = gl
            .as_node_weight_pairs()
            .iter()
            .map(|(x, w)| (0.5 * (x + 1.0), 0.5 * w))
            .collect();
        Rule { nodes }
    }

    pub fn int1(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().map(|&(u, w)| w * f(u)).sum()
    }

    pub fn int2(&self, f: impl Fn(f64, f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .map(|&(u, wu)| wu * self.nodes.iter().map(|&(v, wv)| wv * f(u, v)).sum::<f64>())
            .sum()
    }
}

/// `∂²F/∂x∂y` at the origin.
pub fn mixed_partial(f: impl Fn(f64, f64) -> f64) -> f64 {
    let d = |h: f64| (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
    let h = 2e-3;
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

fn fact(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn sign(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn binom(n: usize, k: usize) -> f64 {
    fact(n) / (fact(k) * fact(n - k))
}

fn falling(n: usize, k: usize) -> f64 {
    (0..k).map(|i| (n - i) as f64).product()
}

fn pl(c: &MollifierConfig) -> Vec<(usize, Polynomial)> {
    (2..=c.k)
        .map(|ell| {
            (
                ell,
                c.pl.get(ell - 2).cloned().unwrap_or_else(Polynomial::zero),
            )
        })
        .collect()
}

pub struct OracleValues {
    pub c11: f64,
    pub c12: f64,
    pub c22: f64,
}

pub fn oracle(c: &MollifierConfig) -> OracleValues {
    let rule = Rule::new(40);
    let (r, t1, t2) = (c.r, c.theta1, c.theta2);
    let (p1, q) = (&c.p1, &c.q);

    let f11 = |x: f64, y: f64| {
        (r * t1 * (x + y)).exp()
            * rule.int2(|u, v| {
                (2.0 * r * v).exp()
                    * p1.eval(x + u)
                    * p1.eval(y + u)
                    * q.eval(v + t1 * x)
                    * q.eval(v + t1 * y)
            })
    };
    let c11 = 1.0 + mixed_partial(f11) / t1;

    let ratio = t2 / t1;
    let dp1 = p1.derivative();
    let mut c12 = 0.0;
    for (ell, p) in pl(c) {
        let s = sign(ell);
        c12 += s / fact(ell - 1)
            * rule.int1(|u| (1.0 - u).powi(ell as i32 - 1) * p1.eval(u) * p.eval(u));
        let e = match c.c12_variant {
            C12Variant::ExpEll => ell,
            C12Variant::ExpEllMinus1 => ell - 1,
        } as i32;
        c12 -= (t1 - t2) / t1 * s / fact(ell)
            * rule.int1(|u| (1.0 - u).powi(e) * dp1.eval(1.0 - (1.0 - u) * ratio) * p.eval(u));
        let f = |x: f64, y: f64| {
            (r * (t1 * x + t2 * y)).exp()
                * rule.int2(|u, v| {
                    (2.0 * r * v).exp()
                        * (1.0 - u).powi(ell as i32)
                        * p1.eval(x + 1.0 - (1.0 - u) * ratio)
                        * p.eval(y + u)
                        * q.eval(t2 * y + v)
                        * q.eval(t1 * x + v)
                })
        };
        c12 += s / fact(ell) * mixed_partial(f) / t1;
    }

    let mut c22 = 0.0;
    let pls = pl(c);
    for (l1, pa) in &pls {
        for (l2, pb) in &pls {
            let n = l1 + l2;
            let plain =
                rule.int1(|u| (1.0 - u).powi(n as i32 - 1) * pa.eval(u) * pb.eval(u)) / fact(n - 1);
            let f = |x: f64, y: f64| {
                (r * t2 * (x + y)).exp()
                    * rule.int2(|u, v| {
                        (2.0 * r * v).exp()
                            * (1.0 - u).powi(n as i32)
                            * pa.eval(x + u)
                            * pb.eval(y + u)
                            * q.eval(v + t2 * x)
                            * q.eval(v + t2 * y)
                    })
            };
            let mixed = mixed_partial(f) / (t2 * fact(n));
            for k in 0..=(*l1).min(*l2) {
                let w = sign(n - 2 * k)
                    * binom(*l1, k)
                    * falling(*l2, k)
                    * 2f64.powi((n - 2 * k) as i32);
                c22 += w * (plain + mixed);
            }
        }
    }
    OracleValues { c11, c12, c22 }
}

/// A random admissible configuration for the printed closed forms.
pub fn random_config(rng: &mut ChaCha8Rng) -> MollifierConfig {
    let k = rng.gen_range(2..=4);
    let theta1: f64 = rng.gen_range(0.35..=4.0 / 7.0);
    let theta2 = rng.gen_range(0.2..=theta1.min(0.5).min(1.0 - theta1));
    let space = SearchSpace {
        k,
        theta1,
        theta2,
        p1_degree: 3,
        pl_degrees: vec![2; k - 1],
        q_odd_terms: 2,
        r_bounds: (0.6, 1.6),
        bound: Default::default(),
        formula: Formula::Reduced,
        c12_variant: if rng.gen_bool(0.5) {
            C12Variant::ExpEll
        } else {
            C12Variant::ExpEllMinus1
        },
    };
    let mut v: Vec<f64> = (0..space.dim()).map(|_| rng.gen_range(-0.5..0.5)).collect();
    *v.last_mut().unwrap() = rng.gen_range(0.6..1.6);
    space.unpack(&v).expect("packed vectors are admissible")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
