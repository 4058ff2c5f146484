mod common;

use mollifier::poly::{
    exp_moments, integrate_exp_poly, integrate_unit_square_jet, poly_eval, poly_shift_jet, Affine,
    Jet2, JetPoly, JetVar, Polynomial,
};
use proptest::prelude::*;

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0..2.0f64, 1..=max_len)
}

fn jet() -> impl Strategy<Value = Jet2> {
    (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64)
        .prop_map(|(a, b, c, d)| Jet2::new(a, b, c, d))
}

fn close(a: Jet2, b: Jet2, rel: f64) -> bool {
    let scale = [a.v, a.dx, a.dy, a.dxdy]
        .iter()
        .map(|x| x.abs())
        .fold(1.0, f64::max);
    [(a.v, b.v), (a.dx, b.dx), (a.dy, b.dy), (a.dxdy, b.dxdy)]
        .iter()
        .all(|(x, y)| (x - y).abs() <= rel * scale)
}

#[test]
fn horner_examples() {
    assert_eq!(poly_eval(&Polynomial::identity(), 0.7), 0.7);
    assert_eq!(poly_eval(&Polynomial::new(vec![1.0, 2.0, 3.0]), 2.0), 17.0);
    let q = Polynomial::from_one_minus_2x(&[0.481936, 0.632349, 0.0, -0.144698, 0.0, 0.0304136]);
    assert!((q.eval(0.0) - 1.0).abs() <= 1e-6);
}

#[test]
fn exponential_moment_examples() {
    assert_eq!(integrate_exp_poly(&Polynomial::constant(1.0), 0.0), 1.0);
    let v = integrate_exp_poly(&Polynomial::constant(1.0), 2.6);
    assert!((v - (2.6f64.exp() - 1.0) / 2.6).abs() < 1e-13);
    assert!((v - 4.793745).abs() < 1e-6);
    assert!((integrate_exp_poly(&Polynomial::monomial(2, 1.0), 0.0) - 1.0 / 3.0).abs() < 1e-15);
}

#[test]
fn unit_square_examples() {
    let one = JetPoly::constant(Jet2::ONE);
    assert_eq!(integrate_unit_square_jet(&one, &one, 0.0), Jet2::ONE);
    let x_u = poly_shift_jet(&Polynomial::identity(), Affine::identity(), JetVar::X).unwrap();
    let y_u = poly_shift_jet(&Polynomial::identity(), Affine::identity(), JetVar::Y).unwrap();
    let j = integrate_unit_square_jet(&(&x_u * &y_u), &one, 0.0);
    let want = Jet2::new(1.0 / 3.0, 0.5, 0.5, 1.0);
    assert!(close(j, want, 1e-15), "{j:?}");
    let u = JetPoly::from_poly(&Polynomial::identity());
    let j = integrate_unit_square_jet(&u, &one, 1.0);
    assert!((j.v - (std::f64::consts::E - 1.0) / 2.0).abs() < 1e-14);
    assert!((j.v - 0.8591).abs() < 1e-4);
}

/// `∫₀¹ p'(u)² du` from an independent coefficient-level expansion.
fn symbolic_dxdy(p: &[f64]) -> f64 {
    let d: Vec<f64> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| i as f64 * c)
        .collect();
    let mut total = 0.0;
    for (i, a) in d.iter().enumerate() {
        for (j, b) in d.iter().enumerate() {
            total += a * b / (i + j + 1) as f64;
        }
    }
    total
}

#[test]
fn mixed_partial_matches_symbolic_expansion() {
    let cases = [
        vec![0.3, -1.2, 0.7],
        vec![1.0, 0.0, 2.0, -0.5],
        vec![-0.4, 0.9, 0.1, 0.3, -0.8],
    ];
    let one = JetPoly::constant(Jet2::ONE);
    for p in cases {
        let poly = Polynomial::new(p.clone());
        let f = &poly_shift_jet(&poly, Affine::identity(), JetVar::X).unwrap()
            * &poly_shift_jet(&poly, Affine::identity(), JetVar::Y).unwrap();
        let j = integrate_unit_square_jet(&f, &one, 0.0);
        assert!((j.dxdy - symbolic_dxdy(&p)).abs() <= 1e-13, "{p:?}");
    }
}

proptest! {
    #[test]
    fn moments_match_gauss_legendre(c in coeffs(9), rate in -3.0..3.0f64) {
        let p = Polynomial::new(c);
        let rule = common::Rule::new(64);
        let reference = rule.int1(|v| (rate * v).exp() * p.eval(v));
        let scale = rule.int1(|v| (rate * v).exp() * p.coeffs().iter().enumerate().map(|(i, a)| a.abs() * v.powi(i as i32)).sum::<f64>());
        let got = integrate_exp_poly(&p, rate);
        prop_assert!((got - reference).abs() <= 1e-12 * scale.max(f64::MIN_POSITIVE), "{got} vs {reference}");
    }

    #[test]
    fn small_rate_branch_is_continuous(c in coeffs(9)) {
        let p = Polynomial::new(c);
        prop_assert!((integrate_exp_poly(&p, 1e-9) - integrate_exp_poly(&p, 0.0)).abs() <= 1e-8);
    }

    #[test]
    fn moments_are_continuous_across_branches(n in 0usize..12, rate in 1e-9..1e-7f64) {
        let below = exp_moments(n, rate * 0.999);
        let above = exp_moments(n, rate * 1.001);
        for (a, b) in below.iter().zip(&above) {
            prop_assert!((a - b).abs() <= 1e-8);
        }
    }

    #[test]
    fn jet_product_is_commutative(a in jet(), b in jet()) {
        prop_assert!(close(a * b, b * a, 1e-13));
    }

    #[test]
    fn jet_product_is_associative(a in jet(), b in jet(), c in jet()) {
        prop_assert!(close((a * b) * c, a * (b * c), 1e-13));
    }

    #[test]
    fn jet_product_rule(a in jet(), b in jet()) {
        let p = a * b;
        prop_assert!((p.dxdy - (a.v * b.dxdy + a.dx * b.dy + a.dy * b.dx + a.dxdy * b.v)).abs() <= 1e-12);
    }

    #[test]
    fn jet_strips_to_polynomial(c in coeffs(6), a in -1.0..1.0f64, b in -1.0..1.0f64) {
        let p = Polynomial::new(c);
        let j = poly_shift_jet(&p, Affine::new(a, b), JetVar::Y).unwrap();
        let value = j.value();
        for t in [0.0, 0.3, 1.0] {
            prop_assert!((value.eval(t) - p.eval(a + b * t)).abs() <= 1e-12 * (1.0 + p.eval(a + b * t).abs()));
        }
    }
}
