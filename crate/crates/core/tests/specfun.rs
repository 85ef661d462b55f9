use dunkl_kg::numerics::{five_point_derivative, CompensatedSum};
use dunkl_kg::specfun::{bessel_j, gamma_fn, normalized_bessel, s_plus, Order};
use dunkl_kg::tolerances as tol;
use proptest::prelude::*;
use std::f64::consts::PI;

fn ord(nu: f64) -> Order {
    Order::new(nu).unwrap()
}

/// `1 / Gamma(z)` for any real `z`, zero at the poles.
fn rgamma_any(z: f64) -> f64 {
    if z <= 0.0 && z == z.floor() {
        return 0.0;
    }
    let mut shift = 0.0;
    let mut prod = 1.0;
    while z + shift <= 0.0 {
        prod *= z + shift;
        shift += 1.0;
    }
    prod / gamma_fn(z + shift).unwrap()
}

/// Sixty-term power series for `J_nu(x)`, terms by recurrence, compensated sum.
fn series_oracle(nu: f64, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = (0.5 * x).powf(nu) * rgamma_any(nu + 1.0);
    let mut sum = CompensatedSum::new();
    for k in 0..60 {
        if k > 0 {
            let kf = k as f64;
            term *= q / (kf * (kf + nu));
        }
        sum.add(term);
    }
    sum.value()
}

#[test]
fn gamma_examples() {
    assert_eq!(gamma_fn(1.0).unwrap(), 1.0);
    assert!((gamma_fn(0.5).unwrap() - PI.sqrt()).abs() < 1e-15);
    let by_recurrence = 1.5 * 0.5 * gamma_fn(0.5).unwrap();
    assert!((gamma_fn(2.5).unwrap() - by_recurrence).abs() / by_recurrence < tol::GAMMA_REL);
    assert!(gamma_fn(0.0).is_err());
    assert!(gamma_fn(-1.5).is_err());
}

#[test]
fn bessel_examples() {
    assert_eq!(bessel_j(ord(0.0), 0.0).unwrap(), 1.0);
    assert!(bessel_j(ord(0.5), PI).unwrap().abs() < 1e-15);
    for &x in &[0.5, 1.0, 2.0] {
        let exact = (2.0 / (PI * x)).sqrt() * x.cos();
        assert!((bessel_j(ord(-0.5), x).unwrap() - exact).abs() < 1e-14);
    }
    assert!(bessel_j(ord(1.0), -1.0).is_err());
    assert!(Order::new(200.5).is_err());
    assert!(Order::new(f64::NAN).is_err());
}

#[test]
fn series_oracle_agreement() {
    for &nu in &[-1.5, -0.5, 0.0, 0.5, 1.0, 2.5] {
        for i in 1..=80 {
            let x = 0.1 * i as f64;
            let a = bessel_j(ord(nu), x).unwrap();
            let b = series_oracle(nu, x);
            assert!((a - b).abs() <= tol::BESSEL_ABS_SMALL_X, "nu={nu} x={x} {a} vs {b}");
        }
    }
}

#[test]
fn large_argument_window() {
    // J_nu(x) ~ sqrt(2/(pi x)) cos(x - nu pi/2 - pi/4) for half orders is exact
    for &x in &[60.0, 500.0, 2345.5, 1e4] {
        let exact = (2.0 / (PI * x)).sqrt() * x.sin();
        assert!((bessel_j(ord(0.5), x).unwrap() - exact).abs() <= tol::BESSEL_ABS_LARGE_X);
    }
}

#[test]
fn normalized_examples() {
    for &a in &[-0.5, 0.0, 0.7, 3.0] {
        assert_eq!(normalized_bessel(ord(a), 0.0).unwrap(), 1.0);
    }
    for &x in &[1.0, 2.0] {
        assert!((normalized_bessel(ord(-0.5), x).unwrap() - x.cos()).abs() < 1e-14);
    }
    assert!(normalized_bessel(ord(0.5), PI).unwrap().abs() < 1e-15);
    assert!(normalized_bessel(ord(-1.0), 1.0).is_err());
}

#[test]
fn s_plus_examples() {
    for &l in &[-2.5, -0.5, 0.0, 1.0] {
        assert_eq!(s_plus(ord(l), -1.0).unwrap(), 0.0);
        assert_eq!(s_plus(ord(l), 0.0).unwrap(), 0.0);
    }
    assert!(s_plus(ord(0.5), PI).unwrap().abs() < 1e-15);
    for &x in &[0.5f64, 1.0] {
        let exact = x.powf(-0.5) * (2.0 / (PI * x)).sqrt() * x.cos();
        assert!((s_plus(ord(-0.5), x).unwrap() - exact).abs() < 1e-13);
    }
    assert!(s_plus(ord(0.5), 1e-12).unwrap().abs() < 1e-11);
    assert!(s_plus(ord(1.0), f64::NAN).is_err());
}

#[test]
fn s_plus_time_derivative() {
    for &(alpha, m, r) in &[(-0.25, 1.0, 0.5), (0.5, 1.5, 1.0), (1.0, 0.7, 0.2)] {
        let lam = -alpha - 0.5;
        let arg = |t: f64| m * (t * t - r * r).sqrt();
        for &t in &[1.3, 2.0, 3.7] {
            let fd = five_point_derivative(|tau| s_plus(ord(lam), arg(tau)).unwrap(), t, 1e-3);
            let exact = m * m * t * s_plus(ord(lam - 1.0), arg(t)).unwrap();
            assert!((fd - exact).abs() <= tol::BESSEL_RECURSION_FD * exact.abs().max(1.0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn recursion_identity(b in -2.0f64..3.0, x in 0.1f64..20.0) {
        // integer orders are fine here; the connection formula is only for non-integers
        let h = 1e-3 * x.min(1.0);
        let fd = five_point_derivative(|y| y.powf(b) * bessel_j(ord(b), y).unwrap(), x, h);
        let exact = x.powf(b) * bessel_j(ord(b - 1.0), x).unwrap();
        prop_assert!((fd - exact).abs() <= tol::BESSEL_RECURSION_FD * exact.abs().max(1.0));
    }
}
