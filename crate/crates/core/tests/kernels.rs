use dunkl_kg::kernels::{
    hankel_f_closed, hankel_f_quadrature, hankel_g_closed, hankel_g_quadrature,
    integral_representation_origin, representation_constant, spherical_mean_origin, KernelParams,
    SphericalMean,
};
use dunkl_kg::measures::{make_grid, MultIndex, RadialProfile};
use dunkl_kg::numerics::five_point_derivative;
use dunkl_kg::oracle::refined_quadrature;
use dunkl_kg::propagator::{CauchyData, Propagator};
use dunkl_kg::tolerances as tol;
use dunkl_kg::Error;
use std::f64::consts::PI;

fn gaussian(r: f64) -> f64 {
    (-0.5 * r * r).exp()
}

fn data(n: u32, gamma: f64, f: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64) -> CauchyData {
    let grid = make_grid(40.0, 1024).unwrap();
    CauchyData::new(
        MultIndex::new(n, gamma).unwrap(),
        RadialProfile::from_fn(grid.clone(), f).unwrap(),
        RadialProfile::from_fn(grid, g).unwrap(),
        1.0,
    )
    .unwrap()
}

#[test]
fn support_is_exact() {
    for &alpha in &[-0.5, 0.0, 0.5, 2.0] {
        let p = KernelParams::new(alpha, 1.3, 2.0).unwrap();
        for &y in &[2.0, 2.0001, 3.0, 40.0] {
            assert_eq!(hankel_g_closed(&p, y).unwrap(), 0.0);
            assert_eq!(hankel_f_closed(&p, y).unwrap(), 0.0);
        }
        let neg = KernelParams::new(alpha, 1.3, -2.0).unwrap();
        assert_eq!(hankel_g_closed(&neg, 2.5).unwrap(), 0.0);
    }
    assert!(KernelParams::new(-1.0, 1.0, 1.0).is_err());
    assert!(KernelParams::new(0.0, 0.0, 1.0).is_err());
}

#[test]
fn quadrature_examples() {
    let p = KernelParams::new(0.5, 1.0, 2.0).unwrap();
    assert!(hankel_g_quadrature(&p, 3.0).unwrap().abs() <= tol::KERNEL_CLOSED_FORM);
    // the regulated quadrature needs |t - y| >= 1 to resolve the jump at the cone
    for &y in &[0.4, 0.5, 1.0] {
        let c = hankel_g_closed(&p, y).unwrap();
        let q = hankel_g_quadrature(&p, y).unwrap();
        assert!((c - q).abs() <= tol::KERNEL_CLOSED_FORM * c.abs().max(1.0));
        let c = hankel_f_closed(&p, y).unwrap();
        let q = hankel_f_quadrature(&p, y).unwrap();
        assert!((c - q).abs() <= tol::KERNEL_COSINE_QUADRATURE * c.abs().max(1.0));
    }
    let p0 = KernelParams::new(0.5, 1.0, 0.0).unwrap();
    assert_eq!(hankel_g_quadrature(&p0, 1.0).unwrap(), 0.0);
}

#[test]
fn time_derivative_relation() {
    for &(alpha, m) in &[(-0.25, 1.0), (0.0, 0.7), (0.5, 1.5)] {
        for &(t, y) in &[(2.0, 0.5), (3.0, 1.0), (4.0, 2.5)] {
            let fd = five_point_derivative(
                |tau| hankel_g_closed(&KernelParams::new(alpha, m, tau).unwrap(), y).unwrap(),
                t,
                1e-3,
            );
            let f = hankel_f_closed(&KernelParams::new(alpha, m, t).unwrap(), y).unwrap();
            assert!((fd - f).abs() <= tol::KERNEL_TIME_DERIVATIVE * f.abs().max(1.0));
        }
    }
}

#[test]
fn classical_kernel_at_minus_half() {
    // for alpha = -1/2 the sine kernel is J_0(m sqrt(t^2 - y^2)) inside the cone
    let (m, t) = (1.0, 2.0);
    let p = KernelParams::new(-0.5, m, t).unwrap();
    assert!((representation_constant(-0.5, m).unwrap() - 1.0).abs() < 1e-15);
    for &y in &[0.3, 1.1, 1.9] {
        let rho = (t * t - y * y).sqrt();
        let j0 = refined_quadrature(|th: f64| (m * rho * th.sin()).cos(), 0.0, PI, 1e-14).unwrap() / PI;
        let closed = hankel_g_closed(&p, y).unwrap();
        assert!((closed - j0).abs() < 1e-12, "{closed} vs {j0}");
    }
}

#[test]
fn spherical_mean_examples() {
    let d = data(3, 0.0, |_| 0.0, gaussian);
    let v = spherical_mean_origin(&d.mu, &d.g, 1.0).unwrap();
    assert!((v.re - (-0.5f64).exp()).abs() < 1e-12);
    let mean = SphericalMean::new(&d.g);
    assert!((mean.at(1e-9).unwrap().re - 1.0).abs() < 1e-12);
    for &r in &[0.3, 2.2, 5.0] {
        assert!((mean.at(r).unwrap().re - gaussian(r)).abs() < 1e-12);
    }
    assert!(mean.at(41.0).is_err());
}

#[test]
fn representation_examples() {
    let cases = [
        (data(3, 0.0, |_| 0.0, gaussian), 1.0),
        (data(1, 1.0, gaussian, |_| 0.0), 1.5),
        (data(2, 0.5, |r| 0.5 * gaussian(r), gaussian), 0.8),
    ];
    for (d, t) in cases {
        let spectral = Propagator::new(d.clone()).unwrap().solve_at_origin(t).unwrap();
        let integral = integral_representation_origin(&d, t).unwrap();
        assert!((spectral - integral).norm() <= tol::INTEGRAL_REPRESENTATION * spectral.norm());
        assert_eq!(integral_representation_origin(&d, 0.0).unwrap(), SphericalMean::new(&d.g).at(0.0).unwrap());
    }
    let d = data(1, 0.0, gaussian, gaussian);
    assert!(matches!(
        integral_representation_origin(&d, 50.0),
        Err(Error::OutOfRange { .. })
    ));
}

#[test]
fn behaviour_near_the_cone() {
    // S_{-nu}(x) ~ x^{-2 nu} for non-integer nu = alpha + 1/2 > 0, bounded for integer nu
    let t = 2.0;
    let near = |alpha: f64, eps: f64| {
        hankel_g_closed(&KernelParams::new(alpha, 1.0, t).unwrap(), t - eps).unwrap().abs()
    };
    for &alpha in &[-0.75, -0.5, 0.5, 1.5] {
        assert!(near(alpha, 1e-12) < 10.0, "alpha={alpha}");
    }
    for &alpha in &[-0.25, 0.0, 0.25] {
        let exponent = (near(alpha, 1e-8) / near(alpha, 1e-6)).log10() / 2.0;
        assert!((exponent - (alpha + 0.5)).abs() < 1e-3, "alpha={alpha} {exponent}");
    }
}
