use dunkl_kg::measures::{
    make_grid, make_mult, weighted_inner, weighted_norm_sq, MultIndex, RadialProfile,
};
use dunkl_kg::oracle::refined_quadrature;
use dunkl_kg::specfun::{gamma_fn, Order};
use dunkl_kg::tolerances as tol;
use dunkl_kg::transform::{
    dunkl_forward, dunkl_inverse, hankel, multiply_spectral, plancherel_check, DunklTransform,
};
use dunkl_kg::Error;
use num_complex::Complex64;
use std::f64::consts::PI;

fn gaussian(r: f64) -> f64 {
    (-0.5 * r * r).exp()
}

fn sup_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn alpha_consistency() {
    for n in 1..6 {
        for &g in &[0.0, 0.25, 1.0, 3.5] {
            let mu = make_mult(n, g).unwrap();
            assert_eq!(2.0 * mu.alpha() + 1.0, 2.0 * g + n as f64 - 1.0);
            assert!(mu.d_k() > 0.0 && mu.c_k() > 0.0);
        }
    }
}

#[test]
fn norm_examples() {
    let grid = make_grid(1.0, 16).unwrap();
    let mu = make_mult(1, 0.0).unwrap();
    assert_eq!(weighted_norm_sq(&mu, &RadialProfile::zeros(grid.clone())), 0.0);
    let one = RadialProfile::from_fn(grid, |_| 1.0).unwrap();
    assert!((weighted_norm_sq(&mu, &one) - mu.d_k()).abs() < 1e-14);

    let grid = make_grid(40.0, 1024).unwrap();
    let mu = make_mult(1, 1.5).unwrap();
    let g = RadialProfile::from_fn(grid.clone(), gaussian).unwrap();
    // the weight exponent for (1, 1.5) is 2 alpha + 1 = 3
    let exact = mu.d_k() * 0.5;
    assert!((weighted_norm_sq(&mu, &g) - exact).abs() / exact < 1e-13);
    let oracle = refined_quadrature(|r| (-r * r).exp() * r.powi(3), 0.0, f64::INFINITY, 1e-13).unwrap();
    assert!((oracle - 0.5).abs() < 1e-12);

    let m2 = refined_quadrature(|r| gaussian(r) * r * r, 0.0, f64::INFINITY, 1e-13).unwrap();
    let grid_value = grid.integrate(|r| gaussian(r) * r * r);
    assert!((m2 - (PI / 2.0).sqrt()).abs() < 1e-12);
    assert!((grid_value - m2).abs() < 1e-12);
}

#[test]
fn refinement_and_inner_product() {
    let mu = make_mult(3, 1.0).unwrap();
    let coarse = RadialProfile::from_fn(make_grid(40.0, 512).unwrap(), gaussian).unwrap();
    let fine = RadialProfile::from_fn(make_grid(40.0, 1024).unwrap(), gaussian).unwrap();
    let (a, b) = (weighted_norm_sq(&mu, &coarse), weighted_norm_sq(&mu, &fine));
    assert!((a - b).abs() / b < tol::GRID_REFINEMENT);

    let grid = make_grid(40.0, 256).unwrap();
    let f = RadialProfile::from_fn_complex(grid.clone(), |r| Complex64::new(gaussian(r), r * gaussian(r))).unwrap();
    let g = RadialProfile::from_fn(grid.clone(), |r| r * r * gaussian(r)).unwrap();
    assert_eq!(weighted_inner(&mu, &f, &f).unwrap().re, weighted_norm_sq(&mu, &f));
    let fg = weighted_inner(&mu, &f, &g).unwrap();
    let gf = weighted_inner(&mu, &g, &f).unwrap();
    assert!((fg - gf.conj()).norm() < 1e-14);

    // Gram-Schmidt: r^2 e^{-r^2/2} minus its projection on e^{-r^2/2}
    let e = RadialProfile::from_fn(grid.clone(), gaussian).unwrap();
    let c = weighted_inner(&mu, &g, &e).unwrap() / weighted_norm_sq(&mu, &e);
    let h = g.sub(&e.map(|_, v| v * c)).unwrap();
    assert!(weighted_inner(&mu, &h, &e).unwrap().norm() < 1e-10);

    let other = RadialProfile::zeros(make_grid(20.0, 256).unwrap());
    assert_eq!(weighted_inner(&mu, &e, &other), Err(Error::GridMismatch));
}

#[test]
fn gaussian_hankel_pair() {
    let grid = make_grid(40.0, 1024).unwrap();
    let f = RadialProfile::from_fn(grid.clone(), gaussian).unwrap();
    for &a in &[-0.5, 0.0, 1.0] {
        let h = hankel(Order::new(a).unwrap(), &f, &grid).unwrap();
        assert!(sup_diff(h.values(), f.values()) < 1e-8, "alpha={a}");
    }
    assert!(matches!(
        hankel(Order::new(-1.0).unwrap(), &f, &grid),
        Err(Error::Domain { .. })
    ));
    let twice = f.scale(2.0);
    let a = hankel(Order::new(0.5).unwrap(), &twice, &grid).unwrap();
    let b = hankel(Order::new(0.5).unwrap(), &f, &grid).unwrap();
    assert!(a.values().iter().zip(b.values()).all(|(x, y)| *x == y * 2.0));
}

#[test]
fn cosine_transform_reduction() {
    let grid = make_grid(40.0, 1024).unwrap();
    let profile = |r: f64| (1.0 + r * r) * gaussian(r);
    let f = RadialProfile::from_fn(grid.clone(), profile).unwrap();
    let h = hankel(Order::new(-0.5).unwrap(), &f, &grid).unwrap();
    // the even cosine transform: sqrt(2/pi) int_0^inf f(x) cos(sx) dx
    for (j, &s) in grid.nodes().iter().enumerate().step_by(37) {
        let direct = refined_quadrature(|x| profile(x) * (s * x).cos(), 0.0, 20.0, 1e-13).unwrap();
        let expected = (2.0 / PI).sqrt() * direct;
        assert!((h.values()[j].re - expected).abs() < 1e-8, "s={s}");
    }
}

#[test]
fn unitarity_and_round_trip() {
    let grid = make_grid(40.0, 1024).unwrap();
    for &(n, g) in &[(1, 0.0), (1, 1.5), (3, 0.0), (3, 1.0), (2, 0.5)] {
        let mu = MultIndex::new(n, g).unwrap();
        let tr = DunklTransform::new(mu, grid.clone()).unwrap();
        assert!((tr.unitary_scale() - 1.0).abs() < 1e-12);
        for (profile, tol_rt) in [
            (gaussian as fn(f64) -> f64, tol::TRANSFORM_UNITARY),
            (|r: f64| r * r * gaussian(r), tol::TRANSFORM_UNITARY_R2),
        ] {
            let f = RadialProfile::from_fn(grid.clone(), profile).unwrap();
            let back = tr.inverse(&tr.forward(&f).unwrap()).unwrap();
            assert!(sup_diff(back.values(), f.values()) <= tol_rt);
            let (a, b) = plancherel_check(&mu, &f).unwrap();
            assert!((a - b).abs() <= tol::TRANSFORM_UNITARY * a);
        }
    }
    let mu = make_mult(1, 1.5).unwrap();
    let f = RadialProfile::from_fn(grid.clone(), gaussian).unwrap();
    let fh = dunkl_forward(&mu, &f).unwrap();
    assert!(sup_diff(fh.values(), f.values()) < 1e-8);
    let z = RadialProfile::zeros(grid.clone());
    assert!(dunkl_forward(&mu, &z).unwrap().values().iter().all(|v| *v == Complex64::new(0.0, 0.0)));
    assert!(sup_diff(dunkl_inverse(&mu, &fh).unwrap().values(), f.values()) < 1e-8);
    assert_eq!(plancherel_check(&mu, &z).unwrap(), (0.0, 0.0));
}

#[test]
fn multiplier_law() {
    let grid = make_grid(40.0, 1024).unwrap();
    let mu = make_mult(3, 0.5).unwrap();
    let tr = DunklTransform::new(mu, grid.clone()).unwrap();
    let f = RadialProfile::from_fn(grid.clone(), gaussian).unwrap();
    let g = RadialProfile::from_fn(grid.clone(), |r| r * r * (-r * r).exp()).unwrap();
    let conv = tr.convolve(&f, &g).unwrap();
    let lhs = tr.forward(&conv).unwrap();
    let (fh, gh) = (tr.forward(&f).unwrap(), tr.forward(&g).unwrap());
    let max = lhs
        .values()
        .iter()
        .zip(fh.values().iter().zip(gh.values()))
        .map(|(l, (a, b))| (l - a * b).norm())
        .fold(0.0, f64::max);
    assert!(max <= tol::MULTIPLIER_LAW);

    let one = multiply_spectral(&fh, |_| 1.0).unwrap();
    assert_eq!(one.values(), fh.values());
    let m1 = |s: f64| (-s).exp();
    let m2 = |s: f64| Complex64::new(s.cos(), s.sin());
    let ab = multiply_spectral(&multiply_spectral(&fh, m1).unwrap(), m2).unwrap();
    let ba = multiply_spectral(&multiply_spectral(&fh, m2).unwrap(), m1).unwrap();
    // equal up to the rounding of reordered products
    assert!(sup_diff(ab.values(), ba.values()) < 1e-15);
    assert!(matches!(multiply_spectral(&fh, |_| f64::NAN), Err(Error::NonFinite(_))));
}

#[test]
fn gamma_normalized_gaussian_norm() {
    let grid = make_grid(40.0, 1024).unwrap();
    for &(n, g) in &[(1, 0.0), (2, 0.3), (4, 1.25)] {
        let mu = make_mult(n, g).unwrap();
        let f = RadialProfile::from_fn(grid.clone(), gaussian).unwrap();
        let exact = mu.d_k() * gamma_fn(mu.alpha() + 1.0).unwrap() / 2.0;
        assert!((weighted_norm_sq(&mu, &f) - exact).abs() / exact < 1e-6);
    }
}
