use dunkl_kg::energetics::{
    conserved, energies, kinetic, measure_series, potential, predict_limits, total,
};
use dunkl_kg::measures::{make_grid, weighted_norm_sq, MultIndex, RadialProfile};
use dunkl_kg::numerics::five_point_derivative;
use dunkl_kg::operators::{dunkl_t, weighted_inner_1d, SymmetricGrid1D};
use dunkl_kg::propagator::{CauchyData, Propagator};
use dunkl_kg::tolerances as tol;

fn gaussian(r: f64) -> f64 {
    (-0.5 * r * r).exp()
}

fn propagator(n: u32, gamma: f64, m: f64, f: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64) -> Propagator {
    let grid = make_grid(40.0, 1024).unwrap();
    let data = CauchyData::new(
        MultIndex::new(n, gamma).unwrap(),
        RadialProfile::from_fn(grid.clone(), f).unwrap(),
        RadialProfile::from_fn(grid, g).unwrap(),
        m,
    )
    .unwrap();
    Propagator::new(data).unwrap()
}

#[test]
fn kinetic_examples() {
    let p = propagator(3, 0.5, 1.0, |r| 0.7 * gaussian(r), gaussian);
    let mu = p.data().mu;
    let half_f = 0.5 * weighted_norm_sq(&mu, &p.data().f);
    assert!((kinetic(&p, 0.0) - half_f).abs() < 1e-13 * half_f);
    for &t in &[0.6, 2.4] {
        let dt = 1e-3;
        let ut = p.solve(t + dt).unwrap().sub(&p.solve(t - dt).unwrap()).unwrap().scale(0.5 / dt);
        let fd = 0.5 * weighted_norm_sq(&mu, &ut);
        assert!((fd - kinetic(&p, t)).abs() < 1e-5);
    }
}

#[test]
fn single_mode_kinetic() {
    // g concentrated near one frequency: K(t) ~ sin^2(t w0) w0^2 / 2 ||g||^2
    let s0: f64 = 3.0;
    let m = 1.0;
    let grid = make_grid(40.0, 1024).unwrap();
    let mu = MultIndex::new(1, 0.0).unwrap();
    let tr = dunkl_kg::transform::DunklTransform::new(mu, grid.clone()).unwrap();
    let ghat = RadialProfile::from_fn(grid.clone(), |s| (-200.0 * (s - s0) * (s - s0)).exp()).unwrap();
    let g = tr.inverse(&dunkl_kg::measures::SpectralProfile::new(grid.clone(), ghat.into_values()).unwrap()).unwrap();
    let data = CauchyData::new(mu, RadialProfile::zeros(grid), g.clone(), m).unwrap();
    let p = Propagator::new(data).unwrap();
    let w0 = s0.hypot(m);
    let norm = weighted_norm_sq(&mu, &g);
    for &t in &[0.2, 0.5, 0.9] {
        let expected = 0.5 * (t * w0).sin().powi(2) * w0 * w0 * norm;
        assert!((kinetic(&p, t) - expected).abs() < 2e-2 * norm * w0 * w0, "t={t}");
    }
}

#[test]
fn potential_examples() {
    let p = propagator(1, 1.5, 1.0, |_| 0.0, gaussian);
    assert!(potential(&p, 0.7) >= 0.0);
    // P(0) = 1/2 ||T g||^2, here with the rank-one grid operator
    let k = 1.5;
    let line = SymmetricGrid1D::covering(0.005, 15.0).unwrap();
    let tg = dunkl_t(k, &line, &line.sample(gaussian)).unwrap();
    // the line integral covers both half-lines; the radial measure counts d_k = 2 for n = 1
    let grid_value = 0.5 * weighted_inner_1d(k, &line, &tg, &tg).unwrap();
    assert!((potential(&p, 0.0) - grid_value).abs() < 1e-5);
    let e = energies(&p, 0.0);
    assert_eq!(e.total, e.kinetic + e.potential);
    assert_eq!(total(&p, 1.3), kinetic(&p, 1.3) + potential(&p, 1.3));
    let zero = propagator(1, 0.0, 1.0, |_| 0.0, |_| 0.0);
    assert_eq!(potential(&zero, 2.0), 0.0);
}

#[test]
fn conservation_and_series_layout() {
    let p = propagator(2, 0.75, 1.5, |r| r * r * gaussian(r), gaussian);
    let series = measure_series(&p, 20.0, 400).unwrap();
    assert_eq!(series.len(), 401);
    assert!(series.times.windows(2).all(|w| w[0] < w[1]));
    for i in 0..series.len() {
        assert_eq!(series.total[i], series.kinetic[i] + series.potential[i]);
        assert!(series.kinetic[i] >= -1e-14 && series.potential[i] >= -1e-14);
    }
    assert!(series.conservation_drift() <= tol::CONSERVATION);
    let q0 = conserved(&p, 0.0);
    assert!((conserved(&p, 17.3) - q0).abs() <= tol::CONSERVATION * q0);
    // E alone is not conserved
    let e = &series.total;
    let spread = e.iter().cloned().fold(f64::MIN, f64::max) - e.iter().cloned().fold(f64::MAX, f64::min);
    assert!(spread > 1e-6);
    assert!(measure_series(&p, 0.0, 10).is_err());
    assert!(measure_series(&p, 1.0, 0).is_err());
}

#[test]
fn limit_formulas() {
    let m = 1.2;
    let p = propagator(3, 0.0, m, |_| 0.0, gaussian);
    let l = predict_limits(&p);
    assert_eq!(l.e_inf, l.k_inf + l.p_inf);
    assert!((l.k_inf - (0.25 * l.norm_grad_g_sq + 0.25 * m * m * l.norm_g_sq)).abs() < 1e-15);
    assert!((l.p_inf - 0.25 * l.norm_grad_g_sq).abs() < 1e-15);
    assert!((l.l2_inf - 0.5 * l.norm_g_sq).abs() < 1e-15);
    assert!(l.strichartz_holds());

    let p = propagator(3, 0.0, m, gaussian, |_| 0.0);
    let l = predict_limits(&p);
    assert!((l.k_inf - 0.25 * l.norm_f_sq).abs() < 1e-15);
    assert!((l.p_inf - (0.25 * l.norm_f_sq - 0.25 * m * m * l.norm_resolvent_f_sq)).abs() < 1e-15);
    assert!(l.strichartz_bound.is_finite() && l.strichartz_holds());
    assert!(l.l2_inf < l.strichartz_bound);

    // in one dimension F f(0) != 0 makes ||(-Lap)^{-1/2} f|| infinite
    let p = propagator(1, 0.0, m, gaussian, gaussian);
    assert_eq!(predict_limits(&p).strichartz_bound, f64::INFINITY);
}

#[test]
fn cesaro_convergence() {
    let p = propagator(1, 0.0, 1.0, |r| 0.5 * r * r * gaussian(r), gaussian);
    let series = measure_series(&p, 200.0, 20_000).unwrap();
    let limits = predict_limits(&p).with_measurement(&series).unwrap();
    let res = limits.residuals.unwrap();
    assert!(res.max() <= tol::CESARO_LIMIT, "{res:?}");

    let half = series.cesaro_until(series.len() / 2 + 1).unwrap();
    let rel = |a: f64, b: f64| (a - b).abs() / b;
    assert!(rel(half.kinetic, limits.k_inf) > res.kinetic);
    let rem = series.remainders(&limits);
    assert_eq!(rem.kinetic.len(), series.len());
    assert!((rem.kinetic[0] - (series.kinetic[0] - limits.k_inf)).abs() < 1e-15);

    // d/dt ||u||^2 = 2 Re <u, u_t>, the L2 column is consistent with solve
    let fd = five_point_derivative(
        |t| weighted_norm_sq(&p.data().mu, &p.solve(t).unwrap()),
        1.0,
        1e-3,
    );
    let l2 = |t: f64| dunkl_kg::energetics::energies(&p, t).l2;
    let fd2 = five_point_derivative(l2, 1.0, 1e-3);
    assert!((fd - fd2).abs() < 1e-8);
}
