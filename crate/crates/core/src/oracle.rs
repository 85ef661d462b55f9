//! Independent reference engines: an RK4 integrator for single spectral modes,
//! adaptive Gauss-Kronrod quadrature, regulated quadrature for slowly decaying
//! oscillatory integrals, and classical (`gamma = 0`, `n = 1`) cosine-sum and
//! d'Alembert solvers. They are slow on purpose and share no code path with the
//! transform-based solver.

use crate::error::{Error, Result};
use crate::measures::RadialProfile;
use crate::numerics::{lagrange_interpolate_real, CompensatedSum};
use crate::propagator::CauchyData;
use num_complex::Complex64;
use std::f64::consts::PI;

/// One spectral mode `u'' = -(s^2 + m^2) u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeState {
    pub s: f64,
    pub u: Complex64,
    pub v: Complex64,
}

impl ModeState {
    pub fn new(s: f64, u: Complex64, v: Complex64) -> Self {
        Self { s, u, v }
    }

    /// `|v|^2 + (s^2 + m^2) |u|^2`.
    pub fn energy(&self, m: f64) -> f64 {
        self.v.norm_sqr() + (self.s * self.s + m * m) * self.u.norm_sqr()
    }
}

/// Largest step accepted by [`mode_march`] for a mode of frequency `w`.
pub fn max_mode_step(s: f64, m: f64) -> f64 {
    1e-3 * (1.0f64).min(1.0 / s.hypot(m))
}

/// Classical fourth-order Runge-Kutta march from 0 to `t` with steps no larger than `dt`.
pub fn mode_march(state0: ModeState, m: f64, t: f64, dt: f64) -> Result<ModeState> {
    if !(dt > 0.0) || dt > max_mode_step(state0.s, m) * (1.0 + 1e-12) {
        return Err(Error::invalid(
            "dt",
            format!(
                "step {dt} rejected; must not exceed {}",
                max_mode_step(state0.s, m)
            ),
        ));
    }
    if t == 0.0 {
        return Ok(state0);
    }
    let steps = (t.abs() / dt).ceil() as usize;
    let h = t / steps as f64;
    let w2 = state0.s * state0.s + m * m;
    let (mut u, mut v) = (state0.u, state0.v);
    for _ in 0..steps {
        let k1u = v;
        let k1v = -w2 * u;
        let k2u = v + 0.5 * h * k1v;
        let k2v = -w2 * (u + 0.5 * h * k1u);
        let k3u = v + 0.5 * h * k2v;
        let k3v = -w2 * (u + 0.5 * h * k2u);
        let k4u = v + h * k3v;
        let k4v = -w2 * (u + h * k3u);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    Ok(ModeState { s: state0.s, u, v })
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// 15-point Kronrod estimate and its difference from the embedded 7-point Gauss rule.
fn gk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

const MAX_INTERVALS: usize = 20_000;

fn adaptive_finite(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    let (v, e) = gk15(f, a, b);
    let mut parts = vec![(a, b, v, e)];
    loop {
        let err: f64 = parts.iter().map(|p| p.3).sum();
        if err <= tol {
            let mut acc = CompensatedSum::new();
            parts.sort_by(|x, y| x.0.total_cmp(&y.0));
            for p in &parts {
                acc.add(p.2);
            }
            return Ok(acc.value());
        }
        if parts.len() >= MAX_INTERVALS {
            return Err(Error::NonConvergence {
                what: "refined_quadrature",
                delta: err,
                tol,
            });
        }
        let (worst, _) = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("non-empty");
        let (lo, hi, _, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(Error::NonConvergence {
                what: "refined_quadrature",
                delta: err,
                tol,
            });
        }
        let (v1, e1) = gk15(f, lo, mid);
        let (v2, e2) = gk15(f, mid, hi);
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
}

/// Adaptive Gauss-Kronrod quadrature of `f` over `[a, b]`; `b` may be `+inf`.
///
/// Intervals are bisected until the summed Kronrod-Gauss error estimate is
/// below `tol`. An infinite upper limit is mapped to `(0, 1]` by
/// `x = a + (1 - u) / u`, which suits absolutely integrable tails; slowly
/// decaying oscillatory integrands belong to [`regulated_quadrature`].
pub fn refined_quadrature(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) || a.is_nan() || b.is_nan() || !a.is_finite() {
        return Err(Error::invalid("quadrature", "need finite a and tol > 0"));
    }
    if b.is_infinite() {
        if b < 0.0 {
            return Err(Error::invalid("quadrature", "upper limit must be >= a"));
        }
        let mut g = |u: f64| {
            if u <= 0.0 {
                0.0
            } else {
                f(a + (1.0 - u) / u) / (u * u)
            }
        };
        return adaptive_finite(&mut g, 0.0, 1.0, tol);
    }
    if b == a {
        return Ok(0.0);
    }
    adaptive_finite(&mut f, a, b, tol)
}

/// Regulator schedule `eps, eps/2, eps/4` for [`regulated_quadrature`].
pub const DEFAULT_REGULATORS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

/// Width of one fixed Gauss-Legendre panel.
const PANEL_WIDTH: f64 = 0.5;
const PANEL_POINTS: usize = 20;

/// Number of geometric sub-panels covering the first panel, for integrable
/// power-law behaviour at `s = 0`.
const GRADED_LEVELS: i32 = 40;

/// `int_0^L phi(s) exp(-eps s^2) ds` by composite Gauss-Legendre panels of
/// fixed width, the first one graded geometrically toward the origin.
fn regulated_integral(phi: &impl Fn(f64) -> f64, eps: f64, upper: f64, rule: &[(f64, f64)]) -> f64 {
    let panels = (upper / PANEL_WIDTH).ceil() as usize;
    let mut acc = CompensatedSum::new();
    let mut panel = |a: f64, b: f64| {
        let half = 0.5 * (b - a);
        for &(x, w) in rule {
            let s = a + half * (x + 1.0);
            acc.add(half * w * phi(s) * (-eps * s * s).exp());
        }
    };
    panel(0.0, PANEL_WIDTH * 0.5f64.powi(GRADED_LEVELS));
    for k in (0..GRADED_LEVELS).rev() {
        panel(PANEL_WIDTH * 0.5f64.powi(k + 1), PANEL_WIDTH * 0.5f64.powi(k));
    }
    for p in 1..panels {
        panel(p as f64 * PANEL_WIDTH, (p + 1) as f64 * PANEL_WIDTH);
    }
    acc.value()
}

fn panel_rule() -> Vec<(f64, f64)> {
    let rule = gauss_quad::legendre::GaussLegendre::new(
        std::num::NonZeroUsize::new(PANEL_POINTS).expect("nonzero"),
    );
    rule.as_node_weight_pairs().to_vec()
}

/// Abel-regulated value of `int_0^inf phi(s) ds`.
///
/// Each regulated integral `I(eps) = int phi(s) exp(-eps s^2) ds` is truncated at
/// `sqrt(40/eps)`; the three values for `eps, eps/2, eps/4` are combined by
/// Richardson extrapolation, removing the `O(eps)` and `O(eps^2)` terms. If
/// extending the truncation by 25% changes any `I(eps)` by more than `tol`, a
/// non-convergence error is returned.
pub fn regulated_quadrature(phi: impl Fn(f64) -> f64, regulators: [f64; 3], tol: f64) -> Result<f64> {
    let [e1, e2, e3] = regulators;
    if !(e1 > 0.0) || (e2 - 0.5 * e1).abs() > 1e-15 * e1 || (e3 - 0.25 * e1).abs() > 1e-15 * e1 {
        return Err(Error::invalid(
            "regulators",
            "schedule must be (eps, eps/2, eps/4) with eps > 0",
        ));
    }
    let rule = panel_rule();
    let mut values = [0.0; 3];
    for (k, &eps) in regulators.iter().enumerate() {
        let upper = (40.0 / eps).sqrt();
        let v = regulated_integral(&phi, eps, upper, &rule);
        let longer = regulated_integral(&phi, eps, 1.25 * upper, &rule);
        if (v - longer).abs() > tol {
            return Err(Error::NonConvergence {
                what: "regulated_quadrature",
                delta: (v - longer).abs(),
                tol,
            });
        }
        values[k] = v;
    }
    Ok((8.0 * values[2] - 6.0 * values[1] + values[0]) / 3.0)
}

/// Classical even Klein-Gordon or wave solver by dense cosine sums.
///
/// Uses `F f(s) = sqrt(2/pi) int_0^inf f(x) cos(sx) dx` on uniform trapezoid
/// grids in `x` and `s` and synthesizes `u(x, t)` from the same multipliers.
#[derive(Debug, Clone)]
pub struct ClassicalReference {
    xs: Vec<f64>,
    ss: Vec<f64>,
    dx: f64,
    ds: f64,
    f_hat: Vec<f64>,
    g_hat: Vec<f64>,
    m: f64,
}

impl ClassicalReference {
    /// `x_max`, `dx` discretize the data, `s_max`, `ds` the frequencies.
    pub fn new(
        f: impl Fn(f64) -> f64,
        g: impl Fn(f64) -> f64,
        m: f64,
        x_max: f64,
        dx: f64,
        s_max: f64,
        ds: f64,
    ) -> Result<Self> {
        if !(m >= 0.0) || !(dx > 0.0) || !(ds > 0.0) || !(x_max > dx) || !(s_max > ds) {
            return Err(Error::invalid("classical_reference", "bad discretization"));
        }
        let nx = (x_max / dx).round() as usize;
        let ns = (s_max / ds).round() as usize;
        let xs: Vec<f64> = (0..=nx).map(|i| i as f64 * dx).collect();
        let ss: Vec<f64> = (0..=ns).map(|i| i as f64 * ds).collect();
        let fx: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        let gx: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
        let cosine = |vals: &[f64], s: f64| {
            let mut acc = CompensatedSum::new();
            for (i, (&x, &v)) in xs.iter().zip(vals).enumerate() {
                let w = if i == 0 { 0.5 } else { 1.0 };
                acc.add(w * v * (s * x).cos());
            }
            (2.0 / PI).sqrt() * dx * acc.value()
        };
        let f_hat = ss.iter().map(|&s| cosine(&fx, s)).collect();
        let g_hat = ss.iter().map(|&s| cosine(&gx, s)).collect();
        Ok(Self {
            xs,
            ss,
            dx,
            ds,
            f_hat,
            g_hat,
            m,
        })
    }

    /// Default resolution suited to Gaussian-type data of unit width.
    pub fn with_defaults(f: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64, m: f64) -> Result<Self> {
        Self::new(f, g, m, 14.0, 0.05, 14.0, 0.05)
    }

    /// `u(x, t)`.
    pub fn solution(&self, x: f64, t: f64) -> f64 {
        let mut acc = CompensatedSum::new();
        for (j, &s) in self.ss.iter().enumerate() {
            let w = s.hypot(self.m);
            let sinc = if w * t.abs() < 1e-8 { t } else { (t * w).sin() / w };
            let wt = if j == 0 { 0.5 } else { 1.0 };
            acc.add(wt * ((t * w).cos() * self.g_hat[j] + sinc * self.f_hat[j]) * (s * x).cos());
        }
        (2.0 / PI).sqrt() * self.ds * acc.value()
    }

    pub fn grid_len(&self) -> (usize, usize) {
        (self.xs.len(), self.ss.len())
    }

    pub fn steps(&self) -> (f64, f64) {
        (self.dx, self.ds)
    }
}

/// Classical reference solution on the data's own grid. Needs `gamma = 0`, `n = 1`.
///
/// The sampled data are interpolated to the uniform cosine-sum grid; at `t = 0`
/// the position datum is returned unchanged.
pub fn classical_reference(data: &CauchyData, t: f64) -> Result<RadialProfile> {
    if data.mu.gamma() != 0.0 || data.mu.n() != 1 {
        return Err(Error::Precondition(
            "classical reference needs gamma = 0 and n = 1".into(),
        ));
    }
    if t == 0.0 {
        return Ok(data.g.clone());
    }
    let grid = data.f.grid().clone();
    let nodes = grid.nodes().to_vec();
    let re = |p: &RadialProfile| p.values().iter().map(|v| v.re).collect::<Vec<_>>();
    let im = |p: &RadialProfile| p.values().iter().map(|v| v.im).collect::<Vec<_>>();
    let interp = |ys: Vec<f64>| {
        let nodes = nodes.clone();
        move |x: f64| {
            if x > *nodes.last().expect("grid is never empty") {
                0.0
            } else {
                lagrange_interpolate_real(&nodes, &ys, x, 10)
            }
        }
    };
    let real = ClassicalReference::with_defaults(interp(re(&data.f)), interp(re(&data.g)), data.m)?;
    let imag = ClassicalReference::with_defaults(interp(im(&data.f)), interp(im(&data.g)), data.m)?;
    RadialProfile::from_fn_complex(grid, |r| {
        Complex64::new(real.solution(r, t), imag.solution(r, t))
    })
}

/// d'Alembert's formula for the even wave problem:
/// `u(x,t) = (g(x+t) + g(x-t))/2 + (F(x+t) - F(x-t))/2` with `F' = f`.
pub fn dalembert(f_antiderivative: impl Fn(f64) -> f64, g: impl Fn(f64) -> f64, x: f64, t: f64) -> f64 {
    0.5 * (g(x + t) + g(x - t)) + 0.5 * (f_antiderivative(x + t) - f_antiderivative(x - t))
}
