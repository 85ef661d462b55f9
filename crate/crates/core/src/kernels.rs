//! Physical-space kernels of the propagator: closed forms of the Hankel
//! transforms of `sin(t w)/w` and `cos(t w)` (`w = sqrt(s^2 + m^2)`), their
//! quadrature oracles, the spherical mean at the origin and the integral
//! representation of `u(0, t)`.
//!
//! With `rho = sqrt(t^2 - y^2)` and `C = sqrt(pi)/Gamma(alpha+1) (m/sqrt 2)^{2 alpha + 1}`:
//!
//! ```text
//! G_t(y) = C S_{-alpha-1/2}(m rho)                                      0 < y < t
//! F_t(y) = sqrt(pi)/Gamma(alpha+1) 2^{-alpha-1/2} m^{2 alpha + 3} t S_{-alpha-3/2}(m rho)
//! ```
//!
//! and both vanish for `y > |t|`. `F_t = d/dt G_t` away from the light cone.

use crate::error::{Error, Result};
use crate::measures::{MultIndex, RadialProfile};
use crate::numerics::{five_point_derivative, lagrange_interpolate, tanh_sinh};
use crate::oracle::{regulated_quadrature, DEFAULT_REGULATORS};
use crate::propagator::{mult_p11, mult_p12, CauchyData, Propagator};
use crate::specfun::{gamma_fn, s_plus_unchecked, NormalizedBessel, Order};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Order, mass and time of a kernel evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    alpha: Order,
    m: f64,
    t: f64,
}

impl KernelParams {
    pub fn new(alpha: f64, m: f64, t: f64) -> Result<Self> {
        let order = Order::new(alpha)?;
        if alpha <= -1.0 {
            return Err(Error::Domain {
                what: "kernel order",
                value: alpha,
                expected: "alpha > -1",
            });
        }
        if !m.is_finite() || m <= 0.0 {
            return Err(Error::invalid("mass", format!("must be positive, got {m}")));
        }
        if !t.is_finite() {
            return Err(Error::NonFinite("kernel time"));
        }
        Ok(Self { alpha: order, m, t })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha.value()
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn t(&self) -> f64 {
        self.t
    }
}

/// `sqrt(pi)/Gamma(alpha+1) (m/sqrt 2)^{2 alpha + 1}`, the prefactor of `G_t`.
pub fn representation_constant(alpha: f64, m: f64) -> Result<f64> {
    Ok(PI.sqrt() / gamma_fn(alpha + 1.0)? * (m / 2f64.sqrt()).powf(2.0 * alpha + 1.0))
}

fn check_y(y: f64) -> Result<()> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain {
            what: "kernel radius",
            value: y,
            expected: "y > 0",
        });
    }
    Ok(())
}

/// `sqrt(t^2 - y^2)` for `0 < y < t`, computed as `sqrt((t - y)(t + y))`.
fn cone_distance(t: f64, y: f64) -> f64 {
    ((t - y) * (t + y)).sqrt()
}

/// Closed form of the Hankel transform of `sin(t w)/w`; odd in `t`.
pub fn hankel_g_closed(p: &KernelParams, y: f64) -> Result<f64> {
    check_y(y)?;
    let t = p.t.abs();
    if y >= t {
        return Ok(0.0);
    }
    let a = p.alpha();
    let c = representation_constant(a, p.m)?;
    let v = c * s_plus_unchecked(-a - 0.5, p.m * cone_distance(t, y)) * p.t.signum();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow("hankel_g_closed"))
    }
}

/// Closed form of the Hankel transform of `cos(t w)`; even in `t`.
pub fn hankel_f_closed(p: &KernelParams, y: f64) -> Result<f64> {
    check_y(y)?;
    let t = p.t.abs();
    if y >= t {
        return Ok(0.0);
    }
    let a = p.alpha();
    let c = PI.sqrt() / gamma_fn(a + 1.0)? * 2f64.powf(-a - 0.5) * p.m.powf(2.0 * a + 3.0);
    let v = c * t * s_plus_unchecked(-a - 1.5, p.m * cone_distance(t, y));
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow("hankel_f_closed"))
    }
}

/// Tolerance on the truncation check inside the regulated quadrature.
const KERNEL_TRUNCATION_TOL: f64 = 1e-9;

fn kernel_quadrature(p: &KernelParams, y: f64, mult: impl Fn(f64) -> f64) -> Result<f64> {
    let a = p.alpha();
    let jn = NormalizedBessel::new(a);
    let norm = 2f64.powf(a) * gamma_fn(a + 1.0)?;
    let e = 2.0 * a + 1.0;
    let phi = |s: f64| mult(s) * jn.eval(y * s) * s.powf(e) / (norm * norm);
    regulated_quadrature(phi, DEFAULT_REGULATORS, KERNEL_TRUNCATION_TOL)
}

/// Hankel transform of `sin(t w)/w` by regulated oscillatory quadrature.
pub fn hankel_g_quadrature(p: &KernelParams, y: f64) -> Result<f64> {
    check_y(y)?;
    if p.t == 0.0 {
        return Ok(0.0);
    }
    let (t, m) = (p.t, p.m);
    kernel_quadrature(p, y, |s| mult_p12(s, t, m))
}

/// Hankel transform of `cos(t w)` by regulated oscillatory quadrature.
pub fn hankel_f_quadrature(p: &KernelParams, y: f64) -> Result<f64> {
    check_y(y)?;
    let (t, m) = (p.t, p.m);
    kernel_quadrature(p, y, |s| mult_p11(s, t, m))
}

/// Interpolated radial profile, the spherical mean of `f` about the origin.
#[derive(Debug, Clone)]
pub struct SphericalMean {
    xs: Vec<f64>,
    ys: Vec<Complex64>,
    rmax: f64,
}

/// Interpolation points used on each side of the evaluation radius.
const INTERPOLATION_POINTS: usize = 10;

impl SphericalMean {
    pub fn new(f: &RadialProfile) -> Self {
        let nodes = f.grid().nodes();
        let vals = f.values();
        let mirrored = INTERPOLATION_POINTS.min(nodes.len());
        let mut xs: Vec<f64> = nodes[..mirrored].iter().rev().map(|r| -r).collect();
        let mut ys: Vec<Complex64> = vals[..mirrored].iter().rev().copied().collect();
        xs.extend_from_slice(nodes);
        ys.extend_from_slice(vals);
        Self {
            xs,
            ys,
            rmax: f.grid().rmax(),
        }
    }

    /// Mean over the sphere of radius `r` centred at the origin.
    pub fn at(&self, r: f64) -> Result<Complex64> {
        if !(r >= 0.0) || r > self.rmax {
            return Err(Error::OutOfRange {
                what: "spherical mean radius",
                value: r,
                lo: 0.0,
                hi: self.rmax,
            });
        }
        Ok(lagrange_interpolate(&self.xs, &self.ys, r, INTERPOLATION_POINTS))
    }
}

/// Spherical mean `M f(0, r)`; the translation by the origin is the identity,
/// so this is the interpolated profile.
pub fn spherical_mean_origin(_mu: &MultIndex, f: &RadialProfile, r: f64) -> Result<Complex64> {
    SphericalMean::new(f).at(r)
}

/// How the argument of `S` is formed from `t` and `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgumentConvention {
    /// `m sqrt(t^2 - r^2)`.
    SquareRoot,
    /// `m (t^2 - r^2)`, kept to show that it disagrees with the spectral solution.
    Printed,
}

impl ArgumentConvention {
    fn argument(self, m: f64, t: f64, r: f64, t_minus_r: f64) -> f64 {
        let q = t_minus_r * (t + r);
        match self {
            ArgumentConvention::SquareRoot => m * q.sqrt(),
            ArgumentConvention::Printed => m * q,
        }
    }
}

/// Relative accuracy requested from the inner radial integrals.
const INNER_TOL: f64 = 1e-13;
/// Largest accepted change between the last two refinement levels, relative.
const INNER_ACCEPT: f64 = 1e-9;
/// Finite-difference step as a fraction of `t`.
const DERIVATIVE_STEP: f64 = 0.01;

/// `u(0, t)` from the radial integrals of the data against the kernels.
#[derive(Debug, Clone)]
pub struct IntegralRepresentation {
    alpha: f64,
    m: f64,
    mean_f: SphericalMean,
    mean_g: SphericalMean,
    convention: ArgumentConvention,
}

impl IntegralRepresentation {
    pub fn new(data: &CauchyData, convention: ArgumentConvention) -> Self {
        Self {
            alpha: data.mu.alpha(),
            m: data.m,
            mean_f: SphericalMean::new(&data.f),
            mean_g: SphericalMean::new(&data.g),
            convention,
        }
    }

    /// `int_0^t r^{2 alpha + 1} S_{lambda}(arg) M(r) dr` with `0 <= lambda < 1`.
    fn base_integral(&self, mean: &SphericalMean, lambda: f64, t: f64) -> Result<Complex64> {
        if t <= 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let e = 2.0 * self.alpha + 1.0;
        let kernel = |r: f64, t_minus_r: f64| {
            let x = self.convention.argument(self.m, t, r, t_minus_r);
            let s = if x <= 0.0 {
                if lambda == 0.0 {
                    1.0
                } else {
                    0.0
                }
            } else {
                s_plus_unchecked(lambda, x)
            };
            r.powf(e) * s
        };
        let mut failure = None;
        let mut part = |pick: fn(Complex64) -> f64| {
            let (v, change) = tanh_sinh(
                |r, _, t_minus_r| match mean.at(r) {
                    Ok(z) => kernel(r, t_minus_r) * pick(z),
                    Err(err) => {
                        failure = Some(err);
                        0.0
                    }
                },
                0.0,
                t,
                INNER_TOL,
            );
            (v, change)
        };
        let (re, dre) = part(|z| z.re);
        let (im, dim) = part(|z| z.im);
        if let Some(err) = failure {
            return Err(err);
        }
        let scale = re.abs().max(im.abs()).max(1e-300);
        let change = dre.max(dim);
        if change > INNER_ACCEPT * scale && change > 1e-15 {
            return Err(Error::NonConvergence {
                what: "integral representation",
                delta: change,
                tol: INNER_ACCEPT * scale,
            });
        }
        Ok(Complex64::new(re, im))
    }

    /// `P(t) = int_0^t r^{2 alpha + 1} S_{-nu}(arg) M(r) dr`, `nu = alpha + 1/2`,
    /// reduced to a bounded kernel by `S_{-nu} = (1/(m^2 t)) d/dt S_{-nu+1}`.
    fn reduced(&self, mean: &SphericalMean, t: f64, levels: u32, lambda: f64) -> Result<Complex64> {
        if levels == 0 {
            return self.base_integral(mean, lambda, t);
        }
        let h = DERIVATIVE_STEP * t;
        let mut failure = None;
        let mut eval = |pick: fn(Complex64) -> f64| {
            five_point_derivative(
                |tau| match self.reduced(mean, tau, levels - 1, lambda) {
                    Ok(z) => pick(z),
                    Err(err) => {
                        failure = Some(err);
                        0.0
                    }
                },
                t,
                h,
            )
        };
        let d = Complex64::new(eval(|z| z.re), eval(|z| z.im));
        if let Some(err) = failure {
            return Err(err);
        }
        Ok(d / (self.m * self.m * t))
    }

    fn kernel_integral(&self, mean: &SphericalMean, t: f64) -> Result<Complex64> {
        let nu = self.alpha + 0.5;
        let levels = if nu > 0.0 { nu.ceil() as u32 } else { 0 };
        let lambda = -(nu - levels as f64);
        let lambda = if lambda == -0.0 { 0.0 } else { lambda };
        self.reduced(mean, t, levels, lambda)
    }

    /// `u(0, t)`.
    pub fn evaluate(&self, t: f64) -> Result<Complex64> {
        if t == 0.0 {
            return self.mean_g.at(0.0);
        }
        let c = representation_constant(self.alpha, self.m)?;
        let ta = t.abs();
        let from_f = self.kernel_integral(&self.mean_f, ta)? * c * t.signum();
        let h = DERIVATIVE_STEP * ta;
        let mut failure = None;
        let mut eval = |pick: fn(Complex64) -> f64| {
            five_point_derivative(
                |tau| match self.kernel_integral(&self.mean_g, tau) {
                    Ok(z) => pick(z),
                    Err(err) => {
                        failure = Some(err);
                        0.0
                    }
                },
                ta,
                h,
            )
        };
        let from_g = Complex64::new(eval(|z| z.re), eval(|z| z.im)) * c;
        if let Some(err) = failure {
            return Err(err);
        }
        Ok(from_f + from_g)
    }
}

/// `u(0, t)` from the integral representation with the square-root argument.
pub fn integral_representation_origin(data: &CauchyData, t: f64) -> Result<Complex64> {
    let rmax = data.f.grid().rmax();
    if t.abs() > rmax {
        return Err(Error::OutOfRange {
            what: "time",
            value: t,
            lo: -rmax,
            hi: rmax,
        });
    }
    IntegralRepresentation::new(data, ArgumentConvention::SquareRoot).evaluate(t)
}

/// Spectral and integral values of `u(0, t)` side by side.
pub fn compare_at_origin(
    propagator: &Propagator,
    t: f64,
    convention: ArgumentConvention,
) -> Result<(Complex64, Complex64)> {
    let spectral = propagator.solve_at_origin(t)?;
    let integral = IntegralRepresentation::new(propagator.data(), convention).evaluate(t)?;
    Ok((spectral, integral))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_and_time_zero() {
        let p = KernelParams::new(0.5, 1.0, 2.0).unwrap();
        assert_eq!(hankel_g_closed(&p, 2.5).unwrap(), 0.0);
        assert_eq!(hankel_f_closed(&p, 2.0).unwrap(), 0.0);
        let p0 = KernelParams::new(0.5, 1.0, 0.0).unwrap();
        assert_eq!(hankel_g_quadrature(&p0, 1.0).unwrap(), 0.0);
        assert!(hankel_g_closed(&p, 0.0).is_err());
    }

    #[test]
    fn three_dimensional_massive_kernel() {
        // alpha = 1/2: S_{-1}(x) = -J_1(x)/x and C = m^2, so G_t(y) = -m J_1(m rho)/rho
        let m = 1.3;
        let p = KernelParams::new(0.5, m, 2.0).unwrap();
        let rho = 3f64.sqrt();
        let expected = -m * crate::specfun::bessel_j(crate::specfun::Order::new(1.0).unwrap(), m * rho).unwrap() / rho;
        assert!((hankel_g_closed(&p, 1.0).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn spherical_mean_interpolates() {
        let grid = crate::measures::make_grid(20.0, 256).unwrap();
        let mu = MultIndex::new(3, 0.0).unwrap();
        let f = RadialProfile::from_fn(grid, |r| (-0.5 * r * r).exp()).unwrap();
        let v = spherical_mean_origin(&mu, &f, 1.0).unwrap();
        assert!((v.re - (-0.5f64).exp()).abs() < 1e-10);
        let v0 = spherical_mean_origin(&mu, &f, 0.0).unwrap();
        assert!((v0.re - 1.0).abs() < 1e-10);
        assert!(spherical_mean_origin(&mu, &f, 21.0).is_err());
    }
}
