//! Kinetic, potential and total energies, the conserved combination
//! `Q = E + (m^2/2) ||u||^2`, their predicted large-time limits and Cesaro
//! averages of sampled series. Everything is evaluated on the spectral side.

use crate::error::{Error, Result};
use crate::numerics::CompensatedSum;
use crate::propagator::{mult_p11, mult_p12, mult_p21, Propagator};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

/// Relative size of `|F f|` at the smallest node above which `||s^{-1} F f||` is declared divergent.
const INVERSE_SQRT_DIVERGENCE: f64 = 1e-8;

/// Energies at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergySample {
    pub t: f64,
    pub kinetic: f64,
    pub potential: f64,
    pub total: f64,
    pub conserved: f64,
    pub l2: f64,
}

/// `d_k sum_j w_j s_j^{2 alpha + 1} phi(j, s_j)`.
fn spectral_integral(p: &Propagator, mut phi: impl FnMut(usize, f64) -> f64) -> f64 {
    let mu = p.transform().mu();
    let grid = p.transform().grid();
    let e = mu.weight_exponent();
    let mut acc = CompensatedSum::new();
    for (j, (&s, &w)) in grid.nodes().iter().zip(grid.weights()).enumerate() {
        acc.add(w * s.powf(e) * phi(j, s));
    }
    mu.d_k() * acc.value()
}

/// All energies at time `t`, mode by mode.
pub fn energies(p: &Propagator, t: f64) -> EnergySample {
    let m = p.mass();
    let f = p.f_hat().values();
    let g = p.g_hat().values();
    let mut k = CompensatedSum::new();
    let mut pot = CompensatedSum::new();
    let mut l2 = CompensatedSum::new();
    let mu = p.transform().mu();
    let grid = p.transform().grid();
    let e = mu.weight_exponent();
    for (j, (&s, &w)) in grid.nodes().iter().zip(grid.weights()).enumerate() {
        let c = mult_p11(s, t, m);
        let u: Complex64 = g[j] * c + f[j] * mult_p12(s, t, m);
        let v: Complex64 = f[j] * c + g[j] * mult_p21(s, t, m);
        let dm = w * s.powf(e);
        k.add(dm * v.norm_sqr());
        pot.add(dm * s * s * u.norm_sqr());
        l2.add(dm * u.norm_sqr());
    }
    let kinetic = 0.5 * mu.d_k() * k.value();
    let potential = 0.5 * mu.d_k() * pot.value();
    let l2 = mu.d_k() * l2.value();
    let total = kinetic + potential;
    EnergySample {
        t,
        kinetic,
        potential,
        total,
        conserved: total + 0.5 * m * m * l2,
        l2,
    }
}

/// `(1/2) ||d_t u(t)||^2`.
pub fn kinetic(p: &Propagator, t: f64) -> f64 {
    energies(p, t).kinetic
}

/// `(1/2) ||s F u(t)||^2`, i.e. half the summed squared Dunkl derivatives.
pub fn potential(p: &Propagator, t: f64) -> f64 {
    energies(p, t).potential
}

/// Kinetic plus potential energy.
pub fn total(p: &Propagator, t: f64) -> f64 {
    energies(p, t).total
}

/// `E(t) + (m^2/2) ||u(t)||^2`, independent of `t`.
pub fn conserved(p: &Propagator, t: f64) -> f64 {
    energies(p, t).conserved
}

/// Time averages `(1/T) int_0^T` of the energy series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CesaroAverages {
    pub horizon: f64,
    pub kinetic: f64,
    pub potential: f64,
    pub total: f64,
    pub l2: f64,
}

/// Relative gaps `|average - limit| / |limit|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitResiduals {
    pub kinetic: f64,
    pub potential: f64,
    pub total: f64,
    pub l2: f64,
}

impl LimitResiduals {
    pub fn max(&self) -> f64 {
        self.kinetic.max(self.potential).max(self.total).max(self.l2)
    }
}

/// Predicted `t -> infinity` limits, optionally with measured averages.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitReport {
    pub k_inf: f64,
    pub p_inf: f64,
    pub e_inf: f64,
    pub l2_inf: f64,
    /// `(1/2) ||(-Delta_k)^{-1/2} f||^2 + (1/2) ||g||^2`; `+inf` when the first term diverges.
    pub strichartz_bound: f64,
    pub norm_f_sq: f64,
    pub norm_g_sq: f64,
    pub norm_grad_g_sq: f64,
    pub norm_resolvent_f_sq: f64,
    pub measured: Option<CesaroAverages>,
    pub residuals: Option<LimitResiduals>,
}

impl LimitReport {
    /// Attaches the Cesaro averages of `series` and the relative residuals.
    pub fn with_measurement(mut self, series: &EnergySeries) -> Result<Self> {
        let avg = series.cesaro()?;
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(f64::MIN_POSITIVE);
        self.residuals = Some(LimitResiduals {
            kinetic: rel(avg.kinetic, self.k_inf),
            potential: rel(avg.potential, self.p_inf),
            total: rel(avg.total, self.e_inf),
            l2: rel(avg.l2, self.l2_inf),
        });
        self.measured = Some(avg);
        Ok(self)
    }

    /// Whether the limiting `L^2` mass respects the Strichartz-type bound.
    pub fn strichartz_holds(&self) -> bool {
        self.l2_inf <= self.strichartz_bound * (1.0 + 1e-12)
    }
}

/// Limits of `K`, `P`, `E` and `||u||^2` as `t -> infinity`.
pub fn predict_limits(p: &Propagator) -> LimitReport {
    let m = p.mass();
    let f = p.f_hat().values();
    let g = p.g_hat().values();
    let norm_f_sq = spectral_integral(p, |j, _| f[j].norm_sqr());
    let norm_g_sq = spectral_integral(p, |j, _| g[j].norm_sqr());
    let norm_grad_g_sq = spectral_integral(p, |j, s| s * s * g[j].norm_sqr());
    let norm_resolvent_f_sq = spectral_integral(p, |j, s| f[j].norm_sqr() / (s * s + m * m));

    let alpha = p.transform().mu().alpha();
    let fmax = f.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let diverges = alpha <= 0.0 && f[0].norm() > INVERSE_SQRT_DIVERGENCE * fmax;
    let inverse_f_sq = if diverges {
        f64::INFINITY
    } else {
        spectral_integral(p, |j, s| f[j].norm_sqr() / (s * s))
    };

    let k_inf = 0.25 * norm_f_sq + 0.25 * norm_grad_g_sq + 0.25 * m * m * norm_g_sq;
    let p_inf = 0.25 * norm_f_sq + 0.25 * norm_grad_g_sq - 0.25 * m * m * norm_resolvent_f_sq;
    LimitReport {
        k_inf,
        p_inf,
        e_inf: k_inf + p_inf,
        l2_inf: 0.5 * norm_g_sq + 0.5 * norm_resolvent_f_sq,
        strichartz_bound: 0.5 * inverse_f_sq + 0.5 * norm_g_sq,
        norm_f_sq,
        norm_g_sq,
        norm_grad_g_sq,
        norm_resolvent_f_sq,
        measured: None,
        residuals: None,
    }
}

/// Energies sampled on a uniform time grid `t_i = i T / n`, `i = 0..=n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergySeries {
    pub times: Vec<f64>,
    pub kinetic: Vec<f64>,
    pub potential: Vec<f64>,
    pub total: Vec<f64>,
    pub conserved: Vec<f64>,
    pub l2: Vec<f64>,
}

/// Oscillatory remainders `series - limit`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Remainders {
    pub kinetic: Vec<f64>,
    pub potential: Vec<f64>,
    pub total: Vec<f64>,
    pub l2: Vec<f64>,
}

impl EnergySeries {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn sample(&self, i: usize) -> EnergySample {
        EnergySample {
            t: self.times[i],
            kinetic: self.kinetic[i],
            potential: self.potential[i],
            total: self.total[i],
            conserved: self.conserved[i],
            l2: self.l2[i],
        }
    }

    /// Largest relative deviation of the conserved combination from its initial value.
    pub fn conservation_drift(&self) -> f64 {
        let q0 = self.conserved[0];
        self.conserved
            .iter()
            .map(|q| (q - q0).abs())
            .fold(0.0, f64::max)
            / q0.abs().max(f64::MIN_POSITIVE)
    }

    /// Trapezoid-rule Cesaro averages over the whole horizon.
    pub fn cesaro(&self) -> Result<CesaroAverages> {
        self.cesaro_until(self.len())
    }

    /// Cesaro averages over the first `count` samples.
    pub fn cesaro_until(&self, count: usize) -> Result<CesaroAverages> {
        if count < 2 || count > self.len() {
            return Err(Error::Precondition(
                "Cesaro average needs at least two samples".into(),
            ));
        }
        let horizon = self.times[count - 1] - self.times[0];
        let avg = |y: &[f64]| {
            let mut acc = CompensatedSum::new();
            for i in 1..count {
                acc.add(0.5 * (y[i] + y[i - 1]) * (self.times[i] - self.times[i - 1]));
            }
            acc.value() / horizon
        };
        Ok(CesaroAverages {
            horizon,
            kinetic: avg(&self.kinetic),
            potential: avg(&self.potential),
            total: avg(&self.total),
            l2: avg(&self.l2),
        })
    }

    pub fn remainders(&self, limits: &LimitReport) -> Remainders {
        let sub = |y: &[f64], c: f64| y.iter().map(|v| v - c).collect();
        Remainders {
            kinetic: sub(&self.kinetic, limits.k_inf),
            potential: sub(&self.potential, limits.p_inf),
            total: sub(&self.total, limits.e_inf),
            l2: sub(&self.l2, limits.l2_inf),
        }
    }
}

/// Samples all energies at `n_steps + 1` equally spaced times in `[0, t_max]`.
pub fn measure_series(p: &Propagator, t_max: f64, n_steps: usize) -> Result<EnergySeries> {
    if !t_max.is_finite() || t_max <= 0.0 {
        return Err(Error::invalid("t_max", format!("must be positive, got {t_max}")));
    }
    if n_steps == 0 {
        return Err(Error::invalid("steps", "need at least one step"));
    }
    let dt = t_max / n_steps as f64;
    let samples: Vec<EnergySample> = (0..=n_steps)
        .into_par_iter()
        .map(|i| energies(p, i as f64 * dt))
        .collect();
    Ok(EnergySeries {
        times: samples.iter().map(|s| s.t).collect(),
        kinetic: samples.iter().map(|s| s.kinetic).collect(),
        potential: samples.iter().map(|s| s.potential).collect(),
        total: samples.iter().map(|s| s.total).collect(),
        conserved: samples.iter().map(|s| s.conserved).collect(),
        l2: samples.iter().map(|s| s.l2).collect(),
    })
}
