//! Klein-Gordon propagator multipliers and the spectral solution map
//! `u_hat(t) = cos(t w) g_hat + sin(t w)/w f_hat`, `w = sqrt(s^2 + m^2)`.

use crate::error::{Error, Result};
use crate::measures::{ensure_same_grid, MultIndex, RadialProfile, SpectralProfile};
use crate::transform::DunklTransform;
use num_complex::Complex64;
use std::sync::Arc;

/// Below this value of `|t w|` the ratio `sin(t w) / w` uses its Taylor series.
const SINC_SERIES_CUTOFF: f64 = 1e-4;

#[inline]
fn frequency(s: f64, m: f64) -> f64 {
    s.hypot(m)
}

/// `sin(t w) / w`, with the limit `t` at `w = 0`.
#[inline]
fn sin_over(t: f64, w: f64) -> f64 {
    let x = t * w;
    if x.abs() < SINC_SERIES_CUTOFF {
        let x2 = x * x;
        t * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0))
    } else {
        x.sin() / w
    }
}

/// `cos(t sqrt(s^2 + m^2))`.
pub fn mult_p11(s: f64, t: f64, m: f64) -> f64 {
    (t * frequency(s, m)).cos()
}

/// `sin(t sqrt(s^2 + m^2)) / sqrt(s^2 + m^2)`.
pub fn mult_p12(s: f64, t: f64, m: f64) -> f64 {
    sin_over(t, frequency(s, m))
}

/// `-sqrt(s^2 + m^2) sin(t sqrt(s^2 + m^2))`.
pub fn mult_p21(s: f64, t: f64, m: f64) -> f64 {
    let w = frequency(s, m);
    -w * (t * w).sin()
}

/// `cos(t w) - 1` without cancellation.
#[inline]
fn p11_minus_one(s: f64, t: f64, m: f64) -> f64 {
    let h = (0.5 * t * frequency(s, m)).sin();
    -2.0 * h * h
}

/// Initial data of the Cauchy problem: velocity `f`, position `g`, mass `m`.
#[derive(Debug, Clone)]
pub struct CauchyData {
    pub f: RadialProfile,
    pub g: RadialProfile,
    pub m: f64,
    pub mu: MultIndex,
}

impl CauchyData {
    pub fn new(mu: MultIndex, f: RadialProfile, g: RadialProfile, m: f64) -> Result<Self> {
        if !m.is_finite() || m <= 0.0 {
            return Err(Error::invalid("mass", format!("must be positive, got {m}")));
        }
        ensure_same_grid(f.grid(), g.grid())?;
        Ok(Self { f, g, m, mu })
    }

    /// Same data with another mass (still positive).
    pub fn with_mass(&self, m: f64) -> Result<Self> {
        Self::new(self.mu, self.f.clone(), self.g.clone(), m)
    }
}

/// Spectral components `(F u(t), F d_t u(t))` at time `t`.
#[derive(Debug, Clone)]
pub struct PropagatorState {
    pub u_hat: SpectralProfile,
    pub v_hat: SpectralProfile,
    pub t: f64,
}

impl PropagatorState {
    /// Evolves the state by `dt` with the mode-wise rotation matrix.
    pub fn advance(&self, dt: f64, m: f64) -> PropagatorState {
        let nodes = self.u_hat.grid().nodes();
        let (u, v): (Vec<Complex64>, Vec<Complex64>) = nodes
            .iter()
            .zip(self.u_hat.values().iter().zip(self.v_hat.values()))
            .map(|(&s, (&u, &v))| {
                let c = mult_p11(s, dt, m);
                (u * c + v * mult_p12(s, dt, m), u * mult_p21(s, dt, m) + v * c)
            })
            .unzip();
        let grid = self.u_hat.grid().clone();
        PropagatorState {
            u_hat: SpectralProfile::new_unchecked(grid.clone(), u),
            v_hat: SpectralProfile::new_unchecked(grid, v),
            t: self.t + dt,
        }
    }
}

/// Solution operator for one set of Cauchy data; caches the transformed data.
#[derive(Debug, Clone)]
pub struct Propagator {
    transform: Arc<DunklTransform>,
    data: CauchyData,
    f_hat: SpectralProfile,
    g_hat: SpectralProfile,
}

impl Propagator {
    pub fn new(data: CauchyData) -> Result<Self> {
        let transform = Arc::new(DunklTransform::new(data.mu, data.f.grid().clone())?);
        Self::with_transform(transform, data)
    }

    /// Reuses a transform built for the same multiplicity and grid.
    pub fn with_transform(transform: Arc<DunklTransform>, data: CauchyData) -> Result<Self> {
        if *transform.mu() != data.mu {
            return Err(Error::Precondition(
                "transform and data use different multiplicities".into(),
            ));
        }
        let f_hat = transform.forward(&data.f)?;
        let g_hat = transform.forward(&data.g)?;
        Ok(Self {
            transform,
            data,
            f_hat,
            g_hat,
        })
    }

    pub fn data(&self) -> &CauchyData {
        &self.data
    }

    pub fn transform(&self) -> &Arc<DunklTransform> {
        &self.transform
    }

    pub fn mass(&self) -> f64 {
        self.data.m
    }

    pub fn f_hat(&self) -> &SpectralProfile {
        &self.f_hat
    }

    pub fn g_hat(&self) -> &SpectralProfile {
        &self.g_hat
    }

    fn combine(
        &self,
        a: impl Fn(f64) -> f64,
        b: impl Fn(f64) -> f64,
        x: &SpectralProfile,
        y: &SpectralProfile,
    ) -> SpectralProfile {
        let values = self
            .f_hat
            .grid()
            .nodes()
            .iter()
            .zip(x.values().iter().zip(y.values()))
            .map(|(&s, (&xv, &yv))| xv * a(s) + yv * b(s))
            .collect();
        SpectralProfile::new_unchecked(self.f_hat.grid().clone(), values)
    }

    /// `F u(t)`.
    pub fn u_hat(&self, t: f64) -> SpectralProfile {
        let m = self.data.m;
        self.combine(|s| mult_p11(s, t, m), |s| mult_p12(s, t, m), &self.g_hat, &self.f_hat)
    }

    /// `F d_t u(t)`.
    pub fn v_hat(&self, t: f64) -> SpectralProfile {
        let m = self.data.m;
        self.combine(|s| mult_p11(s, t, m), |s| mult_p21(s, t, m), &self.f_hat, &self.g_hat)
    }

    /// `u(., t)`; returns `g` exactly at `t = 0`.
    pub fn solve(&self, t: f64) -> Result<RadialProfile> {
        let m = self.data.m;
        let delta = self.combine(
            |s| p11_minus_one(s, t, m),
            |s| mult_p12(s, t, m),
            &self.g_hat,
            &self.f_hat,
        );
        self.data.g.add(&self.transform.inverse(&delta)?)
    }

    /// `d_t u(., t)`; returns `f` exactly at `t = 0`.
    pub fn solve_dt(&self, t: f64) -> Result<RadialProfile> {
        let m = self.data.m;
        let delta = self.combine(
            |s| p11_minus_one(s, t, m),
            |s| mult_p21(s, t, m),
            &self.f_hat,
            &self.g_hat,
        );
        self.data.f.add(&self.transform.inverse(&delta)?)
    }

    /// Solution of the massless (wave) problem with the same data.
    pub fn wave_limit_solve(&self, t: f64) -> Result<RadialProfile> {
        let delta = self.combine(
            |s| p11_minus_one(s, t, 0.0),
            |s| sin_over(t, s),
            &self.g_hat,
            &self.f_hat,
        );
        self.data.g.add(&self.transform.inverse(&delta)?)
    }

    /// Time derivative of the massless solution.
    pub fn wave_limit_solve_dt(&self, t: f64) -> Result<RadialProfile> {
        let delta = self.combine(
            |s| p11_minus_one(s, t, 0.0),
            |s| mult_p21(s, t, 0.0),
            &self.f_hat,
            &self.g_hat,
        );
        self.data.f.add(&self.transform.inverse(&delta)?)
    }

    /// `u(0, t)` evaluated directly from the spectral side.
    pub fn solve_at_origin(&self, t: f64) -> Result<Complex64> {
        self.transform.inverse_at(&self.u_hat(t), 0.0)
    }

    pub fn evolve_state(&self, t: f64) -> PropagatorState {
        PropagatorState {
            u_hat: self.u_hat(t),
            v_hat: self.v_hat(t),
            t,
        }
    }
}

/// `u(., t)` for the given data.
pub fn solve(data: &CauchyData, t: f64) -> Result<RadialProfile> {
    Propagator::new(data.clone())?.solve(t)
}

/// `d_t u(., t)` for the given data.
pub fn solve_dt(data: &CauchyData, t: f64) -> Result<RadialProfile> {
    Propagator::new(data.clone())?.solve_dt(t)
}

/// Wave-equation solution (`m = 0`) for the data's `f`, `g`.
pub fn wave_limit_solve(data: &CauchyData, t: f64) -> Result<RadialProfile> {
    Propagator::new(data.clone())?.wave_limit_solve(t)
}

/// Both spectral components at time `t`.
pub fn evolve_state(data: &CauchyData, t: f64) -> Result<PropagatorState> {
    Ok(Propagator::new(data.clone())?.evolve_state(t))
}
