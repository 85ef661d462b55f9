//! The Hankel transform of order `alpha` and the radial Dunkl transform built on it.
//!
//! On the self-dual grid the kernel matrix `B_ij = J_alpha-normalized(r_i s_j)`
//! is symmetric, so one stored matrix serves the forward and inverse direction.
//! The transform
//!
//! ```text
//! (H f)(r) = 1 / (2^alpha Gamma(alpha+1)) * sum_j w_j f(s_j) Jn_alpha(r s_j) s_j^{2 alpha + 1}
//! ```
//!
//! is unitary on `L^2(r^{2 alpha + 1} dr)` and its own inverse.

use crate::error::{Error, Result};
use crate::measures::{
    ensure_same_grid, weighted_norm_sq, MultIndex, RadialGrid, RadialProfile, SpectralProfile,
};
use crate::numerics::CompensatedComplexSum;
use crate::specfun::{gamma_fn, NormalizedBessel, Order};
use num_complex::Complex64;
use rayon::prelude::*;
use std::sync::Arc;

/// Column weights `w_j s_j^{2 alpha + 1} / (2^alpha Gamma(alpha + 1))`.
fn column_weights(alpha: f64, grid: &RadialGrid) -> Result<Vec<f64>> {
    let norm = 2f64.powf(alpha) * gamma_fn(alpha + 1.0)?;
    let p = 2.0 * alpha + 1.0;
    Ok(grid
        .nodes()
        .iter()
        .zip(grid.weights())
        .map(|(&s, &w)| w * s.powf(p) / norm)
        .collect())
}

fn check_alpha(alpha: Order) -> Result<f64> {
    let a = alpha.value();
    if a <= -1.0 {
        return Err(Error::Domain {
            what: "hankel",
            value: a,
            expected: "alpha > -1",
        });
    }
    Ok(a)
}

fn apply_row(
    kernel: impl Fn(usize) -> f64,
    col: &[f64],
    values: &[Complex64],
) -> Complex64 {
    let mut acc = CompensatedComplexSum::new();
    for (j, (&c, &v)) in col.iter().zip(values).enumerate() {
        acc.add(v * (kernel(j) * c));
    }
    acc.value()
}

/// Hankel transform of `f` evaluated at the nodes of `out_grid`.
///
/// Rows are computed in parallel; each row is summed in ascending node order.
pub fn hankel(alpha: Order, f: &RadialProfile, out_grid: &Arc<RadialGrid>) -> Result<SpectralProfile> {
    let a = check_alpha(alpha)?;
    let col = column_weights(a, f.grid())?;
    let jn = NormalizedBessel::new(a);
    let s = f.grid().nodes();
    let values: Vec<Complex64> = out_grid
        .nodes()
        .par_iter()
        .map(|&r| apply_row(|j| jn.eval(r * s[j]), &col, f.values()))
        .collect();
    Ok(SpectralProfile::new_unchecked(out_grid.clone(), values))
}

/// Precomputed Hankel transform on one self-dual grid.
#[derive(Debug)]
pub struct HankelPlan {
    alpha: f64,
    grid: Arc<RadialGrid>,
    kernel: Vec<f64>,
    col: Vec<f64>,
}

impl HankelPlan {
    pub fn new(alpha: Order, grid: Arc<RadialGrid>) -> Result<Self> {
        let a = check_alpha(alpha)?;
        let col = column_weights(a, &grid)?;
        let jn = NormalizedBessel::new(a);
        let n = grid.len();
        let nodes = grid.nodes();
        let mut kernel = vec![0.0; n * n];
        kernel.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            let r = nodes[i];
            for (j, k) in row.iter_mut().enumerate() {
                *k = jn.eval(r * nodes[j]);
            }
        });
        if kernel.iter().any(|k| !k.is_finite()) {
            return Err(Error::NonFinite("hankel kernel"));
        }
        Ok(Self {
            alpha: a,
            grid,
            kernel,
            col,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    /// Applies the transform to raw samples on the plan's grid.
    pub fn apply(&self, values: &[Complex64]) -> Vec<Complex64> {
        let n = self.grid.len();
        assert_eq!(values.len(), n, "sample count must match the grid");
        self.kernel
            .par_chunks(n)
            .map(|row| apply_row(|j| row[j], &self.col, values))
            .collect()
    }

    /// Transform evaluated at an arbitrary point `r >= 0`.
    pub fn apply_at(&self, values: &[Complex64], r: f64) -> Complex64 {
        let jn = NormalizedBessel::new(self.alpha);
        let s = self.grid.nodes();
        apply_row(|j| jn.eval(r * s[j]), &self.col, values)
    }
}

/// The radial Dunkl transform for one [`MultIndex`] on one grid, with its frozen
/// unitary scale.
#[derive(Debug)]
pub struct DunklTransform {
    mu: MultIndex,
    plan: HankelPlan,
    unitary_scale: f64,
}

impl DunklTransform {
    pub fn new(mu: MultIndex, grid: Arc<RadialGrid>) -> Result<Self> {
        let plan = HankelPlan::new(Order::new(mu.alpha())?, grid.clone())?;
        // scale fixed once by Plancherel on exp(-r^2/2)
        let reference = RadialProfile::from_fn(grid.clone(), |r| (-0.5 * r * r).exp())?;
        let spec = SpectralProfile::new_unchecked(grid, plan.apply(reference.values()));
        let ratio = weighted_norm_sq(&mu, &reference) / weighted_norm_sq(&mu, &spec);
        let unitary_scale = ratio.sqrt();
        if !unitary_scale.is_finite() || unitary_scale <= 0.0 {
            return Err(Error::NonFinite("unitary scale"));
        }
        Ok(Self {
            mu,
            plan,
            unitary_scale,
        })
    }

    pub fn mu(&self) -> &MultIndex {
        &self.mu
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        self.plan.grid()
    }

    pub fn plan(&self) -> &HankelPlan {
        &self.plan
    }

    /// Factor relating the implemented transform to the bare Hankel sum.
    pub fn unitary_scale(&self) -> f64 {
        self.unitary_scale
    }

    pub fn forward(&self, f: &RadialProfile) -> Result<SpectralProfile> {
        ensure_same_grid(f.grid(), self.grid())?;
        Ok(SpectralProfile::new_unchecked(
            self.grid().clone(),
            self.scaled(self.plan.apply(f.values())),
        ))
    }

    pub fn inverse(&self, fhat: &SpectralProfile) -> Result<RadialProfile> {
        ensure_same_grid(fhat.grid(), self.grid())?;
        Ok(RadialProfile::new_unchecked(
            self.grid().clone(),
            self.scaled(self.plan.apply(fhat.values())),
        ))
    }

    /// Inverse transform evaluated at a single radius, e.g. the origin.
    pub fn inverse_at(&self, fhat: &SpectralProfile, r: f64) -> Result<Complex64> {
        ensure_same_grid(fhat.grid(), self.grid())?;
        Ok(self.plan.apply_at(fhat.values(), r) * self.unitary_scale)
    }

    /// `inverse(m * forward(f) ...)`: convolution of radial profiles as a spectral product.
    pub fn convolve(&self, f: &RadialProfile, g: &RadialProfile) -> Result<RadialProfile> {
        let a = self.forward(f)?;
        let b = self.forward(g)?;
        let prod = a.map_with(&b, |x, y| x * y)?;
        self.inverse(&prod)
    }

    fn scaled(&self, mut v: Vec<Complex64>) -> Vec<Complex64> {
        for z in &mut v {
            *z *= self.unitary_scale;
        }
        v
    }
}

impl SpectralProfile {
    fn map_with(
        &self,
        other: &SpectralProfile,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<SpectralProfile> {
        ensure_same_grid(self.grid(), other.grid())?;
        let values = self
            .values()
            .iter()
            .zip(other.values())
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(SpectralProfile::new_unchecked(self.grid().clone(), values))
    }
}

/// Radial Dunkl transform of `f` (builds a one-off [`DunklTransform`]).
pub fn dunkl_forward(mu: &MultIndex, f: &RadialProfile) -> Result<SpectralProfile> {
    DunklTransform::new(*mu, f.grid().clone())?.forward(f)
}

/// Inverse radial Dunkl transform (builds a one-off [`DunklTransform`]).
pub fn dunkl_inverse(mu: &MultIndex, fhat: &SpectralProfile) -> Result<RadialProfile> {
    DunklTransform::new(*mu, fhat.grid().clone())?.inverse(fhat)
}

/// Pointwise product with a multiplier `m(s)`; non-finite multiplier values are rejected.
pub fn multiply_spectral<T: Into<Complex64>>(
    fhat: &SpectralProfile,
    m: impl Fn(f64) -> T,
) -> Result<SpectralProfile> {
    let mut values = Vec::with_capacity(fhat.len());
    for (&s, &v) in fhat.grid().nodes().iter().zip(fhat.values()) {
        let factor: Complex64 = m(s).into();
        if !factor.re.is_finite() || !factor.im.is_finite() {
            return Err(Error::NonFinite("spectral multiplier"));
        }
        values.push(v * factor);
    }
    Ok(SpectralProfile::new_unchecked(fhat.grid().clone(), values))
}

/// Weighted norms of `f` and of its transform.
pub fn plancherel_check(mu: &MultIndex, f: &RadialProfile) -> Result<(f64, f64)> {
    let fhat = dunkl_forward(mu, f)?;
    Ok((weighted_norm_sq(mu, f), weighted_norm_sq(mu, &fhat)))
}
