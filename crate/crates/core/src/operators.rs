//! Rank-one Dunkl operator `T f = f' + k (f(x) - f(-x)) / x` and `Delta_k = T T`
//! as finite-difference operators on a grid symmetric about the origin.

use crate::error::{Error, Result};
use crate::numerics::CompensatedSum;

/// Points `x_i = (i - M + 1/2) h`, `i = 0..2M`; the origin is never a node.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricGrid1D {
    h: f64,
    half: usize,
    xs: Vec<f64>,
}

/// Nodes at each end where one-sided stencils are used.
pub const BOUNDARY_BAND: usize = 2;

impl SymmetricGrid1D {
    /// Grid with `2 * half` points and step `h`.
    pub fn new(h: f64, half: usize) -> Result<Self> {
        if !h.is_finite() || h <= 0.0 {
            return Err(Error::invalid("h", format!("step must be positive, got {h}")));
        }
        if half < 3 {
            return Err(Error::invalid("half", "need at least 3 points per side"));
        }
        let m = half as f64;
        let xs = (0..2 * half).map(|i| (i as f64 - m + 0.5) * h).collect();
        Ok(Self { h, half, xs })
    }

    /// Smallest grid of step `h` whose nodes reach `|x| >= xmax`.
    pub fn covering(h: f64, xmax: f64) -> Result<Self> {
        let half = (xmax / h + 0.5).ceil().max(3.0) as usize;
        Self::new(h, half)
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Index of the node `-x_i`.
    pub fn mirror(&self, i: usize) -> usize {
        2 * self.half - 1 - i
    }

    /// Index of the first node with `x > 0`.
    pub fn first_positive(&self) -> usize {
        self.half
    }

    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.xs.iter().map(|&x| f(x)).collect()
    }

    fn check(&self, f: &[f64]) -> Result<()> {
        if f.len() != self.len() {
            return Err(Error::invalid(
                "samples",
                format!("expected {} values, got {}", self.len(), f.len()),
            ));
        }
        Ok(())
    }
}

/// Fourth-order first derivative; central in the interior, one-sided at the ends.
pub fn derivative(grid: &SymmetricGrid1D, f: &[f64]) -> Result<Vec<f64>> {
    grid.check(f)?;
    let n = f.len();
    let c = 1.0 / (12.0 * grid.h);
    let mut d = vec![0.0; n];
    for i in 2..n - 2 {
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) * c;
    }
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) * c;
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) * c;
    d[n - 1] = (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4]
        + 3.0 * f[n - 5])
        * c;
    d[n - 2] = (3.0 * f[n - 1] + 10.0 * f[n - 2] - 18.0 * f[n - 3] + 6.0 * f[n - 4] - f[n - 5]) * c;
    Ok(d)
}

/// Dunkl operator `T f = f' + k (f(x) - f(-x)) / x`.
pub fn dunkl_t(k: f64, grid: &SymmetricGrid1D, f: &[f64]) -> Result<Vec<f64>> {
    if !k.is_finite() || k < 0.0 {
        return Err(Error::invalid("k", format!("multiplicity must be nonnegative, got {k}")));
    }
    let mut d = derivative(grid, f)?;
    if k != 0.0 {
        for (i, di) in d.iter_mut().enumerate() {
            let x = grid.xs[i];
            *di += k * (f[i] - f[grid.mirror(i)]) / x;
        }
    }
    Ok(d)
}

/// Dunkl Laplacian `T (T f)`.
pub fn dunkl_laplacian(k: f64, grid: &SymmetricGrid1D, f: &[f64]) -> Result<Vec<f64>> {
    let tf = dunkl_t(k, grid, f)?;
    dunkl_t(k, grid, &tf)
}

/// Midpoint-rule inner product `sum_i h |x_i|^{2k} f_i g_i`.
pub fn weighted_inner_1d(k: f64, grid: &SymmetricGrid1D, f: &[f64], g: &[f64]) -> Result<f64> {
    grid.check(f)?;
    grid.check(g)?;
    let mut acc = CompensatedSum::new();
    for ((&x, &a), &b) in grid.xs.iter().zip(f).zip(g) {
        acc.add(x.abs().powf(2.0 * k) * a * b);
    }
    Ok(grid.h * acc.value())
}
