//! Multiplicity bookkeeping for the rank-one reflection group and the
//! weighted radial measure `d_k r^{2 alpha + 1} dr`.

use crate::error::{Error, Result};
use crate::numerics::{CompensatedComplexSum, CompensatedSum};
use crate::specfun::gamma_fn;
use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::marker::PhantomData;
use std::num::NonZeroUsize;
use std::sync::Arc;

pub const DEFAULT_RMAX: f64 = 40.0;
pub const DEFAULT_NODES: usize = 1024;
pub const MIN_NODES: usize = 8;

/// Dimension, Dunkl index and the constants derived from them.
///
/// The reflection group is `Z_2` acting on the first coordinate of `R^n` with
/// multiplicity `gamma`, so the weight is `|x_1|^{2 gamma}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultIndex {
    n: u32,
    gamma: f64,
    alpha: f64,
    d_k: f64,
    c_k: f64,
}

impl MultIndex {
    pub fn new(n: u32, gamma: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n", "dimension must be at least 1"));
        }
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::invalid(
                "gamma",
                format!("multiplicity must be finite and nonnegative, got {gamma}"),
            ));
        }
        let alpha = gamma + 0.5 * n as f64 - 1.0;
        if alpha > crate::specfun::Order::MAX_ABS {
            return Err(Error::OutOfRange {
                what: "alpha",
                value: alpha,
                lo: -1.0,
                hi: crate::specfun::Order::MAX_ABS,
            });
        }
        // integral of |x_1|^{2 gamma} over the unit sphere
        let d_k = 2.0 * PI.powf(0.5 * (n as f64 - 1.0)) * gamma_fn(gamma + 0.5)?
            / gamma_fn(gamma + 0.5 * n as f64)?;
        // reciprocal of the Gaussian integral of the weight
        let c_k = 1.0 / (d_k * 2f64.powf(alpha) * gamma_fn(alpha + 1.0)?);
        Ok(Self {
            n,
            gamma,
            alpha,
            d_k,
            c_k,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Hankel order `gamma + n/2 - 1`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Sphere constant: the weight integrated over the unit sphere.
    pub fn d_k(&self) -> f64 {
        self.d_k
    }

    /// Mehta-type constant, `1 / integral of exp(-|x|^2/2) w_k(x) dx`.
    pub fn c_k(&self) -> f64 {
        self.c_k
    }

    /// Exponent `2 alpha + 1 = 2 gamma + n - 1` of the radial measure.
    pub fn weight_exponent(&self) -> f64 {
        2.0 * self.alpha + 1.0
    }
}

/// Build a [`MultIndex`] from dimension and Dunkl index.
pub fn make_mult(n: u32, gamma: f64) -> Result<MultIndex> {
    MultIndex::new(n, gamma)
}

/// Gauss-Legendre quadrature on `(0, rmax)`, used for both radial and spectral variables.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    rmax: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl RadialGrid {
    pub fn gauss_legendre(rmax: f64, n_nodes: usize) -> Result<Self> {
        if !rmax.is_finite() || rmax <= 0.0 {
            return Err(Error::invalid("rmax", format!("must be positive, got {rmax}")));
        }
        if n_nodes < MIN_NODES {
            return Err(Error::invalid(
                "nodes",
                format!("need at least {MIN_NODES} nodes, got {n_nodes}"),
            ));
        }
        let rule = GaussLegendre::new(NonZeroUsize::new(n_nodes).expect("checked above"));
        let mut pairs: Vec<(f64, f64)> = rule.as_node_weight_pairs().to_vec();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let half = 0.5 * rmax;
        let nodes = pairs.iter().map(|&(x, _)| half * (x + 1.0)).collect();
        let weights = pairs.iter().map(|&(_, w)| half * w).collect();
        Ok(Self {
            rmax,
            nodes,
            weights,
        })
    }

    pub fn rmax(&self) -> f64 {
        self.rmax
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Quadrature of `f` over `(0, rmax)`, compensated and in ascending node order.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        let mut acc = CompensatedSum::new();
        for (&r, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(w * f(r));
        }
        acc.value()
    }
}

/// Build a shared Gauss-Legendre grid on `(0, rmax)`.
pub fn make_grid(rmax: f64, n_nodes: usize) -> Result<Arc<RadialGrid>> {
    RadialGrid::gauss_legendre(rmax, n_nodes).map(Arc::new)
}

/// Marker for samples of a function of the radial variable `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Physical;

/// Marker for samples of a function of the spectral variable `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Spectral;

/// Complex samples on a [`RadialGrid`], tagged with the side they live on.
#[derive(Debug, Clone)]
pub struct Profile<D> {
    grid: Arc<RadialGrid>,
    values: Vec<Complex64>,
    _domain: PhantomData<D>,
}

/// Samples of a radial function `F_0(r)`.
pub type RadialProfile = Profile<Physical>;

/// Samples of a radial transform `F_k f(s)`.
pub type SpectralProfile = Profile<Spectral>;

impl<D> Profile<D> {
    pub fn new(grid: Arc<RadialGrid>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(
                "values",
                format!("expected {} samples, got {}", grid.len(), values.len()),
            ));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite("profile samples"));
        }
        Ok(Self::new_unchecked(grid, values))
    }

    pub(crate) fn new_unchecked(grid: Arc<RadialGrid>, values: Vec<Complex64>) -> Self {
        Self {
            grid,
            values,
            _domain: PhantomData,
        }
    }

    /// Samples a complex function at the grid nodes.
    pub fn from_fn_complex(grid: Arc<RadialGrid>, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = grid.nodes().iter().map(|&r| f(r)).collect();
        Self::new(grid, values)
    }

    /// Samples a real function at the grid nodes.
    pub fn from_fn(grid: Arc<RadialGrid>, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_fn_complex(grid, |r| Complex64::new(f(r), 0.0))
    }

    pub fn zeros(grid: Arc<RadialGrid>) -> Self {
        let n = grid.len();
        Self::new_unchecked(grid, vec![Complex64::new(0.0, 0.0); n])
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Same grid, new values computed node by node from `(s, value)`.
    pub fn map(&self, f: impl Fn(f64, Complex64) -> Complex64) -> Self {
        let values = self
            .grid
            .nodes()
            .iter()
            .zip(&self.values)
            .map(|(&r, &v)| f(r, v))
            .collect();
        Self::new_unchecked(self.grid.clone(), values)
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map(|_, v| v * c)
    }

    /// Pointwise `self + other`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        ensure_same_grid(&self.grid, &other.grid)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::new_unchecked(self.grid.clone(), values))
    }

    /// Pointwise `self - other`.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        ensure_same_grid(&self.grid, &other.grid)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self::new_unchecked(self.grid.clone(), values))
    }

    /// Largest modulus over the nodes.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

pub(crate) fn same_grid(a: &Arc<RadialGrid>, b: &Arc<RadialGrid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn ensure_same_grid(a: &Arc<RadialGrid>, b: &Arc<RadialGrid>) -> Result<()> {
    if same_grid(a, b) {
        Ok(())
    } else {
        Err(Error::GridMismatch)
    }
}

/// `d_k * sum_j w_j |f_j|^2 r_j^{2 alpha + 1}`.
pub fn weighted_norm_sq<D>(mu: &MultIndex, f: &Profile<D>) -> f64 {
    let p = mu.weight_exponent();
    let grid = f.grid();
    let mut acc = CompensatedSum::new();
    for ((&r, &w), v) in grid.nodes().iter().zip(grid.weights()).zip(f.values()) {
        acc.add(w * v.norm_sqr() * r.powf(p));
    }
    mu.d_k() * acc.value()
}

/// `d_k * sum_j w_j f_j conj(g_j) r_j^{2 alpha + 1}`: linear in `f`, conjugate-linear in `g`.
pub fn weighted_inner<D>(mu: &MultIndex, f: &Profile<D>, g: &Profile<D>) -> Result<Complex64> {
    ensure_same_grid(f.grid(), g.grid())?;
    let p = mu.weight_exponent();
    let grid = f.grid();
    let mut acc = CompensatedComplexSum::new();
    for (((&r, &w), a), b) in grid
        .nodes()
        .iter()
        .zip(grid.weights())
        .zip(f.values())
        .zip(g.values())
    {
        acc.add(a * b.conj() * (w * r.powf(p)));
    }
    Ok(acc.value() * mu.d_k())
}
