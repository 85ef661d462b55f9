//! Every verification threshold used by the test suites and by `selftest`.
//!
//! Values are fixed at compile time. `selftest` may scale them uniformly
//! through the `DKG_TOLERANCE_SCALE` environment variable, which exists so a
//! deliberately corrupted tolerance can be seen to fail.

/// Relative accuracy of [`crate::specfun::gamma_fn`].
pub const GAMMA_REL: f64 = 1e-12;
/// Absolute accuracy of `J_nu(x)` for `x <= 50`.
pub const BESSEL_ABS_SMALL_X: f64 = 1e-12;
/// Absolute accuracy of `J_nu(x)` for `50 < x <= 1e4`.
pub const BESSEL_ABS_LARGE_X: f64 = 1e-10;
/// Finite-difference check of `d/dx [x^b J_b(x)] = x^b J_{b-1}(x)`.
pub const BESSEL_RECURSION_FD: f64 = 1e-6;

/// Quadrature exactness on constants and low-degree polynomials.
pub const GRID_EXACTNESS: f64 = 1e-14;
/// Change of a Gaussian norm when the node count doubles.
pub const GRID_REFINEMENT: f64 = 1e-10;

/// Round trip and Plancherel for Gaussian profiles.
pub const TRANSFORM_UNITARY: f64 = 1e-8;
/// Round trip for `r^2` times a Gaussian.
pub const TRANSFORM_UNITARY_R2: f64 = 1e-7;
/// Convolution theorem check.
pub const MULTIPLIER_LAW: f64 = 1e-7;
/// Spectral symbol of the finite-difference Dunkl Laplacian.
pub const SPECTRAL_OPERATOR: f64 = 1e-5;
/// Eigen-relation of the normalized Bessel profile under the grid Laplacian.
pub const OPERATOR_EIGEN: f64 = 1e-4;

/// Closed-form propagator against the RK4 mode integrator.
pub const MODE_ORACLE: f64 = 1e-8;
/// Group law of the propagator.
pub const GROUP_LAW: f64 = 1e-9;
/// Expected Richardson slope of the PDE residual and its allowed spread.
pub const RESIDUAL_SLOPE: f64 = 2.0;
pub const RESIDUAL_SLOPE_SPREAD: f64 = 0.1;
/// Massless limit, scaled by `t^2` and the data norm.
pub const WAVE_LIMIT: f64 = 1e-6;
/// Classical `k = 0` cosine-sum or d'Alembert reference.
pub const CLASSICAL_REFERENCE: f64 = 1e-5;
/// Classical reference at positive mass.
pub const CLASSICAL_REFERENCE_MASSIVE: f64 = 1e-7;

/// Closed-form kernels against regularized oscillatory quadrature.
pub const KERNEL_CLOSED_FORM: f64 = 2e-4;
/// Cosine-kernel quadrature (slower decay, looser).
pub const KERNEL_COSINE_QUADRATURE: f64 = 5e-4;
/// Finite-difference check of the time-derivative identity of the kernels.
pub const KERNEL_TIME_DERIVATIVE: f64 = 1e-5;
/// Integral representation at the origin against the spectral solution (relative).
pub const INTEGRAL_REPRESENTATION: f64 = 5e-4;

/// Conservation of `K + P + (m^2/2) |u|^2` (relative).
pub const CONSERVATION: f64 = 1e-9;
/// Cesaro averages against predicted limits (relative).
pub const CESARO_LIMIT: f64 = 1e-2;
