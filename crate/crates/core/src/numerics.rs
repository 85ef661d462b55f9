//! Small numerical building blocks shared by several modules.

use num_complex::Complex64;

/// Compensated (Kahan-Babuska) accumulator. The result depends only on the
/// order in which terms are added.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated accumulator for complex terms (real and imaginary parts kept apart).
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl CompensatedComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Sum of `f(i)` for `i = 0..n` in ascending order with compensation.
pub fn compensated_sum(n: usize, mut f: impl FnMut(usize) -> f64) -> f64 {
    let mut acc = CompensatedSum::new();
    for i in 0..n {
        acc.add(f(i));
    }
    acc.value()
}

/// Local Lagrange interpolation through `npts` consecutive nodes around `x`.
///
/// `xs` must be strictly increasing. Points outside `[xs[0], xs[last]]` are
/// extrapolated from the nearest window.
pub fn lagrange_interpolate(xs: &[f64], ys: &[Complex64], x: f64, npts: usize) -> Complex64 {
    let n = xs.len();
    let npts = npts.min(n).max(1);
    let pos = xs.partition_point(|&v| v < x);
    let start = pos.saturating_sub(npts / 2).min(n - npts);
    let window = start..start + npts;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in window.clone() {
        if xs[i] == x {
            return ys[i];
        }
        let mut basis = 1.0;
        for j in window.clone() {
            if j != i {
                basis *= (x - xs[j]) / (xs[i] - xs[j]);
            }
        }
        acc += ys[i] * basis;
    }
    acc
}

/// Real-valued variant of [`lagrange_interpolate`].
pub fn lagrange_interpolate_real(xs: &[f64], ys: &[f64], x: f64, npts: usize) -> f64 {
    let n = xs.len();
    let npts = npts.min(n).max(1);
    let pos = xs.partition_point(|&v| v < x);
    let start = pos.saturating_sub(npts / 2).min(n - npts);
    let window = start..start + npts;
    let mut acc = 0.0;
    for i in window.clone() {
        if xs[i] == x {
            return ys[i];
        }
        let mut basis = 1.0;
        for j in window.clone() {
            if j != i {
                basis *= (x - xs[j]) / (xs[i] - xs[j]);
            }
        }
        acc += ys[i] * basis;
    }
    acc
}

/// Fourth-order central difference `(-f(t+2h) + 8f(t+h) - 8f(t-h) + f(t-2h)) / 12h`.
pub fn five_point_derivative(mut f: impl FnMut(f64) -> f64, t: f64, h: f64) -> f64 {
    (-f(t + 2.0 * h) + 8.0 * f(t + h) - 8.0 * f(t - h) + f(t - 2.0 * h)) / (12.0 * h)
}

/// Double-exponential (tanh-sinh) quadrature on a finite interval.
///
/// The integrand receives `(x, x - a, b - x)`, with both endpoint distances
/// computed without cancellation so that kernels like `(b - x)^p` stay accurate
/// next to the endpoints. Returns the estimate and the last change between levels.
pub fn tanh_sinh(mut f: impl FnMut(f64, f64, f64) -> f64, a: f64, b: f64, rel_tol: f64) -> (f64, f64) {
    use std::f64::consts::FRAC_PI_2;
    const T_MAX: f64 = 4.0;
    const MAX_LEVEL: u32 = 12;
    let half = 0.5 * (b - a);
    if half == 0.0 {
        return (0.0, 0.0);
    }
    let mut node = |t: f64| -> f64 {
        let u = FRAC_PI_2 * t.sinh();
        let cu = u.cosh();
        let w = FRAC_PI_2 * t.cosh() / (cu * cu);
        // distances to the endpoints in units of `half`
        let to_b = 2.0 / ((2.0 * u).exp() + 1.0);
        let to_a = 2.0 / ((-2.0 * u).exp() + 1.0);
        let x = if u >= 0.0 { b - half * to_b } else { a + half * to_a };
        w * f(x, half * to_a, half * to_b)
    };

    let mut h = 1.0;
    let mut sum = node(0.0);
    let mut k = 1;
    while (k as f64) * h <= T_MAX {
        let t = k as f64 * h;
        sum += node(t) + node(-t);
        k += 1;
    }
    let mut estimate = half * h * sum;
    let mut change = f64::INFINITY;
    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= T_MAX {
            let t = k as f64 * h;
            sum += node(t) + node(-t);
            k += 2;
        }
        let next = half * h * sum;
        change = (next - estimate).abs();
        estimate = next;
        if level >= 4 && change <= rel_tol * estimate.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    (estimate, change)
}
