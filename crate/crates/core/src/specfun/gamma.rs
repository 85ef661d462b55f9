use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Euler Gamma function for positive arguments.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "gamma_fn",
            value: x,
            expected: "x > 0",
        });
    }
    if x == x.floor() && x <= 171.0 {
        // exact factorials for small integers
        return Ok((2..x as u32).fold(1.0, |acc, k| acc * k as f64));
    }
    Ok(statrs::function::gamma::gamma(x))
}

pub(crate) fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// `1/Gamma(z)` for any real `z`; zero at the poles `z = 0, -1, -2, ...`.
pub(crate) fn rgamma(z: f64) -> f64 {
    if z > 0.0 {
        if z > 170.0 {
            (-ln_gamma(z)).exp()
        } else {
            1.0 / statrs::function::gamma::gamma(z)
        }
    } else if z == z.floor() {
        0.0
    } else {
        // reflection: 1/Gamma(z) = sin(pi z) Gamma(1 - z) / pi
        let one_minus = 1.0 - z;
        let g = if one_minus > 170.0 {
            return sin_pi(z) * ln_gamma(one_minus).exp() / PI;
        } else {
            statrs::function::gamma::gamma(one_minus)
        };
        sin_pi(z) * g / PI
    }
}

/// `sin(pi x)`, exact at integers and half-integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r == 0.5 {
        return 1.0;
    }
    if r == 1.5 {
        return -1.0;
    }
    (PI * r).sin()
}

/// `cos(pi x)`, exact at integers and half-integers.
pub(crate) fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}
