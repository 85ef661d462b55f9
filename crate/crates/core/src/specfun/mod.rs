//! Special functions: Gamma, Bessel `J_nu` of real order, the normalized
//! Bessel function and the truncated kernel `S_+^lambda`.
//!
//! `J_nu` is evaluated by the power series for small arguments, Steed's
//! continued fractions in the transition region and Hankel's asymptotic
//! expansion for large arguments. Negative non-integer orders go through
//! `J_{-nu} = cos(nu pi) J_nu - sin(nu pi) Y_nu` or directly through the
//! series, which is valid for every order that is not a negative integer.

mod bessel;
mod gamma;

pub use bessel::{bessel_j, normalized_bessel, s_plus};
pub use gamma::gamma_fn;

pub(crate) use bessel::{s_plus_unchecked, NormalizedBessel};

use crate::error::{Error, Result};

/// A real Bessel or Hankel order, restricted to the validity window `|nu| <= 200`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    pub const MAX_ABS: f64 = 200.0;

    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu.abs() > Self::MAX_ABS {
            return Err(Error::OutOfRange {
                what: "order",
                value: nu,
                lo: -Self::MAX_ABS,
                hi: Self::MAX_ABS,
            });
        }
        Ok(Self(nu))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Order {
    type Error = Error;

    fn try_from(nu: f64) -> Result<Self> {
        Order::new(nu)
    }
}
