pub mod cli;
pub mod energetics;
pub mod error;
pub mod kernels;
pub mod measures;
pub mod numerics;
pub mod operators;
pub mod oracle;
pub mod propagator;
pub mod specfun;
pub mod tolerances;
pub mod transform;

pub use error::{Error, Result};
