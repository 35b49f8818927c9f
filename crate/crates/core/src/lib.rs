//! Central values of principal L-functions through smoothed approximate
//! functional equations.

pub mod archimedean;
pub mod cutoff;
pub mod error;
pub mod evaluator;
pub mod fixtures;
pub mod io;
pub mod gamma;
pub mod kernel;
pub mod model;
pub mod oracles;
pub mod summation;

pub use error::{Error, Result};
