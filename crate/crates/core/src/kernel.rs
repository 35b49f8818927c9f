//! Gaussian Mellin pair used to smooth the Dirichlet series.
//!
//! With width `a > 0`:
//!
//! * `H(s) = exp(a s^2)`, entire, `H(0) = 1`, symmetric in both axes;
//! * `h(x) = exp(-(ln x)^2 / (4a)) / (2 sqrt(a pi))`, with `H` its Mellin
//!   transform and unit mass against `dx/x`;
//! * `g(x) = erfc(ln x / (2 sqrt a)) / 2`, so that `-x g'(x) = h(x)` and
//!   `g(x) + g(1/x) = 1`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    a: f64,
}

impl Default for KernelParams {
    fn default() -> Self {
        KernelParams { a: 0.25 }
    }
}

impl KernelParams {
    pub fn new(a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::domain(
                "KernelParams::new",
                format!("kernel width must be positive and finite, got {a}"),
            ));
        }
        Ok(KernelParams { a })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// `H(s) = exp(a s^2)`.
    pub fn h_mellin(&self, s: Complex64) -> Complex64 {
        (s * s * self.a).exp()
    }

    /// The test function `h` whose Mellin transform is `H`.
    pub fn h_test(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::domain("h_test", format!("x = {x} must be positive")));
        }
        let l = x.ln();
        Ok((-l * l / (4.0 * self.a)).exp() / (2.0 * (self.a * PI).sqrt()))
    }

    /// The explicit cutoff `g`, inverse Mellin transform of `H(s)/s`.
    pub fn g_cutoff(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::domain("g_cutoff", format!("x = {x} must be positive")));
        }
        Ok(0.5 * erfc_real(x.ln() / (2.0 * self.a.sqrt())))
    }
}

/// `H(s) = exp(a s^2)` for the given kernel.
pub fn h_mellin(s: Complex64, p: &KernelParams) -> Complex64 {
    p.h_mellin(s)
}

/// Complementary error function.
pub fn erfc_real(u: f64) -> f64 {
    libm::erfc(u)
}
