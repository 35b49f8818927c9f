//! The cutoff function `f` and its derivatives, computed as vertical-line
//! Mellin integrals
//!
//! ```text
//! f^(k)(x) = (-1)^k / (2 pi i) * int_(sigma) x^{-s-k} C^{-s/2} F(s) H(s) s(s+1)...(s+k-1) ds/s
//! ```
//!
//! with the uniform trapezoid rule in `t = Im s`. The integrand is analytic
//! in a horizontal band around the contour and decays like a Gaussian, so
//! the rule converges geometrically in the step. For `k = 0` the simple
//! pole at `s = 0` has residue 1; a contour left of it picks up that
//! residue.
//!
//! The node values `C^{-s/2} F(s) H(s)` do not depend on `x`, so a
//! [`CutoffContour`] computes them once and evaluates `f` at any number of
//! points with a single pass over the nodes.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::archimedean::Archimedean;
use crate::error::{Error, Result};
use crate::kernel::KernelParams;
use crate::model::LFunctionInstance;
use crate::summation::pairwise_sum_complex;

/// Largest node spacing used by [`ContourSpec::auto`].
pub const DEFAULT_STEP: f64 = 0.05;
/// Default absolute target for a single value of `f`.
pub const DEFAULT_TOL: f64 = 1e-13;
/// Growth ceiling for `|C^{-s/2} F(s)| / (1+|s|)^{md|sigma|/2}` used in
/// the truncation-tail bound.
const GROWTH_CEILING: f64 = 3.0;
const RESYNC: usize = 32;

/// Vertical contour `Re s = sigma`, truncated to `|t| <= half_width`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub sigma: f64,
    pub step: f64,
    pub half_width: f64,
    pub tol: f64,
}

/// Distance from `Re s = sigma` to the nearest singularity of the
/// integrand: the branch points of `F` and, for `k = 0`, the pole at 0.
fn analytic_half_band(inst: &LFunctionInstance, sigma: f64, with_pole: bool) -> f64 {
    let left = inst
        .arch
        .mu
        .iter()
        .map(|z| -0.5 - z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    let right = inst
        .arch
        .mu
        .iter()
        .map(|z| 0.5 + z.re)
        .fold(f64::INFINITY, f64::min);
    let mut d = (sigma - left).min(right - sigma);
    if with_pole {
        d = d.min(sigma.abs());
    }
    d
}

/// Smallest `T` with `exp(a(sigma^2 - T^2)) (1+T)^{md|sigma|/2} <= tol/10`.
fn tail_half_width(a: f64, sigma: f64, degree: usize, tol: f64) -> f64 {
    let target = (tol / 10.0).ln();
    let growth = degree as f64 * sigma.abs() / 2.0;
    let mut t = ((a * sigma * sigma - target) / a).sqrt();
    for _ in 0..50 {
        let next = ((a * sigma * sigma + growth * (1.0 + t).ln() - target) / a).sqrt();
        if (next - t).abs() < 1e-12 {
            t = next;
            break;
        }
        t = next;
    }
    t * (1.0 + 1e-9)
}

/// Default abscissa: `min(1/(2(m^2+1)), sigma_max/2)`.
pub fn default_sigma(inst: &LFunctionInstance) -> f64 {
    let m = f64::from(inst.m);
    let strip = crate::archimedean::EvaluationStrip::for_instance(inst);
    (0.5 / (m * m + 1.0)).min(strip.sigma_max / 2.0)
}

impl ContourSpec {
    pub fn new(sigma: f64, step: f64, half_width: f64, tol: f64) -> Self {
        ContourSpec {
            sigma,
            step,
            half_width,
            tol,
        }
    }

    /// Contour at `sigma` with the step chosen from the analytic band of
    /// the integrand and the half-width from the Gaussian tail.
    pub fn auto(inst: &LFunctionInstance, kp: &KernelParams, sigma: f64, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::Contour(format!("tolerance must be positive, got {tol}")));
        }
        let d = analytic_half_band(inst, sigma, sigma != 0.0);
        let usable = 0.8 * d;
        let step = (2.0 * PI * usable / (100.0 / tol).ln()).min(DEFAULT_STEP);
        let half_width = tail_half_width(kp.a(), sigma, inst.degree(), tol);
        Ok(ContourSpec::new(sigma, step, half_width, tol))
    }

    /// Contour at the default abscissa.
    pub fn default_for(inst: &LFunctionInstance, kp: &KernelParams) -> Result<Self> {
        ContourSpec::auto(inst, kp, default_sigma(inst), DEFAULT_TOL)
    }

    pub fn validate(&self, inst: &LFunctionInstance, kp: &KernelParams) -> Result<()> {
        let strip = crate::archimedean::EvaluationStrip::for_instance(inst);
        strip.check(self.sigma)?;
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::Contour(format!("step must be positive, got {}", self.step)));
        }
        if !(self.half_width > 0.0 && self.half_width.is_finite()) {
            return Err(Error::Contour(format!(
                "half width must be positive, got {}",
                self.half_width
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Contour(format!("tolerance must be positive, got {}", self.tol)));
        }
        let tail = (kp.a() * (self.sigma * self.sigma - self.half_width * self.half_width)).exp()
            * (1.0 + self.half_width).powf(inst.degree() as f64 * self.sigma.abs() / 2.0);
        if tail > self.tol / 10.0 {
            return Err(Error::Contour(format!(
                "half width {} leaves a Gaussian tail {tail:e} above tol/10 = {:e}",
                self.half_width,
                self.tol / 10.0
            )));
        }
        let nodes = 2.0 * self.half_width / self.step;
        if nodes > 5e7 {
            return Err(Error::Contour(format!("{nodes:.0} nodes requested")));
        }
        Ok(())
    }
}

/// A value of `f` or `f^(k)` with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutoffEvaluation {
    pub value: Complex64,
    pub quad_error_estimate: f64,
    pub nodes_used: usize,
}

/// Precomputed node values on one contour.
#[derive(Debug, Clone)]
pub struct CutoffContour {
    spec: ContourSpec,
    kernel: KernelParams,
    degree: usize,
    /// Analytic half-band of the integrand for `k = 0` and for `k >= 1`.
    band_with_pole: f64,
    band: f64,
    /// Node index range `k_min..=k_max`, `t_k = k * step`.
    k_min: i64,
    /// `s_k`.
    nodes: Vec<Complex64>,
    /// `C^{-s/2} F(s) H(s) * step / (2 pi)`.
    weights: Vec<Complex64>,
}

impl CutoffContour {
    pub fn new(inst: &LFunctionInstance, kp: &KernelParams, spec: ContourSpec) -> Result<Self> {
        spec.validate(inst, kp)?;
        let arch = Archimedean::new(inst)?;
        let k_max = (spec.half_width / spec.step).ceil() as i64;
        let k_min = -k_max;
        let scale = spec.step / (2.0 * PI);
        let pairs: Vec<(Complex64, Complex64)> = (k_min..=k_max)
            .into_par_iter()
            .map(|k| {
                let s = Complex64::new(spec.sigma, k as f64 * spec.step);
                let w = (arch.log_normalized(s)? + s * s * kp.a()).exp() * scale;
                Ok((s, w))
            })
            .collect::<Result<_>>()?;
        let (nodes, weights) = pairs.into_iter().unzip();
        Ok(CutoffContour {
            band_with_pole: analytic_half_band(inst, spec.sigma, true),
            band: analytic_half_band(inst, spec.sigma, false),
            spec,
            kernel: *kp,
            degree: inst.degree(),
            k_min,
            nodes,
            weights,
        })
    }

    pub fn spec(&self) -> &ContourSpec {
        &self.spec
    }

    pub fn kernel(&self) -> &KernelParams {
        &self.kernel
    }

    pub fn nodes_used(&self) -> usize {
        self.nodes.len()
    }

    /// Node contributions `x^{-s_k} w_k q(s_k)` for a given per-node factor.
    fn terms(&self, x: f64, factor: impl Fn(Complex64) -> Complex64) -> Vec<Complex64> {
        let lx = x.ln();
        let magnitude = (-self.spec.sigma * lx).exp();
        let step_phase = Complex64::from_polar(1.0, -self.spec.step * lx);
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut phase = Complex64::new(1.0, 0.0);
        for (i, (&s, &w)) in self.nodes.iter().zip(&self.weights).enumerate() {
            if i % RESYNC == 0 {
                phase = Complex64::from_polar(1.0, -s.im * lx);
            }
            out.push(phase * magnitude * w * factor(s));
            phase *= step_phase;
        }
        out
    }

    /// Trapezoid sum with steps `h` and `2h`, plus sum of moduli.
    fn integrate(&self, terms: &[Complex64]) -> (Complex64, Complex64, f64) {
        let fine = pairwise_sum_complex(terms);
        let coarse_terms: Vec<Complex64> = terms
            .iter()
            .enumerate()
            .filter(|(i, _)| (*i as i64 + self.k_min) % 2 == 0)
            .map(|(_, &z)| z * 2.0)
            .collect();
        let coarse = pairwise_sum_complex(&coarse_terms);
        let abs_sum: f64 = terms.iter().map(|z| z.norm()).sum();
        (fine, coarse, abs_sum)
    }

    fn error_estimate(&self, fine: Complex64, coarse: Complex64, abs_sum: f64, x: f64, k: usize) -> f64 {
        let spec = &self.spec;
        let band = if k == 0 { self.band_with_pole } else { self.band };
        let ratio = (-PI * band / spec.step).exp();
        let discretization = (fine - coarse).norm() * ratio;
        let roundoff = 8.0 * f64::EPSILON * abs_sum;
        let t = spec.half_width;
        let growth = (1.0 + t).powf(self.degree as f64 * spec.sigma.abs() / 2.0);
        let gauss = (self.kernel.a() * (spec.sigma * spec.sigma - t * t)).exp();
        let poly = (1..k).fold(1.0, |acc, j| acc * (t + j as f64 + spec.sigma.abs()));
        let s_t = (spec.sigma * spec.sigma + t * t).sqrt();
        let tail = GROWTH_CEILING * x.powf(-spec.sigma - k as f64) * growth * gauss * poly
            / (PI * s_t * 2.0 * self.kernel.a() * t);
        discretization + roundoff + tail
    }

    /// The raw contour integral `(1/2 pi i) int x^{-s} C^{-s/2} F H ds/s`,
    /// without the residue correction.
    pub fn contour_integral(&self, x: f64) -> Result<CutoffEvaluation> {
        check_x(x)?;
        if self.spec.sigma == 0.0 {
            return Err(Error::PoleOnContour);
        }
        let terms = self.terms(x, |s| s.inv());
        let (fine, coarse, abs_sum) = self.integrate(&terms);
        Ok(CutoffEvaluation {
            value: fine,
            quad_error_estimate: self.error_estimate(fine, coarse, abs_sum, x, 0),
            nodes_used: self.nodes.len(),
        })
    }

    /// `f(x)`, including the residue at `s = 0` when the contour lies to
    /// its left.
    pub fn f(&self, x: f64) -> Result<CutoffEvaluation> {
        let mut ev = self.contour_integral(x)?;
        if self.spec.sigma < 0.0 {
            ev.value += 1.0;
        }
        Ok(ev)
    }

    /// `f^(k)(x)` for `k >= 1`.
    pub fn derivative(&self, x: f64, k: usize) -> Result<CutoffEvaluation> {
        check_x(x)?;
        if k == 0 {
            return self.f(x);
        }
        let terms = self.terms(x, |s| (1..k).fold(Complex64::new(1.0, 0.0), |acc, j| acc * (s + j as f64)));
        let (fine, coarse, abs_sum) = self.integrate(&terms);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let scale = sign * x.powi(-(k as i32));
        Ok(CutoffEvaluation {
            value: fine * scale,
            quad_error_estimate: self.error_estimate(fine, coarse, abs_sum, x, k) * scale.abs(),
            nodes_used: self.nodes.len(),
        })
    }
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain("cutoff", format!("x = {x} must be positive and finite")));
    }
    Ok(())
}

/// `f(x)` on the contour `cs`.
pub fn f_at(
    x: f64,
    inst: &LFunctionInstance,
    kp: &KernelParams,
    cs: &ContourSpec,
) -> Result<CutoffEvaluation> {
    check_x(x)?;
    if cs.sigma == 0.0 {
        return Err(Error::PoleOnContour);
    }
    CutoffContour::new(inst, kp, *cs)?.f(x)
}

/// `f^(k)(x)` on the contour `cs`, `k >= 1`.
pub fn f_derivative(
    x: f64,
    k: usize,
    inst: &LFunctionInstance,
    kp: &KernelParams,
    cs: &ContourSpec,
) -> Result<CutoffEvaluation> {
    if k == 0 {
        return Err(Error::domain("f_derivative", "k must be at least 1; use f_at for k = 0"));
    }
    CutoffContour::new(inst, kp, *cs)?.derivative(x, k)
}

/// One row of a decay table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRow {
    pub x: f64,
    pub f: Complex64,
    pub abs_f: f64,
    pub abs_f_minus_one: f64,
    pub abs_f_prime: f64,
    /// `d log|f| / d log x` from neighbouring rows.
    pub slope: f64,
    pub quad_error: f64,
}

/// Tabulates `|f|`, `|f - 1|`, `|f'|` and local log-log slopes of `|f|`.
///
/// Points below 1 use the contour left of the pole (so `f - 1` is the
/// integral itself and keeps full relative accuracy); the others use the
/// contour to its right.
pub fn decay_report(
    inst: &LFunctionInstance,
    kp: &KernelParams,
    x_grid: &[f64],
) -> Result<Vec<DecayRow>> {
    if x_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::domain("decay_report", "x grid must be strictly increasing"));
    }
    let sigma = default_sigma(inst);
    let right = CutoffContour::new(inst, kp, ContourSpec::auto(inst, kp, sigma, DEFAULT_TOL)?)?;
    let left = CutoffContour::new(inst, kp, ContourSpec::auto(inst, kp, -sigma, DEFAULT_TOL)?)?;
    let mut rows: Vec<DecayRow> = x_grid
        .par_iter()
        .map(|&x| {
            let contour = if x < 1.0 { &left } else { &right };
            let integral = contour.contour_integral(x)?;
            let (f, f_minus_one) = if x < 1.0 {
                (integral.value + 1.0, integral.value)
            } else {
                (integral.value, integral.value - 1.0)
            };
            let fp = contour.derivative(x, 1)?;
            Ok(DecayRow {
                x,
                f,
                abs_f: f.norm(),
                abs_f_minus_one: f_minus_one.norm(),
                abs_f_prime: fp.value.norm(),
                slope: f64::NAN,
                quad_error: integral.quad_error_estimate,
            })
        })
        .collect::<Result<_>>()?;
    let n = rows.len();
    for i in 0..n {
        let (lo, hi) = (i.saturating_sub(1), (i + 1).min(n - 1));
        if lo == hi {
            continue;
        }
        let num = rows[hi].abs_f.ln() - rows[lo].abs_f.ln();
        let den = rows[hi].x.ln() - rows[lo].x.ln();
        rows[i].slope = num / den;
    }
    Ok(rows)
}
