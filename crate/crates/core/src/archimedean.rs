//! Gamma-factor ratio `F(s, pi_inf)`, the phase `lambda`, and numerical
//! checks of the uniform bounds satisfied by `C^{-s/2} F(s)`.
//!
//! The square root in `F` is taken as `exp` of half the principal log-sum.
//! Inside the evaluation strip every gamma argument has positive real
//! part, so this is single valued and continuous, and `F(0) = 1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gamma::{digamma, log_gamma};
use crate::model::{analytic_conductor, eta_min, ArchimedeanParams, LFunctionInstance};

/// Safety margin kept between the strip edges and the branch points.
pub const STRIP_MARGIN: f64 = 1e-3;

/// Range of abscissas on which `F(s)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationStrip {
    pub sigma_min: f64,
    pub sigma_max: f64,
}

impl EvaluationStrip {
    pub fn for_instance(inst: &LFunctionInstance) -> Self {
        let m = f64::from(inst.m);
        let edge = 1.0 / (m * m + 1.0);
        let min_re = inst
            .arch
            .mu
            .iter()
            .map(|z| z.re)
            .fold(f64::INFINITY, f64::min);
        EvaluationStrip {
            sigma_min: -edge + STRIP_MARGIN,
            sigma_max: edge.min(0.5 + min_re) - STRIP_MARGIN,
        }
    }

    pub fn contains(&self, sigma: f64) -> bool {
        sigma >= self.sigma_min && sigma <= self.sigma_max
    }

    pub fn check(&self, sigma: f64) -> Result<()> {
        if self.contains(sigma) {
            Ok(())
        } else {
            Err(Error::Strip {
                sigma,
                min: self.sigma_min,
                max: self.sigma_max,
            })
        }
    }
}

/// `log L(s, pi_inf) = sum_j [ -(s/2) log pi + log Gamma((s + mu_j)/2) ]`.
pub fn log_gamma_factor(s: Complex64, mu: &ArchimedeanParams) -> Result<Complex64> {
    let half_log_pi = 0.5 * PI.ln();
    let mut acc = Complex64::new(0.0, 0.0);
    for &m in &mu.mu {
        let z = (s + m) * 0.5;
        if !(z.re > 0.0) {
            let bound = mu.mu.iter().map(|z| -z.re).fold(f64::NEG_INFINITY, f64::max);
            return Err(Error::Strip {
                sigma: s.re,
                min: bound,
                max: f64::INFINITY,
            });
        }
        acc += -s * half_log_pi + log_gamma(z)?;
    }
    Ok(acc)
}

/// Per-instance constants for the gamma-factor ratio.
#[derive(Debug, Clone)]
pub struct Archimedean {
    mu: ArchimedeanParams,
    mu_dual: ArchimedeanParams,
    log_n: f64,
    log_c: f64,
    log_l_half: Complex64,
    log_l_half_dual: Complex64,
    strip: EvaluationStrip,
    conductor: f64,
    eta: f64,
    degree: usize,
}

impl Archimedean {
    pub fn new(inst: &LFunctionInstance) -> Result<Self> {
        inst.validate()?;
        let mu = inst.arch.clone();
        let mu_dual = mu.conj();
        let half = Complex64::new(0.5, 0.0);
        let conductor = analytic_conductor(inst);
        Ok(Archimedean {
            log_l_half: log_gamma_factor(half, &mu)?,
            log_l_half_dual: log_gamma_factor(half, &mu_dual)?,
            mu,
            mu_dual,
            log_n: (inst.conductor as f64).ln(),
            log_c: conductor.ln(),
            strip: EvaluationStrip::for_instance(inst),
            conductor,
            eta: eta_min(inst),
            degree: inst.degree(),
        })
    }

    pub fn strip(&self) -> EvaluationStrip {
        self.strip
    }

    pub fn analytic_conductor(&self) -> f64 {
        self.conductor
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Principal log of `F(s, pi_inf)`.
    pub fn log_f_ratio(&self, s: Complex64) -> Result<Complex64> {
        self.strip.check(s.re)?;
        let half = Complex64::new(0.5, 0.0);
        let forward = log_gamma_factor(half + s, &self.mu)? - self.log_l_half;
        let backward = self.log_l_half_dual - log_gamma_factor(half - s, &self.mu_dual)?;
        Ok((s * self.log_n + forward + backward) * 0.5)
    }

    pub fn f_ratio(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.log_f_ratio(s)?.exp())
    }

    /// Principal log of `C^{-s/2} F(s, pi_inf)`.
    pub fn log_normalized(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.log_f_ratio(s)? - s * (0.5 * self.log_c))
    }

    /// `C^{-s/2} F(s, pi_inf)`.
    pub fn normalized(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.log_normalized(s)?.exp())
    }

    /// `lambda = L(1/2, dual_inf) / L(1/2, pi_inf)`; the `pi^{-s/2}`
    /// factors cancel.
    pub fn lambda(&self) -> Complex64 {
        (self.log_l_half_dual - self.log_l_half).exp()
    }
}

/// `F(s, pi_inf)` for a single point.
pub fn f_ratio(s: Complex64, inst: &LFunctionInstance) -> Result<Complex64> {
    Archimedean::new(inst)?.f_ratio(s)
}

/// `lambda = prod_j Gamma((1/2 + conj mu_j)/2) / Gamma((1/2 + mu_j)/2)`.
pub fn lambda_phase(inst: &LFunctionInstance) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for &mu in &inst.arch.mu {
        acc += log_gamma((0.5 + mu.conj()) * 0.5)? - log_gamma((0.5 + mu) * 0.5)?;
    }
    Ok(acc.exp())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma2Report {
    pub sigma: f64,
    pub t_max: f64,
    pub n_points: usize,
    /// `max_t |C^{-s/2} F(s)| / (1 + |s|)^{md sigma / 2}` at `s = sigma + it`.
    pub max_normalized: f64,
    pub argmax_t: f64,
}

/// Sweeps the normalized growth ratio over `t` in `[-t_max, t_max]`.
pub fn lemma2_sweep(
    inst: &LFunctionInstance,
    sigma: f64,
    t_max: f64,
    n_points: usize,
) -> Result<Lemma2Report> {
    let arch = Archimedean::new(inst)?;
    arch.strip.check(sigma)?;
    if n_points < 2 {
        return Err(Error::domain("lemma2_sweep", "need at least two grid points"));
    }
    let exponent = arch.degree as f64 * sigma / 2.0;
    let values: Vec<(f64, f64)> = (0..n_points)
        .into_par_iter()
        .map(|i| {
            let t = -t_max + 2.0 * t_max * i as f64 / (n_points - 1) as f64;
            let s = Complex64::new(sigma, t);
            let g = arch.log_normalized(s)?;
            Ok((t, (g.re - exponent * (1.0 + s.norm()).ln()).exp()))
        })
        .collect::<Result<_>>()?;
    let (argmax_t, max_normalized) = values
        .into_iter()
        .fold((0.0, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best });
    Ok(Lemma2Report {
        sigma,
        t_max,
        n_points,
        max_normalized,
        argmax_t,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma3Report {
    pub t: f64,
    /// `|C^{-it/2} F(it) - 1|`.
    pub deviation: f64,
    /// `c |t| eta^{-1} C^eps`.
    pub bound: f64,
}

/// Deviation of `C^{-it/2} F(it)` from 1 against its small-`t` bound.
pub fn lemma3_deviation(
    inst: &LFunctionInstance,
    t: f64,
    c_const: f64,
    eps: f64,
) -> Result<Lemma3Report> {
    let arch = Archimedean::new(inst)?;
    let window = arch.eta.min(arch.conductor.powf(eps));
    if !(t.abs() < window) {
        return Err(Error::domain(
            "lemma3_deviation",
            format!("|t| = {} must be below min(eta, C^eps) = {window}", t.abs()),
        ));
    }
    let g = arch.normalized(Complex64::new(0.0, t))?;
    Ok(Lemma3Report {
        t,
        deviation: (g - 1.0).norm(),
        bound: c_const * t.abs() / arch.eta * arch.conductor.powf(eps),
    })
}

/// `|d/dt arg(C^{-it/2} F(it))|` at `t = 0`, from the digamma function:
/// `(1/2) |sum_j Re[psi(1/4 + mu_j/2) - log(1/4 + mu_j/2)]|`.
pub fn lemma3_slope(inst: &LFunctionInstance) -> Result<f64> {
    let mut acc = 0.0;
    for w in inst.arch.central_shifts() {
        acc += (digamma(w)? - w.ln()).re;
    }
    Ok(0.5 * acc.abs())
}
